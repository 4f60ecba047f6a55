#![allow(dead_code)]

use frobcurves::curve::{CurveFamily, SmoothStatus};
use frobcurves::{Field, Fq};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// x^88 + 3x^44y^44 + y^88 + 3x^44z^44 + 3y^44z^44 + z^88 over F_{43^2}.
pub fn degree_88_curve() -> CurveFamily {
    let f = Field::new(43, 2, None).unwrap();
    CurveFamily::from_aliases(&f, 44, [1, 3, 1, 3, 3, 1].map(|c| f.from_int(c))).unwrap()
}

/// x^20 + 2x^10y^10 - y^20 + z^20 over F_{19^2}.
pub fn degree_20_curve() -> CurveFamily {
    let f = Field::new(19, 2, None).unwrap();
    CurveFamily::from_aliases(&f, 10, [1, 2, -1, 0, 0, 1].map(|c| f.from_int(c))).unwrap()
}

pub struct GridCurve {
    pub p: u64,
    pub n: u32,
    /// Which coefficient pattern produced the curve.
    pub kind: usize,
    pub curve: CurveFamily,
}

/// Smooth, non-Fermat conic-type curves over F_{p^2} for p in {11, 13, 19}
/// and every n <= 45 with p | n - 1 or p | 2n - 1. Per n, up to six
/// coefficient patterns:
///
/// 0. all six coefficients in F_p
/// 1. no x^n z^n, y^n z^n terms, all in F_p
/// 2. as 1 with the x^2n coefficient outside F_p
/// 3. single cross term x^n z^n scaled by a non-square so that the
///    half-descent scaling is needed
/// 4. all in F_p except the y^2n coefficient
/// 5. single cross term y^n z^n with a coefficient outside F_p
pub fn grid() -> Vec<GridCurve> {
    let mut out = Vec::new();
    for p in [11u64, 13, 19] {
        let f = Field::new(p, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let sub: Vec<Fq> = f
            .elements()
            .filter(|&x| !x.is_zero() && f.in_subfield(x, 1).unwrap())
            .collect();
        let outside: Vec<Fq> = f
            .elements()
            .filter(|&x| !f.in_subfield(x, 1).unwrap())
            .collect();
        let minus = f.pow(f.generator(), p.div_ceil(2));
        for n in 3..=45u64 {
            if (n - 1) % p != 0 && (2 * n - 1) % p != 0 {
                continue;
            }
            for kind in 0..6 {
                for _ in 0..50 {
                    let mut pick = |inside: bool| {
                        if inside {
                            sub[rng.gen_range(0..sub.len())]
                        } else {
                            outside[rng.gen_range(0..outside.len())]
                        }
                    };
                    let mut a = [Fq::ZERO; 6];
                    for x in a.iter_mut() {
                        *x = pick(true);
                    }
                    match kind {
                        0 => {}
                        1 => {
                            a[3] = Fq::ZERO;
                            a[4] = Fq::ZERO;
                        }
                        2 => {
                            a[3] = Fq::ZERO;
                            a[4] = Fq::ZERO;
                            a[0] = pick(false);
                        }
                        3 => {
                            a[1] = Fq::ZERO;
                            a[4] = Fq::ZERO;
                            a[3] = f.mul(minus, a[3]);
                        }
                        4 => a[2] = pick(false),
                        _ => {
                            a[1] = Fq::ZERO;
                            a[3] = Fq::ZERO;
                            a[4] = pick(false);
                        }
                    }
                    let c = CurveFamily::from_aliases(&f, n as u32, a).unwrap();
                    if c.is_smooth(2).status == SmoothStatus::Smooth && !c.is_fermat_type() {
                        out.push(GridCurve {
                            p,
                            n: n as u32,
                            kind,
                            curve: c,
                        });
                        break;
                    }
                }
            }
        }
    }
    out
}
