//! The curves `F(x,y,z) = sum_{i+j+t=s} c_ij x^{in} y^{jn} z^{tn}` and their
//! companion forms `G` of degree `s` with `F = G(x^n, y^n, z^n)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::{gcd, Embedding, Field, Fq};
use crate::poly::{det, BiPoly, TriForm, UniPoly};

/// A projective point normalized so its last nonzero coordinate is 1.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(pub [Fq; 3]);

impl ProjPoint {
    /// `None` when all coordinates vanish.
    pub fn new(field: &Field, c: [Fq; 3]) -> Option<ProjPoint> {
        let last = (0..3).rev().find(|&i| !c[i].is_zero())?;
        let inv = field.inv(c[last]).ok()?;
        Some(ProjPoint(c.map(|x| field.mul(x, inv))))
    }

    pub fn coords(&self) -> [Fq; 3] {
        self.0
    }

    pub fn has_zero_coordinate(&self) -> bool {
        self.0.iter().any(|c| c.is_zero())
    }

    /// Coordinates raised to the power `q`.
    pub fn power_map(&self, field: &Field, q: u64) -> ProjPoint {
        ProjPoint::new(field, self.0.map(|c| field.pow(c, q))).expect("nonzero point")
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SmoothStatus {
    Smooth,
    Singular,
    Inconclusive,
}

/// Outcome of [`CurveFamily::is_smooth`]. A witness lives in the degree
/// `witness_ext_degree` extension of the curve's field (built with
/// [`Field::extension`]); it is given whenever one was located.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessVerdict {
    pub status: SmoothStatus,
    pub witness: Option<ProjPoint>,
    pub witness_ext_degree: u32,
    pub checked_extension_degree: u32,
    pub reason: String,
}

/// A member of the family: field, `s`, `n` and coefficients `c_ij`.
///
/// `base_order` is the `q` of the Frobenius map; it stays fixed when the curve
/// is moved into an extension field to sample non-rational points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFamily {
    field: Field,
    base_order: u64,
    s: u32,
    n: u32,
    coeffs: BTreeMap<(u32, u32), Fq>,
}

impl CurveFamily {
    pub fn new(
        field: &Field,
        s: u32,
        n: u32,
        coeffs: impl IntoIterator<Item = ((u32, u32), Fq)>,
    ) -> Result<CurveFamily> {
        if s == 0 {
            return Err(Error::Schema("s must be at least 1".into()));
        }
        if n < 2 {
            return Err(Error::Schema("n must be at least 2".into()));
        }
        let mut map = BTreeMap::new();
        for ((i, j), c) in coeffs {
            if i + j > s {
                return Err(Error::Schema(format!(
                    "coefficient ({i},{j}) has i + j > s = {s}"
                )));
            }
            if !field.contains(c) {
                return Err(Error::FieldMismatch);
            }
            let slot = map.entry((i, j)).or_insert(Fq::ZERO);
            *slot = field.add(*slot, c);
        }
        map.retain(|_, c: &mut Fq| !c.is_zero());
        if map.is_empty() {
            return Err(Error::Schema("all coefficients are zero".into()));
        }
        Ok(CurveFamily {
            field: field.clone(),
            base_order: field.order(),
            s,
            n,
            coeffs: map,
        })
    }

    /// Conic-type member from the six coefficients `a_1..a_6` of
    /// `a1 x^2n + a2 x^n y^n + a3 y^2n + a4 x^n z^n + a5 y^n z^n + a6 z^2n`.
    pub fn from_aliases(field: &Field, n: u32, a: [Fq; 6]) -> Result<CurveFamily> {
        let keys = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)];
        CurveFamily::new(field, 2, n, keys.into_iter().zip(a))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn s(&self) -> u32 {
        self.s
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn degree(&self) -> u32 {
        self.s * self.n
    }
    /// `q` of the Frobenius map.
    pub fn base_order(&self) -> u64 {
        self.base_order
    }
    pub fn coeff(&self, i: u32, j: u32) -> Fq {
        self.coeffs.get(&(i, j)).copied().unwrap_or(Fq::ZERO)
    }
    pub fn coeffs(&self) -> impl Iterator<Item = ((u32, u32), Fq)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    /// `a_k` for `k` in `1..=6` when `s = 2`.
    pub fn alias(&self, k: usize) -> Fq {
        let (i, j) = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)][k - 1];
        self.coeff(i, j)
    }

    /// `s = 2` and `a_2 = a_4 = a_5 = 0`.
    pub fn is_fermat_type(&self) -> bool {
        match self.s {
            1 => true,
            2 => [2, 4, 5].iter().all(|&k| self.alias(k).is_zero()),
            _ => self
                .coeffs
                .keys()
                .all(|&(i, j)| i == self.s || j == self.s || i + j == 0),
        }
    }

    /// The degree-`s` companion form `G`.
    pub fn g_form(&self) -> TriForm {
        let s = self.s;
        TriForm::from_terms(
            &self.field,
            s,
            self.coeffs().map(|((i, j), c)| ([i, j, s - i - j], c)),
        )
        .expect("exponents sum to s")
    }

    /// The curve equation `F = G(x^n, y^n, z^n)`.
    pub fn f_form(&self) -> TriForm {
        self.g_form().inflate(self.n)
    }

    /// `F(x, y, 1)`.
    pub fn affine(&self) -> BiPoly {
        self.f_form().dehomogenize_z()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p.0).is_zero()
    }

    /// `F` at a point, through `G` on n-th powers.
    pub fn eval(&self, c: [Fq; 3]) -> Fq {
        let f = &self.field;
        self.g_form().eval(c.map(|x| f.pow(x, self.n as u64)))
    }

    /// Largest `v` with `p^v | n - 1`, and `m = (n - 1) / p^v`.
    pub fn v_and_m(&self) -> Option<(u32, u64)> {
        let p = self.field.p();
        let mut m = self.n as u64 - 1;
        let mut v = 0;
        while m > 0 && m.is_multiple_of(p) {
            m /= p;
            v += 1;
        }
        (v > 0).then_some((v, m))
    }

    /// The same curve over an extension field, keeping the Frobenius order.
    pub fn extend(&self, e: &Embedding) -> CurveFamily {
        CurveFamily {
            field: e.big.clone(),
            base_order: self.base_order,
            s: self.s,
            n: self.n,
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k, e.embed(c))).collect(),
        }
    }

    /// The degree-`s` osculating form
    /// `H_P = sum c_ij (a^{im} b^{jm} c^{tm})^{p^v} x^i y^j z^t` at `P = (a:b:c)`.
    pub fn osculating_form(&self, pt: &ProjPoint) -> Result<TriForm> {
        if pt.has_zero_coordinate() {
            return Err(Error::CoordinateZero);
        }
        let (v, m) = self.v_and_m().ok_or(Error::HypothesisPNotDividingNMinus1 {
            p: self.field.p(),
            nm1: self.n as u64 - 1,
        })?;
        let f = &self.field;
        let pv = f.p().pow(v);
        let s = self.s;
        let [a, b, c] = pt.0;
        let mut h = TriForm::zero(f, s);
        for ((i, j), cij) in self.coeffs() {
            let t = s - i - j;
            let mono = f.mul(
                f.mul(f.pow(a, i as u64 * m), f.pow(b, j as u64 * m)),
                f.pow(c, t as u64 * m),
            );
            h.add_term([i, j, t], f.mul(cij, f.pow(mono, pv)));
        }
        Ok(h)
    }

    /// Image of a point under the `q`-Frobenius, `q = base_order`.
    pub fn frobenius_image(&self, pt: &ProjPoint) -> ProjPoint {
        pt.power_map(&self.field, self.base_order)
    }

    /// Whether `Phi_q(P)` lies on the osculating curve at `P`.
    pub fn frobenius_on_osculating(&self, pt: &ProjPoint) -> Result<bool> {
        let h = self.osculating_form(pt)?;
        Ok(h.eval(self.frobenius_image(pt).0).is_zero())
    }

    /// `(a:b:c) -> (a^n : b^n : c^n)`.
    pub fn norm_projection(&self, pt: &ProjPoint) -> ProjPoint {
        pt.power_map(&self.field, self.n as u64)
    }

    /// Smoothness of `F`. A point of `F` is singular exactly when its image
    /// `Q` under the n-th power map lies on `G` and, coordinate by coordinate,
    /// either the coordinate of `Q` or the matching partial of `G` vanishes.
    /// This is exact for `s <= 2`; for larger `s` singular points of `G` with
    /// no zero coordinate are searched over extensions up to `max_ext`.
    pub fn is_smooth(&self, max_ext: u32) -> SmoothnessVerdict {
        let f = &self.field;
        let p = f.p();
        if (self.n as u64).is_multiple_of(p) {
            return self.singular_from_g(None, max_ext, "p divides n: F is a p-th power");
        }
        let s = self.s;
        // coordinate points: (1:0:0) singular iff c_{s0} = 0, and so on
        for (k, key) in [(s, 0), (0, s), (0, 0)].into_iter().enumerate() {
            if self.coeff(key.0, key.1).is_zero() {
                let mut c = [Fq::ZERO; 3];
                c[k] = Fq::ONE;
                let q = ProjPoint::new(f, c).unwrap();
                return self.singular_from_g(
                    Some((1, q)),
                    max_ext,
                    "a coordinate vertex lies on the curve",
                );
            }
        }
        // coordinate lines: a double root of G restricted to the line with both
        // remaining coordinates nonzero
        let g = self.g_form();
        let partials = g.partials();
        for zero in 0..3usize {
            let (u, w) = match zero {
                0 => (1usize, 2usize),
                1 => (0, 2),
                _ => (0, 1),
            };
            // restrict to the line coordinate[zero] = 0, set coordinate w = 1
            let restrict = |form: &TriForm| -> UniPoly {
                let mut c = vec![Fq::ZERO; s as usize + 1];
                for (e, a) in form.terms() {
                    if e[zero] == 0 {
                        c[e[u] as usize] = f.add(c[e[u] as usize], a);
                    }
                }
                UniPoly::new(f, c)
            };
            let mut gg = restrict(&g);
            for part in [&partials[u], &partials[w]] {
                gg = gg.gcd(&restrict(part));
            }
            if gg.degree().unwrap_or(0) == 0 && !gg.is_zero() {
                continue;
            }
            // common roots other than 0
            let mut stripped = gg.clone();
            while !stripped.is_zero() && stripped.coeff(0).is_zero() {
                stripped = UniPoly::new(f, stripped.coeffs()[1..].to_vec());
            }
            if stripped.is_zero() || stripped.degree().unwrap() > 0 {
                let witness = (1..=max_ext.max(1)).find_map(|k| {
                    let e = if k == 1 { None } else { f.extension(k).ok() };
                    let (field_k, embed): (Field, Box<dyn Fn(Fq) -> Fq>) = match &e {
                        None => (f.clone(), Box::new(|x| x)),
                        Some(e) => (e.big.clone(), Box::new(move |x| e.embed(x))),
                    };
                    if field_k.order() > 1 << 22 {
                        return None;
                    }
                    let poly = UniPoly::new(
                        &field_k,
                        stripped.coeffs().iter().map(|&c| embed(c)).collect(),
                    );
                    let root = field_k
                        .elements()
                        .find(|&r| !r.is_zero() && poly.eval(r).is_zero())?;
                    let mut c = [Fq::ZERO; 3];
                    c[u] = root;
                    c[w] = Fq::ONE;
                    Some((k, ProjPoint::new(&field_k, c).unwrap()))
                });
                return self.singular_from_g(
                    witness,
                    max_ext,
                    "G has a double root on a coordinate line",
                );
            }
        }
        // interior: singular points of G itself
        if s <= 2 {
            if s == 2 && self.conic_det().is_zero() {
                let q = self.conic_singular_point();
                return self.singular_from_g(
                    Some((1, q)),
                    max_ext,
                    "the companion conic is degenerate",
                );
            }
            return SmoothnessVerdict {
                status: SmoothStatus::Smooth,
                witness: None,
                witness_ext_degree: 0,
                checked_extension_degree: 0,
                reason: "closed-form criterion".into(),
            };
        }
        let mut checked = 0;
        for k in 1..=max_ext {
            let ext = if k == 1 { None } else { f.extension(k).ok() };
            let fk = ext.as_ref().map_or(f.clone(), |e| e.big.clone());
            let qk = fk.order();
            if qk.saturating_mul(qk) > 4_000_000 {
                break;
            }
            let map = |form: &TriForm| match &ext {
                None => form.clone(),
                Some(e) => form.map_coeffs(&e.big, |c| e.embed(c)),
            };
            let gk = map(&g);
            let pk: Vec<TriForm> = partials.iter().map(map).collect();
            for a in fk.elements().skip(1) {
                for b in fk.elements().skip(1) {
                    let pt = [a, b, Fq::ONE];
                    if gk.eval(pt).is_zero() && pk.iter().all(|d| d.eval(pt).is_zero()) {
                        let q = ProjPoint::new(&fk, pt).unwrap();
                        return self.singular_from_g(
                            Some((k, q)),
                            max_ext,
                            "G is singular at a point with no zero coordinate",
                        );
                    }
                }
            }
            checked = k;
        }
        SmoothnessVerdict {
            status: SmoothStatus::Inconclusive,
            witness: None,
            witness_ext_degree: 0,
            checked_extension_degree: checked,
            reason: "no singular point of G found in the searched extensions".into(),
        }
    }

    /// Builds a Singular verdict, lifting a singular configuration `Q` of `G`
    /// (over the degree-`k` extension) to a point of `F` by n-th roots.
    fn singular_from_g(
        &self,
        q: Option<(u32, ProjPoint)>,
        max_ext: u32,
        reason: &str,
    ) -> SmoothnessVerdict {
        let f = &self.field;
        let n = self.n as u64;
        let lift = q.and_then(|(k0, q)| {
            // try growing extensions containing the one Q lives in
            (1..=max_ext.max(1)).find_map(|mult| {
                let k = k0 * mult;
                let (field_k, up): (Field, Box<dyn Fn(Fq) -> Fq>) = if k == 1 {
                    (f.clone(), Box::new(|x| x))
                } else if mult == 1 {
                    let fk = f.extension(k0).ok()?.big;
                    (fk, Box::new(|x| x))
                } else {
                    let base = f.extension(k0).ok()?.big;
                    let e = base.extension(mult).ok()?;
                    let canonical = f.extension(k).ok()?.big;
                    if e.big != canonical {
                        return None;
                    }
                    (e.big.clone(), Box::new(move |x| e.embed(x)))
                };
                if field_k.order() > 1 << 22 {
                    return None;
                }
                let roots: Option<Vec<Fq>> =
                    q.0.iter()
                        .map(|&c| field_k.nth_roots(up(c), n).into_iter().next())
                        .collect();
                let roots = roots?;
                Some((k, ProjPoint::new(&field_k, [roots[0], roots[1], roots[2]])?))
            })
        });
        let (ext, witness) = match lift {
            Some((k, pt)) => (k, Some(pt)),
            None if (self.n as u64).is_multiple_of(f.p()) => {
                // every point of F is singular; take any rational one if present
                let pt = f.elements().find_map(|x| {
                    let c = [x, Fq::ONE, Fq::ONE];
                    self.eval(c)
                        .is_zero()
                        .then(|| ProjPoint::new(f, c).unwrap())
                });
                (1, pt)
            }
            None => (0, None),
        };
        SmoothnessVerdict {
            status: SmoothStatus::Singular,
            witness,
            witness_ext_degree: ext,
            checked_extension_degree: max_ext,
            reason: reason.into(),
        }
    }

    /// Symmetric matrix of the companion conic (s = 2).
    pub fn conic_matrix(&self) -> Vec<Vec<Fq>> {
        let f = &self.field;
        let half = f.inv(f.from_int(2)).expect("odd characteristic");
        let a = |k| self.alias(k);
        let h = |k| f.mul(a(k), half);
        vec![
            vec![a(1), h(2), h(4)],
            vec![h(2), a(3), h(5)],
            vec![h(4), h(5), a(6)],
        ]
    }

    pub fn conic_det(&self) -> Fq {
        det(&self.field, &self.conic_matrix()).expect("square")
    }

    fn conic_singular_point(&self) -> ProjPoint {
        let f = &self.field;
        let m = self.conic_matrix();
        // kernel vector from cross products of rows
        let cross = |r: &[Fq], s: &[Fq]| {
            [
                f.sub(f.mul(r[1], s[2]), f.mul(r[2], s[1])),
                f.sub(f.mul(r[2], s[0]), f.mul(r[0], s[2])),
                f.sub(f.mul(r[0], s[1]), f.mul(r[1], s[0])),
            ]
        };
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if let Some(pt) = ProjPoint::new(f, cross(&m[i], &m[j])) {
                return pt;
            }
        }
        // rank at most 1: any point on a nonzero row's orthogonal line
        let row = m
            .iter()
            .find(|r| r.iter().any(|c| !c.is_zero()))
            .cloned()
            .unwrap_or(vec![Fq::ZERO; 3]);
        for cand in [
            [Fq::ONE, Fq::ZERO, Fq::ZERO],
            [Fq::ZERO, Fq::ONE, Fq::ZERO],
            [Fq::ZERO, Fq::ZERO, Fq::ONE],
        ] {
            if let Some(pt) = ProjPoint::new(f, cross(&row, &cand)) {
                return pt;
            }
        }
        ProjPoint::new(f, [Fq::ZERO, Fq::ZERO, Fq::ONE]).unwrap()
    }

    /// Curve with the same coefficients and `n = (p^h - 1)/(p^v - 1)` over
    /// `F_{p^h}`, from a form over `F_{p^v}`. The form may also be given over
    /// `F_{p^h}` itself, in which case `v` is the least divisor of `h` whose
    /// subfield holds every coefficient.
    pub fn lift_conic(g: &TriForm, h: u32) -> Result<CurveFamily> {
        let small = g.field();
        let p = small.p();
        let (big, coeffs, v) = if small.h() == h {
            let v = (1..h)
                .filter(|v| h.is_multiple_of(*v))
                .find(|&v| g.terms().all(|(_, c)| small.in_subfield(c, v).unwrap()));
            let Some(v) = v else {
                let (e, _) = g
                    .terms()
                    .find(|(_, c)| {
                        (1..h)
                            .filter(|v| h.is_multiple_of(*v))
                            .all(|v| !small.in_subfield(*c, v).unwrap())
                    })
                    .unwrap_or(([0, 0, 0], Fq::ZERO));
                if h == 1 {
                    return Err(Error::BadTower { v: 1, h });
                }
                return Err(Error::CoefficientNotInSubfield {
                    i: e[0],
                    j: e[1],
                    v: h,
                });
            };
            let coeffs: Vec<(_, _)> = g.terms().map(|(e, c)| ((e[0], e[1]), c)).collect();
            (small.clone(), coeffs, v)
        } else {
            let v = small.h();
            if v >= h || !h.is_multiple_of(v) {
                return Err(Error::BadTower { v, h });
            }
            let e = small.extension(h / v)?;
            let coeffs: Vec<(_, _)> = g
                .terms()
                .map(|(ex, c)| ((ex[0], ex[1]), e.embed(c)))
                .collect();
            (e.big.clone(), coeffs, v)
        };
        let n = (p.pow(h) - 1) / (p.pow(v) - 1);
        CurveFamily::new(&big, g.degree(), n as u32, coeffs)
    }

    /// Sub-degree `v` with `v | h` and `v < h` for which all coefficient
    /// ratios lie in `F_{p^v}`; the smallest such `v`.
    pub fn defined_over(&self) -> Option<u32> {
        let f = &self.field;
        let h = f.h();
        let (_, lead) = self.coeffs().next()?;
        let inv = f.inv(lead).ok()?;
        (1..=h).filter(|v| h.is_multiple_of(*v)).find(|&v| {
            self.coeffs()
                .all(|(_, c)| f.in_subfield(f.mul(c, inv), v).unwrap())
        })
    }
}

/// `gcd`-style helper used by callers that need `n`-th root existence.
pub fn has_nth_root(field: &Field, a: Fq, n: u64) -> bool {
    if a.is_zero() {
        return true;
    }
    let order = field.order() - 1;
    let g = gcd(n, order);
    field.pow(a, order / g) == Fq::ONE
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn exe1() -> CurveFamily {
        let f = Field::new(43, 2, None).unwrap();
        let [one, three] = [f.from_int(1), f.from_int(3)];
        CurveFamily::from_aliases(&f, 44, [one, three, one, three, three, one]).unwrap()
    }

    #[test]
    fn companion_conic_of_degree_88_example() {
        let c = exe1();
        let g = c.g_form();
        let f = c.field();
        assert_eq!(g.degree(), 2);
        assert_eq!(g.coeff([2, 0, 0]), Fq::ONE);
        assert_eq!(g.coeff([1, 1, 0]), f.from_int(3));
        assert_eq!(g.coeff([1, 0, 1]), f.from_int(3));
        assert_eq!(g.coeff([0, 1, 1]), f.from_int(3));
        assert_eq!(c.degree(), 88);
        assert_eq!(c.f_form().coeff([44, 44, 0]), f.from_int(3));
    }

    #[test]
    fn g_on_nth_powers_matches_f() {
        let c = exe1();
        let f = c.field().clone();
        let ff = c.f_form();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let (u, w) = (Fq(rng.gen_range(0..1849)), Fq(rng.gen_range(0..1849)));
            let lhs = c.g_form().eval([f.pow(u, 44), f.pow(w, 44), Fq::ONE]);
            assert_eq!(lhs, ff.eval([u, w, Fq::ONE]));
        }
    }

    #[test]
    fn smoothness_examples() {
        assert_eq!(exe1().is_smooth(2).status, SmoothStatus::Smooth);
        let f = Field::new(43, 2, None).unwrap();
        let [zero, one, three] = [Fq::ZERO, f.from_int(1), f.from_int(3)];
        let bad = CurveFamily::from_aliases(&f, 44, [zero, three, one, three, three, one]).unwrap();
        let v = bad.is_smooth(2);
        assert_eq!(v.status, SmoothStatus::Singular);
        let w = v.witness.unwrap();
        assert_eq!(w, ProjPoint::new(&f, [one, zero, zero]).unwrap());
        let g11 = Field::new(11, 2, None).unwrap();
        let fermat = CurveFamily::new(
            &g11,
            1,
            24,
            [((1, 0), Fq::ONE), ((0, 1), Fq::ONE), ((0, 0), Fq::ONE)],
        )
        .unwrap();
        assert_eq!(fermat.is_smooth(2).status, SmoothStatus::Smooth);
    }

    #[test]
    fn singular_witnesses_kill_all_partials() {
        let f = Field::new(11, 2, None).unwrap();
        let i = |x| f.from_int(x);
        // a2^2 = 4 a1 a3: 4 = 4*1*1
        let c = CurveFamily::from_aliases(&f, 12, [i(1), i(2), i(1), i(0), i(1), i(1)]).unwrap();
        let v = c.is_smooth(4);
        assert_eq!(v.status, SmoothStatus::Singular);
        let w = v.witness.expect("witness");
        let fk = if v.witness_ext_degree == 1 {
            f.clone()
        } else {
            f.extension(v.witness_ext_degree).unwrap().big
        };
        let e = if v.witness_ext_degree == 1 {
            None
        } else {
            Some(f.extension(v.witness_ext_degree).unwrap())
        };
        let ck = e.as_ref().map_or(c.clone(), |e| c.extend(e));
        let ff = ck.f_form();
        assert!(ff.eval(w.0).is_zero());
        for d in ff.partials() {
            assert!(d.eval(w.0).is_zero());
        }
        assert_eq!(fk.order(), ck.field().order());
    }

    #[test]
    fn closed_form_matches_brute_force_for_small_curves() {
        // brute force over F_{q^k} is infeasible in general, so compare the
        // closed form with a search over the algebraic conditions on G
        let f = Field::prime(13).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let a = [0; 6].map(|_| Fq(rng.gen_range(0..13)));
            let Ok(c) = CurveFamily::from_aliases(&f, 14, a) else {
                continue;
            };
            let verdict = c.is_smooth(2).status;
            let aa = |k: usize| a[k - 1];
            let four = f.from_int(4);
            let smooth = !aa(1).is_zero()
                && !aa(3).is_zero()
                && !aa(6).is_zero()
                && !c.conic_det().is_zero()
                && f.mul(aa(2), aa(2)) != f.mul(four, f.mul(aa(1), aa(3)))
                && f.mul(aa(4), aa(4)) != f.mul(four, f.mul(aa(1), aa(6)))
                && f.mul(aa(5), aa(5)) != f.mul(four, f.mul(aa(3), aa(6)));
            assert_eq!(verdict == SmoothStatus::Smooth, smooth);
        }
    }

    #[test]
    fn osculating_form_passes_through_point() {
        let c = exe1();
        let f = c.field().clone();
        let mut found = 0;
        for x in f.elements().skip(1).step_by(5) {
            for y in f.elements().skip(1).step_by(37) {
                let pt = [x, y, Fq::ONE];
                if !c.eval(pt).is_zero() {
                    continue;
                }
                let p = ProjPoint::new(&f, pt).unwrap();
                let h = c.osculating_form(&p).unwrap();
                assert!(h.eval(p.0).is_zero());
                assert!(c.frobenius_on_osculating(&p).unwrap());
                found += 1;
            }
        }
        assert!(found > 0);
        let p = ProjPoint::new(&f, [Fq::ZERO, Fq::ONE, Fq::ONE]).unwrap();
        assert_eq!(c.osculating_form(&p), Err(Error::CoordinateZero));
    }

    #[test]
    fn lift_examples() {
        let f11 = Field::prime(11).unwrap();
        let conic = TriForm::from_terms(
            &f11,
            2,
            [
                ([2, 0, 0], Fq::ONE),
                ([0, 2, 0], Fq::ONE),
                ([0, 0, 2], Fq::ONE),
            ],
        )
        .unwrap();
        let c = CurveFamily::lift_conic(&conic, 2).unwrap();
        assert_eq!((c.n(), c.degree(), c.field().order()), (12, 24, 121));
        assert_eq!(
            CurveFamily::lift_conic(&conic, 1),
            Err(Error::BadTower { v: 1, h: 1 })
        );
        let e1 = exe1();
        let f43 = Field::prime(43).unwrap();
        let g = e1
            .g_form()
            .map_coeffs(&f43, |c| Fq(e1.field().to_int(c).unwrap() as u32));
        let lifted = CurveFamily::lift_conic(&g, 2).unwrap();
        assert_eq!(lifted.n(), 44);
        assert_eq!(
            lifted
                .g_form()
                .map_coeffs(&f43, |c| Fq(lifted.field().to_int(c).unwrap() as u32)),
            g
        );
    }

    #[test]
    fn frobenius_image_behaviour() {
        let f = Field::new(11, 2, None).unwrap();
        let c = CurveFamily::new(
            &f,
            1,
            12,
            [((1, 0), Fq::ONE), ((0, 1), Fq::ONE), ((0, 0), Fq::ONE)],
        )
        .unwrap();
        let e = f.extension(2).unwrap();
        let ce = c.extend(&e);
        let big = e.big.clone();
        let g = big.generator();
        let p = ProjPoint::new(&big, [g, Fq::ONE, Fq::ONE]).unwrap();
        let img = ce.frobenius_image(&p);
        assert_ne!(img, p);
        assert_eq!(ce.frobenius_image(&img), p);
        let r = ProjPoint::new(&big, [e.embed(f.generator()), Fq::ONE, Fq::ONE]).unwrap();
        assert_eq!(ce.frobenius_image(&r), r);
    }
}
