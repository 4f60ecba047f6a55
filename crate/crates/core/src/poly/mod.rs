//! Polynomials, truncated power series and determinants over a [`Field`].
//!
//! [`TriForm`] holds homogeneous forms in `x, y, z`, [`UniPoly`] dense
//! univariate polynomials, [`BiPoly`] affine curve equations and
//! [`PowerSeries`] local branch expansions whose coefficients are Hasse
//! derivatives.

mod form;
mod series;
mod uni;

pub use form::{Exps, TriForm};
pub use series::{binom_mod, branch_expand, hasse_product, series_det, BiPoly, PowerSeries};
pub use uni::{binomial_divides, resultant, UniPoly};

use crate::error::{Error, Result};
use crate::gf::{Field, Fq};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(field: &Field, m: &[Vec<Fq>]) -> Result<Fq> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    if n == 0 {
        return Ok(Fq::ONE);
    }
    let f = field;
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = Fq::ONE;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(Fq::ZERO);
            };
            a.swap(k, r);
            negate = !negate;
        }
        let prev_inv = f.inv(prev)?;
        for i in k + 1..n {
            for j in k + 1..n {
                let v = f.sub(f.mul(a[i][j], a[k][k]), f.mul(a[i][k], a[k][j]));
                a[i][j] = f.mul(v, prev_inv);
            }
        }
        prev = a[k][k];
    }
    let d = a[n - 1][n - 1];
    Ok(if negate { f.neg(d) } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cofactor(f: &Field, m: &[Vec<Fq>]) -> Fq {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len()).fold(Fq::ZERO, |acc, c| {
            let minor: Vec<Vec<Fq>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != c)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let t = f.mul(m[0][c], cofactor(f, &minor));
            if c % 2 == 0 {
                f.add(acc, t)
            } else {
                f.sub(acc, t)
            }
        })
    }

    #[test]
    fn identity_and_repeated_rows() {
        let f = Field::prime(43).unwrap();
        let id: Vec<Vec<Fq>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { Fq::ONE } else { Fq::ZERO })
                    .collect()
            })
            .collect();
        assert_eq!(det(&f, &id).unwrap(), Fq::ONE);
        let rep = vec![
            vec![f.from_int(1), f.from_int(2)],
            vec![f.from_int(1), f.from_int(2)],
        ];
        assert_eq!(det(&f, &rep).unwrap(), Fq::ZERO);
        assert_eq!(det(&f, &[vec![Fq::ONE, Fq::ONE]]), Err(Error::NotSquare));
    }

    #[test]
    fn conic_matrix_of_degree_88_example() {
        // x^2 + 3xy + y^2 + 3xz + 3yz + z^2 over F_43: [[1, 3/2, 3/2], [3/2, 1, 3/2], [3/2, 3/2, 1]]
        let f = Field::prime(43).unwrap();
        let half3 = f.div(f.from_int(3), f.from_int(2)).unwrap();
        let m = vec![
            vec![Fq::ONE, half3, half3],
            vec![half3, Fq::ONE, half3],
            vec![half3, half3, Fq::ONE],
        ];
        assert_eq!(det(&f, &m).unwrap(), cofactor(&f, &m));
        assert!(!det(&f, &m).unwrap().is_zero());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let f = Field::new(7, 2, None).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let n = rng.gen_range(1..6);
            let m: Vec<Vec<Fq>> = (0..n)
                .map(|_| (0..n).map(|_| Fq(rng.gen_range(0..49))).collect())
                .collect();
            assert_eq!(det(&f, &m).unwrap(), cofactor(&f, &m));
        }
    }
}
