use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::{Field, Fq};
use crate::poly::BiPoly;

/// Exponent triple `(i, j, t)` of `x^i y^j z^t`.
pub type Exps = [u32; 3];

/// Sparse homogeneous form in `x, y, z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriForm {
    field: Field,
    degree: u32,
    terms: BTreeMap<Exps, Fq>,
}

impl TriForm {
    pub fn zero(field: &Field, degree: u32) -> TriForm {
        TriForm {
            field: field.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        field: &Field,
        degree: u32,
        terms: impl IntoIterator<Item = (Exps, Fq)>,
    ) -> Result<TriForm> {
        let mut f = TriForm::zero(field, degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::Schema(format!(
                    "exponents {e:?} do not sum to the degree {degree}"
                )));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    /// Adds `c x^i y^j z^t`; the exponents must sum to the degree.
    pub fn add_term(&mut self, e: Exps, c: Fq) {
        debug_assert_eq!(e.iter().sum::<u32>(), self.degree);
        let slot = self.terms.entry(e).or_insert(Fq::ZERO);
        *slot = self.field.add(*slot, c);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, e: Exps) -> Fq {
        self.terms.get(&e).copied().unwrap_or(Fq::ZERO)
    }
    pub fn terms(&self) -> impl Iterator<Item = (Exps, Fq)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, pt: [Fq; 3]) -> Fq {
        let f = &self.field;
        self.terms.iter().fold(Fq::ZERO, |acc, (e, &c)| {
            let m = f.mul(
                f.mul(f.pow(pt[0], e[0] as u64), f.pow(pt[1], e[1] as u64)),
                f.pow(pt[2], e[2] as u64),
            );
            f.add(acc, f.mul(c, m))
        })
    }

    /// Formal partial derivatives; exponent multipliers are reduced mod p.
    pub fn partials(&self) -> [TriForm; 3] {
        let f = &self.field;
        let d = self.degree.saturating_sub(1);
        let mut out = [
            TriForm::zero(f, d),
            TriForm::zero(f, d),
            TriForm::zero(f, d),
        ];
        for (e, &c) in &self.terms {
            for (v, part) in out.iter_mut().enumerate() {
                if e[v] == 0 {
                    continue;
                }
                let mut e2 = *e;
                e2[v] -= 1;
                part.add_term(e2, f.mul(c, f.from_int(e[v] as i64)));
            }
        }
        out
    }

    pub fn add(&self, other: &TriForm) -> Result<TriForm> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Schema("adding forms of different degrees".into()));
        }
        let mut out = if self.is_zero() {
            TriForm::zero(&self.field, other.degree)
        } else {
            self.clone()
        };
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: Fq) -> TriForm {
        let mut out = TriForm::zero(&self.field, self.degree);
        for (e, a) in self.terms() {
            out.add_term(e, self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &TriForm) -> TriForm {
        let f = &self.field;
        let mut out = TriForm::zero(f, self.degree + other.degree);
        for (e, a) in self.terms() {
            for (g, b) in other.terms() {
                out.add_term([e[0] + g[0], e[1] + g[1], e[2] + g[2]], f.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> TriForm {
        let mut out = TriForm::from_terms(&self.field, 0, [([0, 0, 0], Fq::ONE)]).unwrap();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `f(l0 x, l1 y, l2 z)`.
    pub fn scale_vars(&self, l: [Fq; 3]) -> TriForm {
        let f = &self.field;
        let mut out = TriForm::zero(f, self.degree);
        for (e, c) in self.terms() {
            let m = (0..3).fold(c, |acc, v| f.mul(acc, f.pow(l[v], e[v] as u64)));
            out.add_term(e, m);
        }
        out
    }

    /// Substitutes `x -> x^n, y -> y^n, z -> z^n`.
    pub fn inflate(&self, n: u32) -> TriForm {
        let mut out = TriForm::zero(&self.field, self.degree * n);
        for (e, c) in self.terms() {
            out.add_term([e[0] * n, e[1] * n, e[2] * n], c);
        }
        out
    }

    /// Moves coefficients into `target` through `map` (e.g. a field embedding).
    pub fn map_coeffs(&self, target: &Field, map: impl Fn(Fq) -> Fq) -> TriForm {
        let mut out = TriForm::zero(target, self.degree);
        for (e, c) in self.terms() {
            out.add_term(e, map(c));
        }
        out
    }

    /// Affine polynomial `f(x, y, 1)`.
    pub fn dehomogenize_z(&self) -> BiPoly {
        BiPoly::from_terms(&self.field, self.terms().map(|(e, c)| (e[0], e[1], c)))
    }

    /// Reorders variables: output variable `k` is input variable `perm[k]`.
    pub fn permute(&self, perm: [usize; 3]) -> TriForm {
        let mut out = TriForm::zero(&self.field, self.degree);
        for (e, c) in self.terms() {
            out.add_term([e[perm[0]], e[perm[1]], e[perm[2]]], c);
        }
        out
    }
}
