use crate::error::{Error, Result};
use crate::gf::{Field, Fq};
use crate::poly::det;

/// Dense univariate polynomial, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Fq>,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Fq>) -> UniPoly {
        while coeffs.last() == Some(&Fq::ZERO) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &Field, c: &[i64]) -> UniPoly {
        UniPoly::new(field, c.iter().map(|&x| field.from_int(x)).collect())
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly::new(field, Vec::new())
    }

    /// `x^k`
    pub fn monomial(field: &Field, k: usize, c: Fq) -> UniPoly {
        let mut v = vec![Fq::ZERO; k + 1];
        v[k] = c;
        UniPoly::new(field, v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }
    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(
            &self.field,
            (0..n)
                .map(|i| self.field.add(self.coeff(i), o.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(
            &self.field,
            (0..n)
                .map(|i| self.field.sub(self.coeff(i), o.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: Fq) -> UniPoly {
        UniPoly::new(
            &self.field,
            self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Fq::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::new(&self.field, vec![Fq::ONE]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = f.inv(d.lead())?;
        let mut r = self.coeffs.clone();
        let mut qv = vec![Fq::ZERO; r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = f.mul(r[top], inv);
            qv[top - dd] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                let k = top - dd + i;
                r[k] = f.sub(r[k], f.mul(c, di));
            }
            while r.last() == Some(&Fq::ZERO) {
                r.pop();
            }
        }
        Ok((UniPoly::new(f, qv), UniPoly::new(f, r)))
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = self.field.inv(a.lead()).unwrap();
            a.scale(inv)
        }
    }

    /// Distinct roots lying in the field.
    pub fn roots(&self) -> Vec<Fq> {
        self.field
            .elements()
            .filter(|&x| self.eval(x).is_zero())
            .collect()
    }
}

/// Sylvester-matrix resultant. The first `deg b` rows carry the
/// coefficients of `a` (leading coefficient first), the remaining `deg a`
/// rows those of `b`.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Result<Fq> {
    let f = a.field().clone();
    let (da, db) = match (a.degree(), b.degree()) {
        (None, None) => return Err(Error::BothZero),
        (None, Some(0)) | (Some(0), None) => return Ok(Fq::ONE),
        (None, _) | (_, None) => return Ok(Fq::ZERO),
        (Some(x), Some(y)) => (x, y),
    };
    let n = da + db;
    if n == 0 {
        return Ok(Fq::ONE);
    }
    let mut m = vec![vec![Fq::ZERO; n]; n];
    for r in 0..db {
        for k in 0..=da {
            m[r][r + k] = a.coeff(da - k);
        }
    }
    for r in 0..da {
        for k in 0..=db {
            m[db + r][r + k] = b.coeff(db - k);
        }
    }
    det(&f, &m)
}

/// Whether `y^l - b1(x)` divides `y^m - b2(x)`, decided by `l | m` and
/// `b2 = b1^(m/l)`.
pub fn binomial_divides(l: u32, b1: &UniPoly, m: u32, b2: &UniPoly) -> Result<bool> {
    if b1.is_constant() || b2.is_constant() {
        return Err(Error::ConstantInput);
    }
    if l == 0 || m == 0 || !m.is_multiple_of(l) {
        return Ok(false);
    }
    Ok(b1.pow(m / l) == *b2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_basics() {
        let f = Field::prime(11).unwrap();
        let a = UniPoly::from_ints(&f, &[-1, 0, 1]);
        let b = UniPoly::from_ints(&f, &[-1, 1]);
        assert_eq!(resultant(&a, &b).unwrap(), Fq::ZERO);
        let xa = UniPoly::from_ints(&f, &[-3, 1]);
        let xb = UniPoly::from_ints(&f, &[-5, 1]);
        // det [[1,-3],[1,-5]] = -5 + 3
        assert_eq!(resultant(&xa, &xb).unwrap(), f.from_int(-2));
        assert_eq!(
            resultant(&UniPoly::zero(&f), &UniPoly::zero(&f)),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn resultant_zero_iff_common_factor() {
        use rand::{Rng, SeedableRng};
        let f = Field::new(5, 2, None).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut rand_poly = |deg: usize| {
            let mut v: Vec<Fq> = (0..deg).map(|_| Fq(rng.gen_range(0..25))).collect();
            v.push(Fq(rng.gen_range(1..25)));
            UniPoly::new(&f, v)
        };
        for _ in 0..60 {
            let c = rand_poly(1);
            let a = rand_poly(3).mul(&c);
            let b = rand_poly(4);
            let b2 = b.mul(&c);
            assert_eq!(resultant(&a, &b2).unwrap(), Fq::ZERO);
            let g = a.gcd(&b);
            assert_eq!(
                resultant(&a, &b).unwrap().is_zero(),
                g.degree().unwrap() > 0
            );
        }
    }

    #[test]
    fn binomial_division_criterion() {
        let f = Field::prime(7).unwrap();
        let x = UniPoly::from_ints(&f, &[0, 1]);
        let x2 = UniPoly::from_ints(&f, &[0, 0, 1]);
        let x3 = UniPoly::from_ints(&f, &[0, 0, 0, 1]);
        assert!(binomial_divides(2, &x, 4, &x2).unwrap());
        assert!(!binomial_divides(2, &x, 4, &x3).unwrap());
        assert!(!binomial_divides(3, &x, 5, &x2).unwrap());
        assert_eq!(
            binomial_divides(2, &UniPoly::from_ints(&f, &[3]), 4, &x2),
            Err(Error::ConstantInput)
        );
    }

    #[test]
    fn divrem_roundtrip() {
        let f = Field::prime(13).unwrap();
        let a = UniPoly::from_ints(&f, &[3, 1, 4, 1, 5, 9]);
        let b = UniPoly::from_ints(&f, &[2, 6, 5]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
