//! Two families of plane quartics with explicit irreducibility criteria.
//!
//! [`QuarticSym`] is `a(xy)^2 + b(xz)^2 + c(yz)^2 + xyz(dx + ey + fz)`, the
//! image of a conic under the standard quadratic Cremona map.
//! [`QuarticBde`] is the three-parameter family
//!
//! ```text
//! ((x+y+z)^2 - b^2 xy - d^2 xz + e^2 yz)^2 - 4((bd - e)x - ey - ez)^2 yz
//! ```
//!
//! which is reducible exactly when two parameters vanish or
//! `b^2 + d^2 + e^2 - bde = 4`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Embedding, Field, Fq};
use crate::poly::{det, Exps, TriForm};

fn linear(f: &Field, c: [Fq; 3]) -> TriForm {
    TriForm::from_terms(
        f,
        1,
        [([1, 0, 0], c[0]), ([0, 1, 0], c[1]), ([0, 0, 1], c[2])],
    )
    .expect("degree 1")
}

fn monomial(f: &Field, e: Exps, c: Fq) -> TriForm {
    TriForm::from_terms(f, e.iter().sum(), [(e, c)]).expect("single term")
}

fn check_odd(field: &Field) -> Result<()> {
    if field.p() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticSym {
    field: Field,
    /// `[a, b, c, d, e, f]`
    coeffs: [Fq; 6],
}

impl QuarticSym {
    pub fn new(field: &Field, coeffs: [Fq; 6]) -> Result<QuarticSym> {
        check_odd(field)?;
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroForm);
        }
        Ok(QuarticSym {
            field: field.clone(),
            coeffs,
        })
    }

    /// The quartic attached to the conic
    /// `a1 x^2 + a2 xy + a3 y^2 + a4 xz + a5 yz + a6 z^2`, namely
    /// `a6 x^2y^2 + a3 x^2z^2 + a1 y^2z^2 + xyz(a5 x + a4 y + a2 z)`.
    pub fn from_conic(field: &Field, a: [Fq; 6]) -> Result<QuarticSym> {
        QuarticSym::new(field, [a[5], a[2], a[0], a[4], a[3], a[1]])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> [Fq; 6] {
        self.coeffs
    }

    pub fn form(&self) -> TriForm {
        let [a, b, c, d, e, f] = self.coeffs;
        TriForm::from_terms(
            &self.field,
            4,
            [
                ([2, 2, 0], a),
                ([2, 0, 2], b),
                ([0, 2, 2], c),
                ([2, 1, 1], d),
                ([1, 2, 1], e),
                ([1, 1, 2], f),
            ],
        )
        .expect("degree 4")
    }

    /// `abc * det [[a, d/2, e/2], [d/2, b, f/2], [e/2, f/2, c]]`.
    pub fn criterion_value(&self) -> Fq {
        let fl = &self.field;
        let [a, b, c, d, e, f] = self.coeffs;
        let half = fl.inv(fl.from_int(2)).expect("odd characteristic");
        let (d, e, f) = (fl.mul(d, half), fl.mul(e, half), fl.mul(f, half));
        let m = vec![vec![a, d, e], vec![d, b, f], vec![e, f, c]];
        let dt = det(fl, &m).expect("square");
        fl.mul(fl.mul(fl.mul(a, b), c), dt)
    }

    pub fn cremona_irreducible(&self) -> bool {
        !self.criterion_value().is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticBde {
    field: Field,
    b: Fq,
    d: Fq,
    e: Fq,
}

/// Output of [`QuarticBde::factorization`]: two conics over `ext.big` whose
/// product is the quartic.
#[derive(Clone, Debug)]
pub struct BdeFactorization {
    pub ext: Embedding,
    pub u: Fq,
    pub v: Fq,
    pub t: Fq,
    pub factors: [TriForm; 2],
}

/// Collinearity of the three marked points, computed two ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Collinearity {
    pub by_determinant: bool,
    pub by_condition: bool,
}

impl QuarticBde {
    pub fn new(field: &Field, b: Fq, d: Fq, e: Fq) -> Result<QuarticBde> {
        check_odd(field)?;
        if b.is_zero() && d.is_zero() && e.is_zero() {
            return Err(Error::AllZero);
        }
        Ok(QuarticBde {
            field: field.clone(),
            b,
            d,
            e,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn params(&self) -> [Fq; 3] {
        [self.b, self.d, self.e]
    }

    /// `b^2 + d^2 + e^2 - bde`
    pub fn invariant(&self) -> Fq {
        let f = &self.field;
        let (b, d, e) = (self.b, self.d, self.e);
        let sq = f.add(f.add(f.square(b), f.square(d)), f.square(e));
        f.sub(sq, f.mul(f.mul(b, d), e))
    }

    fn zero_count(&self) -> usize {
        [self.b, self.d, self.e]
            .iter()
            .filter(|c| c.is_zero())
            .count()
    }

    pub fn form(&self) -> TriForm {
        let f = &self.field;
        let (b, d, e) = (self.b, self.d, self.e);
        let inner = linear(f, [Fq::ONE; 3])
            .pow(2)
            .add(&monomial(f, [1, 1, 0], f.neg(f.square(b))))
            .and_then(|g| g.add(&monomial(f, [1, 0, 1], f.neg(f.square(d)))))
            .and_then(|g| g.add(&monomial(f, [0, 1, 1], f.square(e))))
            .expect("degree 2");
        let l = linear(f, [f.sub(f.mul(b, d), e), f.neg(e), f.neg(e)]);
        inner
            .pow(2)
            .add(&l.pow(2).mul(&monomial(f, [0, 1, 1], f.from_int(-4))))
            .expect("degree 4")
    }

    /// The same quartic written with the roles of `x, b` and `z, e` swapped.
    pub fn alternate_form(&self) -> TriForm {
        let f = &self.field;
        let (b, d, e) = (self.b, self.d, self.e);
        let inner = linear(f, [Fq::ONE; 3])
            .pow(2)
            .add(&monomial(f, [0, 1, 1], f.neg(f.square(e))))
            .and_then(|g| g.add(&monomial(f, [1, 0, 1], f.neg(f.square(d)))))
            .and_then(|g| g.add(&monomial(f, [1, 1, 0], f.square(b))))
            .expect("degree 2");
        let l = linear(f, [f.neg(b), f.neg(b), f.sub(f.mul(e, d), b)]);
        inner
            .pow(2)
            .add(&l.pow(2).mul(&monomial(f, [1, 1, 0], f.from_int(-4))))
            .expect("degree 4")
    }

    /// `(e^2 : d^2 : bde - d^2 - e^2)`, `(e^2 : bde - b^2 - e^2 : b^2)`,
    /// `(bde - d^2 - b^2 : d^2 : b^2)` as raw coordinate triples.
    pub fn marked_points(&self) -> [[Fq; 3]; 3] {
        let f = &self.field;
        let (b2, d2, e2) = (f.square(self.b), f.square(self.d), f.square(self.e));
        let bde = f.mul(f.mul(self.b, self.d), self.e);
        [
            [e2, d2, f.sub(f.sub(bde, d2), e2)],
            [e2, f.sub(f.sub(bde, b2), e2), b2],
            [f.sub(f.sub(bde, d2), b2), d2, b2],
        ]
    }

    pub fn reducible(&self) -> bool {
        self.zero_count() >= 2 || self.invariant() == self.field.from_int(4)
    }

    /// When two parameters vanish the quartic is the square of a conic;
    /// returns that conic, checked against [`QuarticBde::form`].
    pub fn square_root(&self) -> Option<TriForm> {
        if self.zero_count() < 2 {
            return None;
        }
        let f = &self.field;
        let s = linear(f, [Fq::ONE; 3]).pow(2);
        let conic = if self.e.is_zero() {
            s.add(&monomial(f, [1, 1, 0], f.neg(f.square(self.b))))
                .and_then(|g| g.add(&monomial(f, [1, 0, 1], f.neg(f.square(self.d)))))
        } else {
            s.add(&monomial(f, [0, 1, 1], f.neg(f.square(self.e))))
        }
        .expect("degree 2");
        (conic.pow(2) == self.form()).then_some(conic)
    }

    /// Splits the quartic as `H(x, u^2 y, t^2 z) * H(x, y/u^2, z/t^2)` with
    /// `H = x^2 + y^2 + z^2 - 2(xy + xz + yz)`, `b = u + 1/u`, `e = v + 1/v`
    /// and `t` in `{uv, u/v}` satisfying `d = t + 1/t`. Works over the
    /// quadratic extension and verifies the product.
    pub fn factorization(&self) -> Result<BdeFactorization> {
        if self.invariant() != self.field.from_int(4) {
            return Err(Error::PreconditionFails(
                "b^2 + d^2 + e^2 - bde = 4 does not hold".into(),
            ));
        }
        let ext = self.field.extension(2)?;
        let k = &ext.big;
        let (b, d, e) = (ext.embed(self.b), ext.embed(self.d), ext.embed(self.e));
        let root = |s: Fq| -> Result<Fq> {
            // T^2 - sT + 1 = 0
            let disc = k.sub(k.square(s), k.from_int(4));
            let r = k.sqrt(disc).ok_or_else(|| {
                Error::Internal("no square root in the quadratic extension".into())
            })?;
            k.div(k.add(s, r), k.from_int(2))
        };
        let u = root(b)?;
        let v = root(e)?;
        let v_inv = k.inv(v)?;
        let t = [k.mul(u, v), k.mul(u, v_inv)]
            .into_iter()
            .find(|&t| k.add(t, k.inv(t).expect("t is a unit")) == d)
            .ok_or(Error::NoConsistentT)?;
        let h = linear(k, [Fq::ONE; 3]).pow(2).add(&TriForm::from_terms(
            k,
            2,
            [
                ([1, 1, 0], k.from_int(-4)),
                ([1, 0, 1], k.from_int(-4)),
                ([0, 1, 1], k.from_int(-4)),
            ],
        )?)?;
        let (u2, t2) = (k.square(u), k.square(t));
        let first = h.scale_vars([Fq::ONE, u2, t2]);
        let second = h.scale_vars([Fq::ONE, k.inv(u2)?, k.inv(t2)?]);
        let target = self.form().map_coeffs(k, |c| ext.embed(c));
        if first.mul(&second) != target {
            return Err(Error::Internal(
                "factor product differs from the quartic".into(),
            ));
        }
        Ok(BdeFactorization {
            ext,
            u,
            v,
            t,
            factors: [first, second],
        })
    }

    /// Errors with `Internal` if the determinant and the closed-form
    /// condition `bde(b^2 + d^2 + e^2 - bde) = 0` disagree.
    pub fn collinear(&self) -> Result<bool> {
        let c = self.collinearity();
        if c.by_determinant != c.by_condition {
            return Err(Error::Internal(format!("collinearity mismatch: {c:?}")));
        }
        Ok(c.by_determinant)
    }

    pub fn collinearity(&self) -> Collinearity {
        let f = &self.field;
        let pts: Vec<Vec<Fq>> = self.marked_points().iter().map(|p| p.to_vec()).collect();
        let by_determinant = det(f, &pts).expect("square").is_zero();
        let bde = f.mul(f.mul(self.b, self.d), self.e);
        Collinearity {
            by_determinant,
            by_condition: f.mul(bde, self.invariant()).is_zero(),
        }
    }
}
