//! JSON documents for fields, curves, forms and quartics.
//!
//! Field elements are written as coordinate vectors over the power basis of
//! the field's modulus, constant term first. On input a bare integer is also
//! accepted for elements of the prime field.

use serde::{Deserialize, Serialize};

use crate::curve::CurveFamily;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec, Fq};
use crate::poly::TriForm;
use crate::quartic::{QuarticBde, QuarticSym};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub p: u64,
    #[serde(default = "one")]
    pub h: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one() -> u32 {
    1
}

impl FieldDoc {
    pub fn build(&self) -> Result<Field> {
        Field::new(self.p, self.h, self.modulus.clone())
    }

    pub fn of(field: &Field) -> FieldDoc {
        let FieldSpec { p, h, modulus } = field.spec().clone();
        FieldDoc {
            p,
            h,
            modulus: Some(modulus),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Elem {
    Int(i64),
    Coords(Vec<i64>),
}

impl Elem {
    pub fn to_fq(&self, field: &Field) -> Result<Fq> {
        match self {
            Elem::Int(n) => Ok(field.from_int(*n)),
            Elem::Coords(c) => field
                .from_coords_signed(c)
                .map_err(|e| Error::Schema(format!("bad coefficient {c:?}: {e}"))),
        }
    }

    pub fn of(field: &Field, a: Fq) -> Elem {
        Elem::Coords(field.coords(a).into_iter().map(|c| c as i64).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCoeff {
    pub i: u32,
    pub j: u32,
    pub c: Elem,
}

/// `{"field": {...}, "s": 2, "n": 44, "coeffs": [{"i": 2, "j": 0, "c": [1, 0]}, ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub field: FieldDoc,
    pub s: u32,
    pub n: u32,
    pub coeffs: Vec<CurveCoeff>,
}

impl CurveDoc {
    pub fn build(&self) -> Result<CurveFamily> {
        let field = self.field.build()?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if c.i + c.j > self.s {
                return Err(Error::Schema(format!(
                    "coefficient ({}, {}) has i + j > s = {}",
                    c.i, c.j, self.s
                )));
            }
            coeffs.push(((c.i, c.j), c.c.to_fq(&field)?));
        }
        CurveFamily::new(&field, self.s, self.n, coeffs)
    }

    pub fn of(curve: &CurveFamily) -> CurveDoc {
        let f = curve.field();
        CurveDoc {
            field: FieldDoc::of(f),
            s: curve.s(),
            n: curve.n(),
            coeffs: curve
                .coeffs()
                .filter(|(_, c)| !c.is_zero())
                .map(|((i, j), c)| CurveCoeff {
                    i,
                    j,
                    c: Elem::of(f, c),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub i: u32,
    pub j: u32,
    pub t: u32,
    pub c: Elem,
}

/// `{"degree": 2, "terms": [{"i": 1, "j": 1, "t": 0, "c": [3]}, ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDoc {
    pub degree: u32,
    pub terms: Vec<Term>,
}

impl FormDoc {
    pub fn build(&self, field: &Field) -> Result<TriForm> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.i + t.j + t.t != self.degree {
                return Err(Error::Schema(format!(
                    "term x^{} y^{} z^{} is not of degree {}",
                    t.i, t.j, t.t, self.degree
                )));
            }
            terms.push(([t.i, t.j, t.t], t.c.to_fq(field)?));
        }
        TriForm::from_terms(field, self.degree, terms)
    }

    pub fn of(form: &TriForm) -> FormDoc {
        let f = form.field();
        let mut terms: Vec<Term> = form
            .terms()
            .map(|(e, c)| Term {
                i: e[0],
                j: e[1],
                t: e[2],
                c: Elem::of(f, c),
            })
            .collect();
        terms.sort_by_key(|t| std::cmp::Reverse([t.i, t.j, t.t]));
        FormDoc {
            degree: form.degree(),
            terms,
        }
    }
}

/// A form together with its field, as used for conic inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldFormDoc {
    pub field: FieldDoc,
    #[serde(flatten)]
    pub form: FormDoc,
}

impl FieldFormDoc {
    pub fn build(&self) -> Result<TriForm> {
        self.form.build(&self.field.build()?)
    }

    pub fn of(form: &TriForm) -> FieldFormDoc {
        FieldFormDoc {
            field: FieldDoc::of(form.field()),
            form: FormDoc::of(form),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymCoeffs {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
    pub e: Elem,
    pub f: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BdeCoeffs {
    pub b: Elem,
    pub d: Elem,
    pub e: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum QuarticDoc {
    Sym { field: FieldDoc, coeffs: SymCoeffs },
    Bde { field: FieldDoc, coeffs: BdeCoeffs },
}

pub enum Quartic {
    Sym(QuarticSym),
    Bde(QuarticBde),
}

impl QuarticDoc {
    pub fn build(&self) -> Result<Quartic> {
        match self {
            QuarticDoc::Sym { field, coeffs } => {
                let f = field.build()?;
                let c = [
                    &coeffs.a, &coeffs.b, &coeffs.c, &coeffs.d, &coeffs.e, &coeffs.f,
                ];
                let mut out = [Fq::ZERO; 6];
                for (o, e) in out.iter_mut().zip(c) {
                    *o = e.to_fq(&f)?;
                }
                Ok(Quartic::Sym(QuarticSym::new(&f, out)?))
            }
            QuarticDoc::Bde { field, coeffs } => {
                let f = field.build()?;
                Ok(Quartic::Bde(QuarticBde::new(
                    &f,
                    coeffs.b.to_fq(&f)?,
                    coeffs.d.to_fq(&f)?,
                    coeffs.e.to_fq(&f)?,
                )?))
            }
        }
    }
}

/// Reads any of the documents above from a JSON string.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_roundtrip() {
        let text = r#"{"field": {"p": 19, "h": 2}, "s": 2, "n": 10,
            "coeffs": [{"i": 2, "j": 0, "c": 1}, {"i": 1, "j": 1, "c": 2},
                       {"i": 0, "j": 2, "c": -1}, {"i": 0, "j": 0, "c": [1, 0]}]}"#;
        let doc: CurveDoc = parse(text).unwrap();
        let curve = doc.build().unwrap();
        assert_eq!(curve.degree(), 20);
        let again = CurveDoc::of(&curve);
        assert_eq!(again.field.modulus, Some(vec![1, 0, 1]));
        assert_eq!(again.build().unwrap(), curve);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse::<CurveDoc>("{}"), Err(Error::Schema(_))));
        let doc: CurveDoc =
            parse(r#"{"field": {"p": 7}, "s": 1, "n": 2, "coeffs": [{"i": 2, "j": 0, "c": 1}]}"#)
                .unwrap();
        assert!(matches!(doc.build(), Err(Error::Schema(_))));
        let bad: FieldFormDoc = parse(
            r#"{"field": {"p": 7}, "degree": 2, "terms": [{"i": 1, "j": 0, "t": 0, "c": 1}]}"#,
        )
        .unwrap();
        assert!(matches!(bad.build(), Err(Error::Schema(_))));
    }

    #[test]
    fn quartic_docs() {
        let q: QuarticDoc =
            parse(r#"{"family": "bde", "field": {"p": 11}, "coeffs": {"b": 2, "d": 2, "e": 2}}"#)
                .unwrap();
        match q.build().unwrap() {
            Quartic::Bde(b) => assert!(b.reducible()),
            Quartic::Sym(_) => unreachable!(),
        }
        let q: QuarticDoc = parse(
            r#"{"family": "sym", "field": {"p": 11}, "coeffs": {"a": 1, "b": 1, "c": 1, "d": 0, "e": 0, "f": 0}}"#,
        )
        .unwrap();
        assert!(matches!(q.build().unwrap(), Quartic::Sym(s) if s.cremona_irreducible()));
    }

    #[test]
    fn form_roundtrip() {
        let f = Field::new(7, 2, None).unwrap();
        let g =
            TriForm::from_terms(&f, 2, [([2, 0, 0], f.t()), ([0, 1, 1], f.from_int(3))]).unwrap();
        let doc = FieldFormDoc::of(&g);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(parse::<FieldFormDoc>(&text).unwrap().build().unwrap(), g);
    }
}
