//! (Frobenius) classicality of family members with respect to lines,
//! conics and degree-s curves, and a Wronskian oracle that decides Frobenius
//! nonclassicality from local expansions alone.

use rayon::prelude::*;
use serde::Serialize;

use crate::count::{half_descent_normal_form, scaling_root};
use crate::curve::{CurveFamily, SmoothStatus, SmoothnessVerdict};
use crate::error::{Error, Result};
use crate::gf::{Field, Fq};
use crate::poly::{branch_expand, det, series_det, BiPoly, PowerSeries};

/// Identifiers for the criteria a verdict rests on.
pub mod criteria {
    /// Conic-type members are Frobenius classical for lines.
    pub const LINE_CLASSICAL: &str = "line-classical";
    /// Fermat curves: Frobenius nonclassical for lines iff `n = (q-1)/(p^v-1)` over `F_{p^v}`.
    pub const FERMAT_LINE_DESCENT: &str = "fermat-line-descent";
    /// Nonclassical for conics iff `p | n-1`, or `p | 2n-1` with a single cross term.
    pub const CONIC_ORDER: &str = "conic-order-criterion";
    /// `p | n-1`, `n = (q-1)/(p^v-1)` and the curve defined over `F_{p^v}`.
    pub const SUBFIELD_DESCENT: &str = "subfield-descent";
    /// `p | 2n-1`, single cross term, `n = (q-1)/(2(p^v-1))`, defined over `F_{p^v}` after scaling.
    pub const SCALED_HALF_DESCENT: &str = "scaled-half-descent";
    /// Osculating-curve sufficiency for degree-s curves.
    pub const OSCULATING_SUFFICIENCY: &str = "osculating-sufficiency";
}
use criteria::*;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Classical,
    Nonclassical,
    FrobeniusClassical,
    FrobeniusNonclassical,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub theorem: &'static str,
    pub v: Option<u32>,
    /// Power-basis coordinates of the scaling element `alpha`, if one was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaling: Option<Vec<u64>>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(status: Status, theorem: &'static str) -> Verdict {
        Verdict {
            status,
            theorem,
            v: None,
            scaling: None,
            notes: Vec::new(),
        }
    }
    fn with_v(mut self, v: u32) -> Verdict {
        self.v = Some(v);
        self
    }
    fn note(mut self, s: impl Into<String>) -> Verdict {
        self.notes.push(s.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothSummary {
    pub status: SmoothStatus,
    pub checked_extension_degree: u32,
    pub reason: String,
}

impl From<&SmoothnessVerdict> for SmoothSummary {
    fn from(v: &SmoothnessVerdict) -> SmoothSummary {
        SmoothSummary {
            status: v.status,
            checked_extension_degree: v.checked_extension_degree,
            reason: v.reason.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub theorem: &'static str,
    pub v: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaling: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub smooth: SmoothSummary,
    pub fermat_type: bool,
    pub d1_frobenius_classical: Option<Verdict>,
    pub d2_classical: Option<Verdict>,
    pub d2_frobenius_classical: Option<Verdict>,
    pub ds_nonclassical_sufficient: Option<bool>,
    pub ds: Option<Verdict>,
    pub witness: Option<Witness>,
    pub assumption_violations: Vec<String>,
}

/// Runs every engine that applies to the curve's `s`.
pub fn classify(curve: &CurveFamily) -> ClassificationReport {
    let smooth = curve.is_smooth(DEFAULT_MAX_EXT);
    let mut violations = Vec::new();
    let mut collect = |r: Result<Verdict>| match r {
        Ok(v) => Some(v),
        Err(Error::AssumptionViolated(list)) => {
            for item in list {
                if !violations.contains(&item) {
                    violations.push(item);
                }
            }
            None
        }
        Err(e) => {
            violations.push(e.to_string());
            None
        }
    };
    let d1 = if curve.s() <= 2 {
        collect(classify_d1(curve))
    } else {
        None
    };
    let (d2c, d2f) = if curve.s() == 2 {
        match classify_d2(curve) {
            Ok((a, b)) => (Some(a), Some(b)),
            Err(e) => {
                collect(Err(e));
                (None, None)
            }
        }
    } else {
        (None, None)
    };
    let ds = if curve.s() >= 3 {
        collect(classify_ds(curve))
    } else {
        None
    };
    let lead = [&d2f, &ds, &d1]
        .into_iter()
        .flatten()
        .find(|v| v.status == Status::FrobeniusNonclassical)
        .or(d2f.as_ref().or(ds.as_ref()).or(d1.as_ref()));
    let witness = lead.map(|v| Witness {
        theorem: v.theorem,
        v: v.v,
        scaling: v.scaling.clone(),
    });
    ClassificationReport {
        smooth: (&smooth).into(),
        fermat_type: curve.is_fermat_type(),
        d1_frobenius_classical: d1,
        d2_classical: d2c,
        d2_frobenius_classical: d2f,
        ds_nonclassical_sufficient: ds
            .as_ref()
            .map(|v| v.status == Status::FrobeniusNonclassical),
        ds,
        witness,
        assumption_violations: violations,
    }
}

pub const DEFAULT_MAX_EXT: u32 = 6;

fn proper_divisors(h: u32) -> impl Iterator<Item = u32> {
    (1..h).filter(move |v| h.is_multiple_of(*v))
}

/// Sub-degree `v` with `n = (q-1)/(k (p^v-1))`.
fn descent_v(curve: &CurveFamily, k: u64) -> Option<u32> {
    let f = curve.field();
    let q = f.order();
    proper_divisors(f.h()).find(|&v| {
        let den = k * (f.p().pow(v) - 1);
        (q - 1).is_multiple_of(den) && (q - 1) / den == curve.n() as u64
    })
}

fn defined_over(curve: &CurveFamily, v: u32) -> bool {
    curve.defined_over().is_some_and(|w| v.is_multiple_of(w))
}

fn smooth_violation(curve: &CurveFamily, list: &mut Vec<String>) {
    let sv = curve.is_smooth(DEFAULT_MAX_EXT);
    if sv.status == SmoothStatus::Singular {
        list.push(format!("the curve must be nonsingular ({})", sv.reason));
    }
}

/// Frobenius (non)classicality for lines.
pub fn classify_d1(curve: &CurveFamily) -> Result<Verdict> {
    let f = curve.field();
    let mut bad = Vec::new();
    if f.p() == 2 {
        bad.push("p > 2 required".to_string());
    }
    match curve.s() {
        1 | 2 => smooth_violation(curve, &mut bad),
        s => bad.push(format!(
            "the line engine covers s = 1 and s = 2, got s = {s}"
        )),
    }
    if curve.s() == 2 && curve.is_fermat_type() {
        bad.push("a conic-type curve must have a nonzero cross term (not of Fermat type)".into());
    }
    if !bad.is_empty() {
        return Err(Error::AssumptionViolated(bad));
    }
    if curve.s() == 2 {
        return Ok(Verdict::new(Status::FrobeniusClassical, LINE_CLASSICAL));
    }
    Ok(match descent_v(curve, 1) {
        Some(v) if defined_over(curve, v) => {
            Verdict::new(Status::FrobeniusNonclassical, FERMAT_LINE_DESCENT).with_v(v)
        }
        Some(v) => Verdict::new(Status::FrobeniusClassical, FERMAT_LINE_DESCENT).note(format!(
            "n = (q-1)/(p^{v}-1) but the curve is not defined over F_(p^{v})"
        )),
        None => Verdict::new(Status::FrobeniusClassical, FERMAT_LINE_DESCENT)
            .note("n is not (q-1)/(p^v-1)"),
    })
}

/// Hypotheses of the conic engines; an empty list means they all hold.
pub fn d2_violations(curve: &CurveFamily) -> Vec<String> {
    let f = curve.field();
    let mut bad = Vec::new();
    if curve.s() != 2 {
        bad.push(format!(
            "the conic engine needs s = 2, got s = {}",
            curve.s()
        ));
        return bad;
    }
    if f.p() <= 7 {
        bad.push(format!("p > 7 required, got p = {}", f.p()));
    }
    if curve.n() <= 2 {
        bad.push(format!("n > 2 required, got n = {}", curve.n()));
    }
    smooth_violation(curve, &mut bad);
    if curve.is_fermat_type() {
        bad.push("a nonzero cross term is required (not of Fermat type)".into());
    }
    bad
}

fn single_cross_term(curve: &CurveFamily) -> bool {
    [2, 4, 5]
        .iter()
        .filter(|&&k| !curve.alias(k).is_zero())
        .count()
        == 1
}

/// Classicality and Frobenius classicality for conics.
pub fn classify_d2(curve: &CurveFamily) -> Result<(Verdict, Verdict)> {
    let bad = d2_violations(curve);
    if !bad.is_empty() {
        return Err(Error::AssumptionViolated(bad));
    }
    let f = curve.field();
    let p = f.p();
    let n = curve.n() as u64;
    let divides_n1 = (n - 1).is_multiple_of(p);
    let divides_2n1 = (2 * n - 1).is_multiple_of(p);
    if divides_n1 && divides_2n1 {
        return Err(Error::Internal("p divides both n-1 and 2n-1".into()));
    }
    let single = single_cross_term(curve);
    let nonclassical = if divides_n1 {
        Verdict::new(Status::Nonclassical, CONIC_ORDER).note("p | n-1")
    } else if divides_2n1 && single {
        Verdict::new(Status::Nonclassical, CONIC_ORDER).note("p | 2n-1 with a single cross term")
    } else {
        Verdict::new(Status::Classical, CONIC_ORDER)
    };

    let frob = if divides_n1 {
        match descent_v(curve, 1) {
            Some(v) if defined_over(curve, v) => {
                Verdict::new(Status::FrobeniusNonclassical, SUBFIELD_DESCENT).with_v(v)
            }
            Some(v) => Verdict::new(Status::FrobeniusClassical, SUBFIELD_DESCENT)
                .note(format!("not defined over F_(p^{v})")),
            None => Verdict::new(Status::FrobeniusClassical, SUBFIELD_DESCENT)
                .note("n is not (q-1)/(p^v-1)"),
        }
    } else if divides_2n1 {
        half_descent(curve)?
    } else {
        Verdict::new(Status::FrobeniusClassical, CONIC_ORDER).note("p divides neither n-1 nor 2n-1")
    };
    Ok((nonclassical, frob))
}

fn half_descent(curve: &CurveFamily) -> Result<Verdict> {
    let classical =
        |why: String| Verdict::new(Status::FrobeniusClassical, SCALED_HALF_DESCENT).note(why);
    if !single_cross_term(curve) {
        return Ok(classical("more than one cross term".into()));
    }
    let Some(v) = descent_v(curve, 2) else {
        return Ok(classical("n is not (q-1)/(2(p^v-1))".into()));
    };
    let f = curve.field();
    let n = curve.n() as u64;
    // ratios to the lone coefficient; b may need the scaling x -> alpha x
    let cross = [2usize, 4, 5]
        .into_iter()
        .find(|&k| !curve.alias(k).is_zero())
        .unwrap();
    let lone = match cross {
        2 => 6,
        4 => 3,
        _ => 1,
    };
    let inv = f.inv(curve.alias(lone))?;
    let b = f.mul(curve.alias(cross), inv);
    let scaling = if f.in_subfield(b, v)? {
        None
    } else {
        match scaling_root(f, b, n, v)? {
            Some((alpha, _)) => Some(alpha),
            None => return Ok(classical(format!("b^(p^{v}) is neither b nor -b"))),
        }
    };
    match half_descent_normal_form(curve, v) {
        Ok(_) => {
            let mut out =
                Verdict::new(Status::FrobeniusNonclassical, SCALED_HALF_DESCENT).with_v(v);
            if let Some(alpha) = scaling {
                out.scaling = Some(f.coords(alpha));
                out = out.note("scaled by alpha with alpha^(2n) = b^2");
            }
            Ok(out)
        }
        Err(Error::ShapeMismatch(why)) => Ok(classical(why)),
        Err(e) => Err(e),
    }
}

/// Sufficient condition for Frobenius nonclassicality with respect to
/// degree-s curves; `Unknown` when it does not apply.
pub fn classify_ds(curve: &CurveFamily) -> Result<Verdict> {
    let f = curve.field();
    let (p, s, n) = (f.p(), curve.s() as u64, curve.n() as u64);
    let mut bad = Vec::new();
    if s < 2 {
        bad.push(format!("s >= 2 required, got s = {s}"));
    }
    if (n - 1) % p != 0 {
        bad.push(format!("p | n-1 required (p = {p}, n-1 = {})", n - 1));
    }
    if s == 2 && p <= 5 {
        bad.push(format!("p > 5 required for s = 2, got p = {p}"));
    }
    if s >= 3 && p <= s * s {
        bad.push(format!("p > s^2 = {} required, got p = {p}", s * s));
    }
    let sv = curve.is_smooth(DEFAULT_MAX_EXT);
    if sv.status == SmoothStatus::Singular {
        bad.push(format!("the curve must be nonsingular ({})", sv.reason));
    }
    if !bad.is_empty() {
        return Err(Error::AssumptionViolated(bad));
    }
    let mut out = match descent_v(curve, 1) {
        Some(v) if defined_over(curve, v) => {
            Verdict::new(Status::FrobeniusNonclassical, OSCULATING_SUFFICIENCY).with_v(v)
        }
        _ => {
            Verdict::new(Status::Unknown, OSCULATING_SUFFICIENCY).note("only sufficiency is known")
        }
    };
    if sv.status == SmoothStatus::Inconclusive {
        out = out.note(format!("smoothness assumed: {}", sv.reason));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Wronskian oracle

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearSystem {
    /// Lines, Frobenius determinant.
    D1,
    /// Conics, Frobenius determinant.
    D2,
    /// Conics, plain Wronskian (orders `0..5`): zero iff nonclassical.
    D2Classical,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    SymbolicModCurve,
    PointSampling,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub system: LinearSystem,
    pub mode: OracleMode,
    pub identically_zero: bool,
    pub samples_used: u64,
    pub truncation: usize,
    pub numerator_degree_bound: u64,
    /// Sum of certified vanishing orders over the sampled points.
    pub certified_order: u64,
    pub confidence_note: String,
}

/// Upper bound on the degree of the numerator of the determinant once the
/// powers of `f_y` are cleared from each row (Hasse derivatives of `y` have
/// the shape `A_i / f_y^(2i-1)` with `deg A_i <= (d-1) + (i-1)(2d-3)`).
pub fn numerator_degree_bound(system: LinearSystem, d: u64, q: u64) -> u64 {
    let dm = d - 1;
    let a = |i: u64| {
        if i == 0 {
            1
        } else {
            dm + (i - 1) * (2 * d - 3)
        }
    };
    let den = |i: u64| if i == 0 { 0 } else { 2 * i - 1 };
    let row = |i: u64, conic: bool| -> u64 {
        if i == 0 {
            return if conic { 2 } else { 1 };
        }
        let e = den(i);
        let mut best = a(i);
        if i == 1 {
            best = best.max(dm);
        }
        if conic {
            if i == 1 {
                best = best.max(d);
            }
            if i == 2 {
                best = best.max(3 * dm);
            }
            // xy
            best = best.max(1 + a(i));
            best = best.max(a(i - 1) + (e - den(i - 1)) * dm);
            // y^2
            for j in 1..i {
                best = best.max(a(j) + a(i - j) + dm);
            }
        }
        best
    };
    match system {
        LinearSystem::D1 => q + row(0, false) + row(1, false),
        LinearSystem::D2 => 2 * q + (0..=4).map(|i| row(i, true)).sum::<u64>(),
        LinearSystem::D2Classical => (0..=5).map(|i| row(i, true)).sum(),
    }
}

/// Affine points `(u, w)` of `F(x, y, 1)` with `f_y(u, w) != 0`, over the
/// curve's own field; `u` runs through the field in encoding order. Only
/// `s <= 2` is supported.
pub fn affine_points(
    curve: &CurveFamily,
    skip_base: Option<&dyn Fn(Fq) -> bool>,
) -> Result<Vec<(Fq, Fq)>> {
    let mut out = Vec::new();
    for pts in affine_points_iter(curve, skip_base)? {
        out.extend(pts?);
    }
    Ok(out)
}

/// Lazy form of [`affine_points`]: one batch per abscissa `u`.
pub fn affine_points_iter<'a>(
    curve: &'a CurveFamily,
    skip_base: Option<&'a dyn Fn(Fq) -> bool>,
) -> Result<impl Iterator<Item = Result<Vec<(Fq, Fq)>>> + 'a> {
    if curve.s() > 2 {
        return Err(Error::SeparatingVariableFailure);
    }
    let f = curve.field();
    let n = curve.n() as u64;
    let fy = curve.affine().partial_y();
    let c = move |i, j| curve.coeff(i, j);
    Ok(f.elements()
        .filter(move |&u| !skip_base.is_some_and(|skip| skip(u)))
        .map(move |u| {
            let x = f.pow(u, n);
            let mut ys: Vec<Fq> = Vec::new();
            if curve.s() == 1 {
                // c10 X + c01 Y + c00 = 0
                if !c(0, 1).is_zero() {
                    let num = f.add(f.mul(c(1, 0), x), c(0, 0));
                    ys.push(f.neg(f.div(num, c(0, 1))?));
                }
            } else {
                // c02 Y^2 + (c11 X + c01) Y + (c20 X^2 + c10 X + c00) = 0
                let qa = c(0, 2);
                let qb = f.add(f.mul(c(1, 1), x), c(0, 1));
                let qc = f.add(
                    f.add(f.mul(c(2, 0), f.square(x)), f.mul(c(1, 0), x)),
                    c(0, 0),
                );
                if qa.is_zero() {
                    if !qb.is_zero() {
                        ys.push(f.neg(f.div(qc, qb)?));
                    }
                } else {
                    let disc = f.sub(f.square(qb), f.mul(f.from_int(4), f.mul(qa, qc)));
                    if let Some(r) = f.sqrt(disc) {
                        let inv2a = f.inv(f.mul(f.from_int(2), qa))?;
                        ys.push(f.mul(f.sub(r, qb), inv2a));
                        if !r.is_zero() {
                            ys.push(f.mul(f.sub(f.neg(r), qb), inv2a));
                        }
                    }
                }
            }
            let mut out = Vec::new();
            for y in ys {
                for w in f.nth_roots(y, n) {
                    if !fy.eval(u, w).is_zero() {
                        out.push((u, w));
                    }
                }
            }
            Ok(out)
        }))
}

/// Frobenius or Wronskian determinant at `x = u + t` along the branch
/// through `(u, w)`, as a series mod `t^(k+1)`.
pub fn wronskian_series(
    curve: &CurveFamily,
    system: LinearSystem,
    u: Fq,
    w: Fq,
    k: usize,
) -> Result<PowerSeries> {
    let f = curve.field();
    let affine = curve.affine();
    let orders: usize = match system {
        LinearSystem::D1 => 1,
        LinearSystem::D2 => 4,
        LinearSystem::D2Classical => 5,
    };
    let y = branch_expand(&affine, u, w, k + orders)?;
    let kk = k + orders;
    let x = PowerSeries::from_coeffs(f, vec![u, Fq::ONE], kk);
    let one = PowerSeries::constant(f, Fq::ONE, kk);
    let basis: Vec<PowerSeries> = match system {
        LinearSystem::D1 => vec![one, x.clone(), y.clone()],
        _ => vec![one, x.clone(), y.clone(), x.mul(&x), x.mul(&y), y.mul(&y)],
    };
    let mut rows: Vec<Vec<PowerSeries>> = Vec::new();
    if system != LinearSystem::D2Classical {
        let q = curve.base_order();
        let (uq, wq) = (f.pow(u, q), f.pow(w, q));
        let vals: Vec<Fq> = match system {
            LinearSystem::D1 => vec![Fq::ONE, uq, wq],
            _ => vec![Fq::ONE, uq, wq, f.square(uq), f.mul(uq, wq), f.square(wq)],
        };
        rows.push(
            vals.into_iter()
                .map(|c| PowerSeries::constant(f, c, k))
                .collect(),
        );
    }
    for i in 0..=orders {
        rows.push(
            basis
                .iter()
                .map(|b| b.hasse(i).map(|s| s.truncate(k)))
                .collect::<Result<_>>()?,
        );
    }
    series_det(f, &rows)
}

fn base_order_ok(curve: &CurveFamily, system: LinearSystem, k: usize) -> Result<()> {
    if system != LinearSystem::D2Classical && k as u64 >= curve.base_order() {
        return Err(Error::Internal(format!(
            "truncation {k} must stay below q = {}",
            curve.base_order()
        )));
    }
    Ok(())
}

/// Default truncation for the symbolic certificate.
pub fn default_truncation(system: LinearSystem, q: u64) -> usize {
    match system {
        LinearSystem::D2Classical => 48,
        _ => (q - 1).min(48) as usize,
    }
}

/// Number of points (each certifying order `k+1`) needed to exceed the
/// Bezout bound `deg(N) * d`.
pub fn required_points(system: LinearSystem, curve: &CurveFamily, k: usize) -> u64 {
    let deg = numerator_degree_bound(system, curve.degree() as u64, curve.base_order());
    deg * curve.degree() as u64 / (k as u64 + 1) + 1
}

/// Decides whether the determinant vanishes identically on the curve.
///
/// Points over the quadratic extension (not over the base field) come first,
/// then rational ones. A nonzero coefficient anywhere settles `false`. In
/// symbolic mode every all-zero expansion certifies vanishing order `k+1`;
/// once the certified orders exceed `deg(N) d` the numerator must vanish on
/// the curve. Sample mode uses `k = 0` at non-rational points. `budget`
/// caps the number of points examined; `None` means exactly the required
/// number.
pub fn wronskian_frobenius_oracle(
    curve: &CurveFamily,
    system: LinearSystem,
    mode: OracleMode,
    budget: Option<u64>,
) -> Result<OracleVerdict> {
    let s_ok = match system {
        LinearSystem::D1 => curve.s() <= 2,
        _ => curve.s() == 2,
    };
    if !s_ok {
        return Err(Error::AssumptionViolated(vec![format!(
            "oracle for {system:?} does not cover s = {}",
            curve.s()
        )]));
    }
    if (curve.n() as u64).is_multiple_of(curve.field().p()) {
        return Err(Error::SeparatingVariableFailure);
    }
    let q = curve.base_order();
    let k = match mode {
        OracleMode::SymbolicModCurve => default_truncation(system, q),
        OracleMode::PointSampling => 0,
    };
    base_order_ok(curve, system, k)?;
    let deg = numerator_degree_bound(system, curve.degree() as u64, q);
    let bezout = deg * curve.degree() as u64;
    let required = required_points(system, curve, k);
    let budget = budget.unwrap_or(required);

    let mut used = 0u64;
    let mut certified = 0u64;
    let verdict = |zero: bool, used: u64, certified: u64, note: String| OracleVerdict {
        system,
        mode,
        identically_zero: zero,
        samples_used: used,
        truncation: k,
        numerator_degree_bound: deg,
        certified_order: certified,
        confidence_note: note,
    };
    // groups of points: new points over F_(q^r) for r = 2, 3, ..., then rational ones
    let mut r = 2;
    let mut rational_done = mode == OracleMode::PointSampling;
    loop {
        if used >= budget {
            return Err(Error::BudgetTooSmall { required });
        }
        let (big, is_base) = if curve
            .field()
            .order()
            .checked_pow(r)
            .is_some_and(|o| o <= 1 << 24)
        {
            let emb = curve.field().extension(r)?;
            let big = curve.extend(&emb);
            let mut is_base = vec![false; big.field().order() as usize];
            for x in curve.field().elements() {
                is_base[emb.embed(x).0 as usize] = true;
            }
            r += 1;
            (big, Some(is_base))
        } else if !rational_done {
            rational_done = true;
            (curve.clone(), None)
        } else {
            return Err(Error::Internal(format!(
                "ran out of points after {used} of {required}"
            )));
        };
        let skip_fn = |u: Fq| is_base.as_ref().is_some_and(|b| b[u.0 as usize]);
        let skip: &dyn Fn(Fq) -> bool = &skip_fn;
        let mut batches = affine_points_iter(&big, Some(skip))?;
        let mut pts: Vec<(Fq, Fq)> = Vec::new();
        let mut exhausted = false;
        while !exhausted {
            // growing chunks: a nonzero expansion usually ends the search at once
            let chunk_len = match used {
                0 => 1,
                1..=4 => 4,
                5..=20 => 16,
                _ => 64,
            };
            while pts.len() < chunk_len {
                match batches.next() {
                    Some(b) => pts.extend(b?),
                    None => {
                        exhausted = true;
                        break;
                    }
                }
            }
            let take = (budget - used).min(pts.len().min(chunk_len) as u64) as usize;
            if take == 0 {
                if used >= budget {
                    return Err(Error::BudgetTooSmall { required });
                }
                continue;
            }
            let chunk: Vec<(Fq, Fq)> = pts.drain(..take).collect();
            let results: Vec<Result<bool>> = chunk
                .par_iter()
                .map(|&(u, w)| {
                    wronskian_series(&big, system, u, w, k).map(|s| s.valuation().is_none())
                })
                .collect();
            used += take as u64;
            for res in results {
                if !res? {
                    return Ok(verdict(
                        false,
                        used,
                        certified,
                        "exact: a nonzero expansion coefficient was found".into(),
                    ));
                }
                certified += k as u64 + 1;
            }
            if certified > bezout {
                let note = format!(
                    "exact: certified vanishing order {certified} exceeds deg(N) d = {bezout}"
                );
                return Ok(verdict(true, used, certified, note));
            }
            if used >= budget {
                return Err(Error::BudgetTooSmall { required });
            }
        }
    }
}

// ---------------------------------------------------------------------------
// the factored determinant on y^2n = a x^2n + b x^n + c

/// The chart `Y^(2n) = a X^(2n) + b X^n + c` of a single-cross-term curve,
/// with `Y` the coordinate outside the cross term and the other coordinate
/// of the cross term set to 1. Returns `(a, b, c)` and the chart's curve
/// over the same field, as a `CurveFamily` whose `x, y` are `X, Y`.
pub fn half_chart(curve: &CurveFamily) -> Result<(Fq, Fq, Fq, CurveFamily)> {
    if curve.s() != 2 || !single_cross_term(curve) {
        return Err(Error::ShapeMismatch(
            "a conic-type curve with a single cross term is required".into(),
        ));
    }
    let f = curve.field();
    let cross = [2usize, 4, 5]
        .into_iter()
        .find(|&k| !curve.alias(k).is_zero())
        .unwrap();
    // (square of X, lone) aliases; the remaining square is the dehomogenized one
    let (sx, rest, lone) = match cross {
        2 => (1, 3, 6),
        4 => (1, 6, 3),
        _ => (3, 6, 1),
    };
    let l = curve.alias(lone);
    if l.is_zero() {
        return Err(Error::ShapeMismatch("lone coefficient vanishes".into()));
    }
    let inv = f.neg(f.inv(l)?);
    let a = f.mul(curve.alias(sx), inv);
    let b = f.mul(curve.alias(cross), inv);
    let c = f.mul(curve.alias(rest), inv);
    let one = Fq::ONE;
    let z = Fq::ZERO;
    let neg = |x| f.neg(x);
    // -a X^2 - b X Z + Y^2 - c Z^2 in the (X, Y, Z) slots
    let chart = CurveFamily::from_aliases(f, curve.n(), [neg(a), z, one, neg(b), z, neg(c)])?;
    Ok((a, b, c, chart))
}

/// One evaluation of both sides of the factorization at a chart point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationSample {
    pub point: (Fq, Fq),
    pub w: Fq,
    pub rhs: Fq,
}

/// Evaluates the 5x5 determinant `W` built from `x - x^q, ...` and Hasse
/// derivatives of `y`, and `b^2 x^(2n-6) / (1024 y^(8n-4)) W1 W2` with
/// `W1, W2 = y^(2n+q-1) - a x^(2n+q-1) -/+ b x^((2n+q-1)/2) - c`, at up to
/// `samples` points of the chart over the quadratic extension.
pub fn w_factorization_samples(
    field: &Field,
    n: u32,
    q: u64,
    abc: (Fq, Fq, Fq),
    samples: usize,
) -> Result<Vec<FactorizationSample>> {
    let (a, b, c) = abc;
    let one = Fq::ONE;
    let z = Fq::ZERO;
    let neg = |x| field.neg(x);
    let chart = CurveFamily::from_aliases(field, n, [neg(a), z, one, neg(b), z, neg(c)])?;
    let emb = field.extension(2)?;
    let big = chart.extend(&emb);
    let f = big.field().clone();
    let (a, b, c) = (emb.embed(a), emb.embed(b), emb.embed(c));
    let base: std::collections::HashSet<Fq> = field.elements().map(|x| emb.embed(x)).collect();
    let skip = |u: Fq| base.contains(&u) || u.is_zero();
    let pts = affine_points(&big, Some(&skip))?;
    let affine = big.affine();
    let n64 = n as u64;
    let e = 2 * n64 + q - 1;
    if !e.is_multiple_of(2) {
        return Err(Error::Internal("2n + q - 1 is odd".into()));
    }
    let c1024 = f.from_int(1024);
    pts.iter()
        .take(samples)
        .map(|&(u, w)| {
            let ys = branch_expand(&affine, u, w, 4)?;
            let dy = |i: usize| ys.coeffs()[i];
            let dxy = |i: usize| f.add(f.mul(u, dy(i)), dy(i - 1));
            let dyy =
                |i: usize| (0..=i).fold(Fq::ZERO, |acc, j| f.add(acc, f.mul(dy(j), dy(i - j))));
            let (uq, wq) = (f.pow(u, q), f.pow(w, q));
            let m = vec![
                vec![
                    f.sub(u, uq),
                    f.sub(f.square(u), f.square(uq)),
                    f.sub(w, wq),
                    f.sub(f.mul(u, w), f.mul(uq, wq)),
                    f.sub(f.square(w), f.square(wq)),
                ],
                vec![one, f.mul(f.from_int(2), u), dy(1), dxy(1), dyy(1)],
                vec![z, one, dy(2), dxy(2), dyy(2)],
                vec![z, z, dy(3), dxy(3), dyy(3)],
                vec![z, z, dy(4), dxy(4), dyy(4)],
            ];
            let wv = det(&f, &m)?;
            let base = f.sub(f.sub(f.pow(w, e), f.mul(a, f.pow(u, e))), c);
            let mid = f.mul(b, f.pow(u, e / 2));
            let w1 = f.sub(base, mid);
            let w2 = f.add(base, mid);
            let pref = f.div(
                f.mul(f.square(b), f.pow(u, 2 * n64 - 6)),
                f.mul(c1024, f.pow(w, 8 * n64 - 4)),
            )?;
            Ok(FactorizationSample {
                point: (u, w),
                w: wv,
                rhs: f.mul(pref, f.mul(w1, w2)),
            })
        })
        .collect()
}

/// Order of contact of the vertical tangent `x = u` with the curve at a
/// point `(u : 0 : 1)`, computed by expanding `x` as a series in `y`.
pub fn vertical_tangent_order(curve: &CurveFamily, u: Fq, k: usize) -> Result<Option<usize>> {
    let f = curve.field();
    let swapped = BiPoly::from_terms(f, curve.affine().terms().map(|(i, j, c)| (j, i, c)));
    let xs = branch_expand(&swapped, Fq::ZERO, u, k)?;
    let shifted = xs.sub(&PowerSeries::constant(f, u, k));
    Ok(shifted.valuation())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exe1() -> CurveFamily {
        let f = Field::new(43, 2, None).unwrap();
        let [one, three] = [f.from_int(1), f.from_int(3)];
        CurveFamily::from_aliases(&f, 44, [one, three, one, three, three, one]).unwrap()
    }

    fn exe2() -> CurveFamily {
        let f = Field::new(19, 2, None).unwrap();
        let i = |x| f.from_int(x);
        CurveFamily::from_aliases(&f, 10, [i(1), i(2), i(-1), i(0), i(0), i(1)]).unwrap()
    }

    #[test]
    fn descent_witnesses() {
        let (nc, fr) = classify_d2(&exe1()).unwrap();
        assert_eq!(nc.status, Status::Nonclassical);
        assert_eq!(fr.status, Status::FrobeniusNonclassical);
        assert_eq!((fr.theorem, fr.v), (SUBFIELD_DESCENT, Some(1)));
        let (nc, fr) = classify_d2(&exe2()).unwrap();
        assert_eq!(nc.status, Status::Nonclassical);
        assert_eq!(
            (fr.status, fr.theorem, fr.v),
            (Status::FrobeniusNonclassical, SCALED_HALF_DESCENT, Some(1))
        );
        assert_eq!(
            classify_d1(&exe1()).unwrap().status,
            Status::FrobeniusClassical
        );
    }

    #[test]
    fn refusals() {
        let f = Field::new(7, 2, None).unwrap();
        let i = |x| f.from_int(x);
        let c = CurveFamily::from_aliases(&f, 8, [i(1), i(1), i(1), i(0), i(0), i(1)]).unwrap();
        let Err(Error::AssumptionViolated(list)) = classify_d2(&c) else {
            panic!()
        };
        assert!(list.iter().any(|s| s.contains("p > 7")));
        let f = Field::new(11, 2, None).unwrap();
        let fermat = CurveFamily::from_aliases(
            &f,
            12,
            [Fq::ONE, Fq::ZERO, Fq::ONE, Fq::ZERO, Fq::ZERO, Fq::ONE],
        )
        .unwrap();
        assert!(matches!(
            classify_d1(&fermat),
            Err(Error::AssumptionViolated(_))
        ));
    }

    #[test]
    fn fermat_lines() {
        let f = Field::new(11, 2, None).unwrap();
        let c = CurveFamily::new(
            &f,
            1,
            12,
            [((1, 0), Fq::ONE), ((0, 1), Fq::ONE), ((0, 0), Fq::ONE)],
        )
        .unwrap();
        let v = classify_d1(&c).unwrap();
        assert_eq!((v.status, v.v), (Status::FrobeniusNonclassical, Some(1)));
        let o =
            wronskian_frobenius_oracle(&c, LinearSystem::D1, OracleMode::SymbolicModCurve, None)
                .unwrap();
        assert!(o.identically_zero);
        let c = CurveFamily::new(
            &f,
            1,
            12,
            [((1, 0), Fq::ONE), ((0, 1), f.t()), ((0, 0), Fq::ONE)],
        )
        .unwrap();
        assert_eq!(classify_d1(&c).unwrap().status, Status::FrobeniusClassical);
        let o =
            wronskian_frobenius_oracle(&c, LinearSystem::D1, OracleMode::SymbolicModCurve, None)
                .unwrap();
        assert!(!o.identically_zero);
    }

    #[test]
    fn degree_bound_for_lines() {
        assert_eq!(numerator_degree_bound(LinearSystem::D1, 20, 361), 381);
    }

    #[test]
    fn exe2_oracle_vanishes() {
        let o = wronskian_frobenius_oracle(
            &exe2(),
            LinearSystem::D2,
            OracleMode::SymbolicModCurve,
            None,
        )
        .unwrap();
        assert!(o.identically_zero, "{o:?}");
    }

    #[test]
    fn perturbed_exe2_oracle() {
        let f = Field::new(19, 2, None).unwrap();
        let i = |x| f.from_int(x);
        let c = CurveFamily::from_aliases(&f, 10, [i(1), i(2), f.t(), i(0), i(0), i(1)]).unwrap();
        let o = wronskian_frobenius_oracle(
            &c,
            LinearSystem::D2,
            OracleMode::SymbolicModCurve,
            Some(500),
        )
        .unwrap();
        assert!(!o.identically_zero);
        assert_eq!(
            classify_d2(&c).unwrap().1.status,
            Status::FrobeniusClassical
        );
    }

    #[test]
    fn factorization_matches() {
        let c = exe2();
        let (a, b, cc, _) = half_chart(&c).unwrap();
        let f = c.field();
        assert_eq!((a, b, cc), (f.from_int(-1), f.from_int(-2), f.from_int(1)));
        for s in w_factorization_samples(f, 10, 361, (a, b, cc), 50).unwrap() {
            assert_eq!(s.w, s.rhs);
        }
        let perturbed = (a, f.add(f.t(), Fq::ONE), cc);
        let samples = w_factorization_samples(f, 10, 361, perturbed, 50).unwrap();
        assert_eq!(samples.len(), 50);
        assert!(samples.iter().all(|s| s.w == s.rhs));
        assert!(samples.iter().any(|s| !s.w.is_zero()));
    }

    #[test]
    fn vertical_tangent_has_contact_n() {
        // a2 != 0: some (u:0:1) has contact exactly n with x = u
        let f = Field::new(11, 2, None).unwrap();
        let i = |x| f.from_int(x);
        let c = CurveFamily::from_aliases(&f, 12, [i(1), i(1), i(1), i(0), i(1), i(-1)]).unwrap();
        let mut found = false;
        for u in f.elements().skip(1) {
            if !c.eval([u, Fq::ZERO, Fq::ONE]).is_zero() {
                continue;
            }
            if let Ok(Some(ord)) = vertical_tangent_order(&c, u, 60) {
                if ord == 12 {
                    found = true;
                    break;
                }
            }
        }
        assert!(found);
    }
}
