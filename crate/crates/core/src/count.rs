//! Rational point counts: projective enumeration, fibration counts for the
//! Frobenius nonclassical members, and the classical upper bounds.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{CurveFamily, ProjPoint, SmoothStatus};
use crate::error::{Error, Result};
use crate::gf::{Field, Fq};
use crate::poly::{TriForm, UniPoly};

/// Default cap on the number of projective candidates enumerated.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    DescentFormula,
    HalfDescentFormula,
    FiberSum,
}

/// Integer upper bounds (real-valued bounds rounded down).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub hasse_weil: u64,
    pub sv_line: u64,
    pub sv_conic: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sv_general: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    #[serde(rename = "N")]
    pub n_points: u64,
    pub method: Method,
    pub delta: Option<u64>,
    pub eta: Option<u64>,
    pub bounds: Bounds,
    pub exceeds_sv_conic: bool,
    pub runtime_ms: u64,
}

impl CountReport {
    fn new(
        n_points: u64,
        method: Method,
        delta: Option<u64>,
        eta: Option<u64>,
        d: u64,
        q: u64,
        started: Instant,
    ) -> CountReport {
        let bounds = bounds(d.max(3), q, None).expect("d >= 3");
        CountReport {
            n_points,
            method,
            delta,
            eta,
            bounds,
            exceeds_sv_conic: n_points > bounds.sv_conic,
            runtime_ms: started.elapsed().as_millis() as u64,
        }
    }
}

fn isqrt(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Hasse-Weil, line and conic Stöhr-Voloch bounds for a smooth plane curve of
/// degree `d` over `F_q`; with `s` also the classical bound for degree-`s`
/// curves, `d(d-3)(M-1)/2 + sd(q+M)/M` with `M = (s^2+3s)/2`.
pub fn bounds(d: u64, q: u64, s: Option<u64>) -> Result<Bounds> {
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    let (d, q) = (d as u128, q as u128);
    let g = (d - 1) * (d - 2) / 2;
    let hasse_weil = q + 1 + isqrt(4 * g * g * q);
    let sv_line = d * (d + q - 1) / 2;
    let sv_conic = 2 * d * (5 * d + q - 10) / 5;
    let sv_general = s.map(|s| {
        let s = s as u128;
        let m = (s * s + 3 * s) / 2;
        // [d(d-3)(M-1)M + 2sd(q+M)] / (2M)
        ((d * (d - 3) * (m - 1) * m + 2 * s * d * (q + m)) / (2 * m)) as u64
    });
    Ok(Bounds {
        hasse_weil: hasse_weil as u64,
        sv_line: sv_line as u64,
        sv_conic: sv_conic as u64,
        sv_general,
    })
}

/// Candidate count `Q^2 + Q + 1` for `P^2(F_Q)`.
pub fn projective_size(order: u64) -> u128 {
    let q = order as u128;
    q * q + q + 1
}

fn check_budget(order: u64, budget: u128) -> Result<()> {
    let candidates = projective_size(order);
    if candidates > budget {
        return Err(Error::BudgetExceeded { candidates, budget });
    }
    Ok(())
}

/// Zeros of a form in `P^2(F_{q^r})`, enumerating the charts `(1:b:c)`,
/// `(0:1:c)` and `(0:0:1)`.
pub fn count_bruteforce(form: &TriForm, r: u32, budget: u128) -> Result<u64> {
    let (field, f) = if r == 1 {
        (form.field().clone(), form.clone())
    } else {
        let e = form.field().extension(r)?;
        (e.big.clone(), form.map_coeffs(&e.big, |c| e.embed(c)))
    };
    check_budget(field.order(), budget)?;
    let elems: Vec<Fq> = field.elements().collect();
    let affine: u64 = elems
        .par_iter()
        .map(|&b| {
            elems
                .iter()
                .filter(|&&c| f.eval([Fq::ONE, b, c]).is_zero())
                .count() as u64
        })
        .sum();
    let line = elems
        .iter()
        .filter(|&&c| f.eval([Fq::ZERO, Fq::ONE, c]).is_zero())
        .count() as u64;
    let vertex = f.eval([Fq::ZERO, Fq::ZERO, Fq::ONE]).is_zero() as u64;
    Ok(affine + line + vertex)
}

/// Brute-force count for a family member over `F_{q^r}`: every projective
/// point is visited, with `F` evaluated as `G` on a precomputed table of
/// n-th powers.
pub fn count_curve_bruteforce(curve: &CurveFamily, r: u32, budget: u128) -> Result<u64> {
    let c = if r == 1 {
        curve.clone()
    } else {
        curve.extend(&curve.field().extension(r)?)
    };
    let field = c.field().clone();
    check_budget(field.order(), budget)?;
    let n = c.n() as u64;
    let pow_n: Vec<Fq> = field.elements().map(|x| field.pow(x, n)).collect();
    let g = c.g_form();
    let eval = CompiledForm::new(&g);
    let q = field.order() as u32;
    let affine: u64 = (0..q)
        .into_par_iter()
        .map(|b| {
            let y = pow_n[b as usize];
            (0..q)
                .filter(|&cc| eval.eval(&field, Fq::ONE, y, pow_n[cc as usize]).is_zero())
                .count() as u64
        })
        .sum();
    let line = (0..q)
        .filter(|&cc| {
            eval.eval(&field, Fq::ZERO, Fq::ONE, pow_n[cc as usize])
                .is_zero()
        })
        .count() as u64;
    let vertex = eval.eval(&field, Fq::ZERO, Fq::ZERO, Fq::ONE).is_zero() as u64;
    Ok(affine + line + vertex)
}

/// Counts through the n-th power fibration: each point `Q` of `G` whose
/// coordinates are n-th powers contributes the product of its coordinates'
/// root counts.
pub fn count_fibersum(curve: &CurveFamily) -> u64 {
    let field = curve.field();
    let n = curve.n() as u64;
    let mut mult: std::collections::BTreeMap<Fq, u64> = std::collections::BTreeMap::new();
    for x in field.elements() {
        *mult.entry(field.pow(x, n)).or_default() += 1;
    }
    let image: Vec<(Fq, u64)> = mult.into_iter().collect();
    let eval = CompiledForm::new(&curve.g_form());
    let mut total = 0u64;
    for &(y, my) in &image {
        for &(z, mz) in &image {
            if eval.eval(field, Fq::ONE, y, z).is_zero() {
                total += my * mz;
            }
        }
    }
    for &(z, mz) in &image {
        if eval.eval(field, Fq::ZERO, Fq::ONE, z).is_zero() {
            total += mz;
        }
    }
    total + eval.eval(field, Fq::ZERO, Fq::ZERO, Fq::ONE).is_zero() as u64
}

/// A low-degree form prepared for repeated evaluation.
struct CompiledForm {
    terms: Vec<([u32; 3], Fq)>,
}

impl CompiledForm {
    fn new(g: &TriForm) -> CompiledForm {
        CompiledForm {
            terms: g.terms().collect(),
        }
    }

    fn eval(&self, f: &Field, x: Fq, y: Fq, z: Fq) -> Fq {
        let mut acc = Fq::ZERO;
        for &(e, c) in &self.terms {
            let mut m = c;
            for _ in 0..e[0] {
                m = f.mul(m, x);
            }
            for _ in 0..e[1] {
                m = f.mul(m, y);
            }
            for _ in 0..e[2] {
                m = f.mul(m, z);
            }
            acc = f.add(acc, m);
        }
        acc
    }
}

/// Elements of the subfield of order `p^v`.
pub fn subfield_elements(field: &Field, v: u32) -> Result<Vec<Fq>> {
    let mut out = Vec::new();
    for x in field.elements() {
        if field.in_subfield(x, v)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Points of `P^2` over the subfield of order `p^v` on which `g` vanishes.
pub fn subfield_points(g: &TriForm, v: u32) -> Result<Vec<ProjPoint>> {
    let f = g.field();
    let sub = subfield_elements(f, v)?;
    let mut pts = Vec::new();
    for &a in &sub {
        for &b in &sub {
            pts.push([a, b, Fq::ONE]);
        }
        pts.push([a, Fq::ONE, Fq::ZERO]);
    }
    pts.push([Fq::ONE, Fq::ZERO, Fq::ZERO]);
    Ok(pts
        .into_iter()
        .filter(|&c| g.eval(c).is_zero())
        .map(|c| ProjPoint::new(f, c).unwrap())
        .collect())
}

fn require_smooth(curve: &CurveFamily) -> Result<()> {
    let v = curve.is_smooth(2);
    if v.status != SmoothStatus::Smooth {
        return Err(Error::HypothesisNotCertified(format!(
            "curve is not certified smooth: {}",
            v.reason
        )));
    }
    Ok(())
}

fn descent_degree(curve: &CurveFamily, v: u32, half: bool) -> Result<()> {
    let f = curve.field();
    let h = f.h();
    if v == 0 || v >= h || !h.is_multiple_of(v) {
        return Err(Error::HypothesisNotCertified(format!(
            "need v | h and v < h, got v = {v}, h = {h}"
        )));
    }
    let pv = f.p().pow(v) - 1;
    let want = (f.order() - 1) / if half { 2 * pv } else { pv };
    let exact = (f.order() - 1).is_multiple_of(if half { 2 * pv } else { pv });
    if !exact || curve.n() as u64 != want {
        return Err(Error::HypothesisNotCertified(format!(
            "n = {} is not (q-1)/{}(p^v-1)",
            curve.n(),
            if half { "2" } else { "" }
        )));
    }
    Ok(())
}

/// Fibration count for conic-type curves with `n = (q-1)/(p^v-1)` defined
/// over `F_{p^v}`: `N = n(n(p^v+1) - delta(n-1))`, where `delta` counts the
/// subfield points of the companion conic with a zero coordinate.
pub fn count_formula_case1(curve: &CurveFamily, v: u32) -> Result<CountReport> {
    let started = Instant::now();
    if curve.s() != 2 {
        return Err(Error::HypothesisNotCertified("s = 2 required".into()));
    }
    descent_degree(curve, v, false)?;
    if curve.defined_over().is_none_or(|w| !v.is_multiple_of(w)) {
        return Err(Error::HypothesisNotCertified(format!(
            "curve is not defined over the subfield of order p^{v}"
        )));
    }
    require_smooth(curve)?;
    let f = curve.field();
    let delta = subfield_points(&curve.g_form(), v)?
        .iter()
        .filter(|p| p.has_zero_coordinate())
        .count() as u64;
    let n = curve.n() as u64;
    let pv = f.p().pow(v);
    let total = n * (n * (pv + 1) - delta * (n - 1));
    Ok(CountReport::new(
        total,
        Method::DescentFormula,
        Some(delta),
        None,
        curve.degree() as u64,
        f.order(),
        started,
    ))
}

/// Normal form `a x^2n + b x^n y^n + c y^2n + z^2n` of a conic-type curve with a
/// single cross term, with `a, b, c` moved into `F_{p^v}` by an `F_q`-scaling
/// of `x` when needed.
pub fn half_descent_normal_form(curve: &CurveFamily, v: u32) -> Result<(Fq, Fq, Fq)> {
    let f = curve.field();
    let cross: Vec<usize> = [2, 4, 5]
        .into_iter()
        .filter(|&k| !curve.alias(k).is_zero())
        .collect();
    if cross.len() != 1 {
        return Err(Error::ShapeMismatch(
            "exactly one cross term must be nonzero".into(),
        ));
    }
    // the two squared coordinates joined by the cross term, then the lone one
    let (sq1, sq2, lone) = match cross[0] {
        2 => (1, 3, 6),
        4 => (1, 6, 3),
        _ => (3, 6, 1),
    };
    let lone_c = curve.alias(lone);
    if lone_c.is_zero() {
        return Err(Error::ShapeMismatch("lone coefficient vanishes".into()));
    }
    let inv = f.inv(lone_c)?;
    let a = f.mul(curve.alias(sq1), inv);
    let mut b = f.mul(curve.alias(cross[0]), inv);
    let c = f.mul(curve.alias(sq2), inv);
    let mut a2 = a;
    if !f.in_subfield(b, v)? {
        let (alpha, _) = scaling_root(f, b, curve.n() as u64, v)?.ok_or_else(|| {
            Error::ShapeMismatch("no F_q-scaling brings the cross term into the subfield".into())
        })?;
        let an = f.pow(alpha, curve.n() as u64);
        a2 = f.mul(a, f.mul(an, an));
        b = f.mul(b, an);
    }
    for (name, x) in [("a", a2), ("b", b), ("c", c)] {
        if x.is_zero() || !f.in_subfield(x, v)? {
            return Err(Error::ShapeMismatch(format!(
                "{name} is not a nonzero subfield element"
            )));
        }
    }
    Ok((a2, b, c))
}

/// `alpha` with `alpha^{2n} = b^2`, found among powers of a generator (the
/// norm of a generator generates the subfield's multiplicative group), when
/// `b^{p^v-1} = -1`. Returns `None` when `b^{p^v - 1}` is not `-1`.
pub fn scaling_root(f: &Field, b: Fq, n: u64, v: u32) -> Result<Option<(Fq, Fq)>> {
    let pv = f.p().pow(v);
    if b.is_zero() || f.pow(b, pv - 1) != f.neg(Fq::ONE) {
        return Ok(None);
    }
    let target = f.mul(b, b);
    let g = f.generator();
    let mut alpha = Fq::ONE;
    for _ in 0..pv {
        if f.pow(alpha, 2 * n) == target {
            return Ok(Some((alpha, f.pow(alpha, n))));
        }
        alpha = f.mul(alpha, g);
    }
    Ok(None)
}

/// Number of distinct roots of `a x^2 + b x + c` in `F_{p^v}`.
pub fn eta(f: &Field, a: Fq, b: Fq, c: Fq, v: u32) -> Result<u64> {
    let quad = UniPoly::new(f, vec![c, b, a]);
    let mut n = 0;
    for x in subfield_elements(f, v)? {
        if quad.eval(x).is_zero() {
            n += 1;
        }
    }
    Ok(n)
}

/// Fibration count `N = n(q + 3 - (2n-1) eta)` for conic-type curves with
/// `n = (q-1)/(2(p^v-1))` and a single cross term.
pub fn count_formula_case2(curve: &CurveFamily, v: u32) -> Result<CountReport> {
    let started = Instant::now();
    if curve.s() != 2 {
        return Err(Error::HypothesisNotCertified("s = 2 required".into()));
    }
    descent_degree(curve, v, true)?;
    let (a, b, c) = half_descent_normal_form(curve, v)?;
    require_smooth(curve)?;
    let f = curve.field();
    let e = eta(f, a, b, c, v)?;
    let n = curve.n() as u64;
    let q = f.order();
    let total = n * (q + 3 - (2 * n - 1) * e);
    Ok(CountReport::new(
        total,
        Method::HalfDescentFormula,
        None,
        Some(e),
        curve.degree() as u64,
        q,
        started,
    ))
}

/// The first closed-form count that applies, trying every proper subfield
/// degree `v` with both fibration formulas. Reports why neither applies
/// otherwise.
pub fn count_formula(curve: &CurveFamily) -> Result<CountReport> {
    let h = curve.field().h();
    let mut reasons = Vec::new();
    for v in (1..h).filter(|v| h.is_multiple_of(*v)) {
        for attempt in [count_formula_case1, count_formula_case2] {
            match attempt(curve, v) {
                Ok(r) => return Ok(r),
                Err(e @ (Error::HypothesisNotCertified(_) | Error::ShapeMismatch(_))) => {
                    reasons.push(format!("v = {v}: {e}"))
                }
                Err(e) => return Err(e),
            }
        }
    }
    if reasons.is_empty() {
        reasons.push(format!("F_q has no proper subfield (h = {h})"));
    }
    Err(Error::HypothesisNotCertified(reasons.join("; ")))
}

/// Report for a brute-force count over `F_q` (r = 1) or an extension.
pub fn bruteforce_report(curve: &CurveFamily, r: u32, budget: u128) -> Result<CountReport> {
    let started = Instant::now();
    let total = count_curve_bruteforce(curve, r, budget)?;
    let q = curve.field().order().pow(r);
    Ok(CountReport::new(
        total,
        Method::BruteForce,
        None,
        None,
        curve.degree() as u64,
        q,
        started,
    ))
}

pub fn fibersum_report(curve: &CurveFamily) -> CountReport {
    let started = Instant::now();
    let total = count_fibersum(curve);
    CountReport::new(
        total,
        Method::FiberSum,
        None,
        None,
        curve.degree() as u64,
        curve.field().order(),
        started,
    )
}

/// Outcome of [`certify_maximal`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Maximality {
    pub attains_sv_line: bool,
    #[serde(rename = "N")]
    pub n_points: u64,
    pub subfield_points: u64,
    pub d: u64,
    pub q: u64,
}

/// Checks that the degree-`s` curve `g` over `F_{p^v}` has `s(s+p^v-1)/2`
/// points there, none with a zero coordinate; then the lifted curve over
/// `F_{p^h}` has `d(d+q-1)/2` points, which is confirmed by a fiber sum.
pub fn certify_maximal(g: &TriForm, h: u32) -> Result<Maximality> {
    let lifted = CurveFamily::lift_conic(g, h)?;
    let f = lifted.field();
    let p = f.p();
    // v from n = (p^h-1)/(p^v-1)
    let v = (1..h)
        .find(|&v| h.is_multiple_of(v) && (p.pow(h) - 1) / (p.pow(v) - 1) == lifted.n() as u64)
        .ok_or_else(|| Error::Internal("lift produced an unexpected n".into()))?;
    let pts = subfield_points(&lifted.g_form(), v)?;
    let s = g.degree() as u64;
    let pv = p.pow(v);
    let want = s * (s + pv - 1) / 2;
    if pts.len() as u64 != want {
        return Err(Error::HypothesisFails(format!(
            "the degree-{s} curve has {} points over F_{pv}, not {want}",
            pts.len()
        )));
    }
    if pts.iter().any(|pt| pt.has_zero_coordinate()) {
        return Err(Error::HypothesisFails(
            "a subfield point has a zero coordinate".into(),
        ));
    }
    let d = lifted.degree() as u64;
    let q = f.order();
    let predicted = d * (d + q - 1) / 2;
    let fiber = count_fibersum(&lifted);
    if fiber != predicted {
        return Err(Error::Internal(format!(
            "fiber sum {fiber} differs from d(d+q-1)/2 = {predicted}"
        )));
    }
    Ok(Maximality {
        attains_sv_line: true,
        n_points: predicted,
        subfield_points: pts.len() as u64,
        d,
        q,
    })
}
