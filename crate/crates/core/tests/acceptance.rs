//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines are always printed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use frobcurves::classify::{
    affine_points_iter, classify_d2, criteria, half_chart, w_factorization_samples,
    wronskian_frobenius_oracle, LinearSystem, OracleMode, Status,
};
use frobcurves::count::{
    bounds, certify_maximal, count_curve_bruteforce, count_formula_case1, count_formula_case2,
    DEFAULT_BUDGET,
};
use frobcurves::curve::{CurveFamily, ProjPoint};
use frobcurves::poly::{branch_expand, TriForm};
use frobcurves::quartic::QuarticBde;
use frobcurves::{Error, Field, Fq};

use common::{degree_20_curve, degree_88_curve, grid, GridCurve};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn example_reproduction_88() -> Check {
    let curve = degree_88_curve();
    let t = Instant::now();
    let brute = count_curve_bruteforce(&curve, 1, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let brute_time = t.elapsed();
    let formula = count_formula_case1(&curve, 1).map_err(|e| e.to_string())?;
    ensure(brute == 85184, format!("brute force gave {brute}"))?;
    ensure(
        formula.n_points == 85184 && formula.delta == Some(0),
        format!("formula gave {:?}", formula),
    )?;
    Ok(format!(
        "brute force {brute} in {brute_time:.1?}, formula {} (delta 0)",
        formula.n_points
    ))
}

fn example_reproduction_20() -> Check {
    let curve = degree_20_curve();
    let t = Instant::now();
    let brute = count_curve_bruteforce(&curve, 1, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let formula = count_formula_case2(&curve, 1).map_err(|e| e.to_string())?;
    ensure(brute == 3640, format!("brute force gave {brute}"))?;
    ensure(
        formula.n_points == 3640 && formula.eta == Some(0),
        format!("formula gave {:?}", formula),
    )?;
    Ok(format!(
        "brute force {brute}, formula {} (eta 0), {:.1?}",
        formula.n_points,
        t.elapsed()
    ))
}

fn exceedance() -> Check {
    let b88 = bounds(88, 1849, None).map_err(|e| e.to_string())?;
    let b20 = bounds(20, 361, None).map_err(|e| e.to_string())?;
    ensure(
        b88.sv_conic == 80220 && b20.sv_conic == 3608,
        format!("bounds {} {}", b88.sv_conic, b20.sv_conic),
    )?;
    let n88 = count_formula_case1(&degree_88_curve(), 1)
        .map_err(|e| e.to_string())?
        .n_points;
    let n20 = count_formula_case2(&degree_20_curve(), 1)
        .map_err(|e| e.to_string())?
        .n_points;
    ensure(n88 > b88.sv_conic && n20 > b20.sv_conic, "no exceedance")?;
    Ok(format!(
        "{n88} > {} and {n20} > {}",
        b88.sv_conic, b20.sv_conic
    ))
}

fn lifted_maximality() -> Check {
    let t = Instant::now();
    let f11 = Field::prime(11).unwrap();
    let g = TriForm::from_terms(
        &f11,
        2,
        [
            ([2, 0, 0], Fq::ONE),
            ([0, 2, 0], Fq::ONE),
            ([0, 0, 2], Fq::ONE),
        ],
    )
    .unwrap();
    let m = certify_maximal(&g, 2).map_err(|e| e.to_string())?;
    let lifted = CurveFamily::lift_conic(&g, 2).map_err(|e| e.to_string())?;
    ensure(lifted.n() == 12 && lifted.degree() == 24, "unexpected lift")?;
    let brute = count_curve_bruteforce(&lifted, 1, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let formula = count_formula_case1(&lifted, 1).map_err(|e| e.to_string())?;
    let want = 24 * (24 + 121 - 1) / 2;
    ensure(
        m.n_points == want && brute == want && formula.n_points == want && formula.delta == Some(0),
        format!(
            "certify {} brute {brute} formula {}",
            m.n_points, formula.n_points
        ),
    )?;
    let elapsed = t.elapsed();
    ensure(elapsed.as_secs_f64() < 2.0, format!("took {elapsed:.1?}"))?;
    Ok(format!(
        "N = {brute} = d(d+q-1)/2 by certify, brute force and formula in {elapsed:.1?}"
    ))
}

fn oracle_agreement(curves: &[GridCurve]) -> Check {
    let mut mismatches = Vec::new();
    let mut nonclassical = 0;
    for g in curves {
        let (_, frob) = classify_d2(&g.curve).map_err(|e| format!("p={} n={}: {e}", g.p, g.n))?;
        let o = wronskian_frobenius_oracle(
            &g.curve,
            LinearSystem::D2,
            OracleMode::SymbolicModCurve,
            None,
        )
        .map_err(|e| format!("p={} n={}: {e}", g.p, g.n))?;
        let says_zero = frob.status == Status::FrobeniusNonclassical;
        if says_zero {
            nonclassical += 1;
        }
        if says_zero != o.identically_zero {
            mismatches.push(format!(
                "p={} n={} kind={} {:?}",
                g.p, g.n, g.kind, frob.status
            ));
        }
    }
    ensure(
        mismatches.is_empty(),
        format!("disagreements: {}", mismatches.join(", ")),
    )?;
    ensure(
        nonclassical > 0 && nonclassical < curves.len(),
        "grid does not exercise both verdicts",
    )?;
    Ok(format!(
        "{}/{} curves agree ({nonclassical} Frobenius nonclassical)",
        curves.len(),
        curves.len()
    ))
}

fn osculating_order(curves: &[GridCurve]) -> Check {
    let mut tested = 0;
    let mut points = 0;
    for g in curves {
        let (_, frob) = classify_d2(&g.curve).map_err(|e| e.to_string())?;
        if frob.theorem != criteria::SUBFIELD_DESCENT
            || frob.status != Status::FrobeniusNonclassical
        {
            continue;
        }
        let v = frob.v.ok_or("descent verdict without v")?;
        let pv = g.p.pow(v) as usize;
        let f = g.curve.field();
        let affine = g.curve.affine();
        let nonzero = |u: Fq| u.is_zero();
        let mut sample: Vec<(Fq, Fq)> = Vec::new();
        for batch in affine_points_iter(&g.curve, Some(&nonzero)).map_err(|e| e.to_string())? {
            sample.extend(
                batch
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .filter(|(_, w)| !w.is_zero()),
            );
            if sample.len() >= 50 {
                break;
            }
        }
        ensure(
            sample.len() >= 50,
            format!("p={} n={}: only {} points", g.p, g.n, sample.len()),
        )?;
        for &(u, w) in sample.iter().take(50) {
            let pt = ProjPoint::new(f, [u, w, Fq::ONE]).unwrap();
            let h = g
                .curve
                .osculating_form(&pt)
                .map_err(|e| e.to_string())?
                .dehomogenize_z();
            let y = branch_expand(&affine, u, w, pv + 5).map_err(|e| e.to_string())?;
            let along = h.compose(u, &y);
            let order = along.valuation().unwrap_or(pv + 6);
            ensure(
                order >= pv,
                format!(
                    "p={} n={} at ({u:?}, {w:?}): order {order} < {pv}",
                    g.p, g.n
                ),
            )?;
            points += 1;
        }
        tested += 1;
    }
    ensure(tested > 0, "no descent curves in the grid")?;
    Ok(format!(
        "{points} points on {tested} descent curves have contact >= p^v"
    ))
}

fn w_factorization() -> Check {
    let curve = degree_20_curve();
    let f = curve.field().clone();
    let q = f.order();
    let (a, b, c, _) = half_chart(&curve).map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    // the example's own chart, then one with a perturbed cross term
    for (label, abc) in [
        ("example chart", (a, b, c)),
        ("perturbed chart", (a, f.add(f.t(), Fq::ONE), c)),
    ] {
        let samples =
            w_factorization_samples(&f, curve.n(), q, abc, 50).map_err(|e| e.to_string())?;
        ensure(
            samples.len() == 50,
            format!("{label}: {} samples", samples.len()),
        )?;
        let bad = samples.iter().filter(|s| s.w != s.rhs).count();
        let nonzero = samples.iter().filter(|s| !s.w.is_zero()).count();
        ensure(bad == 0, format!("{label}: {bad} of 50 points differ"))?;
        lines.push(format!("{label} 50/50 equal ({nonzero} nonzero)"));
    }
    Ok(lines.join(", "))
}

fn appendix_sweeps() -> Check {
    let f = Field::prime(11).unwrap();
    let (mut four, mut squares, mut irreducible, mut collinear) = (0, 0, 0, 0);
    for b in 0..11 {
        for d in 0..11 {
            for e in 0..11 {
                if b == 0 && d == 0 && e == 0 {
                    continue;
                }
                let q = QuarticBde::new(&f, f.from_int(b), f.from_int(d), f.from_int(e))
                    .map_err(|e| e.to_string())?;
                let tag = format!("({b},{d},{e})");
                let fac = q.factorization();
                let sq = q.square_root();
                let on_four = q.invariant() == f.from_int(4);
                let two_zero = [b, d, e].iter().filter(|&&x| x == 0).count() >= 2;
                match &fac {
                    Ok(_) => ensure(on_four, format!("{tag}: factorization off the =4 branch"))?,
                    Err(Error::PreconditionFails(_)) => {
                        ensure(!on_four, format!("{tag}: precondition refused"))?
                    }
                    Err(err) => return Err(format!("{tag}: {err}")),
                }
                ensure(
                    sq.is_some() == two_zero,
                    format!("{tag}: square structure mismatch"),
                )?;
                let constructive = fac.is_ok() || sq.is_some();
                ensure(
                    constructive == q.reducible(),
                    format!(
                        "{tag}: criterion {} vs construction {constructive}",
                        q.reducible()
                    ),
                )?;
                let c = q.collinearity();
                ensure(
                    c.by_determinant == c.by_condition,
                    format!("{tag}: collinearity {c:?}"),
                )?;
                four += on_four as u32;
                squares += sq.is_some() as u32;
                irreducible += !q.reducible() as u32;
                collinear += c.by_determinant as u32;
            }
        }
    }
    Ok(format!(
        "1330 triples: {four} factor on the =4 branch, {squares} are squares, {irreducible} irreducible, {collinear} collinear"
    ))
}

fn bound_sanity(curves: &[GridCurve]) -> Check {
    let mut classical = 0;
    let mut all: Vec<(CurveFamily, bool)> =
        vec![(degree_88_curve(), false), (degree_20_curve(), false)];
    for g in curves {
        let (_, frob) = classify_d2(&g.curve).map_err(|e| e.to_string())?;
        all.push((g.curve.clone(), frob.status == Status::FrobeniusClassical));
    }
    for (c, frob_classical) in &all {
        let n = count_curve_bruteforce(c, 1, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let b = bounds(c.degree() as u64, c.field().order(), None).map_err(|e| e.to_string())?;
        let tag = format!("d={} q={} N={n}", c.degree(), c.field().order());
        let hw_low = (c.field().order() + 1).saturating_sub(b.hasse_weil - c.field().order() - 1);
        ensure(
            n <= b.hasse_weil && n >= hw_low,
            format!("{tag} violates Hasse-Weil"),
        )?;
        if *frob_classical {
            ensure(
                n <= b.sv_conic,
                format!("{tag} exceeds sv_conic {}", b.sv_conic),
            )?;
            classical += 1;
        }
    }
    Ok(format!(
        "{} counts within Hasse-Weil, {classical} Frobenius classical within sv_conic",
        all.len()
    ))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn main() -> ExitCode {
    let started = Instant::now();
    let curves = grid();
    let criteria: Vec<Criterion> = vec![
        ("degree 88 example count", Box::new(example_reproduction_88)),
        ("degree 20 example count", Box::new(example_reproduction_20)),
        ("conic bound exceedance", Box::new(exceedance)),
        ("lifted conic maximality", Box::new(lifted_maximality)),
        (
            "classification vs oracle",
            Box::new(|| oracle_agreement(&curves)),
        ),
        (
            "osculating contact order",
            Box::new(|| osculating_order(&curves)),
        ),
        ("W factorization", Box::new(w_factorization)),
        ("quartic sweeps", Box::new(appendix_sweeps)),
        ("bound sanity", Box::new(|| bound_sanity(&curves))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!(
                "criterion {}: PASS  {name}: {msg} [{:.1?}]",
                i + 1,
                t.elapsed()
            ),
            Err(msg) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL  {name}: {msg} [{:.1?}]",
                    i + 1,
                    t.elapsed()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
