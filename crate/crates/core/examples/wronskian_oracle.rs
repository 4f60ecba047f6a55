// Deciding Frobenius nonclassicality directly from the determinant of
// Hasse derivatives, without the descent criteria.

use frobcurves::classify::{wronskian_frobenius_oracle, LinearSystem, OracleMode};
use frobcurves::curve::CurveFamily;
use frobcurves::{Field, Result};

pub fn run_example() -> Result<()> {
    let f = Field::new(19, 2, None)?;
    let i = |x| f.from_int(x);
    let descended = CurveFamily::from_aliases(&f, 10, [i(1), i(2), i(-1), i(0), i(0), i(1)])?;
    let b = f.add(f.t(), f.one());
    let perturbed = CurveFamily::from_aliases(&f, 10, [i(1), b, i(-1), i(0), i(0), i(1)])?;

    for (label, curve) in [("descended", &descended), ("perturbed", &perturbed)] {
        for system in [LinearSystem::D1, LinearSystem::D2] {
            let v = wronskian_frobenius_oracle(curve, system, OracleMode::SymbolicModCurve, None)?;
            println!(
                "{label} {system:?}: identically zero = {} ({} points, order {} vs bound {})",
                v.identically_zero, v.samples_used, v.certified_order, v.numerator_degree_bound
            );
        }
    }

    let quick = wronskian_frobenius_oracle(
        &perturbed,
        LinearSystem::D2,
        OracleMode::PointSampling,
        Some(200),
    )?;
    println!("sampling: {}", quick.confidence_note);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
