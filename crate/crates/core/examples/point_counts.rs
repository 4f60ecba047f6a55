// Point counts for the two descent examples by every available method,
// with the bounds they are compared against.

use frobcurves::count::{
    bounds, bruteforce_report, count_formula, fibersum_report, DEFAULT_BUDGET,
};
use frobcurves::curve::CurveFamily;
use frobcurves::doc::{parse, CurveDoc};
use frobcurves::Result;

fn load(name: &str) -> Result<CurveFamily> {
    let path = format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).expect("example data is present");
    parse::<CurveDoc>(&text)?.build()
}

pub fn run_example() -> Result<()> {
    for name in ["degree88.json", "degree20.json"] {
        let curve = load(name)?;
        let q = curve.field().order();
        println!("{name}: degree {} over F_{q}", curve.degree());

        let formula = count_formula(&curve)?;
        println!(
            "  {:?}: N = {} (delta {:?}, eta {:?})",
            formula.method, formula.n_points, formula.delta, formula.eta
        );
        let fiber = fibersum_report(&curve);
        println!("  fiber sum: N = {}", fiber.n_points);
        let brute = bruteforce_report(&curve, 1, DEFAULT_BUDGET)?;
        println!(
            "  brute force: N = {} in {} ms",
            brute.n_points, brute.runtime_ms
        );

        let b = bounds(curve.degree() as u64, q, None)?;
        println!(
            "  Hasse-Weil {}, line bound {}, conic bound {}",
            b.hasse_weil, b.sv_line, b.sv_conic
        );
        println!("  exceeds the conic bound: {}", formula.exceeds_sv_conic);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
