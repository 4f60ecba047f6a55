// Lifting x^2 + y^2 + z^2 over F_11 to a degree-24 curve over F_121 that
// attains the line bound.

use frobcurves::count::{bounds, certify_maximal, count_fibersum};
use frobcurves::curve::CurveFamily;
use frobcurves::poly::TriForm;
use frobcurves::{Field, Fq, Result};

pub fn run_example() -> Result<()> {
    let f11 = Field::prime(11)?;
    let conic = TriForm::from_terms(
        &f11,
        2,
        [
            ([2, 0, 0], Fq::ONE),
            ([0, 2, 0], Fq::ONE),
            ([0, 0, 2], Fq::ONE),
        ],
    )?;

    let lifted = CurveFamily::lift_conic(&conic, 2)?;
    println!(
        "lifted: n = {}, degree {}, over F_{}",
        lifted.n(),
        lifted.degree(),
        lifted.field().order()
    );

    let m = certify_maximal(&conic, 2)?;
    println!(
        "conic has {} points over F_11, lifted curve has {}",
        m.subfield_points, m.n_points
    );
    let b = bounds(m.d, m.q, None)?;
    println!("line bound {}: attained = {}", b.sv_line, m.attains_sv_line);
    assert_eq!(count_fibersum(&lifted), m.n_points);

    // a conic through a coordinate vertex is rejected
    let through_vertex =
        TriForm::from_terms(&f11, 2, [([1, 1, 0], Fq::ONE), ([0, 0, 2], Fq::ONE)])?;
    match certify_maximal(&through_vertex, 2) {
        Ok(_) => println!("unexpectedly certified"),
        Err(e) => println!("xy + z^2: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
