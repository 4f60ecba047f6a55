// Branch expansion at a point of a descent curve and the order of
// contact of its osculating conic.

use frobcurves::classify::affine_points;
use frobcurves::curve::{CurveFamily, ProjPoint};
use frobcurves::poly::branch_expand;
use frobcurves::{Field, Fq, Result};

pub fn run_example() -> Result<()> {
    let f = Field::new(43, 2, None)?;
    let i = |x| f.from_int(x);
    let curve = CurveFamily::from_aliases(&f, 44, [i(1), i(3), i(1), i(3), i(3), i(1)])?;
    let affine = curve.affine();
    let fy = affine.partial_y();

    let (u, w) = affine_points(&curve, None)?
        .into_iter()
        .find(|&(u, w)| !u.is_zero() && !w.is_zero() && !fy.eval(u, w).is_zero())
        .expect("curve has a smooth affine point");
    println!("P = ({}, {})", f.fmt_elem(u), f.fmt_elem(w));

    let k = 48;
    let branch = branch_expand(&affine, u, w, k)?;
    let nonzero: Vec<usize> = (1..=k)
        .filter(|&j| !branch.coeff(j).unwrap().is_zero())
        .take(5)
        .collect();
    println!("first nonzero branch coefficients at t^{nonzero:?}");

    let pt = ProjPoint::new(&f, [u, w, Fq::ONE]).unwrap();
    let h = curve.osculating_form(&pt)?.dehomogenize_z();
    let along = h.compose(u, &branch);
    println!(
        "osculating conic vanishes to order {:?} along the branch",
        along.valuation()
    );
    println!(
        "Frobenius image on the osculating conic: {}",
        curve.frobenius_on_osculating(&pt)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
