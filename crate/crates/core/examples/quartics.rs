// The two quartic families: reducibility, factors and the collinearity
// of the marked points.

use frobcurves::doc::FormDoc;
use frobcurves::quartic::{QuarticBde, QuarticSym};
use frobcurves::{Field, Result};

pub fn run_example() -> Result<()> {
    let f = Field::prime(13)?;
    let i = |x| f.from_int(x);

    for (b, d, e) in [(2, 2, 2), (2, 3, 3), (1, 2, 5), (3, 0, 0)] {
        let q = QuarticBde::new(&f, i(b), i(d), i(e))?;
        print!(
            "(b, d, e) = ({b}, {d}, {e}): invariant {}",
            f.fmt_elem(q.invariant())
        );
        if let Some(c) = q.square_root() {
            println!(
                ", square of {}",
                serde_json::to_string(&FormDoc::of(&c)).unwrap()
            );
        } else if q.reducible() {
            let fac = q.factorization()?;
            println!(
                ", splits over F_{} into {} and {} terms",
                fac.ext.big.order(),
                fac.factors[0].num_terms(),
                fac.factors[1].num_terms()
            );
        } else {
            println!(", irreducible");
        }
        let c = q.collinearity();
        println!(
            "  marked points collinear: {} (determinant {}, condition {})",
            q.collinear()?,
            c.by_determinant,
            c.by_condition
        );
    }

    for coeffs in [[1, 1, 1, 2, 0, 0], [1, 1, 1, 0, 0, 0], [1, 2, 3, 4, 5, 6]] {
        let q = QuarticSym::new(&f, coeffs.map(i))?;
        println!(
            "sym {coeffs:?}: criterion {}, irreducible {}",
            f.fmt_elem(q.criterion_value()),
            q.cremona_irreducible()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
