// Classicality verdicts for a few conic-type curves.

use frobcurves::classify::classify;
use frobcurves::curve::CurveFamily;
use frobcurves::{Field, Result};

pub fn run_example() -> Result<()> {
    let f43 = Field::new(43, 2, None)?;
    let f19 = Field::new(19, 2, None)?;
    let f13 = Field::new(13, 2, None)?;
    let int = |f: &Field, a: [i64; 6]| a.map(|c| f.from_int(c));

    let curves = [
        (
            "coefficients in F_43, n = 44",
            CurveFamily::from_aliases(&f43, 44, int(&f43, [1, 3, 1, 3, 3, 1]))?,
        ),
        (
            "x^2n + 2x^n y^n - y^2n + z^2n, n = 10",
            CurveFamily::from_aliases(&f19, 10, int(&f19, [1, 2, -1, 0, 0, 1]))?,
        ),
        (
            "generic, n = 5",
            CurveFamily::from_aliases(&f13, 5, int(&f13, [1, 2, 3, 1, 4, 5]))?,
        ),
    ];

    for (label, curve) in &curves {
        let report = classify(curve);
        println!("{label}");
        println!("  smooth: {:?}", report.smooth.status);
        if let Some(v) = &report.d2_classical {
            println!("  conics: {:?}", v.status);
        }
        if let Some(v) = &report.d2_frobenius_classical {
            println!(
                "  Frobenius, conics: {:?} via {} (v = {:?})",
                v.status, v.theorem, v.v
            );
        }
        if let Some(v) = &report.d1_frobenius_classical {
            println!("  Frobenius, lines: {:?}", v.status);
        }
        for w in &report.assumption_violations {
            println!("  violation: {w}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
