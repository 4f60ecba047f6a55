// Arithmetic in F_{19^2}: the default modulus, Frobenius, norms and an
// embedding into F_{19^4}.

use frobcurves::{Field, Result};

pub fn run_example() -> Result<()> {
    let f = Field::new(19, 2, None)?;
    println!(
        "F_{} with modulus {:?} (constant term first)",
        f.order(),
        f.spec().modulus
    );

    let t = f.t();
    let a = f.add(t, f.from_int(3));
    let b = f.inv(a)?;
    println!(
        "a = {}, 1/a = {}, a * (1/a) = {}",
        f.fmt_elem(a),
        f.fmt_elem(b),
        f.fmt_elem(f.mul(a, b))
    );
    println!("t^2 = {}", f.fmt_elem(f.square(t)));

    // x -> x^19 fixes exactly the prime field
    let conj = f.frobenius(a, 1);
    println!(
        "Frobenius(a) = {}, in F_19: {}",
        f.fmt_elem(conj),
        f.in_subfield(a, 1)?
    );
    let norm = f.norm_to_subfield(a, 1)?;
    println!(
        "N(a) = a * a^19 = {} (in F_19: {})",
        f.fmt_elem(norm),
        f.in_subfield(norm, 1)?
    );

    let g = f.generator();
    println!("generator {} has log {:?}", f.fmt_elem(g), f.log(g));
    println!("10th roots of 1: {}", f.nth_roots(f.one(), 10).len());

    let ext = f.extension(2)?;
    let image = ext.embed(a);
    println!("a in F_{}: {}", ext.big.order(), ext.big.fmt_elem(image));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
