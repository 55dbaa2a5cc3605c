//! Model tuples of ideals given by generators, and a tuple-file round trip.

use rowcontract::cli::{parse_tuple_file, write_tuple_file};
use rowcontract::ideals::{annihilator, model_of_generators, model_space};
use rowcontract::linalg::max_abs;
use rowcontract::{Polynomial, ToleranceConfig};

fn main() -> rowcontract::Result<()> {
    let tol = ToleranceConfig::default();
    let gens = [Polynomial::parse("x1*x2", Some(2))?, Polynomial::parse("x1^2 - x2^3", Some(2))?];
    let t = model_of_generators(2, &gens, None, &tol)?;
    let ann = annihilator(&t, &tol)?;
    let space = model_space(&ann, None, &tol)?;
    println!("model space dim {}, degree bound {}", space.dim(), space.degree_bound());
    for p in space.basis_polynomials()? {
        println!("  {p}");
    }
    println!("annihilator generators:");
    for g in ann.generators(&tol) {
        println!("  {g}");
    }

    let text = write_tuple_file(&t);
    let back = parse_tuple_file(&text)?;
    let diff = (0..t.d()).map(|k| max_abs(&(back.get(k) - t.get(k)))).fold(0.0, f64::max);
    println!("tuple file is {} bytes, round trip difference {diff:.1e}", text.len());
    Ok(())
}
