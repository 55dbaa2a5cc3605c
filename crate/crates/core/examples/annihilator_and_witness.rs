//! Validates a small nilpotent pair, prints its annihilator and the
//! quotient algebra, then shows why `(1, 2, 3)` is not separating.

use rowcontract::cli::clear_denominators;
use rowcontract::ideals::{annihilator, quotient_algebra};
use rowcontract::tuples::validate;
use rowcontract::vectors::{is_separating, separating_witness};
use rowcontract::{fixtures, ComplexVector, ToleranceConfig};

fn main() -> rowcontract::Result<()> {
    let tol = ToleranceConfig::default();
    let t = fixtures::maxcount();

    let report = validate(&t, &tol)?;
    println!(
        "commuting {}, row contraction {}, nilpotent index {:?}, defect rank {}",
        report.commuting, report.row_contraction, report.nilpotent, report.defect
    );

    let ann = annihilator(&t, &tol)?;
    println!("annihilator (codim {}):", ann.codim());
    for g in ann.generators(&tol) {
        println!("  {g}");
    }
    let q = quotient_algebra(&ann, &tol)?;
    println!("quotient algebra has dimension {}", q.dim());

    let v = ComplexVector::from_iterator(3, [1.0, 2.0, 3.0].map(|x| x.into()));
    println!("separating: {}", is_separating(&t, &v, &tol)?);
    if let Some(p) = separating_witness(&t, &v, &tol)? {
        println!("p(T) v = 0 for p = {}", clear_denominators(&p));
    }
    Ok(())
}
