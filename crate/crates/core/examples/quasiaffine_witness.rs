//! Builds a contractive injective intertwiner from a model tuple into a
//! cyclic nilpotent tuple, then checks the Gram bound of its first column.

use rowcontract::tuples::require_nilpotent;
use rowcontract::vectors::{fock_intertwiner, fock_residual, gram_operator, quasiaffine_witness};
use rowcontract::{fixtures, ComplexVector, ToleranceConfig};

fn main() -> rowcontract::Result<()> {
    let tol = ToleranceConfig::default();
    let t = fixtures::jordan(4)?;
    let w = quasiaffine_witness(&t, 7, &tol)?;
    println!("annihilator codim {}, model dim {}", w.annihilator.codim(), w.model.dim());
    println!("intertwining residual {:.3e}", w.residual);
    println!("1 / cond(X) = {:.3e}", w.inverse_condition);

    let xi: ComplexVector = w.x.column(0).into_owned();
    let gram = gram_operator(&t, &xi, &tol)?;
    println!("gram bound {:.6}, cyclic {}", gram.bound, gram.cyclic);

    let cap = require_nilpotent(&t, &tol)?;
    let f = fock_intertwiner(&t, &xi, cap, &tol)?;
    println!("fock intertwiner residual {:.3e}", fock_residual(&t, &f, cap)?);
    Ok(())
}
