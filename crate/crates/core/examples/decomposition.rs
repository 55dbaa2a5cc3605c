//! Searches for a nontrivial idempotent in the commutant.

use rowcontract::fixtures::FixtureName;
use rowcontract::subspaces::{check_idempotent, decomposition_exists};
use rowcontract::ToleranceConfig;

fn main() -> rowcontract::Result<()> {
    let tol = ToleranceConfig::default();
    for name in ["maxcount", "fromgriff:2", "fromgriff:3", "rectangle:2,2"] {
        let t = name.parse::<FixtureName>()?.build()?;
        let r = decomposition_exists(&t, 0, &tol)?;
        print!(
            "{name}: commutant {}, radical {}, decomposable {}",
            r.commutant_dim, r.radical_dim, r.exists
        );
        if let Some(e) = &r.certificate {
            let c = check_idempotent(e, &t, &tol);
            print!(" (rank {}, errors {:.1e} {:.1e})", c.rank, c.idempotent_error, c.commutator_error);
        }
        println!();
    }
    Ok(())
}
