//! Truncated multiplier norms of a polynomial on the symmetric Fock space,
//! and where the sequence levels off.

use rowcontract::fock::{stabilization_index, truncated_multiplier_norms};
use rowcontract::Polynomial;

fn main() -> rowcontract::Result<()> {
    for text in ["x1+x2", "x1*x2", "2*x1^2 - x2"] {
        let p = Polynomial::parse(text, Some(2))?;
        let norms = truncated_multiplier_norms(&p, 10)?;
        let last = norms[norms.len() - 1];
        println!("{text}: norm {last:.12}, stable from {:?}", stabilization_index(&norms, 1e-10));
        for (n, x) in norms.iter().enumerate() {
            println!("  n={n:2} {x:.12}");
        }
    }
    Ok(())
}
