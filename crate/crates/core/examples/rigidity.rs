//! Compares annihilators of restrictions to invariant subspaces of a
//! cyclic tuple.

use rowcontract::subspaces::{generated_invariant, rigidity_invariant_check};
use rowcontract::{fixtures, ComplexVector, SubspaceBasis, ToleranceConfig};

fn main() -> rowcontract::Result<()> {
    let tol = ToleranceConfig::default();
    let t = fixtures::jordan(5)?;
    let full = SubspaceBasis::full(t.dim());
    for k in 1..t.dim() {
        let mut seed = ComplexVector::zeros(t.dim());
        seed[k] = 1.0.into();
        let m = generated_invariant(&t, &[seed], &tol)?;
        let r = rigidity_invariant_check(&t, &m, &full, &tol)?;
        println!(
            "dim M = {}: {:?}, annihilator distance {:.3e}",
            m.dim(),
            r.verdict,
            r.annihilator_distance
        );
    }
    Ok(())
}
