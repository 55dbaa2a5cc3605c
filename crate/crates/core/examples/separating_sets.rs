//! Greedy separating sets on a few fixtures, with the kernel dimension
//! after each chosen vector.

use rowcontract::fixtures::FixtureName;
use rowcontract::vectors::{multiplicity, separating_greedy_with, Sampler};
use rowcontract::ToleranceConfig;

fn main() -> rowcontract::Result<()> {
    let tol = ToleranceConfig::default();
    for name in ["maxcount", "fromgriff:3", "rectangle:2,3", "jordan:4"] {
        let t = name.parse::<FixtureName>()?.build()?;
        let gauss = separating_greedy_with(&t, Sampler::Gaussian { seed: 1 }, &tol)?;
        let basis = separating_greedy_with(&t, Sampler::StandardBasis, &tol)?;
        println!(
            "{name}: multiplicity {}, delta {}, gaussian {} {:?}, basis {} {:?}",
            multiplicity(&t, &tol)?,
            gauss.delta,
            gauss.vectors.len(),
            gauss.kernel_dims,
            basis.vectors.len(),
            basis.kernel_dims
        );
    }
    Ok(())
}
