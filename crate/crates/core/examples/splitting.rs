//! Finds an invariant complement for an invariant subspace whose
//! restriction has a cyclic adjoint and the same annihilator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rowcontract::random::random_splitting_instance;
use rowcontract::subspaces::{splitting_construct, splitting_holds};
use rowcontract::ToleranceConfig;

fn main() -> rowcontract::Result<()> {
    let tol = ToleranceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..5 {
        let (t, m) = random_splitting_instance(&mut rng, 2, 5)?;
        let s = splitting_construct(&t, &m, i, &tol)?;
        println!(
            "dim H = {}, dim M = {}, dim N = {}, sigma_min {:.3e}, holds {}",
            t.dim(),
            m.dim(),
            s.n.dim(),
            s.min_singular_value,
            splitting_holds(&t, &m, &s, 1e-8)
        );
    }
    Ok(())
}
