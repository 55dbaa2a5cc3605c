//! Seeded property suites with aggregate pass/fail counts.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{numerical_rank, ComplexVector, ToleranceConfig};
use crate::random::{
    random_coinvariant, random_cyclic_nilpotent, random_invariant, random_nilpotent_tuple,
    random_proper_invariant, random_splitting_instance, rescale_to_contraction,
};
use crate::subspaces::{
    check_idempotent, decomposition_exists, rigidity_coinvariant_check, rigidity_invariant_check,
    splitting_construct, splitting_holds, RigidityReport, SubspaceBasis, Verdict,
};
use crate::tuples::require_nilpotent;
use crate::vectors::{
    fock_intertwiner, fock_residual, gram_operator, is_separating_set, multiplicity,
    multiplicity_by_search, quasiaffine_witness, separating_greedy,
};

/// A property suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Cyclic nilpotent tuples against proper invariant subspaces.
    RigidityInvariant,
    /// Co-invariant pairs on cyclic nilpotent tuples.
    RigidityCoinvariant,
    /// Invariant pairs on tuples with cyclic adjoint.
    RigidityAdjoint,
    Splitting,
    Greedy,
    Witness,
    Decomposition,
    Multiplicity,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::RigidityInvariant,
        Suite::RigidityCoinvariant,
        Suite::RigidityAdjoint,
        Suite::Splitting,
        Suite::Greedy,
        Suite::Witness,
        Suite::Decomposition,
        Suite::Multiplicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RigidityInvariant => "rigidity-invariant",
            Suite::RigidityCoinvariant => "rigidity-coinvariant",
            Suite::RigidityAdjoint => "rigidity-adjoint",
            Suite::Splitting => "splitting",
            Suite::Greedy => "greedy",
            Suite::Witness => "witness",
            Suite::Decomposition => "decomposition",
            Suite::Multiplicity => "multiplicity",
        }
    }

    pub fn default_count(self) -> usize {
        match self {
            Suite::Splitting | Suite::Witness | Suite::Multiplicity => 100,
            _ => 200,
        }
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|s| *s == self).unwrap() as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a suite name; `all` expands to every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    s.split(',').map(|p| p.trim().parse()).collect()
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.iter().copied().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::Parse(format!("suite: unknown `{s}` (expected all, {})", names.join(", ")))
        })
    }
}

/// Outcome of one instance.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Inapplicable(String),
    Violation(String),
}

/// Aggregate counts for one suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub suite: &'static str,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub inapplicable: usize,
    pub violations: usize,
    /// First few failure, inapplicability and violation messages.
    pub messages: Vec<String>,
    pub seconds: f64,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.instances
    }
}

const KEPT_MESSAGES: usize = 5;

/// Independent generator for instance `i` of a suite.
pub fn instance_rng(suite: Suite, seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite.stream() << 32) | i as u64);
    rng
}

/// Runs `count` instances (the suite default when `None`).
pub fn run_suite(suite: Suite, seed: u64, count: Option<usize>, tol: &ToleranceConfig) -> SuiteSummary {
    let start = Instant::now();
    let count = count.unwrap_or(suite.default_count());
    let mut s = SuiteSummary {
        suite: suite.name(),
        instances: count,
        passed: 0,
        failed: 0,
        inapplicable: 0,
        violations: 0,
        messages: Vec::new(),
        seconds: 0.0,
    };
    for i in 0..count {
        let mut rng = instance_rng(suite, seed, i);
        let outcome = run_instance(suite, &mut rng, tol).unwrap_or_else(|e| Outcome::Fail(e.to_string()));
        let msg = match outcome {
            Outcome::Pass => {
                s.passed += 1;
                None
            }
            Outcome::Fail(m) => {
                s.failed += 1;
                Some(m)
            }
            Outcome::Inapplicable(m) => {
                s.inapplicable += 1;
                Some(m)
            }
            Outcome::Violation(m) => {
                s.violations += 1;
                Some(m)
            }
        };
        if let Some(m) = msg {
            if s.messages.len() < KEPT_MESSAGES {
                s.messages.push(format!("instance {i}: {m}"));
            }
        }
    }
    s.seconds = start.elapsed().as_secs_f64();
    s
}

fn rigidity_outcome(r: &RigidityReport) -> Outcome {
    match r.verdict {
        Verdict::Consistent => Outcome::Pass,
        Verdict::Inapplicable => Outcome::Inapplicable(r.reason.clone().unwrap_or_default()),
        Verdict::TheoremViolation => Outcome::Violation(format!(
            "equal annihilators (distance {:.3e}) for different subspaces",
            r.annihilator_distance
        )),
    }
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(what())
    }
}

/// Runs a single instance drawn from `rng`.
pub fn run_instance<R: Rng>(suite: Suite, rng: &mut R, tol: &ToleranceConfig) -> Result<Outcome> {
    Ok(match suite {
        Suite::RigidityInvariant => {
            let t = random_cyclic_nilpotent(rng, 3, 8)?;
            let m = random_proper_invariant(rng, &t, tol)?;
            rigidity_outcome(&rigidity_invariant_check(&t, &m, &SubspaceBasis::full(t.dim()), tol)?)
        }
        Suite::RigidityCoinvariant => {
            let t = random_cyclic_nilpotent(rng, 3, 8)?;
            let m = random_coinvariant(rng, &t, tol)?;
            let n = if rng.random_bool(0.2) { m.clone() } else { random_coinvariant(rng, &t, tol)? };
            rigidity_outcome(&rigidity_coinvariant_check(&t, &m, &n, tol)?)
        }
        Suite::RigidityAdjoint => {
            let t = rescale_to_contraction(&random_cyclic_nilpotent(rng, 3, 8)?.adjoint());
            let m = random_invariant(rng, &t, tol)?;
            let n = if rng.random_bool(0.2) { m.clone() } else { random_invariant(rng, &t, tol)? };
            rigidity_outcome(&rigidity_invariant_check(&t, &m, &n, tol)?)
        }
        Suite::Splitting => {
            let (t, m) = random_splitting_instance(rng, 2, 5)?;
            let s = splitting_construct(&t, &m, rng.random(), tol)?;
            check(splitting_holds(&t, &m, &s, 1e-8), || {
                format!(
                    "postconditions fail: dim M + dim N = {} + {}, sigma_min {:.3e}, rank {}",
                    m.dim(),
                    s.n.dim(),
                    s.min_singular_value,
                    s.joint_rank
                )
            })
        }
        Suite::Greedy => {
            let t = random_nilpotent_tuple(rng, 3, 12)?;
            let run = separating_greedy(&t, rng.random(), tol)?;
            let shrinking = run.kernel_dims.windows(2).all(|w| w[1] < w[0]);
            let ok = run.delta <= 12
                && run.vectors.len() <= run.delta
                && shrinking
                && is_separating_set(&t, &run.vectors, tol)?;
            check(ok, || format!("delta {}, kernel dims {:?}", run.delta, run.kernel_dims))
        }
        Suite::Witness => {
            let t = random_cyclic_nilpotent(rng, 3, 8)?;
            let w = quasiaffine_witness(&t, rng.random(), tol)?;
            let n = t.dim();
            let full_rank = numerical_rank(&w.x, tol) == n;
            let xi: ComplexVector = w.x.column(0).into_owned();
            let gram = gram_operator(&t, &xi, tol)?;
            let m = require_nilpotent(&t, tol)?;
            let fx = fock_intertwiner(&t, &xi, m, tol)?;
            let fres = fock_residual(&t, &fx, m)?;
            let ok = w.residual < 1e-8 && full_rank && gram.bound <= 1.0 + 1e-8 && fres < 1e-10;
            check(ok, || {
                format!(
                    "residual {:.3e}, full rank {full_rank}, gram bound {:.6}, fock residual {:.3e}",
                    w.residual, gram.bound, fres
                )
            })
        }
        Suite::Decomposition => {
            let t = random_nilpotent_tuple(rng, 2, 4)?;
            let r = decomposition_exists(&t, rng.random(), tol)?;
            match (&r.certificate, r.exists) {
                (Some(e), true) => {
                    let c = check_idempotent(e, &t, tol);
                    check(
                        c.idempotent_error < 1e-9 && c.commutator_error < 1e-9 && c.rank > 0 && c.rank < t.dim(),
                        || format!("bad certificate {c:?}"),
                    )
                }
                (None, false) => Outcome::Pass,
                _ => Outcome::Fail("certificate presence disagrees with the verdict".into()),
            }
        }
        Suite::Multiplicity => {
            let t = random_nilpotent_tuple(rng, 2, 4)?;
            let a = multiplicity(&t, tol)?;
            let b = multiplicity_by_search(&t, rng.random(), 6, tol)?;
            check(a == b, || format!("rank formula {a}, search {b}"))
        }
    })
}
