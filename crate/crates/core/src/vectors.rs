//! Cyclic and separating vectors, Gram operators, Fock intertwiners and
//! quasi-affine witnesses.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{TruncatedFock, Polynomial};
use crate::ideals::{annihilator, model_space, model_tuple, quotient_algebra, AnnihilatorBasis, ModelSpace, QuotientAlgebra};
use crate::linalg::{
    hstack_vectors, operator_norm, random_gaussian_scalar, random_gaussian_vector,
    rank_and_kernel, reduced_column_echelon, singular_values, ComplexMatrix, ComplexVector,
    ToleranceConfig, ONE,
};
use crate::subspaces::{generated_invariant, intertwiner_space, intertwining_residual, SubspaceBasis};
use crate::tuples::{joint_range_rank, monomial_powers, purity, require_nilpotent, RowTuple};

fn check_len(t: &RowTuple, xi: &ComplexVector) -> Result<()> {
    if xi.len() != t.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector has length {}, tuple acts on C^{}",
            xi.len(),
            t.dim()
        )));
    }
    Ok(())
}

/// Orthonormal basis of `span{T^alpha xi}`.
pub fn krylov(t: &RowTuple, xi: &ComplexVector, tol: &ToleranceConfig) -> Result<SubspaceBasis> {
    check_len(t, xi)?;
    generated_invariant(t, std::slice::from_ref(xi), tol)
}

/// Whether `xi` generates the whole space.
pub fn is_cyclic(t: &RowTuple, xi: &ComplexVector, tol: &ToleranceConfig) -> Result<bool> {
    Ok(krylov(t, xi, tol)?.dim() == t.dim())
}

/// Least number of generators, `dim H - dim(T_1 H + ... + T_d H)`.
pub fn multiplicity(t: &RowTuple, tol: &ToleranceConfig) -> Result<usize> {
    require_nilpotent(t, tol)?;
    Ok(t.dim() - joint_range_rank(t, tol))
}

/// Least `s` such that one of `trials` random `s`-sets is cyclic.
///
/// Exponential in nothing but slow; meant as a cross-check for small dimensions.
pub fn multiplicity_by_search(t: &RowTuple, seed: u64, trials: usize, tol: &ToleranceConfig) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = t.dim();
    for s in 1..=n {
        for _ in 0..trials {
            let seeds: Vec<ComplexVector> = (0..s).map(|_| random_gaussian_vector(&mut rng, n)).collect();
            if generated_invariant(t, &seeds, tol)?.dim() == n {
                return Ok(s);
            }
        }
    }
    Ok(n)
}

/// Annihilator, quotient algebra and the matrices `x^alpha(T)` of its basis.
struct Algebra {
    quotient: QuotientAlgebra,
    powers: Vec<ComplexMatrix>,
}

fn algebra(t: &RowTuple, tol: &ToleranceConfig) -> Result<Algebra> {
    let m = require_nilpotent(t, tol)?;
    let ann = annihilator(t, tol)?;
    let quotient = quotient_algebra(&ann, tol)?;
    let all = monomial_powers(t, m);
    let powers = quotient
        .monomial_basis()
        .iter()
        .map(|a| all.iter().find(|(b, _)| b == a).expect("basis below bound").1.clone())
        .collect();
    Ok(Algebra { quotient, powers })
}

impl Algebra {
    /// Columns `x^{alpha_j}(T) xi` for the quotient basis.
    fn evaluation(&self, xi: &ComplexVector) -> ComplexMatrix {
        let cols: Vec<ComplexVector> = self.powers.iter().map(|p| p * xi).collect();
        hstack_vectors(xi.len(), &cols)
    }

    fn operator(&self, coords: &[Complex64]) -> ComplexMatrix {
        let n = self.powers[0].nrows();
        let mut out = ComplexMatrix::zeros(n, n);
        for (p, c) in self.powers.iter().zip(coords) {
            out += p * *c;
        }
        out
    }

    /// Kernel of `[p] -> p(T) xi` restricted to the span of `k`, in quotient coordinates.
    fn kernel_within(&self, k: &ComplexMatrix, xi: &ComplexVector, tol: &ToleranceConfig) -> ComplexMatrix {
        let img = self.evaluation(xi) * k;
        if operator_norm(&img) <= tol.rank_rel_tol * xi.norm().max(f64::MIN_POSITIVE) {
            return k.clone();
        }
        let (_, ker) = rank_and_kernel(&img, tol);
        k * ker
    }
}

fn first_echelon_vector(k: &ComplexMatrix) -> Vec<Complex64> {
    let order: Vec<usize> = (0..k.nrows()).collect();
    let (e, _) = reduced_column_echelon(k, &order, 1e-10);
    e.column(0).iter().map(|z| clean(*z)).collect()
}

fn clean(z: Complex64) -> Complex64 {
    let r = |v: f64| if v.abs() < 1e-13 { 0.0 } else { v };
    Complex64::new(r(z.re), r(z.im))
}

/// Whether `[p] -> p(T) xi` is injective on the quotient algebra.
pub fn is_separating(t: &RowTuple, xi: &ComplexVector, tol: &ToleranceConfig) -> Result<bool> {
    check_len(t, xi)?;
    let alg = algebra(t, tol)?;
    Ok(krylov(t, xi, tol)?.dim() == alg.quotient.dim())
}

/// A polynomial `p` with `p(T) xi = 0` but `p(T) != 0`, or `None` when `xi`
/// is separating.
///
/// The kernel of the evaluation map is put in reduced echelon form over the
/// graded monomial basis of the quotient; the returned `p` is the first
/// echelon vector, so its lowest monomial has coefficient 1.
pub fn separating_witness(t: &RowTuple, xi: &ComplexVector, tol: &ToleranceConfig) -> Result<Option<Polynomial>> {
    check_len(t, xi)?;
    let alg = algebra(t, tol)?;
    let delta = alg.quotient.dim();
    let ker = alg.kernel_within(&ComplexMatrix::identity(delta, delta), xi, tol);
    if ker.ncols() == 0 {
        return Ok(None);
    }
    Ok(Some(alg.quotient.polynomial(&first_echelon_vector(&ker))))
}

/// How candidate vectors are drawn in [`separating_greedy_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampler {
    /// Seeded complex Gaussian vectors, rejected while `p(T) xi` vanishes.
    Gaussian { seed: u64 },
    /// The first standard basis vector not killed by `p(T)`.
    StandardBasis,
}

/// Separating set together with the kernel dimensions visited by the loop.
#[derive(Clone, Debug, Serialize)]
pub struct SeparatingRun {
    #[serde(skip)]
    pub vectors: Vec<ComplexVector>,
    /// `dim K_0 = delta, dim K_1, ..., 0`.
    pub kernel_dims: Vec<usize>,
    pub delta: usize,
}

/// Separating set built with seeded Gaussian sampling.
pub fn separating_greedy(t: &RowTuple, seed: u64, tol: &ToleranceConfig) -> Result<SeparatingRun> {
    separating_greedy_with(t, Sampler::Gaussian { seed }, tol)
}

const SAMPLE_RETRIES: usize = 64;

/// Maintains `K = {[p] : p(T) xi_j = 0 for all chosen xi_j}`; while `K != 0`,
/// takes the first echelon element `[p]` of `K` and a vector `xi` with
/// `p(T) xi != 0`.
pub fn separating_greedy_with(t: &RowTuple, sampler: Sampler, tol: &ToleranceConfig) -> Result<SeparatingRun> {
    let alg = algebra(t, tol)?;
    let delta = alg.quotient.dim();
    let n = t.dim();
    let mut rng = match sampler {
        Sampler::Gaussian { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        Sampler::StandardBasis => None,
    };
    let mut k = ComplexMatrix::identity(delta, delta);
    let mut vectors = Vec::new();
    let mut kernel_dims = vec![delta];
    while k.ncols() > 0 {
        let p = alg.operator(&first_echelon_vector(&k));
        let threshold = tol.rank_rel_tol * operator_norm(&p);
        let xi = match rng.as_mut() {
            Some(rng) => (0..SAMPLE_RETRIES)
                .map(|_| random_gaussian_vector(rng, n))
                .find(|v| (&p * v).norm() > threshold * v.norm())
                .ok_or_else(|| Error::Numerical("sampling kept landing in ker p(T)".into()))?,
            None => (0..n)
                .map(|i| {
                    let mut e = ComplexVector::zeros(n);
                    e[i] = ONE;
                    e
                })
                .find(|e| (&p * e).norm() > threshold)
                .ok_or_else(|| Error::Numerical("p(T) vanishes on every basis vector".into()))?,
        };
        let next = alg.kernel_within(&k, &xi, tol);
        if next.ncols() >= k.ncols() {
            return Err(Error::Numerical("kernel dimension did not decrease".into()));
        }
        kernel_dims.push(next.ncols());
        vectors.push(xi);
        k = next;
    }
    Ok(SeparatingRun { vectors, kernel_dims, delta })
}

/// Whether no nonzero class of the quotient kills every vector of the set.
pub fn is_separating_set(t: &RowTuple, set: &[ComplexVector], tol: &ToleranceConfig) -> Result<bool> {
    let alg = algebra(t, tol)?;
    let delta = alg.quotient.dim();
    let mut k = ComplexMatrix::identity(delta, delta);
    for xi in set {
        check_len(t, xi)?;
        k = alg.kernel_within(&k, xi, tol);
    }
    Ok(k.ncols() == 0)
}

/// `G = sum_w T_w xi (T_w xi)^*` and its norm.
#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    #[serde(skip)]
    pub gram: ComplexMatrix,
    pub bound: f64,
    pub cyclic: bool,
}

/// Gram operator of the word orbit of `xi`.
///
/// Nilpotent tuples give a finite sum over multi-indices with weights
/// `|alpha|!/alpha!`; pure row contractions are handled by iterating
/// `G = xi xi^* + Phi(G)`.
pub fn gram_operator(t: &RowTuple, xi: &ComplexVector, tol: &ToleranceConfig) -> Result<GramReport> {
    check_len(t, xi)?;
    let n = t.dim();
    let gram = if let Ok(m) = require_nilpotent(t, tol) {
        let mut g = ComplexMatrix::zeros(n, n);
        for (alpha, p) in monomial_powers(t, m - 1) {
            let v = p * xi;
            g += (&v * v.adjoint()).scale(alpha.multinomial());
        }
        g
    } else {
        if !purity(t, tol)?.is_pure() {
            return Err(Error::HypothesisFailed {
                hypothesis: "tuple is pure",
                detail: "the orbit sum need not converge".into(),
            });
        }
        let rank_one = xi * xi.adjoint();
        let mut g = rank_one.clone();
        let mut converged = false;
        for _ in 0..tol.max_iter {
            let next = &rank_one + t.phi(&g);
            let step = operator_norm(&(&next - &g));
            g = next;
            if step <= tol.iter_tol * operator_norm(&g).max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Divergent(tol.max_iter));
        }
        g
    };
    let g = (&gram + gram.adjoint()).scale(0.5);
    Ok(GramReport { bound: operator_norm(&g), gram: g, cyclic: is_cyclic(t, xi, tol)? })
}

/// `X : F_N -> H`, `X e_w = T_w xi`, in the word basis of `TruncatedFock(d, N)`.
///
/// `N` must reach the nilpotency index so that `X L_k = T_k X` holds on
/// every word of length below `N`.
pub fn fock_intertwiner(t: &RowTuple, xi: &ComplexVector, cap: usize, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    check_len(t, xi)?;
    let m = require_nilpotent(t, tol)?;
    if cap < m {
        return Err(Error::InvalidParameter(format!(
            "truncation degree {cap} is below the nilpotency index {m}"
        )));
    }
    let space = TruncatedFock::new(t.d(), cap)?;
    let mut x = ComplexMatrix::zeros(t.dim(), space.dim());
    x.set_column(0, xi);
    for (j, w) in space.basis().iter().enumerate().skip(1) {
        let (&first, rest) = w.letters().split_first().expect("nonempty word");
        let parent = space
            .position(&crate::fock::Word::new(rest.to_vec()))
            .expect("suffix is shorter");
        let col = t.get(first) * x.column(parent);
        x.set_column(j, &col);
    }
    Ok(x)
}

/// `max_k ||(X L_k - T_k X)||` on the words of length below the cap.
pub fn fock_residual(t: &RowTuple, x: &ComplexMatrix, cap: usize) -> Result<f64> {
    let space = TruncatedFock::new(t.d(), cap)?;
    let low = space.count_below(cap);
    let mut worst: f64 = 0.0;
    for k in 0..t.d() {
        let l = crate::fock::creation_matrix(k, &space)?;
        let diff = (x * l - t.get(k) * x).columns(0, low).into_owned();
        worst = worst.max(operator_norm(&diff));
    }
    Ok(worst)
}

/// Invertible intertwiner from the model tuple of `Ann(T)` to `T`.
#[derive(Clone, Debug)]
pub struct QuasiAffineWitness {
    /// Normalized to operator norm 1.
    pub x: ComplexMatrix,
    pub annihilator: AnnihilatorBasis,
    pub space: ModelSpace,
    pub model: RowTuple,
    /// `max_k ||X M_k - T_k X|| / ||X||`.
    pub residual: f64,
    /// `sigma_min(X) / sigma_max(X)`.
    pub inverse_condition: f64,
}

const WITNESS_RETRIES: usize = 32;

/// Searches the intertwiner space from the model tuple of `Ann(T)` to `T`
/// for an invertible element.
pub fn quasiaffine_witness(t: &RowTuple, seed: u64, tol: &ToleranceConfig) -> Result<QuasiAffineWitness> {
    t.ensure_commuting(tol)?;
    if multiplicity(t, tol)? != 1 {
        return Err(Error::NotCyclic);
    }
    let ann = annihilator(t, tol)?;
    let space = model_space(&ann, None, tol)?;
    let model = model_tuple(&space)?;
    if model.dim() != t.dim() {
        return Err(Error::Numerical(format!(
            "model space has dimension {} but the tuple acts on C^{}",
            model.dim(),
            t.dim()
        )));
    }
    let sols = intertwiner_space(&model, t, tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..WITNESS_RETRIES {
        let coeffs: Vec<Complex64> = (0..sols.dim()).map(|_| random_gaussian_scalar(&mut rng)).collect();
        let x = sols.combine(&coeffs);
        let sv = singular_values(&x);
        let (Some(&smax), Some(&smin)) = (sv.first(), sv.last()) else { continue };
        if smax == 0.0 || smin <= tol.rank_rel_tol * smax {
            continue;
        }
        let x = x.unscale(smax);
        let residual = intertwining_residual(&x, &model, t);
        return Ok(QuasiAffineWitness {
            x,
            annihilator: ann,
            space,
            model,
            residual,
            inverse_condition: smin / smax,
        });
    }
    Err(Error::Numerical("no invertible intertwiner found".into()))
}

/// Draws a random point of a seeded generator; shared by the CLI.
pub fn random_vector(seed: u64, n: usize) -> ComplexVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let _: f64 = rng.random();
    random_gaussian_vector(&mut rng, n)
}
