//! Invariant and co-invariant subspaces, intertwiners, decompositions and rigidity checks.

use nalgebra::Schur;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{annihilator, AnnihilatorBasis};
use crate::linalg::{
    hstack, hstack_vectors, kron, numerical_rank, operator_norm, orthogonal_complement,
    orthonormalize, random_gaussian_scalar, random_gaussian_vector, rank_and_kernel,
    singular_values, subspace_distance, try_inverse, unvectorize, vectorize, vstack,
    ComplexMatrix, ComplexVector, ToleranceConfig,
};
use crate::tuples::{require_nilpotent, RowTuple};
use crate::vectors::{is_cyclic, multiplicity};

/// Principal-angle tolerance for deciding that two subspaces coincide.
pub const SUBSPACE_EQ_TOL: f64 = 1e-8;

/// A subspace given by an orthonormal column frame.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    frame: ComplexMatrix,
}

impl SubspaceBasis {
    /// Span of the columns of `v` (orthonormalized).
    pub fn span(v: &ComplexMatrix, tol: &ToleranceConfig) -> Self {
        SubspaceBasis { frame: orthonormalize(v, tol) }
    }

    /// Wraps a frame that is already orthonormal.
    pub fn from_orthonormal(frame: ComplexMatrix, tol: &ToleranceConfig) -> Result<Self> {
        let k = frame.ncols();
        let err = operator_norm(&(frame.adjoint() * &frame - ComplexMatrix::identity(k, k)));
        if err > tol.psd_tol.max(1e-10) {
            return Err(Error::InvalidParameter(format!(
                "frame columns are not orthonormal (error {err:.3e})"
            )));
        }
        Ok(SubspaceBasis { frame })
    }

    pub fn zero(n: usize) -> Self {
        SubspaceBasis { frame: ComplexMatrix::zeros(n, 0) }
    }

    pub fn full(n: usize) -> Self {
        SubspaceBasis { frame: ComplexMatrix::identity(n, n) }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(n: usize, indices: &[usize]) -> Self {
        let mut f = ComplexMatrix::zeros(n, indices.len());
        for (j, &i) in indices.iter().enumerate() {
            f[(i, j)] = crate::linalg::ONE;
        }
        SubspaceBasis { frame: f }
    }

    pub fn frame(&self) -> &ComplexMatrix {
        &self.frame
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.nrows()
    }

    pub fn dim(&self) -> usize {
        self.frame.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn projector(&self) -> ComplexMatrix {
        &self.frame * self.frame.adjoint()
    }

    pub fn complement(&self, tol: &ToleranceConfig) -> SubspaceBasis {
        SubspaceBasis { frame: orthogonal_complement(&self.frame, tol) }
    }

    pub fn same_as(&self, other: &SubspaceBasis) -> bool {
        subspace_distance(&self.frame, &other.frame) < SUBSPACE_EQ_TOL
    }

    /// Image `A M` of the subspace.
    pub fn image(&self, a: &ComplexMatrix, tol: &ToleranceConfig) -> SubspaceBasis {
        SubspaceBasis::span(&(a * &self.frame), tol)
    }
}

fn check_ambient(t: &RowTuple, m: &SubspaceBasis) -> Result<()> {
    if m.ambient_dim() != t.dim() {
        return Err(Error::DimensionMismatch(format!(
            "subspace lives in C^{}, tuple acts on C^{}",
            m.ambient_dim(),
            t.dim()
        )));
    }
    Ok(())
}

/// `||(I - P_M) T_k P_M|| <= rank_rel_tol * scale` for every `k`.
pub fn is_invariant(t: &RowTuple, m: &SubspaceBasis, tol: &ToleranceConfig) -> Result<bool> {
    check_ambient(t, m)?;
    let f = m.frame();
    let threshold = tol.rank_rel_tol * t.scale_factor();
    Ok(t.mats().iter().all(|tk| {
        let img = tk * f;
        let leak = &img - f * (f.adjoint() * &img);
        operator_norm(&leak) <= threshold
    }))
}

/// Invariance of the orthogonal complement, i.e. invariance under the adjoint tuple.
pub fn is_coinvariant(t: &RowTuple, m: &SubspaceBasis, tol: &ToleranceConfig) -> Result<bool> {
    is_invariant(&t.adjoint(), m, tol)
}

/// Vectors `T^alpha s` for every seed and every `|alpha| < max(dim, 1)`,
/// stopping early once a whole degree layer vanishes.
pub(crate) fn orbit_matrix(t: &RowTuple, seeds: &[ComplexVector]) -> ComplexMatrix {
    let n = t.dim();
    let mut cols: Vec<ComplexVector> = Vec::new();
    for s in seeds {
        let size = s.norm();
        if size == 0.0 {
            continue;
        }
        let floor = size * f64::EPSILON;
        let mut layer: Vec<ComplexVector> = vec![s.clone()];
        cols.push(s.clone());
        // Layer entries are indexed by multi-indices; generating each new
        // index from its first nonzero exponent keeps the layers duplicate-free.
        let mut exps: Vec<Vec<usize>> = vec![vec![0; t.d()]];
        for _deg in 1..n {
            let mut next = Vec::new();
            let mut next_exps = Vec::new();
            for (v, e) in layer.iter().zip(&exps) {
                let first = e.iter().position(|&x| x > 0).unwrap_or(t.d());
                for k in 0..=first.min(t.d() - 1) {
                    let mut ne = e.clone();
                    ne[k] += 1;
                    next.push(t.get(k) * v);
                    next_exps.push(ne);
                }
            }
            if next.iter().all(|v| v.norm() <= floor) {
                break;
            }
            cols.extend(next.iter().cloned());
            layer = next;
            exps = next_exps;
        }
    }
    hstack_vectors(n, &cols)
}

/// Smallest invariant subspace containing the seeds.
pub fn generated_invariant(
    t: &RowTuple,
    seeds: &[ComplexVector],
    tol: &ToleranceConfig,
) -> Result<SubspaceBasis> {
    for s in seeds {
        if s.len() != t.dim() {
            return Err(Error::DimensionMismatch(format!(
                "seed has length {}, tuple acts on C^{}",
                s.len(),
                t.dim()
            )));
        }
    }
    Ok(SubspaceBasis::span(&orbit_matrix(t, seeds), tol))
}

/// `T|_M`, expressed in the frame of `M`.
pub fn restrict(t: &RowTuple, m: &SubspaceBasis, tol: &ToleranceConfig) -> Result<RowTuple> {
    if !is_invariant(t, m, tol)? {
        return Err(Error::NotInvariant);
    }
    compress(t, m)
}

/// `P_M T|_M`, expressed in the frame of `M`.
pub fn compress(t: &RowTuple, m: &SubspaceBasis) -> Result<RowTuple> {
    check_ambient(t, m)?;
    if m.is_zero() {
        return Err(Error::InvalidParameter("cannot compress to the zero subspace".into()));
    }
    let f = m.frame();
    RowTuple::new(t.mats().iter().map(|tk| f.adjoint() * tk * f).collect())
}

/// Annihilator of a part of `T`; the zero space is annihilated by everything.
fn part_annihilator(
    t: &RowTuple,
    m: &SubspaceBasis,
    tol: &ToleranceConfig,
    restricted: bool,
) -> Result<AnnihilatorBasis> {
    if m.is_zero() {
        return Ok(AnnihilatorBasis::full(t.d()));
    }
    let part = if restricted { restrict(t, m, tol)? } else { compress(t, m)? };
    annihilator(&part, tol)
}

/// Three-valued outcome of a rigidity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Consistent,
    TheoremViolation,
    Inapplicable,
}

/// Result of comparing the annihilators of two parts of a tuple.
#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub verdict: Verdict,
    /// The hypothesis that was verified, when one was.
    pub hypothesis: Option<&'static str>,
    /// Why no hypothesis applies.
    pub reason: Option<String>,
    pub annihilators_equal: bool,
    pub annihilator_distance: f64,
    pub subspaces_equal: bool,
}

fn verdict_from(
    hypothesis: Option<&'static str>,
    reason: Option<String>,
    a: &AnnihilatorBasis,
    b: &AnnihilatorBasis,
    m: &SubspaceBasis,
    n: &SubspaceBasis,
) -> RigidityReport {
    let annihilator_distance = a.distance(b);
    let annihilators_equal = annihilator_distance < crate::ideals::IDEAL_EQ_TOL;
    let subspaces_equal = m.same_as(n);
    let verdict = match hypothesis {
        None => Verdict::Inapplicable,
        Some(_) if annihilators_equal && !subspaces_equal => Verdict::TheoremViolation,
        Some(_) => Verdict::Consistent,
    };
    RigidityReport {
        verdict,
        hypothesis,
        reason,
        annihilators_equal,
        annihilator_distance,
        subspaces_equal,
    }
}

/// For invariant `M`, `N`: equal annihilators of the restrictions must force
/// `M = N` when `T` is cyclic and one of them is the whole space, or when
/// `T^*` is cyclic.
pub fn rigidity_invariant_check(
    t: &RowTuple,
    m: &SubspaceBasis,
    n: &SubspaceBasis,
    tol: &ToleranceConfig,
) -> Result<RigidityReport> {
    require_nilpotent(t, tol)?;
    for s in [m, n] {
        if !is_invariant(t, s, tol)? {
            return Err(Error::NotInvariant);
        }
    }
    let cyclic = multiplicity(t, tol)? == 1;
    let adjoint_cyclic = multiplicity(&t.adjoint(), tol)? == 1;
    let (hypothesis, reason) = if cyclic && (m.is_full() || n.is_full()) {
        (Some("tuple cyclic and one subspace is the whole space"), None)
    } else if adjoint_cyclic {
        (Some("adjoint tuple cyclic"), None)
    } else {
        let why = if cyclic {
            "tuple is cyclic but neither subspace is the whole space, and the adjoint is not cyclic"
        } else {
            "neither the tuple nor its adjoint is cyclic"
        };
        (None, Some(why.to_string()))
    };
    let a = part_annihilator(t, m, tol, true)?;
    let b = part_annihilator(t, n, tol, true)?;
    Ok(verdict_from(hypothesis, reason, &a, &b, m, n))
}

/// For co-invariant `M`, `N` of a cyclic nilpotent tuple: equal annihilators
/// of the compressions must force `M = N`.
pub fn rigidity_coinvariant_check(
    t: &RowTuple,
    m: &SubspaceBasis,
    n: &SubspaceBasis,
    tol: &ToleranceConfig,
) -> Result<RigidityReport> {
    require_nilpotent(t, tol)?;
    for s in [m, n] {
        if !is_coinvariant(t, s, tol)? {
            return Err(Error::NotCoinvariant);
        }
    }
    let (hypothesis, reason) = if multiplicity(t, tol)? == 1 {
        (Some("tuple cyclic"), None)
    } else {
        (None, Some("tuple is not cyclic".to_string()))
    };
    let a = part_annihilator(t, m, tol, false)?;
    let b = part_annihilator(t, n, tol, false)?;
    Ok(verdict_from(hypothesis, reason, &a, &b, m, n))
}

/// Solutions of `X S_k = T_k X` for all `k`.
#[derive(Clone, Debug)]
pub struct IntertwinerSpace {
    pub source: RowTuple,
    pub target: RowTuple,
    /// Orthonormal (Frobenius) basis of the solution space.
    pub basis: Vec<ComplexMatrix>,
}

impl IntertwinerSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Largest residual `||X S_k - T_k X||` over the basis.
    pub fn max_residual(&self) -> f64 {
        self.basis
            .iter()
            .map(|x| intertwining_residual(x, &self.source, &self.target))
            .fold(0.0, f64::max)
    }

    pub fn combine(&self, coeffs: &[Complex64]) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.target.dim(), self.source.dim());
        for (b, c) in self.basis.iter().zip(coeffs) {
            out += b * *c;
        }
        out
    }
}

/// `max_k ||X S_k - T_k X||`.
pub fn intertwining_residual(x: &ComplexMatrix, source: &RowTuple, target: &RowTuple) -> f64 {
    source
        .mats()
        .iter()
        .zip(target.mats())
        .map(|(s, t)| operator_norm(&(x * s - t * x)))
        .fold(0.0, f64::max)
}

/// Null space of `vec X -> ((S_k^T ⊗ I) - (I ⊗ T_k)) vec X`, stacked over `k`.
pub fn intertwiner_space(
    source: &RowTuple,
    target: &RowTuple,
    tol: &ToleranceConfig,
) -> Result<IntertwinerSpace> {
    if source.d() != target.d() {
        return Err(Error::DimensionMismatch(format!(
            "source has {} matrices, target has {}",
            source.d(),
            target.d()
        )));
    }
    let (s, t) = (source.dim(), target.dim());
    let is = ComplexMatrix::identity(s, s);
    let it = ComplexMatrix::identity(t, t);
    let blocks: Vec<ComplexMatrix> = source
        .mats()
        .iter()
        .zip(target.mats())
        .map(|(sk, tk)| kron(&sk.transpose(), &it) - kron(&is, tk))
        .collect();
    let refs: Vec<&ComplexMatrix> = blocks.iter().collect();
    let stacked = vstack(s * t, &refs);
    let (_, kernel) = rank_and_kernel(&stacked, tol);
    let basis = (0..kernel.ncols())
        .map(|j| unvectorize(kernel.column(j).as_slice(), t, s))
        .collect();
    Ok(IntertwinerSpace { source: source.clone(), target: target.clone(), basis })
}

/// Commutant dimension, radical dimension and (when one exists) a
/// nontrivial idempotent commuting with the tuple.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub exists: bool,
    pub commutant_dim: usize,
    pub radical_dim: usize,
    pub certificate: Option<ComplexMatrix>,
}

/// Idempotent checks: `||E^2 - E||`, `max_k ||E T_k - T_k E||` and rank.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IdempotentCheck {
    pub idempotent_error: f64,
    pub commutator_error: f64,
    pub rank: usize,
}

pub fn check_idempotent(e: &ComplexMatrix, t: &RowTuple, tol: &ToleranceConfig) -> IdempotentCheck {
    let idempotent_error = operator_norm(&(e * e - e));
    let commutator_error = t
        .mats()
        .iter()
        .map(|tk| operator_norm(&(e * tk - tk * e)))
        .fold(0.0, f64::max);
    let rank = if operator_norm(e) <= tol.rank_rel_tol { 0 } else { numerical_rank(e, tol) };
    IdempotentCheck { idempotent_error, commutator_error, rank }
}

const CERT_TOL: f64 = 1e-9;
const MAX_RETRIES: usize = 32;

fn certificate_ok(e: &ComplexMatrix, t: &RowTuple, tol: &ToleranceConfig) -> bool {
    let c = check_idempotent(e, t, tol);
    let scale = operator_norm(e).max(1.0).powi(2);
    c.idempotent_error <= CERT_TOL * scale
        && c.commutator_error <= CERT_TOL * scale * t.scale_factor()
        && c.rank > 0
        && c.rank < t.dim()
}

/// Decides whether the tuple admits a nontrivial invariant decomposition.
///
/// The commutant `C` is computed as an intertwiner space; its radical is the
/// kernel of the trace form `(a, b) -> tr(L_{ab})`, and a decomposition
/// exists iff `dim C / rad C > 1`.
pub fn decomposition_exists(t: &RowTuple, seed: u64, tol: &ToleranceConfig) -> Result<DecompositionReport> {
    t.ensure_commuting(tol)?;
    let comm = intertwiner_space(t, t, tol)?;
    let c = comm.dim();
    let n = t.dim();
    let v = hstack_vectors(n * n, &comm.basis.iter().map(vectorize).collect::<Vec<_>>());
    let vh = v.adjoint();
    // struct_consts[i][j] = coordinates of B_i B_j.
    let mut left: Vec<ComplexMatrix> = vec![ComplexMatrix::zeros(c, c); c];
    for (i, l) in left.iter_mut().enumerate() {
        for j in 0..c {
            let coords = &vh * vectorize(&(&comm.basis[i] * &comm.basis[j]));
            l.set_column(j, &coords);
        }
    }
    let traces: Vec<Complex64> = left.iter().map(|l| l.trace()).collect();
    let mut form = ComplexMatrix::zeros(c, c);
    for i in 0..c {
        for j in 0..c {
            let coords = left[i].column(j);
            form[(i, j)] = coords.iter().zip(&traces).map(|(a, b)| a * b).sum();
        }
    }
    let rank = if max_entry(&form) <= tol.rank_rel_tol {
        0
    } else {
        numerical_rank(&form, tol)
    };
    let exists = rank > 1;
    let certificate = if exists {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut found = None;
        for _ in 0..MAX_RETRIES {
            if let Some(parts) = spectral_idempotents(t, &comm, &mut rng, tol) {
                if let Some(e) = parts.into_iter().find(|e| certificate_ok(e, t, tol)) {
                    found = Some(e);
                    break;
                }
            }
        }
        Some(found.ok_or_else(|| {
            Error::Numerical("could not isolate an idempotent in the commutant".into())
        })?)
    } else {
        None
    };
    Ok(DecompositionReport { exists, commutant_dim: c, radical_dim: c - rank, certificate })
}

fn max_entry(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Spectral projections of a random commutant element onto its generalized
/// eigenspaces; `None` if it has a single eigenvalue cluster.
fn spectral_idempotents(
    t: &RowTuple,
    comm: &IntertwinerSpace,
    rng: &mut ChaCha8Rng,
    tol: &ToleranceConfig,
) -> Option<Vec<ComplexMatrix>> {
    let n = t.dim();
    let coeffs: Vec<Complex64> = (0..comm.dim()).map(|_| random_gaussian_scalar(rng)).collect();
    let a = comm.combine(&coeffs);
    let scale = operator_norm(&a);
    if scale == 0.0 {
        return None;
    }
    let a = a.unscale(scale);
    let eig: Vec<Complex64> = Schur::new(a.clone()).unpack().1.diagonal().iter().copied().collect();
    let clusters = cluster(&eig, 1e-4);
    if clusters.len() < 2 {
        return None;
    }
    let mut out = Vec::with_capacity(clusters.len());
    for (idx, center) in clusters.iter().enumerate() {
        let gap = clusters
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, c)| (c - center).norm())
            .fold(f64::INFINITY, f64::min);
        let shifted = (&a - ComplexMatrix::identity(n, n) * *center).unscale(gap);
        let mut power = ComplexMatrix::identity(n, n);
        for _ in 0..n {
            power = &power * &shifted;
        }
        let (rank, kernel) = rank_and_kernel(&power, tol);
        if rank == 0 || rank == n {
            return None;
        }
        let range = orthonormalize(&power, tol);
        if range.ncols() != rank {
            return None;
        }
        let basis = hstack(n, &[&kernel, &range]);
        let inv = try_inverse(&basis, tol)?;
        let mut sel = ComplexMatrix::zeros(n, n);
        for i in 0..kernel.ncols() {
            sel[(i, i)] = crate::linalg::ONE;
        }
        out.push(&basis * sel * inv);
    }
    Some(out)
}

/// Greedy single-linkage clustering; returns cluster means.
fn cluster(values: &[Complex64], radius: f64) -> Vec<Complex64> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &v in values {
        let hits: Vec<usize> = groups
            .iter()
            .enumerate()
            .filter(|(_, g)| g.iter().any(|w| (w - v).norm() < radius))
            .map(|(i, _)| i)
            .collect();
        match hits.as_slice() {
            [] => groups.push(vec![v]),
            [first, rest @ ..] => {
                let first = *first;
                for &r in rest.iter().rev() {
                    let g = groups.remove(r);
                    groups[first].extend(g);
                }
                groups[first].push(v);
            }
        }
    }
    groups
        .iter()
        .map(|g| g.iter().sum::<Complex64>() / g.len() as f64)
        .collect()
}

/// Looks for an invariant decomposition `H = M ⊕ N` from the primitive
/// spectral idempotents of a random commutant element; with `want_cyclic`,
/// `T|_M` must also be cyclic.
pub fn decomposition_find(
    t: &RowTuple,
    want_cyclic: bool,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<Option<(SubspaceBasis, SubspaceBasis)>> {
    let report = decomposition_exists(t, seed, tol)?;
    if !report.exists {
        return Ok(None);
    }
    let comm = intertwiner_space(t, t, tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let n = t.dim();
    for _ in 0..MAX_RETRIES {
        let Some(parts) = spectral_idempotents(t, &comm, &mut rng, tol) else { continue };
        if !parts.iter().all(|e| certificate_ok(e, t, tol)) {
            continue;
        }
        for e in &parts {
            let m = SubspaceBasis::span(e, tol);
            let rest = ComplexMatrix::identity(n, n) - e;
            let k = SubspaceBasis::span(&rest, tol);
            if !want_cyclic {
                return Ok(Some((m, k)));
            }
            let part = restrict(t, &m, &ToleranceConfig::uniform(1e-8))?;
            if require_nilpotent(&part, tol).is_ok() && multiplicity(&part, tol)? == 1 {
                return Ok(Some((m, k)));
            }
            if require_nilpotent(&part, tol).is_err() {
                let seeds = [random_gaussian_vector(&mut rng, part.dim())];
                if is_cyclic(&part, &seeds[0], tol)? {
                    return Ok(Some((m, k)));
                }
            }
        }
        return Ok(None);
    }
    Err(Error::Numerical("could not isolate the commutant idempotents".into()))
}

/// Output of the splitting construction.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub n: SubspaceBasis,
    /// `M` was the whole space, so `N = {0}`.
    pub degenerate: bool,
    /// Vector in `M` cyclic for the adjoint of the restriction.
    pub xi: ComplexVector,
    pub min_singular_value: f64,
    pub joint_rank: usize,
}

/// Given an invariant `M` with `(T|_M)^*` cyclic and `Ann(T|_M) = Ann(T)`,
/// returns `N = (span{T^{*alpha} xi})^⊥` for a cyclic vector `xi` of
/// `(T|_M)^*`; then `N` is invariant and `H = M ⊕ N`.
pub fn splitting_construct(
    t: &RowTuple,
    m: &SubspaceBasis,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<Splitting> {
    check_ambient(t, m)?;
    require_nilpotent(t, tol)?;
    if !is_invariant(t, m, tol)? {
        return Err(Error::HypothesisFailed {
            hypothesis: "M is invariant",
            detail: "some T_k moves M out of itself".into(),
        });
    }
    let n = t.dim();
    if m.is_full() {
        return Ok(Splitting {
            n: SubspaceBasis::zero(n),
            degenerate: true,
            xi: ComplexVector::zeros(n),
            min_singular_value: 1.0,
            joint_rank: n,
        });
    }
    if m.is_zero() {
        return Err(Error::HypothesisFailed {
            hypothesis: "Ann(T|M) = Ann(T)",
            detail: "M is the zero space".into(),
        });
    }
    let part = restrict(t, m, tol)?;
    let part_adj = part.adjoint();
    if multiplicity(&part_adj, tol)? != 1 {
        return Err(Error::HypothesisFailed {
            hypothesis: "(T|M)* is cyclic",
            detail: "the adjoint of the restriction needs more than one generator".into(),
        });
    }
    let whole = annihilator(t, tol)?;
    let restricted = annihilator(&part, tol)?;
    if !whole.same_ideal(&restricted) {
        return Err(Error::HypothesisFailed {
            hypothesis: "Ann(T|M) = Ann(T)",
            detail: format!("annihilators differ (distance {:.3e})", whole.distance(&restricted)),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eta = (0..MAX_RETRIES)
        .map(|_| random_gaussian_vector(&mut rng, part.dim()))
        .find(|v| is_cyclic(&part_adj, v, tol).unwrap_or(false))
        .ok_or_else(|| Error::Numerical("no cyclic vector found for (T|M)*".into()))?;
    let xi = m.frame() * &eta;
    let k = generated_invariant(&t.adjoint(), std::slice::from_ref(&xi), tol)?;
    let nsp = k.complement(tol);
    let stacked = hstack(n, &[m.frame(), nsp.frame()]);
    let sv = singular_values(&stacked);
    let min_singular_value = if stacked.ncols() == n { sv.last().copied().unwrap_or(0.0) } else { 0.0 };
    let joint_rank = numerical_rank(&stacked, tol);
    Ok(Splitting { n: nsp, degenerate: false, xi, min_singular_value, joint_rank })
}

/// Checks the three splitting postconditions at tolerance `check_tol`.
pub fn splitting_holds(t: &RowTuple, m: &SubspaceBasis, s: &Splitting, check_tol: f64) -> bool {
    let n = t.dim();
    let invariant = is_invariant(t, &s.n, &ToleranceConfig::uniform(check_tol)).unwrap_or(false);
    invariant && m.dim() + s.n.dim() == n && s.min_singular_value > check_tol && s.joint_rank == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{c64, max_abs, ONE};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn e(n: usize, i: usize) -> ComplexVector {
        let mut v = ComplexVector::zeros(n);
        v[i] = ONE;
        v
    }

    #[test]
    fn invariance_examples() {
        let t = fixtures::maxcount();
        let full = SubspaceBasis::full(3);
        assert!(is_invariant(&t, &full, &tol()).unwrap());
        assert!(is_coinvariant(&t, &full, &tol()).unwrap());
        let m = SubspaceBasis::coordinate(3, &[1]);
        assert!(is_invariant(&t, &m, &tol()).unwrap());
        let j = fixtures::jordan(2).unwrap();
        let c = SubspaceBasis::coordinate(2, &[0]);
        assert!(is_coinvariant(&j, &c, &tol()).unwrap());
        assert!(!is_invariant(&j, &c, &tol()).unwrap());
        assert!(is_invariant(&t, &SubspaceBasis::full(4), &tol()).is_err());
    }

    #[test]
    fn generated_subspaces() {
        let t = fixtures::maxcount();
        let z = generated_invariant(&t, &[ComplexVector::zeros(3)], &tol()).unwrap();
        assert!(z.is_zero());
        let g = generated_invariant(&t, &[e(3, 0)], &tol()).unwrap();
        assert!(g.same_as(&SubspaceBasis::coordinate(3, &[0, 1])));
        let all = generated_invariant(&t, &[e(3, 0), e(3, 1), e(3, 2)], &tol()).unwrap();
        assert!(all.is_full());
    }

    #[test]
    fn restrictions_and_compressions() {
        let t = fixtures::maxcount();
        assert_eq!(restrict(&t, &SubspaceBasis::full(3), &tol()).unwrap(), t);
        let r = restrict(&t, &SubspaceBasis::coordinate(3, &[1]), &tol()).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.mats().iter().all(|m| max_abs(m) == 0.0));
        assert_eq!(
            restrict(&t, &SubspaceBasis::coordinate(3, &[0]), &tol()),
            Err(Error::NotInvariant)
        );
        let j = fixtures::jordan(3).unwrap();
        let c = compress(&j, &SubspaceBasis::coordinate(3, &[0])).unwrap();
        assert_eq!(max_abs(c.get(0)), 0.0);
    }

    #[test]
    fn jordan_commutant() {
        let j = fixtures::jordan(2).unwrap();
        let s = intertwiner_space(&j, &j, &tol()).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.max_residual() < 1e-12);
        // Each solution is a polynomial a I + b T.
        for x in &s.basis {
            assert!(x[(0, 1)].norm() < 1e-12);
            assert!((x[(0, 0)] - x[(1, 1)]).norm() < 1e-12);
        }
        let z = RowTuple::zero(1, 2).unwrap();
        assert_eq!(intertwiner_space(&z, &z, &tol()).unwrap().dim(), 4);
    }

    #[test]
    fn decomposition_examples() {
        let j = fixtures::jordan(2).unwrap();
        let sum = j.direct_sum(&j).unwrap();
        let r = decomposition_exists(&sum, 0, &tol()).unwrap();
        assert!(r.exists);
        let cert = r.certificate.unwrap();
        assert!(certificate_ok(&cert, &sum, &tol()));
        assert!(!decomposition_exists(&j, 0, &tol()).unwrap().exists);
        assert!(decomposition_find(&j, true, 0, &tol()).unwrap().is_none());

        let j3 = fixtures::jordan(3).unwrap();
        let mixed = j.direct_sum(&j3).unwrap();
        let (m, n) = decomposition_find(&mixed, true, 3, &tol()).unwrap().unwrap();
        assert!(is_invariant(&mixed, &m, &tol()).unwrap());
        assert!(is_invariant(&mixed, &n, &tol()).unwrap());
        assert_eq!(m.dim() + n.dim(), 5);
        let part = restrict(&mixed, &m, &tol()).unwrap();
        assert_eq!(multiplicity(&part, &tol()).unwrap(), 1);
    }

    #[test]
    fn maxcount_is_indecomposable() {
        let r = decomposition_exists(&fixtures::maxcount(), 0, &tol()).unwrap();
        assert!(!r.exists);
        assert_eq!(r.radical_dim + 1, r.commutant_dim);
    }

    #[test]
    fn invariant_rigidity_examples() {
        let j = fixtures::jordan(2).unwrap();
        let low = SubspaceBasis::coordinate(2, &[1]);
        let full = SubspaceBasis::full(2);
        let r = rigidity_invariant_check(&j, &low, &full, &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent);
        assert!(!r.annihilators_equal);
        let r = rigidity_invariant_check(&j, &low, &low, &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent);
        assert!(r.annihilators_equal && r.subspaces_equal);
        let t = fixtures::maxcount();
        let m = SubspaceBasis::coordinate(3, &[1]);
        let r = rigidity_invariant_check(&t, &m, &SubspaceBasis::full(3), &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent);
        assert_eq!(r.hypothesis, Some("adjoint tuple cyclic"));
    }

    #[test]
    fn coinvariant_rigidity_examples() {
        let j = fixtures::jordan(2).unwrap();
        let top = SubspaceBasis::coordinate(2, &[0]);
        let full = SubspaceBasis::full(2);
        let r = rigidity_coinvariant_check(&j, &top, &full, &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent);
        assert!(!r.annihilators_equal);
        let r = rigidity_coinvariant_check(&j, &top, &top, &tol()).unwrap();
        assert!(r.annihilators_equal && r.subspaces_equal);
        let t = fixtures::maxcount();
        let r = rigidity_coinvariant_check(&t, &SubspaceBasis::full(3), &SubspaceBasis::full(3), &tol())
            .unwrap();
        assert_eq!(r.verdict, Verdict::Inapplicable);
    }

    #[test]
    fn splitting_degenerate_and_block() {
        let j = fixtures::jordan(2).unwrap();
        let s = splitting_construct(&j, &SubspaceBasis::full(2), 0, &tol()).unwrap();
        assert!(s.degenerate && s.n.is_zero());

        // A = jordan(1) (annihilated by x), B = jordan(2)^* with Ann(B) = (x^2).
        let a = fixtures::jordan(1).unwrap();
        let b = fixtures::jordan(2).unwrap().adjoint();
        let t = a.direct_sum(&b).unwrap();
        let m = SubspaceBasis::coordinate(3, &[1, 2]);
        let s = splitting_construct(&t, &m, 7, &tol()).unwrap();
        assert!(splitting_holds(&t, &m, &s, 1e-8));

        let bad = SubspaceBasis::coordinate(3, &[0]);
        assert!(matches!(
            splitting_construct(&t, &bad, 0, &tol()),
            Err(Error::HypothesisFailed { hypothesis: "Ann(T|M) = Ann(T)", .. })
        ));
        let not_inv = SubspaceBasis::span(&ComplexMatrix::from_column_slice(3, 1, &[ONE, ONE, c64(0.0, 0.0)]), &tol());
        assert!(matches!(
            splitting_construct(&t, &not_inv, 0, &tol()),
            Err(Error::HypothesisFailed { .. })
        ));
    }
}
