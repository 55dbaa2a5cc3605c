//! Seeded random instances: nilpotent ideals, model tuples, similar copies,
//! direct sums and invariant or co-invariant subspaces.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fock::{MultiIndex, Polynomial};
use crate::ideals::{annihilator, model_space, model_tuple, AnnihilatorBasis};
use crate::linalg::{
    hstack_vectors, operator_norm, random_gaussian_matrix, random_gaussian_scalar,
    random_gaussian_vector, random_well_conditioned, try_inverse, c64, ComplexMatrix,
    ComplexVector, ToleranceConfig,
};
use crate::subspaces::{generated_invariant, SubspaceBasis};
use crate::tuples::RowTuple;

const MAX_REJECTIONS: usize = 1000;

/// Condition number bound for random similarities.
pub const SIMILARITY_COND: f64 = 4.0;

fn random_coefficient<R: Rng + ?Sized>(rng: &mut R) -> num_complex::Complex64 {
    let z = random_gaussian_scalar(rng);
    if rng.random_bool(0.5) {
        c64(z.re, 0.0)
    } else {
        z
    }
}

/// Random ideal `(g_1, ..., g_k) + (x)^m` with `g_i(0) = 0` and quotient
/// dimension between 2 and `max_delta` (exactly 1 when `max_delta = 1`);
/// the stored degree bound is minimal.
pub fn random_nilpotent_ideal<R: Rng + ?Sized>(
    rng: &mut R,
    max_d: usize,
    max_delta: usize,
) -> Result<AnnihilatorBasis> {
    if max_d == 0 || max_delta == 0 {
        return Err(Error::InvalidParameter("need at least one variable and delta >= 1".into()));
    }
    let tol = ToleranceConfig::default();
    for _ in 0..MAX_REJECTIONS {
        let d = rng.random_range(1..=max_d);
        let top = match d {
            1 => max_delta.min(8),
            2 => 4,
            _ => 3,
        };
        // m = 1 only ever gives the one-dimensional quotient
        let low = if max_delta >= 2 { 2 } else { 1 };
        let m = rng.random_range(low..=top.max(low));
        let lower: Vec<MultiIndex> = MultiIndex::up_to_degree(d, m - 1)
            .into_iter()
            .filter(|a| a.degree() > 0)
            .collect();
        let mut gens: Vec<Polynomial> = Vec::new();
        if !lower.is_empty() {
            for _ in 0..rng.random_range(0..=2) {
                let mut g = Polynomial::zero(d);
                for _ in 0..rng.random_range(1..=3) {
                    let a = lower[rng.random_range(0..lower.len())].clone();
                    g.add_term(a, random_coefficient(rng));
                }
                if !g.is_zero() {
                    gens.push(g);
                }
            }
        }
        gens.extend(
            MultiIndex::of_degree(d, m)
                .into_iter()
                .map(|a| Polynomial::monomial(a, c64(1.0, 0.0))),
        );
        let ann = AnnihilatorBasis::from_generators(d, &gens, None, &tol)?;
        if ann.codim() <= max_delta && (ann.codim() >= 2 || max_delta < 2) {
            return Ok(ann);
        }
    }
    Err(Error::Numerical("no ideal with small enough quotient".into()))
}

/// Model tuple of a [`random_nilpotent_ideal`].
pub fn random_model_tuple<R: Rng + ?Sized>(rng: &mut R, max_d: usize, max_delta: usize) -> Result<RowTuple> {
    let ann = random_nilpotent_ideal(rng, max_d, max_delta)?;
    model_tuple(&model_space(&ann, None, &ToleranceConfig::default())?)
}

/// Divides by `sqrt ||sum T_k T_k^*||` when that exceeds one.
pub fn rescale_to_contraction(t: &RowTuple) -> RowTuple {
    let s = operator_norm(&t.row_square()).sqrt();
    if s > 1.0 {
        t.scale(1.0 / s)
    } else {
        t.clone()
    }
}

/// Random invertible `S` with condition number at most [`SIMILARITY_COND`],
/// together with its inverse.
pub fn random_similarity<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (ComplexMatrix, ComplexMatrix) {
    let tol = ToleranceConfig::default();
    loop {
        let s = random_well_conditioned(rng, n, SIMILARITY_COND);
        if let Some(inv) = try_inverse(&s, &tol) {
            return (s, inv);
        }
    }
}

/// `S T S^{-1}` for a random well-conditioned `S` (not rescaled).
pub fn similar_copy<R: Rng + ?Sized>(rng: &mut R, t: &RowTuple) -> RowTuple {
    let (s, inv) = random_similarity(rng, t.dim());
    t.similarity(&s, &inv)
}

/// `S M_J S^{-1}`, rescaled to a row contraction: cyclic and nilpotent.
pub fn random_cyclic_nilpotent<R: Rng + ?Sized>(rng: &mut R, max_d: usize, max_delta: usize) -> Result<RowTuple> {
    let m = random_model_tuple(rng, max_d, max_delta)?;
    Ok(rescale_to_contraction(&similar_copy(rng, &m)))
}

/// Tuple `[[0, A_k], [0, 0]]` on `C^p ⊕ C^q` (all products vanish).
pub fn random_square_zero<R: Rng + ?Sized>(rng: &mut R, d: usize, p: usize, q: usize) -> Result<RowTuple> {
    let n = p + q;
    let mats = (0..d)
        .map(|_| {
            let a = random_gaussian_matrix(rng, p, q);
            let mut t = ComplexMatrix::zeros(n, n);
            t.view_mut((0, p), (p, q)).copy_from(&a);
            t
        })
        .collect();
    RowTuple::new(mats)
}

/// Commuting nilpotent row contraction on at most `max_dim` dimensions,
/// drawn from similar model tuples, their adjoints, direct sums of two such
/// pieces, and square-zero tuples.
pub fn random_nilpotent_tuple<R: Rng + ?Sized>(rng: &mut R, max_d: usize, max_dim: usize) -> Result<RowTuple> {
    if max_dim == 0 || max_d == 0 {
        return Err(Error::InvalidParameter("need max_d >= 1 and max_dim >= 1".into()));
    }
    let kind = rng.random_range(0..4);
    let t = match kind {
        1 if max_dim >= 2 => {
            let a = random_model_tuple(rng, max_d, max_dim / 2)?;
            let d = a.d();
            let b = loop {
                let b = random_model_tuple(rng, d, max_dim - a.dim())?;
                if b.d() == d {
                    break b;
                }
            };
            similar_copy(rng, &a.direct_sum(&b)?)
        }
        2 => {
            let m = random_model_tuple(rng, max_d, max_dim)?;
            similar_copy(rng, &m).adjoint()
        }
        3 if max_dim >= 2 => {
            let d = rng.random_range(1..=max_d);
            let p = rng.random_range(1..max_dim);
            let q = rng.random_range(1..=max_dim - p);
            let z = random_square_zero(rng, d, p, q)?;
            similar_copy(rng, &z)
        }
        _ => {
            let m = random_model_tuple(rng, max_d, max_dim)?;
            similar_copy(rng, &m)
        }
    };
    Ok(rescale_to_contraction(&t))
}

/// One or two vectors `T_w v` for random `v` and random words `w` of length
/// at least `min_len` and below `dim`.
fn random_seeds<R: Rng + ?Sized>(rng: &mut R, t: &RowTuple, min_len: usize) -> Vec<ComplexVector> {
    let count = rng.random_range(1..=2);
    let max_len = t.dim().saturating_sub(1).max(min_len);
    (0..count)
        .map(|_| {
            let mut v = random_gaussian_vector(rng, t.dim());
            let start = v.norm();
            for _ in 0..rng.random_range(min_len..=max_len) {
                v = t.get(rng.random_range(0..t.d())) * v;
                // products past the nilpotency index are rounding noise
                if v.norm() <= 1e-8 * start {
                    v.fill(c64(0.0, 0.0));
                    break;
                }
            }
            v
        })
        .collect()
}

/// Invariant subspace generated by vectors `T_w v` with `|w| >= 1`; it lies
/// in the joint range, hence is proper for a nilpotent tuple on a nonzero space.
pub fn random_proper_invariant<R: Rng + ?Sized>(
    rng: &mut R,
    t: &RowTuple,
    tol: &ToleranceConfig,
) -> Result<SubspaceBasis> {
    let seeds = random_seeds(rng, t, 1);
    generated_invariant(t, &seeds, tol)
}

/// Invariant subspace generated by one or two vectors `T_w v`, with the word
/// length drawn uniformly so that small subspaces are as likely as large ones.
pub fn random_invariant<R: Rng + ?Sized>(rng: &mut R, t: &RowTuple, tol: &ToleranceConfig) -> Result<SubspaceBasis> {
    let seeds = random_seeds(rng, t, 0);
    generated_invariant(t, &seeds, tol)
}

/// Co-invariant subspace: invariant for the adjoint tuple.
pub fn random_coinvariant<R: Rng + ?Sized>(rng: &mut R, t: &RowTuple, tol: &ToleranceConfig) -> Result<SubspaceBasis> {
    random_invariant(rng, &t.adjoint(), tol)
}

/// Pair `(T, M)` with `M` invariant, `(T|_M)^*` cyclic and
/// `Ann(T|_M) = Ann(T)`.
///
/// `T = A ⊕ B` scaled together, where `B` is the adjoint of a similar model
/// tuple and `A` is a similar model tuple of an ideal containing `Ann(B)`;
/// `M` is the `B` block, moved by a global similarity half of the time.
pub fn random_splitting_instance<R: Rng + ?Sized>(
    rng: &mut R,
    max_d: usize,
    max_delta: usize,
) -> Result<(RowTuple, SubspaceBasis)> {
    let tol = ToleranceConfig::default();
    let model_b = random_model_tuple(rng, max_d, max_delta)?;
    let b = similar_copy(rng, &model_b).adjoint();
    let d = b.d();
    let ann_b = annihilator(&b, &tol)?;
    let mut gens: Vec<Polynomial> = ann_b.basis().iter().map(|p| p.chop(1e-10)).collect();
    let lower: Vec<MultiIndex> = MultiIndex::up_to_degree(d, ann_b.degree_bound().saturating_sub(1))
        .into_iter()
        .filter(|a| a.degree() > 0)
        .collect();
    if !lower.is_empty() {
        for _ in 0..rng.random_range(0..=2) {
            let a = lower[rng.random_range(0..lower.len())].clone();
            gens.push(Polynomial::monomial(a, random_coefficient(rng)));
        }
    }
    let ann_a = AnnihilatorBasis::from_generators(d, &gens, None, &tol)?;
    let a = similar_copy(rng, &model_tuple(&model_space(&ann_a, None, &tol)?)?);
    let t = a.direct_sum(&b)?;
    let n = t.dim();
    let block: Vec<ComplexVector> = (a.dim()..n)
        .map(|i| {
            let mut e = ComplexVector::zeros(n);
            e[i] = c64(1.0, 0.0);
            e
        })
        .collect();
    let mut frame = hstack_vectors(n, &block);
    let t = if rng.random_bool(0.5) {
        let (s, inv) = random_similarity(rng, n);
        frame = &s * frame;
        t.similarity(&s, &inv)
    } else {
        t
    };
    Ok((rescale_to_contraction(&t), SubspaceBasis::span(&frame, &tol)))
}
