//! Dense complex linear algebra with an explicit tolerance policy.
//!
//! Every rank decision in the crate goes through [`rank_and_kernel`] or
//! [`orthonormalize`], both of which compare against the largest singular
//! value (or largest column norm) rather than an absolute threshold.

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Dense complex matrix; carrier of every operator and subspace frame.
pub type ComplexMatrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type ComplexVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Numerical thresholds shared by every analysis routine.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ToleranceConfig {
    /// Singular values at or below `rank_rel_tol * sigma_max` count as zero.
    pub rank_rel_tol: f64,
    /// Allowed negative eigenvalue (and Hermitian asymmetry) in PSD tests.
    pub psd_tol: f64,
    /// Convergence threshold for iterations.
    pub iter_tol: f64,
    pub max_iter: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            rank_rel_tol: 1e-9,
            psd_tol: 1e-9,
            iter_tol: 1e-12,
            max_iter: 10_000,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.rank_rel_tol) || !ok(self.psd_tol) || !ok(self.iter_tol) {
            return Err(Error::InvalidParameter(
                "tolerances must be finite and positive".into(),
            ));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        Ok(())
    }

    /// Same configuration with every tolerance replaced by `tol`.
    pub fn uniform(tol: f64) -> Self {
        ToleranceConfig {
            rank_rel_tol: tol,
            psd_tol: tol,
            ..Default::default()
        }
    }
}

pub fn ensure_finite(a: &ComplexMatrix) -> Result<()> {
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            let z = a[(i, j)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

fn svd(a: &ComplexMatrix, u: bool, v: bool) -> SVD<Complex64, nalgebra::Dyn, nalgebra::Dyn> {
    SVD::try_new(a.clone(), u, v, f64::EPSILON, 0).expect("unbounded SVD iteration converges")
}

/// Singular values in descending order.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    svd(a, false, false).singular_values.iter().copied().collect()
}

/// Largest singular value; zero for empty matrices.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Numerical rank relative to the largest singular value.
pub fn numerical_rank(a: &ComplexMatrix, tol: &ToleranceConfig) -> usize {
    let sv = singular_values(a);
    let Some(&smax) = sv.first() else { return 0 };
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol.rank_rel_tol * smax).count()
}

/// Rank and an orthonormal basis of the numerical null space.
///
/// The kernel frame always has `cols - rank` columns.
pub fn rank_and_kernel(a: &ComplexMatrix, tol: &ToleranceConfig) -> (usize, ComplexMatrix) {
    let n = a.ncols();
    if n == 0 {
        return (0, ComplexMatrix::zeros(0, 0));
    }
    if a.nrows() == 0 {
        return (0, ComplexMatrix::identity(n, n));
    }
    // Pad with zero rows so that the thin SVD carries a full set of right
    // singular vectors.
    let padded = if a.nrows() < n {
        let mut p = ComplexMatrix::zeros(n, n);
        p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let dec = svd(&padded, false, true);
    let smax = dec.singular_values.iter().copied().fold(0.0_f64, f64::max);
    let rank = if smax == 0.0 {
        0
    } else {
        dec.singular_values
            .iter()
            .filter(|&&s| s > tol.rank_rel_tol * smax)
            .count()
    };
    let v_t = dec.v_t.expect("right singular vectors requested");
    let mut kernel = ComplexMatrix::zeros(n, n - rank);
    for (out, row) in (rank..n).enumerate() {
        for j in 0..n {
            kernel[(j, out)] = v_t[(row, j)].conj();
        }
    }
    (rank, kernel)
}

/// Checks `A <= I` for a Hermitian `A` (up to `psd_tol`).
pub fn psd_below_identity(a: &ComplexMatrix, tol: &ToleranceConfig) -> Result<bool> {
    let h = hermitian_part(a, tol)?;
    let n = h.nrows();
    let gap = ComplexMatrix::identity(n, n) - h;
    Ok(min_hermitian_eigenvalue(&gap) >= -tol.psd_tol)
}

/// `(A + A^H)/2`, after checking that `A` is square and Hermitian within `psd_tol`.
pub fn hermitian_part(a: &ComplexMatrix, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    let adj = a.adjoint();
    let asym = operator_norm(&(a - &adj));
    if asym > tol.psd_tol * operator_norm(a).max(1.0) {
        return Err(Error::NotHermitian(asym));
    }
    Ok((a + adj).scale(0.5))
}

/// Smallest eigenvalue of a Hermitian matrix (the input is symmetrized first).
pub fn min_hermitian_eigenvalue(a: &ComplexMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let h = (a + a.adjoint()).scale(0.5);
    SymmetricEigen::new(h).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Orthonormal columns spanning the numerically independent columns of `v`.
///
/// Classical Gram-Schmidt with one re-orthogonalization pass, processing
/// columns in order, so leading columns keep their direction and phase.
pub fn orthonormalize(v: &ComplexMatrix, tol: &ToleranceConfig) -> ComplexMatrix {
    extend_orthonormal(&ComplexMatrix::zeros(v.nrows(), 0), v, tol)
}

/// Extends the orthonormal frame `base` by the part of `v` outside its span.
///
/// Returns only the new columns. Columns whose residual is at most
/// `rank_rel_tol` times the largest column norm of `v` are discarded.
pub fn extend_orthonormal(
    base: &ComplexMatrix,
    v: &ComplexMatrix,
    tol: &ToleranceConfig,
) -> ComplexMatrix {
    let n = v.nrows();
    let scale = (0..v.ncols()).map(|j| v.column(j).norm()).fold(0.0_f64, f64::max);
    let mut cols: Vec<ComplexVector> = Vec::new();
    if scale == 0.0 {
        return ComplexMatrix::zeros(n, 0);
    }
    for j in 0..v.ncols() {
        let mut x: ComplexVector = v.column(j).into_owned();
        for _ in 0..2 {
            for k in 0..base.ncols() {
                let q = base.column(k);
                let coeff = q.dotc(&x);
                x.axpy(-coeff, &q, ONE);
            }
            for q in &cols {
                let coeff = q.dotc(&x);
                x.axpy(-coeff, q, ONE);
            }
        }
        let r = x.norm();
        if r > tol.rank_rel_tol * scale {
            cols.push(x.unscale(r));
        }
    }
    hstack_vectors(n, &cols)
}

/// Orthonormal basis of the orthogonal complement of the column span of `frame`.
pub fn orthogonal_complement(frame: &ComplexMatrix, tol: &ToleranceConfig) -> ComplexMatrix {
    let n = frame.nrows();
    extend_orthonormal(frame, &ComplexMatrix::identity(n, n), tol)
}

pub fn hstack_vectors(rows: usize, cols: &[ComplexVector]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

pub fn hstack(rows: usize, blocks: &[&ComplexMatrix]) -> ComplexMatrix {
    let total: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut m = ComplexMatrix::zeros(rows, total);
    let mut at = 0;
    for b in blocks {
        m.view_mut((0, at), (rows, b.ncols())).copy_from(b);
        at += b.ncols();
    }
    m
}

pub fn vstack(cols: usize, blocks: &[&ComplexMatrix]) -> ComplexMatrix {
    let total: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut m = ComplexMatrix::zeros(total, cols);
    let mut at = 0;
    for b in blocks {
        m.view_mut((at, 0), (b.nrows(), cols)).copy_from(b);
        at += b.nrows();
    }
    m
}

/// Block-diagonal direct sum.
pub fn direct_sum(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    m.view_mut((0, 0), a.shape()).copy_from(a);
    m.view_mut(a.shape(), b.shape()).copy_from(b);
    m
}

/// Column-major vectorization.
pub fn vectorize(a: &ComplexMatrix) -> ComplexVector {
    ComplexVector::from_column_slice(a.as_slice())
}

pub fn unvectorize(v: &[Complex64], rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_column_slice(rows, cols, v)
}

/// Kronecker product.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Inverse, or `None` if the matrix is numerically singular.
pub fn try_inverse(a: &ComplexMatrix, tol: &ToleranceConfig) -> Option<ComplexMatrix> {
    if a.nrows() != a.ncols() {
        return None;
    }
    let sv = singular_values(a);
    let (&smax, &smin) = (sv.first()?, sv.last()?);
    if smax == 0.0 || smin <= tol.rank_rel_tol * smax {
        return None;
    }
    a.clone().try_inverse()
}

/// Largest principal-angle sine between two orthonormal frames of the same
/// ambient space; 1 when their dimensions differ.
pub fn subspace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    if a.ncols() != b.ncols() {
        return 1.0;
    }
    if a.ncols() == 0 {
        return 0.0;
    }
    let residual = |p: &ComplexMatrix, q: &ComplexMatrix| {
        let proj = p * (p.adjoint() * q);
        operator_norm(&(q - proj))
    };
    residual(a, b).max(residual(b, a)).min(1.0)
}

/// Reduced column echelon form of the span of `k`'s columns.
///
/// Rows are visited in `row_order`; each pivot is scaled to 1 and cleared
/// from every other column. Entries at or below `abs_tol` count as zero.
/// Returns the echelon columns (in pivot order) and their pivot rows.
pub fn reduced_column_echelon(
    k: &ComplexMatrix,
    row_order: &[usize],
    abs_tol: f64,
) -> (ComplexMatrix, Vec<usize>) {
    let mut cols: Vec<ComplexVector> = (0..k.ncols()).map(|j| k.column(j).into_owned()).collect();
    let mut done: Vec<ComplexVector> = Vec::new();
    let mut pivots = Vec::new();
    for &row in row_order {
        let Some((best, _)) = cols
            .iter()
            .enumerate()
            .map(|(j, c)| (j, c[row].norm()))
            .filter(|&(_, v)| v > abs_tol)
            .max_by(|a, b| a.1.total_cmp(&b.1))
        else {
            continue;
        };
        let mut piv = cols.swap_remove(best);
        piv /= piv[row];
        for c in cols.iter_mut().chain(done.iter_mut()) {
            let f = c[row];
            c.axpy(-f, &piv, ONE);
            c[row] = ZERO;
        }
        done.push(piv);
        pivots.push(row);
        if cols.is_empty() {
            break;
        }
    }
    (hstack_vectors(k.nrows(), &done), pivots)
}

/// Maximum absolute entry.
pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn random_gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_gaussian_scalar(rng))
}

pub fn random_gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexVector {
    ComplexVector::from_fn(n, |_, _| random_gaussian_scalar(rng))
}

/// Standard complex Gaussian (unit variance).
pub fn random_gaussian_scalar<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-like random unitary from the QR factor of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = random_gaussian_matrix(rng, n, n);
    let q = orthonormalize(&g, &ToleranceConfig::default());
    if q.ncols() == n {
        q
    } else {
        ComplexMatrix::identity(n, n)
    }
}

/// Random invertible matrix `U diag(s) V` with singular values drawn from
/// `[1/sqrt(cond), sqrt(cond)]`.
pub fn random_well_conditioned<R: Rng + ?Sized>(rng: &mut R, n: usize, cond: f64) -> ComplexMatrix {
    let u = random_unitary(rng, n);
    let v = random_unitary(rng, n);
    let lo = cond.sqrt().recip().ln();
    let hi = cond.sqrt().ln();
    let s = ComplexMatrix::from_diagonal(&ComplexVector::from_fn(n, |_, _| {
        c64(rng.random_range(lo..=hi).exp(), 0.0)
    }));
    u * s * v
}
