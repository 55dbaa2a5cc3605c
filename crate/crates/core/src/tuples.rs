//! Tuples of square matrices and their basic analysis.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{MultiIndex, Polynomial, Word};
use crate::linalg::{
    ensure_finite, numerical_rank, operator_norm, psd_below_identity, ComplexMatrix,
    ToleranceConfig,
};

/// A `d`-tuple `T = (T_1, ..., T_d)` of square matrices of a common size.
#[derive(Clone, Debug, PartialEq)]
pub struct RowTuple {
    mats: Vec<ComplexMatrix>,
}

impl RowTuple {
    pub fn new(mats: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = mats.first() else {
            return Err(Error::InvalidParameter("a tuple needs at least one matrix".into()));
        };
        let n = first.nrows();
        if n == 0 {
            return Err(Error::InvalidParameter("matrices must be at least 1x1".into()));
        }
        for (k, m) in mats.iter().enumerate() {
            if m.nrows() != m.ncols() {
                return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
            }
            if m.nrows() != n {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {} is {}x{}, expected {n}x{n}",
                    k + 1,
                    m.nrows(),
                    m.ncols()
                )));
            }
            ensure_finite(m)?;
        }
        Ok(RowTuple { mats })
    }

    pub fn zero(d: usize, dim: usize) -> Result<Self> {
        Self::new(vec![ComplexMatrix::zeros(dim, dim); d])
    }

    pub fn d(&self) -> usize {
        self.mats.len()
    }

    pub fn dim(&self) -> usize {
        self.mats[0].nrows()
    }

    pub fn mats(&self) -> &[ComplexMatrix] {
        &self.mats
    }

    /// `T_k` for 0-based `k`.
    pub fn get(&self, k: usize) -> &ComplexMatrix {
        &self.mats[k]
    }

    pub fn adjoint(&self) -> RowTuple {
        RowTuple { mats: self.mats.iter().map(|m| m.adjoint()).collect() }
    }

    pub fn map<F: Fn(&ComplexMatrix) -> ComplexMatrix>(&self, f: F) -> RowTuple {
        RowTuple { mats: self.mats.iter().map(f).collect() }
    }

    pub fn scale(&self, s: f64) -> RowTuple {
        self.map(|m| m.scale(s))
    }

    /// `(S T_k S^{-1})_k`.
    pub fn similarity(&self, s: &ComplexMatrix, s_inv: &ComplexMatrix) -> RowTuple {
        self.map(|m| s * m * s_inv)
    }

    pub fn direct_sum(&self, other: &RowTuple) -> Result<RowTuple> {
        if self.d() != other.d() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add a {}-tuple to a {}-tuple",
                other.d(),
                self.d()
            )));
        }
        Ok(RowTuple {
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(a, b)| crate::linalg::direct_sum(a, b))
                .collect(),
        })
    }

    /// `sum_k T_k T_k^*`.
    pub fn row_square(&self) -> ComplexMatrix {
        let n = self.dim();
        self.mats
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, m| acc + m * m.adjoint())
    }

    /// `Phi(X) = sum_k T_k X T_k^*`.
    pub fn phi(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim();
        self.mats
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, m| acc + m * x * m.adjoint())
    }

    /// `max(1, max_k ||T_k||)`, the scale used for relative zero tests.
    pub fn scale_factor(&self) -> f64 {
        self.mats.iter().map(operator_norm).fold(1.0, f64::max)
    }

    /// Largest commutator norm `||T_j T_k - T_k T_j||`.
    pub fn commutator_norm(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.d() {
            for k in j + 1..self.d() {
                let c = &self.mats[j] * &self.mats[k] - &self.mats[k] * &self.mats[j];
                worst = worst.max(operator_norm(&c));
            }
        }
        worst
    }

    pub fn is_commuting(&self, tol: &ToleranceConfig) -> bool {
        self.commutator_norm() <= tol.rank_rel_tol * self.scale_factor().powi(2)
    }

    pub fn ensure_commuting(&self, tol: &ToleranceConfig) -> Result<()> {
        let c = self.commutator_norm();
        if c <= tol.rank_rel_tol * self.scale_factor().powi(2) {
            Ok(())
        } else {
            Err(Error::NotCommuting(c))
        }
    }

    pub fn is_row_contraction(&self, tol: &ToleranceConfig) -> bool {
        psd_below_identity(&self.row_square(), tol).unwrap_or(false)
    }
}

/// Outcome of the purity iteration `P_{n+1} = Phi(P_n)`, `P_0 = I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Purity {
    /// `||Phi^n(I)|| < iter_tol` at step `steps`.
    Pure { steps: usize },
    /// The iterates stopped moving while still bounded away from zero.
    NotPure { steps: usize },
    /// Neither condition was reached within `max_iter` steps.
    Indeterminate { steps: usize },
}

impl Purity {
    pub fn is_pure(&self) -> bool {
        matches!(self, Purity::Pure { .. })
    }
}

/// Summary of the basic properties of a tuple.
#[derive(Clone, Debug, Serialize)]
pub struct TupleReport {
    pub commuting: bool,
    pub commutator_norm: f64,
    pub row_contraction: bool,
    pub pure: bool,
    pub purity: Option<Purity>,
    pub nilpotent: Option<usize>,
    pub defect: usize,
    #[serde(skip)]
    pub row_square: ComplexMatrix,
    #[serde(skip)]
    pub defect_operator: ComplexMatrix,
}

/// Commutativity, row contraction, purity, nilpotency and defect.
///
/// Purity is only iterated for row contractions; nilpotent tuples are pure
/// regardless.
pub fn validate(t: &RowTuple, tol: &ToleranceConfig) -> Result<TupleReport> {
    tol.validate()?;
    let commutator_norm = t.commutator_norm();
    let commuting = commutator_norm <= tol.rank_rel_tol * t.scale_factor().powi(2);
    let row_square = t.row_square();
    let row_contraction = psd_below_identity(&row_square, tol)?;
    let n = t.dim();
    let defect_operator = ComplexMatrix::identity(n, n) - &row_square;
    let defect = defect_rank(&defect_operator, tol);
    let nilpotent = if commuting { nilpotency_index(t, None, tol)? } else { None };
    let purity = if row_contraction { Some(purity(t, tol)?) } else { None };
    let pure = nilpotent.is_some() || purity.is_some_and(|p| p.is_pure());
    Ok(TupleReport {
        commuting,
        commutator_norm,
        row_contraction,
        pure,
        purity,
        nilpotent,
        defect,
        row_square,
        defect_operator,
    })
}

/// Rank of the defect operator; eigenvalues below `psd_tol` count as zero.
fn defect_rank(defect: &ComplexMatrix, tol: &ToleranceConfig) -> usize {
    let sv = crate::linalg::singular_values(defect);
    sv.iter().filter(|&&s| s > tol.psd_tol.max(tol.rank_rel_tol)).count()
}

/// Decides purity by iterating `Phi` on the identity.
pub fn purity(t: &RowTuple, tol: &ToleranceConfig) -> Result<Purity> {
    tol.validate()?;
    if !t.is_row_contraction(tol) {
        return Err(Error::NotRowContraction);
    }
    let n = t.dim();
    let mut p = ComplexMatrix::identity(n, n);
    for step in 1..=tol.max_iter {
        let next = t.phi(&p);
        let size = operator_norm(&next);
        if size < tol.iter_tol {
            return Ok(Purity::Pure { steps: step });
        }
        if operator_norm(&(&next - &p)) <= tol.iter_tol {
            return Ok(Purity::NotPure { steps: step });
        }
        p = next;
    }
    Ok(Purity::Indeterminate { steps: tol.max_iter })
}

/// Monomial powers `T^alpha` for all `|alpha| <= max_degree`, in graded order.
pub fn monomial_powers(t: &RowTuple, max_degree: usize) -> Vec<(MultiIndex, ComplexMatrix)> {
    let d = t.d();
    let n = t.dim();
    let mut out: Vec<(MultiIndex, ComplexMatrix)> =
        vec![(MultiIndex::zeros(d), ComplexMatrix::identity(n, n))];
    let mut index: HashMap<MultiIndex, usize> = HashMap::new();
    index.insert(MultiIndex::zeros(d), 0);
    for deg in 1..=max_degree {
        for alpha in MultiIndex::of_degree(d, deg) {
            let k = alpha.exponents().iter().position(|&e| e > 0).expect("positive degree");
            let mut lower = alpha.exponents().to_vec();
            lower[k] -= 1;
            let prev = &out[index[&MultiIndex::new(lower)]].1;
            let m = t.get(k) * prev;
            index.insert(alpha.clone(), out.len());
            out.push((alpha, m));
        }
    }
    out
}

/// Smallest `m <= cap` with `T^alpha = 0` for every `|alpha| = m`.
///
/// `cap` defaults to `dim + 1`. A power counts as zero when its norm is at
/// most `rank_rel_tol * max(1, max_k ||T_k||)^m`.
pub fn nilpotency_index(
    t: &RowTuple,
    cap: Option<usize>,
    tol: &ToleranceConfig,
) -> Result<Option<usize>> {
    t.ensure_commuting(tol)?;
    let cap = cap.unwrap_or(t.dim() + 1);
    let d = t.d();
    let n = t.dim();
    let scale = t.scale_factor();
    let mut layer: Vec<(MultiIndex, ComplexMatrix)> =
        vec![(MultiIndex::zeros(d), ComplexMatrix::identity(n, n))];
    for m in 1..=cap {
        let mut next: HashMap<MultiIndex, ComplexMatrix> = HashMap::new();
        for (alpha, mat) in &layer {
            for k in 0..d {
                let beta = alpha.bump(k);
                next.entry(beta).or_insert_with(|| t.get(k) * mat);
            }
        }
        let threshold = tol.rank_rel_tol * scale.powi(m as i32);
        if next.values().all(|mat| operator_norm(mat) <= threshold) {
            return Ok(Some(m));
        }
        layer = next.into_iter().collect();
    }
    Ok(None)
}

/// Like [`nilpotency_index`], but a missing index is an error.
pub fn require_nilpotent(t: &RowTuple, tol: &ToleranceConfig) -> Result<usize> {
    let cap = t.dim() + 1;
    nilpotency_index(t, Some(cap), tol)?.ok_or(Error::NotNilpotent { cap })
}

/// `p(T) = sum_alpha c_alpha T^alpha`.
pub fn poly_eval(p: &Polynomial, t: &RowTuple) -> Result<ComplexMatrix> {
    if p.d() != t.d() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial has {} variables, tuple has {} matrices",
            p.d(),
            t.d()
        )));
    }
    let n = t.dim();
    let Some(deg) = p.degree() else {
        return Ok(ComplexMatrix::zeros(n, n));
    };
    let powers = monomial_powers(t, deg);
    let mut out = ComplexMatrix::zeros(n, n);
    for (alpha, m) in &powers {
        let c = p.coeff(alpha);
        if c != crate::linalg::ZERO {
            out += m * c;
        }
    }
    Ok(out)
}

/// `T_w = T_{w_1} ... T_{w_s}`; the empty word gives the identity.
pub fn word_eval(w: &Word, t: &RowTuple) -> Result<ComplexMatrix> {
    let n = t.dim();
    let mut out = ComplexMatrix::identity(n, n);
    for &k in w.letters() {
        if k >= t.d() {
            return Err(Error::InvalidParameter(format!(
                "letter {} out of range 1..={}",
                k + 1,
                t.d()
            )));
        }
        out *= t.get(k);
    }
    Ok(out)
}

/// Numerical rank of `[T_1 ... T_d]`, the dimension of `sum_k T_k H`.
pub fn joint_range_rank(t: &RowTuple, tol: &ToleranceConfig) -> usize {
    let refs: Vec<&ComplexMatrix> = t.mats().iter().collect();
    let stacked = crate::linalg::hstack(t.dim(), &refs);
    let rank = numerical_rank(&stacked, tol);
    // A numerically zero tuple has no range even though the relative rank test
    // would count its largest singular value.
    if operator_norm(&stacked) <= tol.rank_rel_tol {
        0
    } else {
        rank
    }
}
