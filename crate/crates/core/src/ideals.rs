//! Polynomial annihilators of nilpotent tuples, quotient algebras and model spaces.
//!
//! An ideal containing every monomial of degree `m` is stored as the vector
//! space `J ∩ C[x]_{<=m}`, an orthonormal frame in monomial coefficient
//! coordinates. Membership, equality and quotient dimension then reduce to
//! rank computations.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{multiplication_matrix, MultiIndex, Polynomial, TruncatedDA};
use crate::linalg::{
    extend_orthonormal, hstack, hstack_vectors, operator_norm, orthogonal_complement,
    orthonormalize, rank_and_kernel, reduced_column_echelon, subspace_distance, try_inverse,
    vectorize, ComplexMatrix, ComplexVector, ToleranceConfig, ONE, ZERO,
};
use crate::tuples::{monomial_powers, require_nilpotent, RowTuple};

/// Principal-angle tolerance for deciding that two ideals coincide.
pub const IDEAL_EQ_TOL: f64 = 1e-8;

/// `J ∩ C[x]_{<=m}` for an ideal `J` containing all monomials of degree `m`.
#[derive(Clone, Debug)]
pub struct AnnihilatorBasis {
    d: usize,
    bound: usize,
    monomials: Vec<MultiIndex>,
    coeffs: ComplexMatrix,
}

impl AnnihilatorBasis {
    fn from_frame(d: usize, bound: usize, low_frame: &ComplexMatrix) -> Self {
        // `low_frame` lives on monomials of degree < bound; the degree-bound
        // monomials are appended as unit vectors.
        let monomials = MultiIndex::up_to_degree(d, bound);
        let n_low = MultiIndex::count_up_to(d, bound.saturating_sub(1));
        let n_low = if bound == 0 { 0 } else { n_low };
        let n_top = monomials.len() - n_low;
        let mut coeffs = ComplexMatrix::zeros(monomials.len(), low_frame.ncols() + n_top);
        if n_low > 0 && low_frame.ncols() > 0 {
            coeffs.view_mut((0, 0), (n_low, low_frame.ncols())).copy_from(low_frame);
        }
        for j in 0..n_top {
            coeffs[(n_low + j, low_frame.ncols() + j)] = ONE;
        }
        AnnihilatorBasis { d, bound, monomials, coeffs }
    }

    /// The whole polynomial ring (annihilator of the zero space).
    pub fn full(d: usize) -> Self {
        Self::from_frame(d, 0, &ComplexMatrix::zeros(0, 0))
    }

    /// `(generators) + (x)^m ∩ C[x]_{<=m}`.
    ///
    /// Without an explicit bound, `m` is the least degree at which every
    /// monomial of degree `m` already lies in the generated ideal modulo
    /// higher degrees, searched up to `max_search`.
    pub fn from_generators(
        d: usize,
        generators: &[Polynomial],
        bound: Option<usize>,
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        for g in generators {
            if g.d() != d {
                return Err(Error::DimensionMismatch(format!(
                    "generator {g} has {} variables, expected {d}",
                    g.d()
                )));
            }
        }
        let m = match bound {
            Some(m) => m,
            None => {
                let missing = (0..d).find(|&k| {
                    !generators
                        .iter()
                        .any(|g| g.terms().any(|(a, _)| a.degree() == a.exponents()[k]))
                });
                if let Some(k) = missing {
                    return Err(Error::InvalidParameter(format!(
                        "no generator restricts to a nonzero polynomial of x{} alone, so no power of x{} lies in the ideal",
                        k + 1,
                        k + 1
                    )));
                }
                let limit = (1..=MAX_SEARCH_DEGREE)
                    .take_while(|&m| MultiIndex::count_up_to(d, m) <= MAX_SEARCH_MONOMIALS)
                    .last()
                    .unwrap_or(1);
                (1..=limit)
                    .find(|&m| top_degree_absorbed(d, generators, m, tol))
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "generators do not contain a power of the maximal ideal up to degree {limit}"
                        ))
                    })?
            }
        };
        if m == 0 {
            return Ok(Self::full(d));
        }
        let low = MultiIndex::up_to_degree(d, m - 1);
        let frame = orthonormalize(&shifted_truncations(generators, &low, m - 1), tol);
        Ok(Self::from_frame(d, m, &frame))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn degree_bound(&self) -> usize {
        self.bound
    }

    /// Monomials of degree at most the bound, indexing the coefficient rows.
    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    /// Orthonormal coefficient frame (rows follow [`monomials`](Self::monomials)).
    pub fn coefficient_frame(&self) -> &ComplexMatrix {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.ncols()
    }

    /// Codimension in `C[x]_{<=m}`, i.e. the dimension of the quotient algebra.
    pub fn codim(&self) -> usize {
        self.monomials.len() - self.dim()
    }

    /// Basis polynomials (the columns of the coefficient frame).
    pub fn basis(&self) -> Vec<Polynomial> {
        (0..self.dim())
            .map(|j| {
                let c: Vec<Complex64> = self.coeffs.column(j).iter().copied().collect();
                Polynomial::from_coefficients(self.d, &self.monomials, &c)
            })
            .collect()
    }

    /// A basis with distinct leading monomials, sorted by degree.
    ///
    /// Each element is scaled so its leading (highest) monomial has
    /// coefficient 1, and no element contains another element's leading monomial.
    pub fn echelon_basis(&self) -> Vec<Polynomial> {
        let order: Vec<usize> = (0..self.monomials.len()).rev().collect();
        let (e, _) = reduced_column_echelon(&self.coeffs, &order, 1e-12);
        let mut out: Vec<Polynomial> = (0..e.ncols())
            .map(|j| {
                let c: Vec<Complex64> = e.column(j).iter().map(|z| clean(*z)).collect();
                Polynomial::from_coefficients(self.d, &self.monomials, &c)
            })
            .collect();
        out.sort_by_key(|p| (p.degree(), p.terms().last().map(|(a, _)| a.clone())));
        out
    }

    /// Greedy generating set: echelon elements not already in the ideal
    /// generated by earlier ones. Not canonical.
    pub fn generators(&self, tol: &ToleranceConfig) -> Vec<Polynomial> {
        let mut chosen: Vec<Polynomial> = Vec::new();
        let mut span = ComplexMatrix::zeros(self.monomials.len(), 0);
        for cand in self.echelon_basis() {
            let v = ComplexMatrix::from_column_slice(
                self.monomials.len(),
                1,
                &cand.coefficients(&self.monomials),
            );
            if extend_orthonormal(&span, &v, tol).ncols() == 0 {
                continue;
            }
            chosen.push(cand);
            span = orthonormalize(&shifted_truncations(&chosen, &self.monomials, self.bound), tol);
        }
        chosen
    }

    /// Same ideal described up to a larger degree bound.
    pub fn extend_to(&self, bound: usize) -> AnnihilatorBasis {
        if bound <= self.bound {
            return self.clone();
        }
        let monomials = MultiIndex::up_to_degree(self.d, bound);
        let extra = monomials.len() - self.monomials.len();
        let mut coeffs = ComplexMatrix::zeros(monomials.len(), self.dim() + extra);
        coeffs
            .view_mut((0, 0), self.coeffs.shape())
            .copy_from(&self.coeffs);
        for j in 0..extra {
            coeffs[(self.monomials.len() + j, self.dim() + j)] = ONE;
        }
        AnnihilatorBasis { d: self.d, bound, monomials, coeffs }
    }

    /// Ideal equality via principal angles at a common degree bound.
    pub fn same_ideal(&self, other: &AnnihilatorBasis) -> bool {
        self.distance(other) < IDEAL_EQ_TOL
    }

    /// Largest principal-angle sine between the two ideals at a common bound.
    pub fn distance(&self, other: &AnnihilatorBasis) -> f64 {
        if self.d != other.d {
            return 1.0;
        }
        let b = self.bound.max(other.bound);
        subspace_distance(&self.extend_to(b).coeffs, &other.extend_to(b).coeffs)
    }

    /// Whether `self ⊆ other` as ideals.
    pub fn is_contained_in(&self, other: &AnnihilatorBasis) -> bool {
        let b = self.bound.max(other.bound);
        let a = self.extend_to(b).coeffs;
        let o = other.extend_to(b).coeffs;
        let resid = &a - &o * (o.adjoint() * &a);
        operator_norm(&resid) < IDEAL_EQ_TOL
    }

    /// Membership test; terms of degree above the bound are in the ideal.
    pub fn contains(&self, p: &Polynomial) -> bool {
        let v = ComplexVector::from_vec(p.coefficients(&self.monomials));
        let size = v.norm();
        if size == 0.0 {
            return true;
        }
        let resid = &v - &self.coeffs * (self.coeffs.adjoint() * &v);
        resid.norm() <= IDEAL_EQ_TOL * size
    }
}

/// Columns `trunc_{<=top}(x^beta g)` for every generator and every `beta`
/// with `|beta| <= top`, in coordinates indexed by `rows`.
fn shifted_truncations(generators: &[Polynomial], rows: &[MultiIndex], top: usize) -> ComplexMatrix {
    let mut cols: Vec<ComplexVector> = Vec::new();
    for g in generators {
        let d = g.d();
        for beta in MultiIndex::up_to_degree(d, top) {
            let shifted = &Polynomial::monomial(beta, ONE) * g;
            let c = shifted.truncate(top).coefficients(rows);
            if c.iter().any(|z| *z != ZERO) {
                cols.push(ComplexVector::from_vec(c));
            }
        }
    }
    hstack_vectors(rows.len(), &cols)
}

const MAX_SEARCH_DEGREE: usize = 64;
const MAX_SEARCH_MONOMIALS: usize = 400;

fn top_degree_absorbed(d: usize, generators: &[Polynomial], m: usize, tol: &ToleranceConfig) -> bool {
    let rows = MultiIndex::up_to_degree(d, m);
    let span = orthonormalize(&shifted_truncations(generators, &rows, m), tol);
    let start = rows.len() - MultiIndex::of_degree(d, m).len();
    let mut top = ComplexMatrix::zeros(rows.len(), rows.len() - start);
    for j in 0..top.ncols() {
        top[(start + j, j)] = ONE;
    }
    let resid = &top - &span * (span.adjoint() * &top);
    operator_norm(&resid) < IDEAL_EQ_TOL
}

fn clean(z: Complex64) -> Complex64 {
    let r = |v: f64| if v.abs() < 1e-14 { 0.0 } else { v };
    Complex64::new(r(z.re), r(z.im))
}

/// Polynomials annihilating a nilpotent commuting tuple, up to its nilpotency index.
pub fn annihilator(t: &RowTuple, tol: &ToleranceConfig) -> Result<AnnihilatorBasis> {
    tol.validate()?;
    let m = require_nilpotent(t, tol)?;
    let powers = monomial_powers(t, m - 1);
    let cols: Vec<ComplexVector> = powers.iter().map(|(_, p)| vectorize(p)).collect();
    let eval = hstack_vectors(t.dim() * t.dim(), &cols);
    let (_, kernel) = rank_and_kernel(&eval, tol);
    Ok(AnnihilatorBasis::from_frame(t.d(), m, &kernel))
}

/// `C[x] / J` presented by a monomial basis and multiplication operators.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    d: usize,
    monomial_basis: Vec<MultiIndex>,
    all_monomials: Vec<MultiIndex>,
    /// Rows `0..delta` of `[Q | A]^{-1}`: coordinates of any polynomial in
    /// the quotient basis.
    reducer: ComplexMatrix,
    mult_table: Vec<ComplexMatrix>,
}

impl QuotientAlgebra {
    pub fn dim(&self) -> usize {
        self.monomial_basis.len()
    }

    pub fn monomial_basis(&self) -> &[MultiIndex] {
        &self.monomial_basis
    }

    /// Coordinates of `[p]` in the monomial basis.
    pub fn reduce(&self, p: &Polynomial) -> Vec<Complex64> {
        let v = ComplexVector::from_vec(p.coefficients(&self.all_monomials));
        (&self.reducer * v).iter().copied().collect()
    }

    /// The representative `sum_j c_j x^{alpha_j}`.
    pub fn polynomial(&self, coords: &[Complex64]) -> Polynomial {
        Polynomial::from_coefficients(self.d, &self.monomial_basis, coords)
    }

    /// Matrix of multiplication by `[x^{alpha_i}]` on the quotient.
    pub fn left_mult(&self, i: usize) -> &ComplexMatrix {
        &self.mult_table[i]
    }

    /// Coordinates of `[x^{alpha_i}] [x^{alpha_j}]`.
    pub fn product(&self, i: usize, j: usize) -> Vec<Complex64> {
        self.mult_table[i].column(j).iter().copied().collect()
    }
}

/// Greedy graded choice of monomials independent modulo the ideal.
pub fn quotient_algebra(ann: &AnnihilatorBasis, tol: &ToleranceConfig) -> Result<QuotientAlgebra> {
    let n = ann.monomials.len();
    let mut frame = ann.coeffs.clone();
    let mut chosen: Vec<usize> = Vec::new();
    for (i, _) in ann.monomials.iter().enumerate() {
        let mut e = ComplexMatrix::zeros(n, 1);
        e[(i, 0)] = ONE;
        let new = extend_orthonormal(&frame, &e, tol);
        if new.ncols() == 1 {
            frame = hstack(n, &[&frame, &new]);
            chosen.push(i);
        }
    }
    let delta = chosen.len();
    let mut q = ComplexMatrix::zeros(n, delta);
    for (j, &i) in chosen.iter().enumerate() {
        q[(i, j)] = ONE;
    }
    let full = hstack(n, &[&q, &ann.coeffs]);
    let inv = try_inverse(&full, tol)
        .ok_or_else(|| Error::Numerical("quotient basis and ideal do not span".into()))?;
    let reducer = inv.rows(0, delta).into_owned();
    let monomial_basis: Vec<MultiIndex> = chosen.iter().map(|&i| ann.monomials[i].clone()).collect();
    let mut out = QuotientAlgebra {
        d: ann.d,
        monomial_basis,
        all_monomials: ann.monomials.clone(),
        reducer,
        mult_table: Vec::new(),
    };
    let mut table = Vec::with_capacity(delta);
    for a in &out.monomial_basis {
        let mut l = ComplexMatrix::zeros(delta, delta);
        for (j, b) in out.monomial_basis.iter().enumerate() {
            let prod = Polynomial::monomial(a.plus(b), ONE);
            for (i, c) in out.reduce(&prod).into_iter().enumerate() {
                l[(i, j)] = c;
            }
        }
        table.push(l);
    }
    out.mult_table = table;
    Ok(out)
}

/// Exponents `alpha` with `T^alpha != 0` and `T^alpha T_k = 0` for every `k`.
pub fn omega_e(t: &RowTuple, tol: &ToleranceConfig) -> Result<Vec<MultiIndex>> {
    let m = require_nilpotent(t, tol)?;
    let scale = t.scale_factor();
    let powers = monomial_powers(t, m - 1);
    let mut out = Vec::new();
    for (alpha, p) in &powers {
        let deg = alpha.degree() as i32;
        if operator_norm(p) <= tol.rank_rel_tol * scale.powi(deg) {
            continue;
        }
        let threshold = tol.rank_rel_tol * scale.powi(deg + 1);
        if t.mats().iter().all(|tk| operator_norm(&(p * tk)) <= threshold) {
            out.push(alpha.clone());
        }
    }
    Ok(out)
}

/// `H_J = H^2_d ⊖ [J H^2_d]`, embedded in the degree-`N` truncation.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    d: usize,
    cap: usize,
    bound: usize,
    frame: ComplexMatrix,
}

impl ModelSpace {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn degree_cap(&self) -> usize {
        self.cap
    }

    pub fn degree_bound(&self) -> usize {
        self.bound
    }

    /// Orthonormal frame in normalized-monomial coordinates of `TruncatedDA(d, N)`.
    pub fn frame(&self) -> &ComplexMatrix {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.ncols()
    }

    /// The functions spanning the space, one per frame column.
    pub fn basis_polynomials(&self) -> Result<Vec<Polynomial>> {
        let space = TruncatedDA::new(self.d, self.cap)?;
        Ok((0..self.dim())
            .map(|j| {
                let c: Vec<Complex64> = self.frame.column(j).iter().map(|z| clean(*z)).collect();
                space.polynomial(&c)
            })
            .collect())
    }
}

/// Model space of an ideal given by its degree-bounded basis.
///
/// `cap` defaults to the degree bound and must not be smaller.
pub fn model_space(ann: &AnnihilatorBasis, cap: Option<usize>, tol: &ToleranceConfig) -> Result<ModelSpace> {
    let m = ann.bound;
    let cap = cap.unwrap_or(m);
    if cap < m {
        return Err(Error::InvalidParameter(format!(
            "truncation degree {cap} is below the degree bound {m}"
        )));
    }
    let top_ok = MultiIndex::of_degree(ann.d, m)
        .into_iter()
        .all(|a| ann.contains(&Polynomial::monomial(a, ONE)));
    if !top_ok {
        return Err(Error::HypothesisFailed {
            hypothesis: "ideal contains every monomial of the bounding degree",
            detail: format!("some monomial of degree {m} is missing"),
        });
    }
    let space = TruncatedDA::new(ann.d, cap)?;
    let n_low = space.count_below(m);
    let low = &space.basis()[..n_low];
    let basis = ann.basis();
    let mut cols: Vec<ComplexVector> = Vec::new();
    for q in &basis {
        for beta in MultiIndex::up_to_degree(ann.d, m) {
            let f = (&Polynomial::monomial(beta, ONE) * q).truncate(m.saturating_sub(1));
            if f.is_zero() {
                continue;
            }
            let coords: Vec<Complex64> = low
                .iter()
                .map(|a| f.coeff(a) * crate::fock::da_monomial_norm(a))
                .collect();
            cols.push(ComplexVector::from_vec(coords));
        }
    }
    let constraints = orthonormalize(&hstack_vectors(n_low, &cols), tol);
    let low_frame = orthogonal_complement(&constraints, tol);
    let mut frame = ComplexMatrix::zeros(space.dim(), low_frame.ncols());
    frame.view_mut((0, 0), (n_low, low_frame.ncols())).copy_from(&low_frame);
    Ok(ModelSpace { d: ann.d, cap, bound: m, frame })
}

/// Compressions of the coordinate multipliers to the model space.
pub fn model_tuple(space: &ModelSpace) -> Result<RowTuple> {
    if space.dim() == 0 {
        return Err(Error::InvalidParameter("model space is zero-dimensional".into()));
    }
    let da = TruncatedDA::new(space.d, space.cap)?;
    let mats = (0..space.d)
        .map(|k| {
            let m = multiplication_matrix(&Polynomial::variable(space.d, k), &da)?;
            Ok(space.frame.adjoint() * m * &space.frame)
        })
        .collect::<Result<Vec<_>>>()?;
    RowTuple::new(mats)
}

/// Model tuple of the ideal `(generators) + (x)^m`.
pub fn model_of_generators(
    d: usize,
    generators: &[Polynomial],
    bound: Option<usize>,
    tol: &ToleranceConfig,
) -> Result<RowTuple> {
    let ann = AnnihilatorBasis::from_generators(d, generators, bound, tol)?;
    model_tuple(&model_space(&ann, None, tol)?)
}

/// Serializable summary of an annihilator.
#[derive(Clone, Debug, Serialize)]
pub struct AnnihilatorSummary {
    pub d: usize,
    pub degree_bound: usize,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub generators: Vec<String>,
    pub quotient_basis: Vec<String>,
    pub delta: usize,
    pub omega_e: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{c64, max_abs};
    use crate::tuples::{nilpotency_index, poly_eval, validate};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn mi(e: &[usize]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    fn degree_ideal(d: usize, m: usize) -> AnnihilatorBasis {
        AnnihilatorBasis::from_generators(d, &[], Some(m), &tol()).unwrap()
    }

    #[test]
    fn maxcount_annihilator() {
        let ann = annihilator(&fixtures::maxcount(), &tol()).unwrap();
        assert_eq!(ann.degree_bound(), 2);
        assert_eq!(ann.dim(), 3);
        assert!(ann.basis().iter().all(|p| p.order() == Some(2)));
        assert!(ann.same_ideal(&degree_ideal(2, 2)));
        let q = quotient_algebra(&ann, &tol()).unwrap();
        assert_eq!(q.monomial_basis(), &[mi(&[0, 0]), mi(&[1, 0]), mi(&[0, 1])]);
        assert_eq!(q.dim() + ann.dim(), ann.monomials().len());
        let gens = ann.generators(&tol());
        assert_eq!(gens.len(), 3);
    }

    #[test]
    fn zero_tuple_annihilator() {
        let t = RowTuple::zero(1, 1).unwrap();
        let ann = annihilator(&t, &tol()).unwrap();
        assert_eq!(ann.degree_bound(), 1);
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(&Polynomial::variable(1, 0)));
        assert!(!ann.contains(&Polynomial::one(1)));
        let q = quotient_algebra(&ann, &tol()).unwrap();
        assert_eq!(q.monomial_basis(), &[mi(&[0])]);
        assert_eq!(omega_e(&RowTuple::zero(2, 3).unwrap(), &tol()).unwrap(), vec![mi(&[0, 0])]);
    }

    #[test]
    fn fromgriff_annihilator() {
        let ann = annihilator(&fixtures::fromgriff(3).unwrap(), &tol()).unwrap();
        assert!(ann.basis().iter().all(|p| p.order() == Some(2)));
        assert!(ann.same_ideal(&degree_ideal(2, 2)));
    }

    #[test]
    fn rectangle_quotient_and_socle() {
        let t = fixtures::rectangle(&[2, 2]).unwrap();
        let ann = annihilator(&t, &tol()).unwrap();
        let q = quotient_algebra(&ann, &tol()).unwrap();
        assert_eq!(q.monomial_basis(), &[mi(&[0, 0]), mi(&[1, 0]), mi(&[0, 1]), mi(&[1, 1])]);
        assert_eq!(omega_e(&t, &tol()).unwrap(), vec![mi(&[1, 1])]);
        assert_eq!(omega_e(&fixtures::maxcount(), &tol()).unwrap(), vec![mi(&[1, 0]), mi(&[0, 1])]);
        let gens = ann.generators(&tol());
        assert_eq!(gens.len(), 2);
        assert!(gens.iter().all(|g| g.num_terms() == 1 && g.degree() == Some(2)));
    }

    #[test]
    fn multiplication_table_reduces() {
        let t = fixtures::rectangle(&[3, 2]).unwrap();
        let ann = annihilator(&t, &tol()).unwrap();
        let q = quotient_algebra(&ann, &tol()).unwrap();
        let x1 = q.monomial_basis().iter().position(|a| *a == mi(&[1, 0])).unwrap();
        let x1sq = q.monomial_basis().iter().position(|a| *a == mi(&[2, 0])).unwrap();
        let prod = q.product(x1, x1);
        for (i, c) in prod.iter().enumerate() {
            let want = if i == x1sq { 1.0 } else { 0.0 };
            assert!((c - c64(want, 0.0)).norm() < 1e-10);
        }
        // x1^3 lies in the ideal.
        let x1sq_x1 = q.product(x1sq, x1);
        assert!(x1sq_x1.iter().all(|c| c.norm() < 1e-10));
    }

    #[test]
    fn one_variable_model() {
        let ann = degree_ideal(1, 2);
        let space = model_space(&ann, None, &tol()).unwrap();
        assert_eq!(space.dim(), 2);
        let t = model_tuple(&space).unwrap();
        let want = ComplexMatrix::from_row_slice(2, 2, &[c64(0.0, 0.0), c64(0.0, 0.0), ONE, c64(0.0, 0.0)]);
        assert!(max_abs(&(t.get(0) - want)) < 1e-15);
    }

    #[test]
    fn two_variable_models() {
        let space = model_space(&degree_ideal(2, 2), Some(4), &tol()).unwrap();
        assert_eq!(space.dim(), 3);
        let t = model_tuple(&space).unwrap();
        let back = annihilator(&t, &tol()).unwrap();
        assert!(back.same_ideal(&degree_ideal(2, 2)));

        let x2 = Polynomial::variable(2, 1);
        let ann = AnnihilatorBasis::from_generators(2, &[x2], Some(3), &tol()).unwrap();
        let space = model_space(&ann, None, &tol()).unwrap();
        for p in space.basis_polynomials().unwrap() {
            assert!(p.terms().all(|(a, _)| a.exponents()[1] == 0));
        }
    }

    #[test]
    fn rectangle_model_has_corner() {
        let t = fixtures::rectangle(&[2, 2]).unwrap();
        assert_eq!(t.dim(), 4);
        let corner = poly_eval(&Polynomial::parse("x1 x2", Some(2)).unwrap(), &t).unwrap();
        assert!(corner.column(0).norm() > 0.1);
    }

    #[test]
    fn model_space_requires_top_degree() {
        let x1 = Polynomial::variable(2, 0);
        let ann = AnnihilatorBasis::from_generators(2, &[x1], Some(2), &tol()).unwrap();
        assert!(ann.contains(&Polynomial::parse("x2^2", None).unwrap()));
        let partial = AnnihilatorBasis {
            coeffs: ann.coeffs.columns(0, 1).into_owned(),
            ..ann.clone()
        };
        assert!(matches!(
            model_space(&partial, None, &tol()),
            Err(Error::HypothesisFailed { .. })
        ));
    }

    #[test]
    fn default_bound_search() {
        let gens = [Polynomial::parse("x1^2", Some(2)).unwrap(), Polynomial::parse("x2^2", Some(2)).unwrap()];
        let ann = AnnihilatorBasis::from_generators(2, &gens, None, &tol()).unwrap();
        assert_eq!(ann.degree_bound(), 3);
        let ann = AnnihilatorBasis::from_generators(1, &[Polynomial::parse("x^4", None).unwrap()], None, &tol()).unwrap();
        assert_eq!(ann.degree_bound(), 4);
        assert!(AnnihilatorBasis::from_generators(2, &[Polynomial::variable(2, 0)], None, &tol()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn model_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ann = crate::random::random_nilpotent_ideal(&mut rng, 3, 8).unwrap();
            let t = model_tuple(&model_space(&ann, None, &tol()).unwrap()).unwrap();
            let r = validate(&t, &tol()).unwrap();
            prop_assert!(r.commuting && r.row_contraction && r.pure);
            prop_assert_eq!(nilpotency_index(&t, None, &tol()).unwrap(), Some(ann.degree_bound()));
            let back = annihilator(&t, &tol()).unwrap();
            prop_assert!(back.same_ideal(&ann), "distance {}", back.distance(&ann));
            let q = quotient_algebra(&back, &tol()).unwrap();
            prop_assert_eq!(q.dim() + back.dim(), back.monomials().len());
            prop_assert_eq!(q.dim(), t.dim());
        }
    }
}
