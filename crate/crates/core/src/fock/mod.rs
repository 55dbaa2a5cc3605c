//! Truncated full Fock space and truncated Drury-Arveson space.
//!
//! Both spaces use graded orderings, so truncating to a lower degree is a
//! leading principal submatrix.

mod poly;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c64, operator_norm, ComplexMatrix, ONE};

pub use poly::{MultiIndex, Polynomial};

/// `||x^alpha|| = sqrt(alpha! / |alpha|!)` in the Drury-Arveson space.
pub fn da_monomial_norm(alpha: &MultiIndex) -> f64 {
    alpha.multinomial().recip().sqrt()
}

/// Reproducing kernel `1 / (1 - <z, w>)`; both points must lie in the open ball.
pub fn da_kernel(z: &[Complex64], w: &[Complex64]) -> Result<Complex64> {
    if z.len() != w.len() {
        return Err(Error::DimensionMismatch(format!(
            "points have {} and {} coordinates",
            z.len(),
            w.len()
        )));
    }
    for p in [z, w] {
        let r = p.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if r >= 1.0 || !r.is_finite() {
            return Err(Error::OutsideBall(r));
        }
    }
    let inner: Complex64 = z.iter().zip(w).map(|(a, b)| a * b.conj()).sum();
    Ok(ONE / (ONE - inner))
}

/// Polynomials of degree at most `cap` in `d` variables, with the
/// orthonormal basis of normalized monomials.
#[derive(Clone, Debug)]
pub struct TruncatedDA {
    d: usize,
    cap: usize,
    basis: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
}

impl TruncatedDA {
    pub fn new(d: usize, cap: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("need at least one variable".into()));
        }
        let basis = MultiIndex::up_to_degree(d, cap);
        let index = basis.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Ok(TruncatedDA { d, cap, basis, index })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn degree_cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn position(&self, alpha: &MultiIndex) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    /// Number of basis elements of degree below `n`.
    pub fn count_below(&self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            MultiIndex::count_up_to(self.d, (n - 1).min(self.cap))
        }
    }

    /// Coordinates of `p` in the normalized basis; terms above the cap are dropped.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<Complex64>> {
        self.check_vars(p)?;
        let mut out = vec![c64(0.0, 0.0); self.dim()];
        for (alpha, c) in p.terms() {
            if let Some(i) = self.position(alpha) {
                out[i] = c * da_monomial_norm(alpha);
            }
        }
        Ok(out)
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn polynomial(&self, coords: &[Complex64]) -> Polynomial {
        let mut p = Polynomial::zero(self.d);
        for (alpha, c) in self.basis.iter().zip(coords) {
            if *c != c64(0.0, 0.0) {
                p.add_term(alpha.clone(), c / da_monomial_norm(alpha));
            }
        }
        p
    }

    fn check_vars(&self, p: &Polynomial) -> Result<()> {
        if p.d() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "polynomial has {} variables, space has {}",
                p.d(),
                self.d
            )));
        }
        Ok(())
    }
}

/// Matrix of `P_N M_p` restricted to the truncation, in the normalized basis.
pub fn multiplication_matrix(p: &Polynomial, space: &TruncatedDA) -> Result<ComplexMatrix> {
    space.check_vars(p)?;
    let n = space.dim();
    let mut m = ComplexMatrix::zeros(n, n);
    for (col, alpha) in space.basis().iter().enumerate() {
        let na = da_monomial_norm(alpha);
        for (gamma, c) in p.terms() {
            let beta = alpha.plus(gamma);
            if let Some(row) = space.position(&beta) {
                m[(row, col)] += c * (da_monomial_norm(&beta) / na);
            }
        }
    }
    Ok(m)
}

/// Operator norm of the degree-`n` truncation of `M_p`.
///
/// This is a lower bound for the multiplier norm and is nondecreasing in
/// `n`. Homogeneous `p` maps each degree block into a single block, so the
/// norm is the largest block norm.
pub fn truncated_multiplier_norm(p: &Polynomial, n: usize) -> Result<f64> {
    Ok(truncated_multiplier_norms(p, n)?.last().copied().unwrap_or(0.0))
}

/// `truncated_multiplier_norm(p, k)` for `k = 0..=n`.
pub fn truncated_multiplier_norms(p: &Polynomial, n: usize) -> Result<Vec<f64>> {
    let d = p.d();
    if d == 0 {
        return Err(Error::InvalidParameter("need at least one variable".into()));
    }
    if p.is_zero() {
        return Ok(vec![0.0; n + 1]);
    }
    if p.is_homogeneous() {
        let k = p.degree().unwrap_or(0);
        let mut out = Vec::with_capacity(n + 1);
        let mut best = 0.0_f64;
        for cap in 0..=n {
            if cap >= k {
                best = best.max(homogeneous_block_norm(p, cap - k));
            }
            out.push(best);
        }
        return Ok(out);
    }
    let mut out = Vec::with_capacity(n + 1);
    for cap in 0..=n {
        let space = TruncatedDA::new(d, cap)?;
        out.push(operator_norm(&multiplication_matrix(p, &space)?));
    }
    // Compressions of one operator: enforce the ordering against round-off.
    for i in 1..out.len() {
        out[i] = out[i].max(out[i - 1]);
    }
    Ok(out)
}

/// Norm of the block of `M_p` from degree `src` to degree `src + deg p`.
fn homogeneous_block_norm(p: &Polynomial, src: usize) -> f64 {
    let d = p.d();
    let k = p.degree().unwrap_or(0);
    let sources = MultiIndex::of_degree(d, src);
    let targets = MultiIndex::of_degree(d, src + k);
    let index: HashMap<&MultiIndex, usize> = targets.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut m = ComplexMatrix::zeros(targets.len(), sources.len());
    for (col, alpha) in sources.iter().enumerate() {
        let na = da_monomial_norm(alpha);
        for (gamma, c) in p.terms() {
            let beta = alpha.plus(gamma);
            m[(index[&beta], col)] += c * (da_monomial_norm(&beta) / na);
        }
    }
    operator_norm(&m)
}

/// Least `n` such that every later entry agrees with `norms[n]` to within
/// `rel_tol` (relative); `None` when not even the last two entries agree.
pub fn stabilization_index(norms: &[f64], rel_tol: f64) -> Option<usize> {
    let close = |a: f64, b: f64| (a - b).abs() <= rel_tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    let last = norms.len().checked_sub(2)?;
    if !close(norms[last], norms[last + 1]) {
        return None;
    }
    let mut n = last;
    while n > 0 && norms[n..].iter().all(|&v| close(norms[n - 1], v)) {
        n -= 1;
    }
    Some(n)
}

/// Finite sequence of letters; letters are 0-based internally and printed 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word `k w`.
    pub fn prepend(&self, k: usize) -> Word {
        let mut l = Vec::with_capacity(self.0.len() + 1);
        l.push(k);
        l.extend_from_slice(&self.0);
        Word(l)
    }

    pub fn abelianize(&self, d: usize) -> MultiIndex {
        let mut e = vec![0; d];
        for &k in &self.0 {
            e[k] += 1;
        }
        MultiIndex::new(e)
    }

    /// All words of length `n` over `d` letters, in lexicographic order.
    pub fn of_length(d: usize, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..d).map(move |k| {
                        let mut l = w.0.clone();
                        l.push(k);
                        Word(l)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", k + 1)?;
        }
        write!(f, ")")
    }
}

/// Words of length at most `cap` over `d` letters.
#[derive(Clone, Debug)]
pub struct TruncatedFock {
    d: usize,
    cap: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl TruncatedFock {
    pub fn new(d: usize, cap: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("need at least one letter".into()));
        }
        let words: Vec<Word> = (0..=cap).flat_map(|n| Word::of_length(d, n)).collect();
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(TruncatedFock { d, cap, words, index })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn degree_cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn basis(&self) -> &[Word] {
        &self.words
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Number of words of length below `n`.
    pub fn count_below(&self, n: usize) -> usize {
        self.words.iter().take_while(|w| w.len() < n).count()
    }
}

/// Matrix of the compressed left creation operator `e_w -> e_{kw}` (0-based `k`).
///
/// Words of maximal length are sent to zero.
pub fn creation_matrix(k: usize, space: &TruncatedFock) -> Result<ComplexMatrix> {
    if k >= space.d() {
        return Err(Error::InvalidParameter(format!(
            "letter {} out of range 1..={}",
            k + 1,
            space.d()
        )));
    }
    let n = space.dim();
    let mut m = ComplexMatrix::zeros(n, n);
    for (col, w) in space.basis().iter().enumerate() {
        if let Some(row) = space.position(&w.prepend(k)) {
            m[(row, col)] = ONE;
        }
    }
    Ok(m)
}

/// Isometry from `TruncatedDA(d, N)` into `TruncatedFock(d, N)` sending the
/// normalized monomial `x^alpha` to the normalized sum of the words that
/// abelianize to `alpha`.
pub fn symmetrization_map(space: &TruncatedFock) -> Result<ComplexMatrix> {
    let da = TruncatedDA::new(space.d(), space.degree_cap())?;
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (row, w) in space.basis().iter().enumerate() {
        let col = da.position(&w.abelianize(space.d())).expect("length within cap");
        groups.entry(col).or_default().push(row);
    }
    let mut m = ComplexMatrix::zeros(space.dim(), da.dim());
    for (col, rows) in groups {
        let v = c64((rows.len() as f64).sqrt().recip(), 0.0);
        for row in rows {
            m[(row, col)] = v;
        }
    }
    Ok(m)
}

/// `p = taylor + sum_{|alpha| = n} (x - w)^alpha * remainders[alpha]`.
#[derive(Clone, Debug)]
pub struct GleasonDecomposition {
    pub taylor: Polynomial,
    pub remainders: BTreeMap<MultiIndex, Polynomial>,
}

impl GleasonDecomposition {
    /// Rebuilds the polynomial from its pieces.
    pub fn reassemble(&self, w: &[Complex64]) -> Result<Polynomial> {
        let d = self.taylor.d();
        let mut out = self.taylor.clone();
        for (alpha, phi) in &self.remainders {
            let mut factor = Polynomial::one(d);
            for (k, &e) in alpha.exponents().iter().enumerate() {
                let lin = &Polynomial::variable(d, k) - &Polynomial::constant(d, w[k]);
                for _ in 0..e {
                    factor = &factor * &lin;
                }
            }
            out = &out + &(&factor * phi);
        }
        Ok(out)
    }
}

/// Splits `p` into its order-`n` Taylor polynomial at `w` and remainders
/// attached to each `(x - w)^alpha` with `|alpha| = n`.
///
/// Each monomial `y^beta` (with `y = x - w`) of degree at least `n` is
/// divided by `y_1` as often as possible, then by `y_2`, and so on, until
/// `n` factors have been taken.
pub fn gleason_decompose(p: &Polynomial, w: &[Complex64], n: usize) -> Result<GleasonDecomposition> {
    if n == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    let d = p.d();
    if w.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, polynomial has {d} variables",
            w.len()
        )));
    }
    let shifted = p.translate(w)?;
    let mut taylor_y = Polynomial::zero(d);
    let mut rem_y: BTreeMap<MultiIndex, Polynomial> = MultiIndex::of_degree(d, n)
        .into_iter()
        .map(|a| (a, Polynomial::zero(d)))
        .collect();
    for (beta, c) in shifted.terms() {
        if beta.degree() < n {
            taylor_y.add_term(beta.clone(), *c);
            continue;
        }
        let mut left = n;
        let alpha: Vec<usize> = beta
            .exponents()
            .iter()
            .map(|&b| {
                let take = b.min(left);
                left -= take;
                take
            })
            .collect();
        let alpha = MultiIndex::new(alpha);
        let rest = beta.checked_sub(&alpha).expect("alpha below beta");
        rem_y.get_mut(&alpha).expect("degree n").add_term(rest, *c);
    }
    let back: Vec<Complex64> = w.iter().map(|z| -z).collect();
    let taylor = taylor_y.translate(&back)?;
    let remainders = rem_y
        .into_iter()
        .map(|(a, q)| Ok((a, q.translate(&back)?)))
        .collect::<Result<_>>()?;
    Ok(GleasonDecomposition { taylor, remainders })
}
