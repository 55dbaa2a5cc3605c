//! Acceptance suite: one line per criterion, computed against oracles that
//! are written here and do not reuse the library's own algorithms.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rowcontract::fixtures;
use rowcontract::fock::{da_kernel, da_monomial_norm, truncated_multiplier_norms, MultiIndex, Polynomial};
use rowcontract::ideals::{annihilator, omega_e};
use rowcontract::linalg::{random_gaussian_vector, ComplexMatrix, ComplexVector, ToleranceConfig};
use rowcontract::random::{
    random_coinvariant, random_cyclic_nilpotent, random_invariant, random_nilpotent_tuple,
    random_proper_invariant, random_splitting_instance, rescale_to_contraction,
};
use rowcontract::subspaces::{
    decomposition_exists, rigidity_coinvariant_check, rigidity_invariant_check, splitting_construct,
    SubspaceBasis, Verdict,
};
use rowcontract::tuples::{nilpotency_index, validate};
use rowcontract::vectors::{
    fock_intertwiner, gram_operator, is_cyclic, is_separating, quasiaffine_witness, separating_greedy,
    separating_greedy_with, separating_witness, QuasiAffineWitness, Sampler,
};
use rowcontract::RowTuple;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn basis_vector(n: usize, i: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(n);
    v[i] = c(1.0);
    v
}

fn svals(a: &ComplexMatrix) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    s
}

fn norm2(a: &ComplexMatrix) -> f64 {
    svals(a).first().copied().unwrap_or(0.0)
}

fn rank(a: &ComplexMatrix, rel: f64) -> usize {
    let s = svals(a);
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel * top).count()
}

fn cols(n: usize, vs: &[ComplexVector]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, vs.len());
    for (j, v) in vs.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

fn mat_pow(a: &ComplexMatrix, k: usize) -> ComplexMatrix {
    let n = a.nrows();
    (0..k).fold(ComplexMatrix::identity(n, n), |acc, _| acc * a)
}

/// `p(T)` as a plain sum of coefficient times a product of matrix powers.
fn eval_oracle(p: &Polynomial, t: &RowTuple) -> ComplexMatrix {
    let n = t.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for (alpha, coef) in p.terms() {
        let mut term = ComplexMatrix::identity(n, n);
        for (k, &e) in alpha.exponents().iter().enumerate() {
            term *= mat_pow(t.get(k), e);
        }
        out += term * *coef;
    }
    out
}

/// All vectors `T_w xi` over words of length below `max_len`.
fn word_orbit(t: &RowTuple, xi: &ComplexVector, max_len: usize) -> Vec<ComplexVector> {
    let mut out = vec![xi.clone()];
    let mut layer = vec![xi.clone()];
    for _ in 1..max_len {
        let next: Vec<ComplexVector> = layer
            .iter()
            .flat_map(|v| t.mats().iter().map(move |m| m * v))
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Index of nilpotency by brute-force products of all words.
fn nil_index_oracle(t: &RowTuple) -> usize {
    let n = t.dim();
    let scale = t.mats().iter().map(norm2).fold(1.0, f64::max);
    let mut layer = vec![ComplexMatrix::identity(n, n)];
    for len in 1..=n + 1 {
        layer = layer.iter().flat_map(|w| t.mats().iter().map(move |m| m * w)).collect();
        if layer.iter().all(|w| norm2(w) <= 1e-9 * scale.powi(len as i32)) {
            return len;
        }
    }
    panic!("not nilpotent");
}

/// Dimension of the algebra generated by the tuple: rank of all word products.
fn algebra_dim_oracle(t: &RowTuple) -> usize {
    let n = t.dim();
    let m = nil_index_oracle(t);
    let mut words = vec![ComplexMatrix::identity(n, n)];
    let mut layer = words.clone();
    for _ in 1..m {
        layer = layer.iter().flat_map(|w| t.mats().iter().map(move |x| x * w)).collect();
        words.extend(layer.iter().cloned());
    }
    let flat: Vec<ComplexVector> = words.iter().map(|w| ComplexVector::from_iterator(n * n, w.iter().copied())).collect();
    rank(&cols(n * n, &flat), 1e-9)
}

/// A set separates iff `A -> (A xi_1, ..., A xi_s)` is injective on the
/// algebra spanned by the word products.
fn separating_set_oracle(t: &RowTuple, set: &[ComplexVector]) -> bool {
    let n = t.dim();
    let m = nil_index_oracle(t);
    let mut words = vec![ComplexMatrix::identity(n, n)];
    let mut layer = words.clone();
    for _ in 1..m {
        layer = layer.iter().flat_map(|w| t.mats().iter().map(move |x| x * w)).collect();
        words.extend(layer.iter().cloned());
    }
    let flat: Vec<ComplexVector> = words.iter().map(|w| ComplexVector::from_iterator(n * n, w.iter().copied())).collect();
    let delta = rank(&cols(n * n, &flat), 1e-9);
    let stacked: Vec<ComplexVector> = words
        .iter()
        .map(|w| {
            let mut v = ComplexVector::zeros(n * set.len());
            for (i, xi) in set.iter().enumerate() {
                v.rows_mut(i * n, n).copy_from(&(w * xi));
            }
            v
        })
        .collect();
    rank(&cols(n * set.len(), &stacked), 1e-9) == delta
}

/// Commutant basis from the SVD of the stacked commutation operator.
fn commutant_oracle(t: &RowTuple) -> Vec<ComplexMatrix> {
    let n = t.dim();
    let id = ComplexMatrix::identity(n, n);
    let d = t.d();
    let mut k = DMatrix::<Complex64>::zeros(d * n * n, n * n);
    for (i, tk) in t.mats().iter().enumerate() {
        // vec(X T - T X) = (T^T ⊗ I - I ⊗ T) vec X
        let block = tk.transpose().kronecker(&id) - id.kronecker(tk);
        k.view_mut((i * n * n, 0), (n * n, n * n)).copy_from(&block);
    }
    let svd = k.svd(false, true);
    let vt = svd.v_t.unwrap();
    let s = &svd.singular_values;
    let top = s.iter().copied().fold(0.0, f64::max);
    let mut out = Vec::new();
    for r in 0..vt.nrows() {
        let sigma = if r < s.len() { s[r] } else { 0.0 };
        if sigma <= 1e-9 * top.max(1.0) {
            let v: Vec<Complex64> = vt.row(r).iter().map(|z| z.conj()).collect();
            out.push(ComplexMatrix::from_column_slice(n, n, &v));
        }
    }
    out
}

/// Whether some commutant element has two distinct eigenvalues, i.e. its
/// traceless part is not nilpotent. Searches basis elements, their pairwise
/// products and sums, and random combinations.
fn commutant_splits_oracle(t: &RowTuple, rng: &mut ChaCha8Rng) -> bool {
    let basis = commutant_oracle(t);
    let n = t.dim();
    let mut candidates: Vec<ComplexMatrix> = basis.clone();
    for a in &basis {
        for b in &basis {
            candidates.push(a * b);
            candidates.push(a + b);
        }
    }
    for _ in 0..40 {
        let coeffs = random_gaussian_vector(rng, basis.len());
        let mut x = ComplexMatrix::zeros(n, n);
        for (b, z) in basis.iter().zip(coeffs.iter()) {
            x += b * *z;
        }
        candidates.push(x);
    }
    candidates.iter().any(|a| {
        let shift = a.trace() / n as f64;
        let b = a - ComplexMatrix::identity(n, n) * shift;
        let nb = norm2(&b);
        nb > 1e-12 && norm2(&mat_pow(&b, n)) > 1e-6 * nb.powi(n as i32)
    })
}

fn same_subspace(a: &SubspaceBasis, b: &SubspaceBasis) -> bool {
    a.dim() == b.dim() && {
        let n = a.ambient_dim();
        let joint = ComplexMatrix::from_fn(n, a.dim() + b.dim(), |i, j| {
            if j < a.dim() {
                a.frame()[(i, j)]
            } else {
                b.frame()[(i, j - a.dim())]
            }
        });
        rank(&joint, 1e-8) == a.dim()
    }
}

// ---------------------------------------------------------------------------

fn criterion_1() -> String {
    let start = Instant::now();
    let t = fixtures::maxcount();
    let r = validate(&t, &tol()).unwrap();
    let ann = annihilator(&t, &tol()).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let mut want = ComplexMatrix::zeros(3, 3);
    want[(1, 1)] = c(1.0);
    let entry_err = (&r.row_square - &want).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(entry_err < 1e-12, "row square error {entry_err}");
    assert_eq!(r.nilpotent, Some(2));
    assert_eq!(nil_index_oracle(&t), 2);
    // expected annihilator: coordinate span of the degree-2 monomial rows
    let rows = ann.monomials();
    let top: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].degree() == 2).collect();
    assert_eq!(top.len(), 3);
    let expected = SubspaceBasis::coordinate(rows.len(), &top);
    let got = SubspaceBasis::from_orthonormal(ann.coefficient_frame().clone(), &tol()).unwrap();
    let p_diff = expected.projector() - got.projector();
    let dist = norm2(&p_diff);
    assert!(dist < 1e-9, "annihilator distance {dist}");
    assert_eq!(ann.codim(), 3);
    assert_eq!(algebra_dim_oracle(&t), 3);
    assert!(elapsed < 0.1, "took {elapsed}s");
    format!("row-square error {entry_err:.1e}, annihilator distance {dist:.1e}, delta 3, {elapsed:.4}s")
}

fn criterion_2() -> String {
    let t = fixtures::maxcount();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut vectors: Vec<ComplexVector> = (0..1000).map(|_| random_gaussian_vector(&mut rng, 3)).collect();
    vectors.extend((0..3).map(|i| basis_vector(3, i)));
    let mut worst_res: f64 = 0.0;
    let mut least_norm = f64::INFINITY;
    for v in &vectors {
        assert!(!is_separating(&t, v, &tol()).unwrap());
        assert!(!separating_set_oracle(&t, std::slice::from_ref(v)));
        let p = separating_witness(&t, v, &tol()).unwrap().expect("witness");
        let pt = eval_oracle(&p, &t);
        worst_res = worst_res.max((&pt * v).norm());
        least_norm = least_norm.min(norm2(&pt));
    }
    assert!(worst_res < 1e-10, "witness residual {worst_res}");
    assert!(least_norm > 0.1, "witness norm {least_norm}");
    let run = separating_greedy(&t, 7, &tol()).unwrap();
    assert_eq!(run.vectors.len(), 2);
    assert!(separating_set_oracle(&t, &run.vectors));
    let det = separating_greedy_with(&t, Sampler::StandardBasis, &tol()).unwrap();
    assert_eq!(det.vectors, vec![basis_vector(3, 0), basis_vector(3, 2)]);
    let adj = t.adjoint();
    let v = basis_vector(3, 1);
    assert!(is_cyclic(&adj, &v, &tol()).unwrap());
    assert_eq!(rank(&cols(3, &word_orbit(&adj, &v, 3)), 1e-9), 3);
    format!("1003 vectors rejected, witness residual {worst_res:.1e}, min ||p(T)|| {least_norm:.3}, greedy size 2, basis sampler {{e1, e3}}")
}

fn criterion_3() -> String {
    let om = omega_e(&fixtures::maxcount(), &tol()).unwrap();
    assert_eq!(om, vec![MultiIndex::new(vec![1, 0]), MultiIndex::new(vec![0, 1])]);
    let mut checked = 0;
    for n1 in 1..=4 {
        for n2 in 1..=4 {
            let t = fixtures::rectangle(&[n1, n2]).unwrap();
            let om = omega_e(&t, &tol()).unwrap();
            assert_eq!(om, vec![MultiIndex::new(vec![n1 - 1, n2 - 1])], "rectangle {n1},{n2}");
            checked += 1;
        }
    }
    format!("maxcount {{(1,0),(0,1)}}, {checked} rectangles with a single corner")
}

fn criterion_4() -> String {
    let mut worst: f64 = 0.0;
    for n in 2..=8 {
        let t = fixtures::fromgriff(n).unwrap();
        let r = validate(&t, &tol()).unwrap();
        assert!(r.commuting && r.row_contraction, "fromgriff {n}");
        for k in 0..2 {
            let p = t.get(k) * t.get(k).adjoint() * c(2.0);
            worst = worst.max(norm2(&(&p * &p - &p))).max(norm2(&(&p - p.adjoint())));
        }
        let ann = annihilator(&t, &tol()).unwrap();
        assert_eq!(ann.degree_bound(), 2);
        let rows = ann.monomials();
        let top: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].degree() == 2).collect();
        let expected = SubspaceBasis::coordinate(rows.len(), &top);
        let got = SubspaceBasis::from_orthonormal(ann.coefficient_frame().clone(), &tol()).unwrap();
        assert!(norm2(&(expected.projector() - got.projector())) < 1e-9, "fromgriff {n}");
    }
    assert!(worst < 1e-12, "projection error {worst}");
    format!("N = 2..8 valid, projection error {worst:.1e}, annihilator = degree-2 span")
}

fn criterion_5() -> String {
    let mut worst: f64 = 0.0;
    for d in 1..=4 {
        for alpha in MultiIndex::up_to_degree(d, 8) {
            let num: f64 = alpha.exponents().iter().map(|&a| factorial(a)).product();
            let want = (num / factorial(alpha.degree())).sqrt();
            worst = worst.max((da_monomial_norm(&alpha) - want).abs() / want);
        }
    }
    assert!(worst < 1e-14, "monomial norm error {worst}");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut kworst: f64 = 0.0;
    for _ in 0..200 {
        let d = 1 + (rand::Rng::random_range(&mut rng, 0..4usize));
        let mut z = random_gaussian_vector(&mut rng, d);
        let mut w = random_gaussian_vector(&mut rng, d);
        let rz: f64 = rand::Rng::random_range(&mut rng, 0.0..0.95);
        let rw: f64 = rand::Rng::random_range(&mut rng, 0.0..0.95);
        z *= c(rz / z.norm());
        w *= c(rw / w.norm());
        let q: Complex64 = z.iter().zip(w.iter()).map(|(a, b)| a * b.conj()).sum();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        while term.norm() > 1e-14 * 1e-3 {
            sum += term;
            term *= q;
        }
        let got = da_kernel(z.as_slice(), w.as_slice()).unwrap();
        kworst = kworst.max((got - sum).norm() / sum.norm());
    }
    assert!(kworst < 1e-12, "kernel error {kworst}");
    format!("monomial norms rel. error {worst:.1e}, kernel rel. error {kworst:.1e}")
}

fn criterion_6() -> String {
    let start = Instant::now();
    let p = Polynomial::parse("x1 + x2", Some(2)).unwrap();
    let seq = truncated_multiplier_norms(&p, 60).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    assert!(seq.windows(2).all(|w| w[0] <= w[1]), "sequence decreases");
    let gap = (seq[60] - 2f64.sqrt()).abs();
    assert!(gap < 1e-3, "gap {gap}");
    assert!(elapsed < 5.0, "took {elapsed}s");
    // small truncations by a dense matrix built here
    for n in 1..=5 {
        let all = MultiIndex::up_to_degree(2, n);
        let pos = |a: &MultiIndex| all.iter().position(|b| b == a).unwrap();
        let mut m = ComplexMatrix::zeros(all.len(), all.len());
        for a in &all {
            for k in 0..2 {
                let mut e = a.exponents().to_vec();
                e[k] += 1;
                let b = MultiIndex::new(e);
                if b.degree() <= n {
                    let na: f64 = a.exponents().iter().map(|&x| factorial(x)).product::<f64>() / factorial(a.degree());
                    let nb: f64 = b.exponents().iter().map(|&x| factorial(x)).product::<f64>() / factorial(b.degree());
                    m[(pos(&b), pos(a))] += c((nb / na).sqrt());
                }
            }
        }
        assert!((norm2(&m) - seq[n]).abs() < 1e-12, "N = {n}");
    }
    format!("nondecreasing, |norm(60) - sqrt 2| = {gap:.1e}, {elapsed:.3}s")
}

struct WitnessCase {
    t: RowTuple,
    w: QuasiAffineWitness,
}

fn witness_cases() -> Vec<WitnessCase> {
    (0..100u64)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(7000 + i);
            let t = random_cyclic_nilpotent(&mut rng, 3, 8).unwrap();
            let w = quasiaffine_witness(&t, i, &tol()).unwrap();
            WitnessCase { t, w }
        })
        .collect()
}

fn criterion_7() -> String {
    let mut worst: f64 = 0.0;
    let mut min_cond = f64::INFINITY;
    for (i, case) in witness_cases().iter().enumerate() {
        let n = case.t.dim();
        let w = &case.w;
        let res = w
            .model
            .mats()
            .iter()
            .zip(case.t.mats())
            .map(|(m, tk)| norm2(&(&w.x * m - tk * &w.x)))
            .fold(0.0, f64::max)
            / norm2(&w.x);
        worst = worst.max(res);
        assert_eq!(rank(&w.x, 1e-10), n, "instance {i} not full rank");
        let s = svals(&w.x);
        min_cond = min_cond.min(s[n - 1] / s[0]);
    }
    assert!(worst < 1e-8, "residual {worst}");
    format!("100 instances, residual {worst:.1e}, min sigma ratio {min_cond:.1e}")
}

fn criterion_8() -> String {
    let mut worst_bound: f64 = 0.0;
    let mut worst_fock: f64 = 0.0;
    for case in witness_cases() {
        let t = &case.t;
        let xi: ComplexVector = case.w.x.column(0).into_owned();
        let m = nil_index_oracle(t);
        let orbit = word_orbit(t, &xi, m);
        let n = t.dim();
        let gram = orbit.iter().fold(ComplexMatrix::zeros(n, n), |g, v| g + v * v.adjoint());
        let oracle_bound = norm2(&gram);
        let lib = gram_operator(t, &xi, &tol()).unwrap();
        assert!((lib.bound - oracle_bound).abs() < 1e-9 * oracle_bound.max(1.0));
        worst_bound = worst_bound.max(oracle_bound);
        // X e_{k w} = T_k X e_w on every word of length below the cap
        let x = fock_intertwiner(t, &xi, m, &tol()).unwrap();
        let d = t.d();
        let mut start = 0;
        let mut len_count = 1;
        for _ in 0..m.saturating_sub(1) {
            let next_start = start + len_count;
            for j in 0..len_count {
                for k in 0..d {
                    // words of the next length are ordered lexicographically:
                    // k w sits at next_start + k * len_count + j
                    let lhs = x.column(next_start + k * len_count + j).into_owned();
                    let rhs = t.get(k) * x.column(start + j);
                    worst_fock = worst_fock.max((lhs - rhs).norm());
                }
            }
            start = next_start;
            len_count *= d;
        }
        // words of length m are annihilated by T, so L_k pushes them out of range
        for j in 0..len_count {
            for k in 0..d {
                worst_fock = worst_fock.max((t.get(k) * x.column(start + j)).norm());
            }
        }
    }
    assert!(worst_bound <= 1.0 + 1e-8, "gram bound {worst_bound}");
    assert!(worst_fock < 1e-10, "fock residual {worst_fock}");
    format!("max gram bound {worst_bound:.12}, fock residual {worst_fock:.1e}")
}

fn criterion_9() -> String {
    let start = Instant::now();
    let mut violations = 0;
    let mut inapplicable = 0;
    let mut distinct = [0usize; 3];
    for i in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(9000 + i);
        let t = random_cyclic_nilpotent(&mut rng, 3, 8).unwrap();
        let m = random_proper_invariant(&mut rng, &t, &tol()).unwrap();
        assert!(!m.is_full());
        let full = SubspaceBasis::full(t.dim());
        let r = rigidity_invariant_check(&t, &m, &full, &tol()).unwrap();
        violations += (r.verdict == Verdict::TheoremViolation) as usize;
        inapplicable += (r.verdict == Verdict::Inapplicable) as usize;
        distinct[0] += (!same_subspace(&m, &full)) as usize;
    }
    for i in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(19000 + i);
        let t = random_cyclic_nilpotent(&mut rng, 3, 8).unwrap();
        let m = random_coinvariant(&mut rng, &t, &tol()).unwrap();
        let n = if i % 5 == 0 { m.clone() } else { random_coinvariant(&mut rng, &t, &tol()).unwrap() };
        let r = rigidity_coinvariant_check(&t, &m, &n, &tol()).unwrap();
        violations += (r.verdict == Verdict::TheoremViolation) as usize;
        inapplicable += (r.verdict == Verdict::Inapplicable) as usize;
        distinct[1] += (!same_subspace(&m, &n)) as usize;
    }
    for i in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(29000 + i);
        let t = rescale_to_contraction(&random_cyclic_nilpotent(&mut rng, 3, 8).unwrap().adjoint());
        let m = random_invariant(&mut rng, &t, &tol()).unwrap();
        let n = if i % 5 == 0 { m.clone() } else { random_invariant(&mut rng, &t, &tol()).unwrap() };
        let r = rigidity_invariant_check(&t, &m, &n, &tol()).unwrap();
        violations += (r.verdict == Verdict::TheoremViolation) as usize;
        inapplicable += (r.verdict == Verdict::Inapplicable) as usize;
        distinct[2] += (!same_subspace(&m, &n)) as usize;
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert_eq!(violations, 0);
    assert_eq!(inapplicable, 0, "hypotheses not met");
    assert!(distinct.iter().all(|&k| k >= 100), "too few distinct pairs {distinct:?}");
    assert!(elapsed < 60.0, "took {elapsed}s");
    format!("600 checks, 0 violations, distinct pairs {distinct:?}, {elapsed:.2}s")
}

fn criterion_10() -> String {
    let mut min_sigma = f64::INFINITY;
    let mut worst_inv: f64 = 0.0;
    for i in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(10_000 + i);
        let (t, m) = random_splitting_instance(&mut rng, 2, 5).unwrap();
        let s = splitting_construct(&t, &m, i, &tol()).unwrap();
        let n = t.dim();
        let p = s.n.projector();
        let inv = t
            .mats()
            .iter()
            .map(|tk| norm2(&(&p * tk * &p - tk * &p)))
            .fold(0.0, f64::max);
        worst_inv = worst_inv.max(inv);
        let stacked = ComplexMatrix::from_fn(n, m.dim() + s.n.dim(), |r, j| {
            if j < m.dim() {
                m.frame()[(r, j)]
            } else {
                s.n.frame()[(r, j - m.dim())]
            }
        });
        assert_eq!(stacked.ncols(), n, "instance {i}: dim M + dim N != dim H");
        let sv = svals(&stacked);
        min_sigma = min_sigma.min(sv[n - 1]);
        assert_eq!(rank(&stacked, 1e-10), n);
        assert!(!s.n.is_zero() || m.is_full());
    }
    assert!(worst_inv < 1e-8, "invariance residual {worst_inv}");
    assert!(min_sigma > 1e-8, "sigma_min {min_sigma}");
    format!("100 instances, invariance residual {worst_inv:.1e}, min sigma {min_sigma:.2e}")
}

fn criterion_11() -> String {
    let mut max_delta = 0;
    let mut sizes = std::collections::BTreeMap::new();
    for i in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(11_000 + i);
        let t = random_nilpotent_tuple(&mut rng, 3, 12).unwrap();
        let delta = algebra_dim_oracle(&t);
        assert!(delta <= 12);
        max_delta = max_delta.max(delta);
        let run = separating_greedy(&t, i, &tol()).unwrap();
        assert_eq!(run.delta, delta, "instance {i}");
        assert!(run.vectors.len() <= delta);
        assert!(run.kernel_dims.windows(2).all(|w| w[1] < w[0]), "instance {i}: {:?}", run.kernel_dims);
        assert!(separating_set_oracle(&t, &run.vectors), "instance {i}");
        *sizes.entry(run.vectors.len()).or_insert(0) += 1;
    }
    format!("200 tuples, max delta {max_delta}, set sizes {sizes:?}")
}

fn criterion_12() -> String {
    let mut yes = 0;
    let mut no = 0;
    for i in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(12_000 + i);
        let t = random_nilpotent_tuple(&mut rng, 2, 4).unwrap();
        assert!(t.dim() <= 4);
        assert!(nilpotency_index(&t, None, &tol()).unwrap().is_some());
        let got = decomposition_exists(&t, i, &tol()).unwrap().exists;
        let want = commutant_splits_oracle(&t, &mut rng);
        assert_eq!(got, want, "instance {i} (dim {})", t.dim());
        if want {
            yes += 1
        } else {
            no += 1
        }
    }
    assert!(yes > 0 && no > 0);
    format!("200 tuples agree: {yes} decomposable, {no} indecomposable")
}

fn main() {
    type Criterion = (&'static str, fn() -> String);
    let criteria: [Criterion; 12] = [
        ("annihilator and defect of the 3x3 example", criterion_1),
        ("no separating vector in the 3x3 example", criterion_2),
        ("socle exponents", criterion_3),
        ("truncated two-shift", criterion_4),
        ("Drury-Arveson norms and kernel", criterion_5),
        ("multiplier norm convergence", criterion_6),
        ("quasi-affine witness", criterion_7),
        ("Gram bound and Fock intertwiner", criterion_8),
        ("rigidity sweeps", criterion_9),
        ("splitting construction", criterion_10),
        ("greedy separating sets", criterion_11),
        ("decomposition against commutant oracle", criterion_12),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.2}s): {detail}", i + 1),
            Err(e) => {
                failures += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
