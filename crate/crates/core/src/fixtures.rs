//! Named example tuples.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fock::{MultiIndex, Polynomial};
use crate::ideals::model_of_generators;
use crate::linalg::{c64, ComplexMatrix, ToleranceConfig, ONE};
use crate::tuples::RowTuple;

/// The 3x3 pair with `T_1 T_1^* + T_2 T_2^* = diag(0, 1, 0)` that has no
/// separating vector.
pub fn maxcount() -> RowTuple {
    let s = 3f64.sqrt().recip();
    let mut t1 = ComplexMatrix::zeros(3, 3);
    t1[(1, 0)] = c64(s, 0.0);
    t1[(1, 2)] = c64(-s, 0.0);
    let mut t2 = ComplexMatrix::zeros(3, 3);
    t2[(1, 2)] = c64(s, 0.0);
    RowTuple::new(vec![t1, t2]).expect("fixed shapes")
}

/// Pair on `span{xi_1..xi_N, eta_1..eta_{N+1}}` (in that order) with
/// `T_1 xi_n = eta_{n+1}/sqrt 2`, `T_2 xi_n = eta_n/sqrt 2`, and every
/// `eta` killed.
pub fn fromgriff(n: usize) -> Result<RowTuple> {
    if n == 0 {
        return Err(Error::InvalidParameter("fromgriff needs N >= 1".into()));
    }
    let dim = 2 * n + 1;
    let h = c64(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut t1 = ComplexMatrix::zeros(dim, dim);
    let mut t2 = ComplexMatrix::zeros(dim, dim);
    for i in 0..n {
        t1[(n + i + 1, i)] = h;
        t2[(n + i, i)] = h;
    }
    RowTuple::new(vec![t1, t2])
}

/// Model tuple of the monomial ideal `(x_1^{n_1}, ..., x_d^{n_d})`.
pub fn rectangle(ns: &[usize]) -> Result<RowTuple> {
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::InvalidParameter("rectangle exponents must be positive".into()));
    }
    let d = ns.len();
    let gens: Vec<Polynomial> = ns
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let mut a = vec![0; d];
            a[k] = e;
            Polynomial::monomial(MultiIndex::new(a), ONE)
        })
        .collect();
    let bound = ns.iter().map(|e| e - 1).sum::<usize>() + 1;
    model_of_generators(d, &gens, Some(bound), &ToleranceConfig::default())
}

/// Model tuple of `(x^m)` in one variable: the `m x m` nilpotent Jordan cell.
pub fn jordan(m: usize) -> Result<RowTuple> {
    rectangle(&[m])
}

/// Model tuple of `(generators) + (x)^m`; `m` is found when omitted.
pub fn model(d: usize, generators: &[Polynomial], bound: Option<usize>) -> Result<RowTuple> {
    model_of_generators(d, generators, bound, &ToleranceConfig::default())
}

/// Parsed fixture name, e.g. `maxcount`, `fromgriff:3`, `rectangle:2,3`,
/// `jordan:4` or `model:x1^2;x2^2@3` (generators separated by `;`, optional
/// degree bound after `@`).
#[derive(Clone, Debug, PartialEq)]
pub enum FixtureName {
    MaxCount,
    FromGriff(usize),
    Rectangle(Vec<usize>),
    Jordan(usize),
    Model { generators: Vec<String>, bound: Option<usize> },
}

impl FixtureName {
    pub fn build(&self) -> Result<RowTuple> {
        match self {
            FixtureName::MaxCount => Ok(maxcount()),
            FixtureName::FromGriff(n) => fromgriff(*n),
            FixtureName::Rectangle(ns) => rectangle(ns),
            FixtureName::Jordan(m) => jordan(*m),
            FixtureName::Model { generators, bound } => {
                let parsed: Vec<Polynomial> = generators
                    .iter()
                    .map(|g| Polynomial::parse(g, None))
                    .collect::<Result<_>>()?;
                let d = parsed.iter().map(Polynomial::d).max().unwrap_or(1);
                let lifted: Vec<Polynomial> = generators
                    .iter()
                    .map(|g| Polynomial::parse(g, Some(d)))
                    .collect::<Result<_>>()?;
                model(d, &lifted, *bound)
            }
        }
    }

    /// One line per fixture family for listings.
    pub fn catalogue() -> Vec<(&'static str, &'static str)> {
        vec![
            ("maxcount", "3x3 pair, nilpotent of order 2, no separating vector"),
            ("fromgriff:N", "pair on C^(2N+1), nilpotent of order 2"),
            ("rectangle:n1,...,nd", "model tuple of the ideal (x1^n1, ..., xd^nd)"),
            ("jordan:m", "m x m nilpotent Jordan cell"),
            ("model:g1;g2;...[@m]", "model tuple of (g1, g2, ...) + (x)^m"),
        ]
    }
}

fn parse_count(field: &str, s: &str) -> Result<usize> {
    let v: usize = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{field}: expected a positive integer, found `{s}`")))?;
    if v == 0 {
        return Err(Error::Parse(format!("{field}: must be positive")));
    }
    Ok(v)
}

impl FromStr for FixtureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a)),
            None => (s.trim(), None),
        };
        match (head, arg) {
            ("maxcount", None) => Ok(FixtureName::MaxCount),
            ("fromgriff", Some(a)) => Ok(FixtureName::FromGriff(parse_count("fromgriff", a)?)),
            ("jordan", Some(a)) => Ok(FixtureName::Jordan(parse_count("jordan", a)?)),
            ("rectangle", Some(a)) => Ok(FixtureName::Rectangle(
                a.split(',').map(|p| parse_count("rectangle", p)).collect::<Result<_>>()?,
            )),
            ("model", Some(a)) => {
                let (gens, bound) = match a.split_once('@') {
                    Some((g, b)) => (g, Some(parse_count("model bound", b)?)),
                    None => (a, None),
                };
                let generators: Vec<String> = gens
                    .split(';')
                    .map(|g| g.trim().to_string())
                    .filter(|g| !g.is_empty())
                    .collect();
                Ok(FixtureName::Model { generators, bound })
            }
            _ => Err(Error::Parse(format!(
                "fixture: unknown name `{s}` (try maxcount, fromgriff:N, rectangle:n1,n2, jordan:m, model:...)"
            ))),
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureName::MaxCount => write!(f, "maxcount"),
            FixtureName::FromGriff(n) => write!(f, "fromgriff:{n}"),
            FixtureName::Rectangle(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                write!(f, "rectangle:{}", parts.join(","))
            }
            FixtureName::Jordan(m) => write!(f, "jordan:{m}"),
            FixtureName::Model { generators, bound } => {
                write!(f, "model:{}", generators.join(";"))?;
                if let Some(b) = bound {
                    write!(f, "@{b}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, operator_norm};
    use crate::tuples::{nilpotency_index, validate};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn maxcount_entries() {
        let t = maxcount();
        let s = 1.0 / 3f64.sqrt();
        assert_eq!(t.get(0)[(1, 0)].re, s);
        assert_eq!(t.get(0)[(1, 2)].re, -s);
        assert_eq!(t.get(1)[(1, 2)].re, s);
        let r = validate(&t, &tol()).unwrap();
        let mut want = ComplexMatrix::zeros(3, 3);
        want[(1, 1)] = ONE;
        assert!(max_abs(&(r.row_square - want)) < 1e-15);
    }

    #[test]
    fn fromgriff_projections() {
        for n in 1..6 {
            let t = fromgriff(n).unwrap();
            assert_eq!(t.dim(), 2 * n + 1);
            let r = validate(&t, &tol()).unwrap();
            assert!(r.commuting && r.row_contraction);
            for k in 0..2 {
                let p = t.get(k) * t.get(k).adjoint() * c64(2.0, 0.0);
                assert!(max_abs(&(&p * &p - &p)) < 1e-15);
                assert!(max_abs(&(&p - p.adjoint())) == 0.0);
            }
        }
        assert!(fromgriff(0).is_err());
    }

    #[test]
    fn jordan_cells() {
        let j1 = jordan(1).unwrap();
        assert_eq!(j1.dim(), 1);
        assert_eq!(operator_norm(j1.get(0)), 0.0);
        let j3 = jordan(3).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                let want = if i == k + 1 { 1.0 } else { 0.0 };
                assert!((j3.get(0)[(i, k)] - c64(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn rectangle_nilpotency() {
        for ns in [vec![2, 2], vec![3, 2], vec![2, 2, 2], vec![4, 1]] {
            let t = rectangle(&ns).unwrap();
            let want = ns.iter().map(|n| n - 1).sum::<usize>() + 1;
            assert_eq!(t.dim(), ns.iter().product::<usize>());
            assert_eq!(nilpotency_index(&t, None, &tol()).unwrap(), Some(want));
        }
    }

    #[test]
    fn names_round_trip() {
        for s in ["maxcount", "fromgriff:3", "rectangle:2,3", "jordan:4", "model:x1^2;x2^2@3"] {
            let f: FixtureName = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
            assert!(f.build().is_ok(), "{s}");
        }
        assert!("fromgriff:0".parse::<FixtureName>().is_err());
        assert!("bogus".parse::<FixtureName>().is_err());
        let m: FixtureName = "model:x1^2;x2".parse().unwrap();
        assert_eq!(m.build().unwrap().dim(), 2);
    }
}
