//! Multi-indices and sparse polynomials in commuting variables.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, ONE, ZERO};

/// Exponent vector `alpha` of the monomial `x^alpha`.
///
/// Ordering is graded (total degree first); within a degree, larger leading
/// exponents come first, so `1 < x1 < x2 < x1^2 < x1*x2 < x2^2 < ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(exponents: Vec<usize>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zeros(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    /// Exponent vector of the coordinate `x_k` (0-based `k`).
    pub fn unit(d: usize, k: usize) -> Self {
        let mut e = vec![0; d];
        e[k] = 1;
        MultiIndex(e)
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// `alpha!` as a float.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    /// Multinomial coefficient `|alpha|! / alpha!`: the number of words
    /// abelianizing to `alpha`.
    pub fn multinomial(&self) -> f64 {
        let mut remaining = self.degree();
        let mut out = 1.0;
        for &a in &self.0 {
            out *= binomial(remaining, a);
            remaining -= a;
        }
        out
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn bump(&self, k: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[k] += 1;
        MultiIndex(e)
    }

    /// `self - other`, if `other <= self` componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// All multi-indices of total degree `n` in `d` variables, in order.
    pub fn of_degree(d: usize, n: usize) -> Vec<MultiIndex> {
        fn rec(d: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == d {
                prefix.push(n);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for a in (0..=n).rev() {
                prefix.push(a);
                rec(d, n - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if d == 0 {
            if n == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(d, n, &mut Vec::with_capacity(d), &mut out);
        out
    }

    /// All multi-indices of degree at most `n`, in order.
    pub fn up_to_degree(d: usize, n: usize) -> Vec<MultiIndex> {
        (0..=n).flat_map(|k| Self::of_degree(d, k)).collect()
    }

    /// Number of multi-indices in `d` variables of degree at most `n`.
    pub fn count_up_to(d: usize, n: usize) -> usize {
        binomial(n + d, d).round() as usize
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut out = 1.0;
    for i in 0..k {
        out = out * (n - i) as f64 / (i + 1) as f64;
    }
    out
}

/// Polynomial in `d` commuting variables with complex coefficients.
///
/// Exact zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial {
    d: usize,
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl Polynomial {
    pub fn zero(d: usize) -> Self {
        Polynomial { d, terms: BTreeMap::new() }
    }

    pub fn constant(d: usize, c: Complex64) -> Self {
        Self::monomial(MultiIndex::zeros(d), c)
    }

    pub fn one(d: usize) -> Self {
        Self::constant(d, ONE)
    }

    pub fn monomial(alpha: MultiIndex, c: Complex64) -> Self {
        let mut p = Polynomial::zero(alpha.d());
        p.add_term(alpha, c);
        p
    }

    /// The coordinate function `x_k` (0-based `k`).
    pub fn variable(d: usize, k: usize) -> Self {
        Self::monomial(MultiIndex::unit(d, k), ONE)
    }

    /// Builds a polynomial from `(alpha, c)` pairs; repeated exponents add up.
    pub fn from_terms<I>(d: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        let mut p = Polynomial::zero(d);
        for (alpha, c) in terms {
            if alpha.d() != d {
                return Err(Error::DimensionMismatch(format!(
                    "exponent {alpha} has {} variables, expected {d}",
                    alpha.d()
                )));
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// Builds `sum_j coeffs[j] x^{monomials[j]}`.
    pub fn from_coefficients(d: usize, monomials: &[MultiIndex], coeffs: &[Complex64]) -> Self {
        let mut p = Polynomial::zero(d);
        for (alpha, &c) in monomials.iter().zip(coeffs) {
            p.add_term(alpha.clone(), c);
        }
        p
    }

    /// Coefficient vector with respect to `monomials`; terms outside the list are ignored.
    pub fn coefficients(&self, monomials: &[MultiIndex]) -> Vec<Complex64> {
        monomials.iter().map(|a| self.coeff(a)).collect()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Complex64) {
        debug_assert_eq!(alpha.d(), self.d);
        match self.terms.entry(alpha) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == ZERO {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                if c != ZERO {
                    slot.insert(c);
                }
            }
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Complex64 {
        self.terms.get(alpha).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// Lowest degree of a nonzero term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.order()
    }

    pub fn scale(&self, c: Complex64) -> Polynomial {
        Polynomial::from_terms(self.d, self.terms.iter().map(|(a, v)| (a.clone(), v * c)))
            .expect("same variable count")
    }

    /// Drops every term of degree greater than `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Polynomial {
        Polynomial {
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.degree() <= max_degree)
                .map(|(a, c)| (a.clone(), *c))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.d
            )));
        }
        Ok(self
            .terms
            .iter()
            .map(|(a, c)| {
                a.exponents()
                    .iter()
                    .zip(point)
                    .fold(*c, |acc, (&e, z)| acc * z.powu(e as u32))
            })
            .sum())
    }

    /// Partial derivative `d/dx_k` (0-based `k`).
    pub fn derivative(&self, k: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.d);
        for (a, c) in &self.terms {
            let e = a.exponents()[k];
            if e > 0 {
                let mut b = a.exponents().to_vec();
                b[k] -= 1;
                out.add_term(MultiIndex(b), c * e as f64);
            }
        }
        out
    }

    /// `q(x) = p(x + shift)`.
    pub fn translate(&self, shift: &[Complex64]) -> Result<Polynomial> {
        if shift.len() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "shift has {} coordinates, polynomial has {} variables",
                shift.len(),
                self.d
            )));
        }
        let mut out = Polynomial::zero(self.d);
        for (alpha, c) in &self.terms {
            // Expand prod_i (x_i + s_i)^{a_i} one variable at a time.
            let mut partial: Vec<(Vec<usize>, Complex64)> = vec![(Vec::new(), *c)];
            for (i, &a) in alpha.exponents().iter().enumerate() {
                let mut next = Vec::with_capacity(partial.len() * (a + 1));
                for (prefix, v) in &partial {
                    for j in 0..=a {
                        let w = v * binomial(a, j) * shift[i].powu((a - j) as u32);
                        let mut e = prefix.clone();
                        e.push(j);
                        next.push((e, w));
                    }
                }
                partial = next;
            }
            for (e, v) in partial {
                out.add_term(MultiIndex(e), v);
            }
        }
        Ok(out)
    }

    /// Largest coefficientwise difference.
    pub fn max_coeff_diff(&self, other: &Polynomial) -> f64 {
        let diff = self - other;
        diff.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient modulus.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops coefficients below `rel_tol` times the largest one.
    pub fn chop(&self, rel_tol: f64) -> Polynomial {
        let cut = rel_tol * self.max_coeff();
        Polynomial {
            d: self.d,
            terms: self.terms.iter().filter(|(_, c)| c.norm() > cut).map(|(a, c)| (a.clone(), *c)).collect(),
        }
    }

    /// Parses text such as `3*x1^2*x2 - (1+2i) x1 + 0.5`.
    ///
    /// Variables are `x1 ... xd` (1-based); `x` alone means `x1`. Products
    /// may be written with `*` or by juxtaposition. When `d` is `None`, the
    /// number of variables is the largest index that occurs (at least 1).
    pub fn parse(text: &str, d: Option<usize>) -> Result<Polynomial> {
        let tokens = tokenize(text)?;
        let max_var = tokens
            .iter()
            .filter_map(|t| match t {
                Token::Var(k) => Some(*k + 1),
                _ => None,
            })
            .max()
            .unwrap_or(1);
        let d = match d {
            Some(d) if d < max_var => {
                return Err(Error::Parse(format!(
                    "variable x{max_var} used but only {d} variables declared"
                )))
            }
            Some(d) => d,
            None => max_var,
        };
        let mut parser = Parser { tokens, pos: 0, d };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!(
                "unexpected token {:?} at position {}",
                parser.tokens[parser.pos], parser.pos
            )));
        }
        Ok(p)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.d, rhs.d, "variable count mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), *c);
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.d, rhs.d, "variable count mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.d, rhs.d, "variable count mismatch");
        let mut out = Polynomial::zero(self.d);
        for (a, c) in &self.terms {
            for (b, e) in &rhs.terms {
                out.add_term(a.plus(b), c * e);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(c64(-1.0, 0.0))
    }
}

fn format_coeff(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("({}-{}i)", c.re, -c.im)
    } else {
        format!("({}+{}i)", c.re, c.im)
    }
}

fn format_monomial(alpha: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for (k, &e) in alpha.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", k + 1)),
            _ => parts.push(format!("x{}^{}", k + 1, e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (alpha, &c)) in self.terms.iter().enumerate() {
            let negative_real = c.im == 0.0 && c.re.is_sign_negative();
            let shown = if negative_real && i > 0 { -c } else { c };
            if i > 0 {
                write!(f, "{}", if negative_real { " - " } else { " + " })?;
            }
            let mono = format_monomial(alpha);
            if mono.is_empty() {
                write!(f, "{}", format_coeff(shown))?;
            } else if shown == ONE {
                write!(f, "{mono}")?;
            } else if shown == c64(-1.0, 0.0) {
                write!(f, "-{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_coeff(shown))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Imag(f64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            'i' => {
                out.push(Token::Imag(1.0));
                i += 1
            }
            'x' => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let k: usize = if start == i {
                    1
                } else {
                    chars[start..i].iter().collect::<String>().parse().map_err(|_| {
                        Error::Parse(format!("bad variable index at {start}"))
                    })?
                };
                if k == 0 {
                    return Err(Error::Parse("variables are numbered from x1".into()));
                }
                out.push(Token::Var(k - 1));
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let s: String = chars[start..i].iter().collect();
                let v: f64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number `{s}`")))?;
                if i < chars.len() && chars[i] == 'i' {
                    out.push(Token::Imag(v));
                    i += 1;
                } else {
                    out.push(Token::Num(v));
                }
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    d: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.d);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = &acc * &rhs;
                }
                Some(Token::Num(_) | Token::Imag(_) | Token::Var(_) | Token::LParen) => {
                    let rhs = self.power()?;
                    acc = &acc * &rhs;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let exp = match self.tokens.get(self.pos) {
                Some(Token::Num(v)) if v.fract() == 0.0 && *v >= 0.0 => *v as usize,
                other => {
                    return Err(Error::Parse(format!(
                        "expected a non-negative integer exponent, found {other:?}"
                    )))
                }
            };
            self.pos += 1;
            let mut out = Polynomial::one(self.d);
            for _ in 0..exp {
                out = &out * &base;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(v)) => Ok(Polynomial::constant(self.d, c64(v, 0.0))),
            Some(Token::Imag(v)) => Ok(Polynomial::constant(self.d, c64(0.0, v))),
            Some(Token::Var(k)) => Ok(Polynomial::variable(self.d, k)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.tokens.get(self.pos) {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            Some(Token::Minus) => {
                let inner = self.power()?;
                Ok(-&inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mi(e: &[usize]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn graded_order() {
        let all = MultiIndex::up_to_degree(2, 2);
        let want = vec![mi(&[0, 0]), mi(&[1, 0]), mi(&[0, 1]), mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 2])];
        assert_eq!(all, want);
        let mut sorted = want.clone();
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, want);
        assert_eq!(MultiIndex::count_up_to(3, 4), MultiIndex::up_to_degree(3, 4).len());
    }

    #[test]
    fn multinomials() {
        assert_eq!(mi(&[1, 1]).multinomial(), 2.0);
        assert_eq!(mi(&[2, 1, 1]).multinomial(), 12.0);
        assert_eq!(mi(&[5]).multinomial(), 1.0);
    }

    #[test]
    fn parse_examples() {
        let p = Polynomial::parse("x1+x2", None).unwrap();
        assert_eq!(p.d(), 2);
        assert_eq!(p.num_terms(), 2);
        let q = Polynomial::parse("3*x1^2 x2 - (1+2i)*x1 + 0.5", Some(3)).unwrap();
        assert_eq!(q.d(), 3);
        assert_eq!(q.coeff(&mi(&[2, 1, 0])), c64(3.0, 0.0));
        assert_eq!(q.coeff(&mi(&[1, 0, 0])), c64(-1.0, -2.0));
        assert_eq!(q.coeff(&mi(&[0, 0, 0])), c64(0.5, 0.0));
        let r = Polynomial::parse("2i x", None).unwrap();
        assert_eq!(r.coeff(&mi(&[1])), c64(0.0, 2.0));
        assert!(Polynomial::parse("x3", Some(2)).is_err());
        assert!(Polynomial::parse("x1 +", None).is_err());
        assert!(Polynomial::parse("x0", None).is_err());
        assert!(Polynomial::parse("(x1", None).is_err());
    }

    #[test]
    fn arithmetic_cancels_exactly() {
        let p = Polynomial::parse("x1 + x2", None).unwrap();
        let z = &p - &p;
        assert!(z.is_zero());
        let sq = &p * &p;
        assert_eq!(sq.coeff(&mi(&[1, 1])), c64(2.0, 0.0));
        assert_eq!(sq.degree(), Some(2));
        assert!(sq.is_homogeneous());
    }

    #[test]
    fn translate_matches_evaluation() {
        let p = Polynomial::parse("x1^3 - 2 x1 x2 + (0.5+1i) x2^2 + 7", None).unwrap();
        let s = [c64(0.3, -0.1), c64(-0.2, 0.4)];
        let q = p.translate(&s).unwrap();
        let z = [c64(0.1, 0.2), c64(-0.7, 0.05)];
        let shifted = [z[0] + s[0], z[1] + s[1]];
        assert!((q.eval(&z).unwrap() - p.eval(&shifted).unwrap()).norm() < 1e-13);
    }

    fn poly_strategy() -> impl Strategy<Value = Polynomial> {
        (1usize..4).prop_flat_map(|d| {
            prop::collection::vec(
                (prop::collection::vec(0usize..4, d), -5i32..6, -5i32..6),
                0..6,
            )
            .prop_map(move |terms| {
                Polynomial::from_terms(
                    d,
                    terms.into_iter().map(|(e, re, im)| {
                        (MultiIndex::new(e), c64(re as f64 / 4.0, im as f64 / 8.0))
                    }),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(p in poly_strategy()) {
            let text = p.to_string();
            let back = Polynomial::parse(&text, Some(p.d())).unwrap();
            prop_assert_eq!(back, p, "text was {}", text);
        }
    }
}
