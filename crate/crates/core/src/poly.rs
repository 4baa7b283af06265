//! Multivariate polynomials over a prime field.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::monomial::Monomial;

/// A polynomial as a list of `(coefficient, monomial)` pairs, strictly descending
/// in grevlex, with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(FieldElement, Monomial)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: FieldElement) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, FieldElement::ONE)
    }

    pub fn term(c: FieldElement, m: Monomial) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            Self { nvars, terms: vec![(c, m)] }
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(FieldElement::ONE, Monomial::var(nvars, i))
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and drops zeros.
    pub fn from_terms(field: &PrimeField, nvars: usize, mut terms: Vec<(FieldElement, Monomial)>) -> Self {
        terms.sort_by(|a, b| b.1.cmp_grevlex(&a.1));
        let mut out: Vec<(FieldElement, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some(last) if last.1 == m => last.0 = field.add(last.0, c),
                _ => out.push((c, m)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        Self { nvars, terms: out }
    }

    /// Wraps an already canonical term list.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(FieldElement, Monomial)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].1.cmp_grevlex(&w[1].1) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(c, _)| !c.is_zero()));
        Self { nvars, terms }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn terms(&self) -> &[(FieldElement, Monomial)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(FieldElement, Monomial)> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&(FieldElement, Monomial)> {
        self.terms.first()
    }

    /// Constant coefficient, zero if absent.
    pub fn constant_coefficient(&self) -> FieldElement {
        match self.terms.last() {
            Some((c, m)) if m.is_one() => *c,
            _ => FieldElement::ZERO,
        }
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(_, m)| m.degree())
    }

    /// The common degree of all terms; `None` if zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.iter().all(|(_, m)| m.degree() == d).then_some(d)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn neg(&self, field: &PrimeField) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(c, m)| (field.neg(*c), m.clone())).collect(),
        }
    }

    pub fn scale(&self, field: &PrimeField, c: FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, m)| (field.mul(*a, c), m.clone())).collect(),
        }
    }

    /// `self * c * m`.
    pub fn mul_term(&self, field: &PrimeField, c: FieldElement, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, t)| (field.mul(*a, c), t.mul(m))).collect(),
        }
    }

    /// `self + c * other`, merging the sorted term lists.
    pub fn add_scaled(&self, field: &PrimeField, c: FieldElement, other: &Polynomial) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].1.cmp_grevlex(&b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((field.mul(c, b[j].0), b[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(a[i].0, field.mul(c, b[j].0));
                    if !s.is_zero() {
                        out.push((s, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(x, m)| (field.mul(c, *x), m.clone())));
        Self { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, field: &PrimeField, other: &Polynomial) -> Self {
        self.add_scaled(field, FieldElement::ONE, other)
    }

    pub fn sub(&self, field: &PrimeField, other: &Polynomial) -> Self {
        self.add_scaled(field, field.neg(FieldElement::ONE), other)
    }

    pub fn mul(&self, field: &PrimeField, other: &Polynomial) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms = Vec::with_capacity(small.terms.len() * big.terms.len());
        for (c, m) in &small.terms {
            for (d, n) in &big.terms {
                terms.push((field.mul(*c, *d), m.mul(n)));
            }
        }
        Self::from_terms(field, self.nvars, terms)
    }

    pub fn pow(&self, field: &PrimeField, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, field: &PrimeField) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((c, _)) => self.scale(field, field.inv(*c)),
        }
    }

    pub fn derivative(&self, field: &PrimeField, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(c, m)| {
                m.derivative(i)
                    .map(|(e, q)| (field.mul(*c, field.from_u64(e as u64)), q))
            })
            .collect();
        Self::from_terms(field, self.nvars, terms)
    }

    /// Remainder of division by a single polynomial `g` (the normal form against the
    /// Groebner basis `{g}` of a principal ideal).
    pub fn reduce_by(&self, field: &PrimeField, g: &Polynomial) -> Self {
        self.divide(field, g).1
    }

    /// Division with remainder by `g`: returns `(q, r)` with `self = q*g + r` and no
    /// term of `r` divisible by the leading monomial of `g`.
    pub fn divide(&self, field: &PrimeField, g: &Polynomial) -> (Self, Self) {
        let Some((gc, gm)) = g.leading_term() else {
            return (Self::zero(self.nvars), self.clone());
        };
        let ginv = field.inv(*gc);
        let mut quot: Vec<(FieldElement, Monomial)> = Vec::new();
        let mut rem: Vec<(FieldElement, Monomial)> = Vec::new();
        let mut cur = self.clone();
        let mut start = 0;
        while start < cur.terms.len() {
            let (c, m) = cur.terms[start].clone();
            if gm.divides(&m) {
                let q = gm.quotient_of(&m);
                let coef = field.mul(c, ginv);
                quot.push((coef, q.clone()));
                let tail = Self { nvars: self.nvars, terms: cur.terms.split_off(start) };
                cur = tail.add_scaled(field, field.neg(coef), &g.mul_term(field, FieldElement::ONE, &q));
                start = 0;
            } else {
                rem.push((c, m));
                start += 1;
            }
        }
        // quotient terms are produced in strictly descending order
        (Self { nvars: self.nvars, terms: quot }, Self { nvars: self.nvars, terms: rem })
    }

    /// Human-readable rendering using the given variable names.
    pub fn display(&self, field: &PrimeField, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let v = field.to_signed(*c);
            let (neg, abs) = (v < 0, v.unsigned_abs());
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(m, vars);
            if mono.is_empty() {
                let _ = write!(s, "{abs}");
            } else if abs == 1 {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{abs}*{mono}");
            }
        }
        s
    }
}

fn render_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            e => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

/// Arithmetic operations exposed with context checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

/// The ambient polynomial ring `k[x_1, ..., x_n]`: variable names and coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidArgument(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        if vars.len() > 63 {
            return Err(Error::InvalidArgument("at most 63 variables are supported".into()));
        }
        Ok(Self { field, vars })
    }

    pub fn with_vars(p: u32, vars: &[&str]) -> Result<Self> {
        Self::new(PrimeField::new(p)?, vars.iter().map(|s| s.to_string()).collect())
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        Polynomial::constant(self.nvars(), self.field.from_i64(c))
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        crate::parse::parse_polynomial(text, self)
    }

    pub fn display(&self, p: &Polynomial) -> String {
        p.display(&self.field, &self.vars)
    }

    fn check(&self, a: &Polynomial) -> Result<()> {
        if a.nvars() != self.nvars() {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn arith(&self, op: ArithOp, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => a.add(&self.field, b),
            ArithOp::Mul => a.mul(&self.field, b),
        })
    }

    pub fn scale(&self, a: &Polynomial, c: FieldElement) -> Result<Polynomial> {
        self.check(a)?;
        if c.0 >= self.field.characteristic() {
            return Err(Error::ContextMismatch);
        }
        Ok(a.scale(&self.field, c))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32) -> PolyRing {
        PolyRing::with_vars(p, &["x", "y"]).unwrap()
    }

    #[test]
    fn add_cancels() {
        let r = ring(32003);
        let x = r.var(0);
        let mx = x.neg(r.field());
        assert!(r.arith(ArithOp::Add, &x, &mx).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(32003);
        let a = r.parse("x+y").unwrap();
        let b = r.parse("x-y").unwrap();
        let prod = r.arith(ArithOp::Mul, &a, &b).unwrap();
        assert_eq!(prod, r.parse("x^2 - y^2").unwrap());
    }

    #[test]
    fn frobenius_in_char_two() {
        let r = ring(2);
        let a = r.parse("x+y").unwrap();
        let sq = r.arith(ArithOp::Mul, &a, &a).unwrap();
        assert_eq!(r.display(&sq), "x^2 + y^2");
    }

    #[test]
    fn context_mismatch() {
        let r = ring(5);
        let other = Polynomial::var(3, 0);
        assert_eq!(r.arith(ArithOp::Add, &r.var(0), &other), Err(Error::ContextMismatch));
    }

    #[test]
    fn reduce_by_principal() {
        let r = PolyRing::with_vars(32003, &["x", "y", "u", "v"]).unwrap();
        let f = r.parse("x*u - y*v").unwrap();
        let xu = r.parse("x*u").unwrap();
        assert_eq!(xu.reduce_by(r.field(), &f), r.parse("y*v").unwrap());
        assert!(f.reduce_by(r.field(), &f).is_zero());
    }

    #[test]
    fn derivative() {
        let r = PolyRing::with_vars(32003, &["x", "y", "z"]).unwrap();
        let f = r.parse("x^2*y").unwrap();
        assert_eq!(f.derivative(r.field(), 0), r.parse("2*x*y").unwrap());
        assert_eq!(f.derivative(r.field(), 2), r.zero());
    }
}
