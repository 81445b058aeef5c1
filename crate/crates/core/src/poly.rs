//! Sparse multivariate polynomials over `ExactComplex`.
//!
//! Variable `0` is the lead variable `t`; variable `k ≥ 1` is `x_k`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::ExactComplex;

/// Exponent vector with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(i: usize) -> Self {
        Monomial::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = e;
        Monomial::new(v)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// One past the largest variable index with a positive exponent.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|k| self.exp(k) + other.exp(k)).collect())
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] = e;
        Monomial::new(v)
    }

    /// Splits into the `x_i` power and the rest.
    pub fn split_var(&self, i: usize) -> (u32, Monomial) {
        (self.exp(i), self.with_exp(i, 0))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..self.0.len()).all(|k| self.exp(k) <= other.exp(k))
    }

    /// `∏ α_k!`, used when converting between Taylor and derivative data.
    pub fn factorial(&self) -> ExactComplex {
        self.0.iter().fold(ExactComplex::one(), |acc, &e| acc * ExactComplex::factorial(e))
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.0.iter().enumerate().map(|(k, &e)| point.get(k).copied().unwrap_or(0.0).powi(e as i32)).product()
    }
}

/// Graded order: total degree first, ties broken by comparing exponents from
/// the highest variable index down, so `t < x1` and `t^2 < t*x1 < x1^2`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for k in (0..n).rev() {
                match self.exp(k).cmp(&other.exp(k)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Poly {
    terms: BTreeMap<Monomial, ExactComplex>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: ExactComplex) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn term(c: ExactComplex, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(i: usize) -> Self {
        Poly::term(ExactComplex::one(), Monomial::var(i))
    }

    /// Linear form `Σ c_k x_k`.
    pub fn linear(coeffs: &[(usize, ExactComplex)]) -> Self {
        let mut p = Poly::zero();
        for (k, c) in coeffs {
            p.add_term(Monomial::var(*k), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, ExactComplex)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> ExactComplex {
        self.terms.get(m).cloned().unwrap_or_else(ExactComplex::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactComplex) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &ExactComplex) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &ExactComplex) -> Poly {
        let mut out = Poly::zero();
        for (k, v) in &self.terms {
            out.add_term(k.mul(m), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(ExactComplex::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn diff(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                out.add_term(m.with_exp(i, e - 1), c.scale_int(e as i64));
            }
        }
        out
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    /// Value at `x_i = 0`.
    pub fn at_zero(&self, i: usize) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.exp(i) == 0).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Groups terms by the power of `x_i`; the values are free of `x_i`.
    pub fn collect_var(&self, i: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(i);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    pub fn eval_f64(&self, point: &[f64]) -> num_complex::Complex64 {
        self.terms.iter().map(|(m, c)| c.to_complex64() * m.eval_f64(point)).sum()
    }
}
