//! Exponential polynomials `Σ c · x^α · e^{λ·x}` and their closed-form
//! calculus.
//!
//! The class is closed under sums, products, partial derivatives, integrals
//! from `0`, and linear substitutions, and exponential monomials are linearly
//! independent, so the canonical form below decides equality structurally.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::matrix::LinearSubst;
use crate::poly::{Monomial, Poly};
use crate::scalar::ExactComplex;

/// Index of a variable: `0` is `t`, `k ≥ 1` is `x_k`.
pub type VarIndex = usize;

/// Frequency vector `λ` of an exponential `e^{λ·x}`, stored sparsely without
/// zero entries. Ordered lexicographically by `(variable, re, im)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Frequency(BTreeMap<VarIndex, ExactComplex>);

impl Frequency {
    pub fn zero() -> Self {
        Frequency::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarIndex, ExactComplex)>) -> Self {
        let mut f = Frequency::zero();
        for (k, v) in pairs {
            f.add_entry(k, &v);
        }
        f
    }

    fn add_entry(&mut self, k: VarIndex, v: &ExactComplex) {
        if v.is_zero() {
            return;
        }
        let slot = self.0.entry(k).or_insert_with(ExactComplex::zero);
        *slot += v;
        if slot.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn get(&self, k: VarIndex) -> ExactComplex {
        self.0.get(&k).cloned().unwrap_or_else(ExactComplex::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> impl DoubleEndedIterator<Item = (&VarIndex, &ExactComplex)> {
        self.0.iter()
    }

    pub fn add(&self, other: &Frequency) -> Frequency {
        let mut out = self.clone();
        for (k, v) in &other.0 {
            out.add_entry(*k, v);
        }
        out
    }

    pub fn without(&self, k: VarIndex) -> Frequency {
        let mut out = self.clone();
        out.0.remove(&k);
        out
    }

    pub fn width(&self) -> usize {
        self.0.keys().next_back().map_or(0, |k| k + 1)
    }

    /// Frequency of `e^{λ·(Mx)}` as an exponential in `x`, i.e. `Mᵀλ`.
    pub fn transform(&self, m: &LinearSubst) -> Frequency {
        let mut out = Frequency::zero();
        for (j, lam) in &self.0 {
            for (k, entry) in m.row_terms(*j) {
                out.add_entry(k, &(lam * &entry));
            }
        }
        out
    }
}

/// Exponential polynomial in canonical form: no zero coefficients and no
/// frequency mapped to the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpPoly {
    terms: BTreeMap<Frequency, Poly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly::default()
    }

    pub fn one() -> Self {
        ExpPoly::constant(ExactComplex::one())
    }

    pub fn constant(c: ExactComplex) -> Self {
        ExpPoly::from_poly(Poly::constant(c))
    }

    pub fn var(i: VarIndex) -> Self {
        ExpPoly::from_poly(Poly::var(i))
    }

    pub fn from_poly(p: Poly) -> Self {
        ExpPoly::with_frequency(Frequency::zero(), p)
    }

    pub fn with_frequency(freq: Frequency, p: Poly) -> Self {
        let mut out = ExpPoly::zero();
        out.add_group(freq, p);
        out
    }

    /// Single exponential monomial `c · x^α · e^{λ·x}`.
    pub fn monomial(c: ExactComplex, alpha: Monomial, freq: Frequency) -> Self {
        ExpPoly::with_frequency(freq, Poly::term(c, alpha))
    }

    /// `e^{λ·x}` for a frequency given as `(variable, λ_k)` pairs.
    pub fn exp(pairs: impl IntoIterator<Item = (VarIndex, ExactComplex)>) -> Self {
        ExpPoly::monomial(ExactComplex::one(), Monomial::one(), Frequency::from_pairs(pairs))
    }

    fn add_group(&mut self, freq: Frequency, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&freq) {
            Some(existing) => {
                *existing = existing.add(&p);
                if existing.is_zero() {
                    self.terms.remove(&freq);
                }
            }
            None => {
                self.terms.insert(freq, p);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn groups(&self) -> impl DoubleEndedIterator<Item = (&Frequency, &Poly)> {
        self.terms.iter()
    }

    /// All exponential monomials `(c, α, λ)`.
    pub fn monomials(&self) -> impl Iterator<Item = (&ExactComplex, &Monomial, &Frequency)> {
        self.terms.iter().flat_map(|(f, p)| p.terms().map(move |(m, c)| (c, m, f)))
    }

    pub fn num_monomials(&self) -> usize {
        self.terms.values().map(Poly::len).sum()
    }

    /// `Some(c)` when the function is the constant `c` (including `0`).
    pub fn as_constant(&self) -> Option<ExactComplex> {
        if self.is_zero() {
            return Some(ExactComplex::zero());
        }
        match self.terms.iter().next() {
            Some((f, p)) if self.terms.len() == 1 && f.is_zero() && p.len() == 1 => {
                let (m, c) = p.terms().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The polynomial part when there are no exponentials.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.terms.len() {
            0 => Some(Poly::zero()),
            1 => {
                let (f, p) = self.terms.iter().next().unwrap();
                f.is_zero().then(|| p.clone())
            }
            _ => None,
        }
    }

    /// One past the largest variable index occurring.
    pub fn width(&self) -> usize {
        self.terms.iter().map(|(f, p)| f.width().max(p.width())).max().unwrap_or(0)
    }

    pub fn depends_on(&self, i: VarIndex) -> bool {
        self.terms.iter().any(|(f, p)| !f.get(i).is_zero() || p.degree_in(i) > 0)
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (f, p) in &other.terms {
            out.add_group(f.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly { terms: self.terms.iter().map(|(f, p)| (f.clone(), p.neg())).collect() }
    }

    pub fn scale(&self, s: &ExactComplex) -> ExpPoly {
        if s.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly { terms: self.terms.iter().map(|(f, p)| (f.clone(), p.scale(s))).collect() }
    }

    /// Exact product; frequencies add.
    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (fa, pa) in &self.terms {
            for (fb, pb) in &other.terms {
                out.add_group(fa.add(fb), pa.mul(pb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> ExpPoly {
        (0..e).fold(ExpPoly::one(), |acc, _| acc.mul(self))
    }

    /// Partial derivative `∂/∂x_i`.
    pub fn diff(&self, i: VarIndex) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (f, p) in &self.terms {
            let lam = f.get(i);
            out.add_group(f.clone(), p.diff(i).add(&p.scale(&lam)));
        }
        out
    }

    /// Integral `∫_0^{x_i}` with the other variables as parameters.
    ///
    /// For `λ_i ≠ 0` each `x_i^k e^{μ x_i}` is integrated in closed form by
    /// walking `j = 0..=k` (repeated integration by parts):
    /// `e^{μx} Σ_j (-1)^j k!/(k-j)! x^{k-j} / μ^{j+1} − (-1)^k k!/μ^{k+1}`,
    /// where the last term carries no `e^{μ x_i}` factor.
    pub fn integrate(&self, i: VarIndex) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (f, p) in &self.terms {
            let mu = f.get(i);
            if mu.is_zero() {
                let mut q = Poly::zero();
                for (m, c) in p.terms() {
                    let e = m.exp(i);
                    let inv = ExactComplex::rational(1, e as i64 + 1);
                    q.add_term(m.with_exp(i, e + 1), c * &inv);
                }
                out.add_group(f.clone(), q);
                continue;
            }
            let inv_mu = mu.inv().expect("nonzero frequency");
            let boundary_freq = f.without(i);
            let mut with_exp = Poly::zero();
            let mut boundary = Poly::zero();
            for (k, rest) in p.collect_var(i) {
                // coefficient (-1)^j k!/(k-j)! / μ^{j+1}, updated iteratively
                let mut coeff = inv_mu.clone();
                for j in 0..=k {
                    let m = Monomial::var_pow(i, k - j);
                    with_exp = with_exp.add(&rest.mul_monomial(&m, &coeff));
                    if j < k {
                        coeff = -(&(&coeff * &inv_mu).scale_int((k - j) as i64));
                    }
                }
                // `coeff` now equals (-1)^k k!/μ^{k+1}
                boundary = boundary.add(&rest.scale(&(-coeff)));
            }
            out.add_group(f.clone(), with_exp);
            out.add_group(boundary_freq, boundary);
        }
        out
    }

    /// `u(x) ↦ u(Mx)`: polynomial parts expand multinomially and frequencies
    /// transform by `Mᵀ`.
    pub fn subst(&self, m: &LinearSubst) -> ExpPoly {
        if m.is_identity() {
            return self.clone();
        }
        let mut images: BTreeMap<VarIndex, Poly> = BTreeMap::new();
        let mut out = ExpPoly::zero();
        for (f, p) in &self.terms {
            let freq = f.transform(m);
            let mut q = Poly::zero();
            for (mono, c) in p.terms() {
                let mut acc = Poly::constant(c.clone());
                for (j, &e) in mono.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let image = images.entry(j).or_insert_with(|| Poly::linear(&m.row_terms(j)));
                    acc = acc.mul(&image.pow(e));
                    if acc.is_zero() {
                        break;
                    }
                }
                q = q.add(&acc);
            }
            out.add_group(freq, q);
        }
        out
    }

    /// Value at `x_i = 0`.
    pub fn at_zero(&self, i: VarIndex) -> ExpPoly {
        self.subst(&LinearSubst::evaluation(i))
    }

    /// Value at `x_i = value` when the result stays in the class: every term
    /// with `λ_i · value ≠ 0` would produce a transcendental constant.
    pub fn eval_var(&self, i: VarIndex, value: &ExactComplex) -> Option<ExpPoly> {
        let mut out = ExpPoly::zero();
        for (f, p) in &self.terms {
            if !value.is_zero() && !f.get(i).is_zero() {
                return None;
            }
            let mut q = Poly::zero();
            for (m, c) in p.terms() {
                let (e, rest) = m.split_var(i);
                q.add_term(rest, c * &value.pow(e));
            }
            out.add_group(f.without(i), q);
        }
        Some(out)
    }

    /// Exact Taylor coefficients at the origin up to total degree `order`.
    pub fn taylor(&self, order: u32) -> Series {
        let mut out = Series::zero(order);
        for (f, p) in &self.terms {
            let mut exp_series = Series::one(order);
            for (k, lam) in f.entries() {
                exp_series = exp_series.mul(&Series::exp_linear(*k, lam, order));
            }
            out = out.add(&Series::from_poly(p, order).mul(&exp_series));
        }
        out
    }

    /// Floating-point evaluation; approximate by nature.
    pub fn eval_numeric(&self, point: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(f, p)| {
                let exponent: Complex64 =
                    f.entries().map(|(k, lam)| lam.to_complex64() * point.get(*k).copied().unwrap_or(0.0)).sum();
                p.eval_f64(point) * exponent.exp()
            })
            .sum()
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpPoly({self})")
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_exppoly(self))
    }
}

/// Truncated multivariate power series: coefficients of `x^α` for
/// `|α| ≤ order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    order: u32,
    coeffs: BTreeMap<Monomial, ExactComplex>,
}

impl Series {
    pub fn zero(order: u32) -> Self {
        Series { order, coeffs: BTreeMap::new() }
    }

    pub fn one(order: u32) -> Self {
        let mut s = Series::zero(order);
        s.set(Monomial::one(), ExactComplex::one());
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn from_poly(p: &Poly, order: u32) -> Self {
        let mut s = Series::zero(order);
        for (m, c) in p.terms() {
            s.add_to(m.clone(), c);
        }
        s
    }

    /// `e^{λ x_k}` truncated.
    pub fn exp_linear(k: VarIndex, lam: &ExactComplex, order: u32) -> Self {
        let mut s = Series::zero(order);
        let mut c = ExactComplex::one();
        for e in 0..=order {
            s.set(Monomial::var_pow(k, e), c.clone());
            c = &(&c * lam) * &ExactComplex::rational(1, e as i64 + 1);
        }
        s
    }

    pub fn get(&self, m: &Monomial) -> ExactComplex {
        self.coeffs.get(m).cloned().unwrap_or_else(ExactComplex::zero)
    }

    pub fn set(&mut self, m: Monomial, c: ExactComplex) {
        if m.degree() > self.order || c.is_zero() {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, c);
        }
    }

    fn add_to(&mut self, m: Monomial, c: &ExactComplex) {
        let v = self.get(&m) + c;
        self.set(m, v);
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Monomial, &ExactComplex)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = Series::zero(self.order.min(other.order));
        for (m, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_to(m.clone(), c);
        }
        out
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order.min(other.order);
        let mut out = Series::zero(order);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                if ma.degree() + mb.degree() <= order {
                    out.add_to(ma.mul(mb), &(ca * cb));
                }
            }
        }
        out
    }

    pub fn eval_numeric(&self, point: &[f64]) -> Complex64 {
        self.coeffs.iter().map(|(m, c)| c.to_complex64() * m.eval_f64(point)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_exppoly as p;

    #[test]
    fn diff_examples() {
        assert_eq!(p("x1^2*exp(3*x1)").unwrap().diff(1), p("(2*x1 + 3*x1^2)*exp(3*x1)").unwrap());
        assert!(p("5").unwrap().diff(1).is_zero());
        assert_eq!(p("exp(i*x1)").unwrap().diff(1), p("i*exp(i*x1)").unwrap());
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(p("x1^2").unwrap().integrate(1), p("1/3*x1^3").unwrap());
        assert_eq!(p("exp(2*x1)").unwrap().integrate(1), p("1/2*exp(2*x1) - 1/2").unwrap());
        assert_eq!(p("x1*exp(x1)").unwrap().integrate(1), p("(x1 - 1)*exp(x1) + 1").unwrap());
    }

    #[test]
    fn integrate_keeps_other_frequencies_in_boundary_term() {
        let u = p("t*x1*exp(2*x1 + 3*t)").unwrap();
        let r = u.integrate(1);
        assert_eq!(r.diff(1), u);
        assert!(r.at_zero(1).is_zero());
        assert!(r.groups().any(|(f, _)| f.get(1).is_zero() && f.get(0) == 3.into()));
    }

    #[test]
    fn subst_examples() {
        let shift = LinearSubst::from_int_rows(&[&[1, 0, 0], &[0, 1, 1]]);
        assert_eq!(p("x1^2").unwrap().subst(&shift), p("x1^2 + 2*x1*x2 + x2^2").unwrap());
        let u = p("x1*exp(t) + 3").unwrap();
        assert_eq!(u.subst(&LinearSubst::identity()), u);
        // x1 ↦ x1 + i·x2 keeps a single exponential with a complex frequency.
        let m = LinearSubst::from_rows(vec![
            vec![1.into(), 0.into(), 0.into()],
            vec![0.into(), 1.into(), ExactComplex::i()],
        ])
        .unwrap();
        let image = p("exp(x1)").unwrap().subst(&m);
        assert_eq!(image, p("exp(x1 + i*x2)").unwrap());
        // its value is e^x1 cos x2 + i e^x1 sin x2
        let v = image.eval_numeric(&[0.0, 0.3, 0.7]);
        assert!((v.re - 0.3f64.exp() * 0.7f64.cos()).abs() < 1e-12);
        assert!((v.im - 0.3f64.exp() * 0.7f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn taylor_examples() {
        let s = p("exp(x1)").unwrap().taylor(2);
        assert_eq!(s, Series::from_poly(&p("1 + x1 + 1/2*x1^2").unwrap().as_poly().unwrap(), 2));
        assert!(p("x1*x2").unwrap().taylor(1).is_zero());
        let s = p("1/2*exp(2*x1) - 1/2").unwrap().taylor(3);
        assert_eq!(s, Series::from_poly(&p("x1 + x1^2 + 2/3*x1^3").unwrap().as_poly().unwrap(), 3));
    }

    #[test]
    fn numeric_examples() {
        assert_eq!(p("x1^2").unwrap().eval_numeric(&[0.0, 3.0]).re, 9.0);
        assert_eq!(p("exp(x1)").unwrap().eval_numeric(&[0.0, 0.0]).re, 1.0);
        let v = p("exp(x1 - 2*t)").unwrap().eval_numeric(&[0.5, 1.0]);
        assert!((v.re - 1.0).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn mul_add_examples() {
        assert_eq!(p("exp(x1)").unwrap().mul(&p("exp(2*x1)").unwrap()), p("exp(3*x1)").unwrap());
        assert!(p("x1").unwrap().add(&p("-x1").unwrap()).is_zero());
        assert_eq!(p("x1*exp(x1)").unwrap().mul(&p("x1").unwrap()), p("x1^2*exp(x1)").unwrap());
    }

    #[test]
    fn eval_var_rejects_transcendental() {
        assert!(p("exp(x1)").unwrap().eval_var(1, &1.into()).is_none());
        assert_eq!(p("x1^2 - x1").unwrap().eval_var(1, &1.into()).unwrap(), ExpPoly::zero());
    }
}
