//! Independent checks for solver output: a power-series solver for CK-form
//! equations, residual and trace checks, a d'Alembert reference for the wave
//! equation, and numeric grid comparison.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::boundary::{trace, SignalOperator, StateOperator};
use crate::cauchy::{check_ck_form, solve_cauchy, verify_factorization, CauchyProblem, CauchySolution};
use crate::error::{Error, Result};
use crate::exppoly::{ExpPoly, Series};
use crate::matrix::LinearSubst;
use crate::operator::{op_equal_via_probing, probe_witness, Normalizer, OperatorExpr, Strategy, DEFAULT_BUDGET};
use crate::poly::{Monomial, Poly};
use crate::scalar::ExactComplex;

pub const DEFAULT_TRUNCATION: u32 = 8;

/// Order in which the series solver fills unknown coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elimination {
    /// One coefficient at a time, by total degree and then t-degree.
    DegreeMajor,
    /// A whole x-series per power of t, obtained by differentiating the
    /// lower slices.
    TimeSlices,
}

/// Normalized CK symbol: `D_t^m + Σ c_{jγ} D_t^j D_x^γ`, stored as the
/// lower-order part keyed by `(j, γ)`.
struct CkSymbol {
    m: usize,
    lower: Vec<(usize, Monomial, ExactComplex)>,
}

fn ck_symbol(op: &OperatorExpr, m: usize) -> Result<CkSymbol> {
    if !check_ck_form(op, m) {
        return Err(Error::NotCkForm);
    }
    let p = op.to_diff_poly().ok_or(Error::NotCkForm)?;
    let lead = Monomial::var_pow(0, m as u32);
    let inv = p.coeff(&lead).inv().ok_or(Error::NotCkForm)?;
    let lower = p
        .terms()
        .filter(|(mono, _)| **mono != lead)
        .map(|(mono, c)| {
            let (j, gamma) = mono.split_var(0);
            (j as usize, gamma, c * &inv)
        })
        .collect();
    Ok(CkSymbol { m, lower })
}

fn factorial(k: u32) -> ExactComplex {
    ExactComplex::factorial(k)
}

/// Taylor series to total degree `order` of the solution of `T u = 0` with
/// `D_t^{i-1} u = f_i` at `t = 0`.
pub fn series_solve(op: &OperatorExpr, m: usize, data: &[ExpPoly], order: u32) -> Result<Series> {
    series_solve_with(op, m, data, order, Elimination::DegreeMajor)
}

pub fn series_solve_with(
    op: &OperatorExpr,
    m: usize,
    data: &[ExpPoly],
    order: u32,
    elimination: Elimination,
) -> Result<Series> {
    if data.len() != m {
        return Err(Error::Arity { expected: m, got: data.len() });
    }
    let symbol = ck_symbol(op, m)?;
    match elimination {
        Elimination::DegreeMajor => Ok(degree_major(&symbol, data, order)),
        Elimination::TimeSlices => Ok(time_slices(&symbol, data, order)),
    }
}

fn seed(data: &[ExpPoly], order: u32) -> Series {
    let mut u = Series::zero(order);
    for (i, f) in data.iter().enumerate() {
        let scale = factorial(i as u32).inv().expect("nonzero");
        for (mono, c) in f.taylor(order.saturating_sub(i as u32)).coeffs() {
            u.set(mono.with_exp(0, i as u32), c * &scale);
        }
    }
    u
}

fn degree_major(symbol: &CkSymbol, data: &[ExpPoly], order: u32) -> Series {
    let mut u = seed(data, order);
    let m = symbol.m as u32;
    let width = data.iter().map(ExpPoly::width).max().unwrap_or(1).max(1);
    let nx = width - 1;
    for degree in m..=order {
        for tdeg in m..=degree {
            for beta in exponent_vectors(nx, degree - tdeg) {
                let k = tdeg - m;
                let mut acc = ExactComplex::zero();
                for (j, gamma, c) in &symbol.lower {
                    let target = beta.mul(gamma).with_exp(0, k + *j as u32);
                    let v = u.get(&target);
                    if v.is_zero() {
                        continue;
                    }
                    let weight = &(&factorial(k + *j as u32) / &factorial(k))
                        * &(&target.with_exp(0, 0).factorial() / &beta.factorial());
                    acc = &acc + &(&(c * &v) * &weight);
                }
                let value = -(&(&acc * &factorial(k)) / &factorial(k + m));
                u.set(beta.with_exp(0, tdeg), value);
            }
        }
    }
    u
}

/// All exponent vectors over `x_1..x_nx` (slot 0 left at zero) of the given
/// total degree.
fn exponent_vectors(nx: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nx + 1];
    fill(&mut exps, 1, degree, &mut out);
    out
}

fn fill(exps: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos >= exps.len() {
        if left == 0 {
            out.push(Monomial::new(exps.clone()));
        }
        return;
    }
    for e in 0..=left {
        exps[pos] = e;
        fill(exps, pos + 1, left - e, out);
    }
    exps[pos] = 0;
}

fn truncate(p: &Poly, degree: i64) -> Poly {
    let mut out = Poly::zero();
    for (mono, c) in p.terms() {
        if (mono.degree() as i64) <= degree {
            out.add_term(mono.clone(), c.clone());
        }
    }
    out
}

fn time_slices(symbol: &CkSymbol, data: &[ExpPoly], order: u32) -> Series {
    let m = symbol.m;
    let mut by_t: BTreeMap<usize, Vec<(Monomial, ExactComplex)>> = BTreeMap::new();
    for (j, gamma, c) in &symbol.lower {
        by_t.entry(*j).or_default().push((gamma.clone(), c.clone()));
    }
    // slice k holds the x-series of the t^k coefficient
    let mut slices: Vec<Poly> = data
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut p = Poly::zero();
            for (mono, c) in f.taylor(order.saturating_sub(i as u32)).coeffs() {
                p.add_term(mono.clone(), c / &factorial(i as u32));
            }
            p
        })
        .collect();
    for k in 0..(order as usize + 1).saturating_sub(m) {
        let budget = order as i64 - (k + m) as i64;
        let mut rhs = Poly::zero();
        for (j, ops) in &by_t {
            let slice = &slices[k + j];
            let lift = &factorial((k + j) as u32) / &factorial(k as u32);
            for (gamma, c) in ops {
                let mut d = slice.clone();
                for (var, &e) in gamma.exponents().iter().enumerate() {
                    for _ in 0..e {
                        d = d.diff(var);
                    }
                }
                rhs = rhs.add(&d.scale(&(c * &lift)));
            }
        }
        let scale = -(&factorial(k as u32) / &factorial((k + m) as u32));
        slices.push(truncate(&rhs.scale(&scale), budget));
    }
    let mut u = Series::zero(order);
    for (k, slice) in slices.iter().enumerate() {
        for (mono, c) in slice.terms() {
            u.set(mono.with_exp(0, k as u32), c.clone());
        }
    }
    u
}

/// `T u`; zero exactly when `u` solves the equation.
pub fn residual_check(op: &OperatorExpr, u: &ExpPoly) -> ExpPoly {
    op.apply(u)
}

/// `(f(x+t) + f(x−t))/2 + (1/2)∫_{x−t}^{x+t} g`, for data in `x1`.
pub fn dalembert_reference(f: &ExpPoly, g: &ExpPoly) -> ExpPoly {
    let plus = LinearSubst::from_int_rows(&[&[1, 0], &[1, 1]]);
    let minus = LinearSubst::from_int_rows(&[&[1, 0], &[-1, 1]]);
    let half = ExactComplex::rational(1, 2);
    let primitive = g.integrate(1);
    f.subst(&plus).add(&f.subst(&minus)).add(&primitive.subst(&plus)).sub(&primitive.subst(&minus)).scale(&half)
}

/// Reference for a grid comparison.
pub enum Reference<'a> {
    Exact(&'a ExpPoly),
    Series(&'a Series),
}

impl Reference<'_> {
    fn eval(&self, point: &[f64]) -> num_complex::Complex64 {
        match self {
            Reference::Exact(u) => u.eval_numeric(point),
            Reference::Series(s) => s.eval_numeric(point),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridReport {
    pub max_error: f64,
    pub worst_point: Vec<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn grid_compare(u: &ExpPoly, reference: Reference<'_>, points: &[Vec<f64>], tol: f64) -> GridReport {
    let mut max_error = 0.0f64;
    let mut worst_point = Vec::new();
    for p in points {
        let err = (u.eval_numeric(p) - reference.eval(p)).norm();
        if err > max_error || worst_point.is_empty() {
            max_error = max_error.max(err);
            worst_point = p.clone();
        }
    }
    GridReport { max_error, worst_point, tolerance: tol, passed: max_error <= tol }
}

/// Tensor grid with `steps[k]` evenly spaced points on `ranges[k]`; a
/// single step sits at the lower end.
pub fn grid_points(ranges: &[(f64, f64)], steps: &[usize]) -> Vec<Vec<f64>> {
    let axes: Vec<Vec<f64>> = ranges
        .iter()
        .zip(steps)
        .map(|(&(lo, hi), &n)| match n {
            0 => vec![],
            1 => vec![lo],
            _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
        })
        .collect();
    let mut out: Vec<Vec<f64>> = vec![vec![]];
    for axis in &axes {
        out = out
            .iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    if axes.is_empty() {
        return vec![];
    }
    out
}

/// How an operator identity was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Normalization,
    Probing,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn exact(name: &str, passed: bool, witness: impl FnOnce() -> String) -> Check {
        Check { name: name.into(), passed, method: Method::Exact, witness: if passed { None } else { Some(witness()) } }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub truncation: u32,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {} truncation {}", self.seed, self.truncation)?;
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            let method = match c.method {
                Method::Exact => "exact",
                Method::Normalization => "normalization",
                Method::Probing => "probing",
            };
            write!(f, "{status} {} ({method})", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed() { "all checks passed" } else { "verification failed" })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub truncation: u32,
    pub seed: u64,
    pub budget: usize,
    pub probes: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { truncation: DEFAULT_TRUNCATION, seed: 0, budget: DEFAULT_BUDGET, probes: 20 }
    }
}

/// `lhs = rhs` by normalization within the budget, else by probing.
pub fn identity_check(name: &str, lhs: &OperatorExpr, rhs: &OperatorExpr, opts: &VerifyOptions) -> Check {
    let normalizer = Normalizer::new(Strategy::Innermost, opts.budget);
    if let (Ok(a), Ok(b)) = (normalizer.run(lhs), normalizer.run(rhs)) {
        if a == b {
            return Check { name: name.into(), passed: true, method: Method::Normalization, witness: None };
        }
    }
    let passed = op_equal_via_probing(lhs, rhs, opts.probes, opts.seed);
    let witness =
        if passed { None } else { probe_witness(lhs, rhs, opts.probes, opts.seed).map(|f| format!("differs on {f}")) };
    Check { name: name.into(), passed, method: Method::Probing, witness }
}

pub fn operator_checks(
    t: &OperatorExpr,
    state: &StateOperator,
    signal: &SignalOperator,
    opts: &VerifyOptions,
) -> Vec<Check> {
    let mut checks = Vec::new();
    for k in 0..state.rows.len() {
        let name = format!("T.H{} = 0", k + 1);
        checks.push(identity_check(&name, &t.then(&state.row_operator(k)), &OperatorExpr::zero(), opts));
    }
    if signal.correction.is_none() {
        checks.push(identity_check("T.G = 1", &t.then(&signal.op), &OperatorExpr::identity(), opts));
    }
    checks
}

/// Every check on a solved Cauchy problem, optionally against an expected
/// solution and an expanded operator.
pub fn verify_cauchy(
    problem: &CauchyProblem,
    solution: &CauchySolution,
    expected: Option<&ExpPoly>,
    expanded: Option<&OperatorExpr>,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let t = &solution.operator;
    if let Some(op) = expanded {
        checks.push(Check::exact("factorization", verify_factorization(op, &problem.factors), || {
            format!("factors expand to {t}, not {op}")
        }));
    }
    let residual = residual_check(t, &solution.u);
    checks.push(Check::exact("residual", residual.is_zero(), || format!("T u = {residual}")));
    let tr = trace(&problem.basis(), &solution.u)?;
    let trace_ok = tr == problem.data;
    checks.push(Check::exact("trace", trace_ok, || {
        let shown: Vec<String> = tr.iter().map(ToString::to_string).collect();
        format!("trace is ({})", shown.join(", "))
    }));
    let m = problem.order();
    let series = series_solve(t, m, &problem.data, opts.truncation)?;
    let taylor = solution.u.taylor(opts.truncation);
    checks.push(Check::exact("series oracle", series == taylor, || first_discrepancy(&series, &taylor)));
    let alt = series_solve_with(t, m, &problem.data, opts.truncation, Elimination::TimeSlices)?;
    checks.push(Check::exact("series elimination orders", alt == series, || first_discrepancy(&series, &alt)));
    checks.extend(operator_checks(t, &solution.state, &solution.signal, opts));
    if let Some(e) = expected {
        checks.push(Check::exact("expected solution", *e == solution.u, || {
            format!("u - expected = {}", solution.u.sub(e))
        }));
    }
    Ok(VerificationReport { seed: opts.seed, truncation: opts.truncation, checks })
}

/// Solves and verifies in one step.
pub fn solve_and_verify(
    problem: &CauchyProblem,
    expected: Option<&ExpPoly>,
    expanded: Option<&OperatorExpr>,
    opts: &VerifyOptions,
) -> Result<(CauchySolution, VerificationReport)> {
    if let Some(op) = expanded {
        let p = op.to_diff_poly().ok_or_else(|| Error::NotDifferential(op.to_string()))?;
        if !check_ck_form(op, p.total_degree() as usize) {
            return Err(Error::NotCkForm);
        }
    }
    let solution = solve_cauchy(problem)?;
    let report = verify_cauchy(problem, &solution, expected, expanded, opts)?;
    Ok((solution, report))
}

fn first_discrepancy(a: &Series, b: &Series) -> String {
    let keys: std::collections::BTreeSet<&Monomial> = a.coeffs().chain(b.coeffs()).map(|(m, _)| m).collect();
    for k in keys {
        let (x, y) = (a.get(k), b.get(k));
        if x != y {
            let term =
                crate::syntax::print_exppoly(&ExpPoly::monomial(ExactComplex::one(), k.clone(), Default::default()));
            return format!("coefficient of {term}: {x} vs {y}");
        }
    }
    "truncation orders differ".into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_exppoly as ep, parse_operator as op};

    #[test]
    fn transport_series_matches_closed_form() {
        let t = op("D0 + 2*D1").unwrap();
        let data = [ep("exp(3*x1)").unwrap()];
        let s = series_solve(&t, 1, &data, 3).unwrap();
        assert_eq!(s, ep("exp(3*x1 - 6*t)").unwrap().taylor(3));
        assert_eq!(s.get(&Monomial::new(vec![1, 1])), ExactComplex::from(-18));
    }

    #[test]
    fn wave_series_terminates() {
        let t = op("D0 . D0 - D1 . D1").unwrap();
        let data = [ep("x1^2").unwrap(), ExpPoly::zero()];
        for e in [Elimination::DegreeMajor, Elimination::TimeSlices] {
            let s = series_solve_with(&t, 2, &data, 8, e).unwrap();
            assert_eq!(s, ep("x1^2 + t^2").unwrap().taylor(8));
        }
        assert!(series_solve(&t, 2, &[ExpPoly::zero(), ExpPoly::zero()], 8).unwrap().is_zero());
    }

    #[test]
    fn series_rejects_non_ck() {
        let heat = op("D0 - D1 . D1").unwrap();
        assert!(matches!(series_solve(&heat, 1, &[ExpPoly::one()], 4), Err(Error::NotCkForm)));
    }

    #[test]
    fn residual_examples() {
        let wave = op("D0 . D0 - D1 . D1").unwrap();
        assert!(residual_check(&wave, &ep("x1^2 + t^2").unwrap()).is_zero());
        let tr = op("D0 + 2*D1").unwrap();
        assert!(residual_check(&tr, &ep("exp(3*x1 - 6*t)").unwrap()).is_zero());
        assert_eq!(residual_check(&op("D0").unwrap(), &ep("t").unwrap()), ExpPoly::one());
    }

    #[test]
    fn dalembert_examples() {
        assert_eq!(dalembert_reference(&ep("x1^2").unwrap(), &ExpPoly::zero()), ep("x1^2 + t^2").unwrap());
        assert_eq!(dalembert_reference(&ExpPoly::zero(), &ep("x1").unwrap()), ep("t*x1").unwrap());
        assert!(dalembert_reference(&ExpPoly::zero(), &ExpPoly::zero()).is_zero());
    }

    #[test]
    fn grid_examples() {
        let u = ep("exp(3*x1 - 6*t)").unwrap();
        let pts = grid_points(&[(-0.5, 0.5), (-0.5, 0.5)], &[5, 5]);
        assert_eq!(pts.len(), 25);
        assert_eq!(grid_compare(&u, Reference::Exact(&u), &pts, 1e-12).max_error, 0.0);
        let bumped = u.add(&ep("1/1000*t").unwrap());
        let r = grid_compare(&bumped, Reference::Exact(&u), &pts, 1e-4);
        assert!(!r.passed);
        assert!((r.max_error - 5e-4).abs() < 1e-12);
    }

    #[test]
    fn transport_series_grid_bound() {
        // slow transport keeps the order-8 remainder below the tolerance
        let u = ep("exp(1/2*x1 - 1/2*t)").unwrap();
        let s = series_solve(&op("D0 + D1").unwrap(), 1, &[ep("exp(1/2*x1)").unwrap()], 8).unwrap();
        let pts = grid_points(&[(-0.5, 0.5), (-0.5, 0.5)], &[5, 5]);
        assert!(grid_compare(&u, Reference::Series(&s), &pts, 1e-6).passed);
    }
}
