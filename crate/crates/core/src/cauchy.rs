//! Closed-form solution of Cauchy problems for completely reducible
//! constant-coefficient operators, one first-order factor at a time.

use num_traits::{One, Zero};

use crate::boundary::{
    compose_problems, kernel_projector, normalize_or_raw, signal_from_projector, BoundaryBasis, BoundaryFunctional,
    BoundaryProblem, SignalOperator, SolvedProblem, StateOperator,
};
use crate::error::{Error, Result};
use crate::exppoly::{ExpPoly, Frequency};
use crate::matrix::{LinearSubst, Matrix};
use crate::operator::{Generator, OperatorExpr};
use crate::poly::{Monomial, Poly};
use crate::scalar::ExactComplex;

/// `a + a_0 D_t + a_1 D_1 + .. + a_n D_n`, raised to `multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderFactor {
    pub a: ExactComplex,
    /// `a_0, a_1, .., a_n`
    pub coeffs: Vec<ExactComplex>,
    pub multiplicity: usize,
}

impl FirstOrderFactor {
    pub fn new(a: ExactComplex, coeffs: Vec<ExactComplex>) -> Self {
        FirstOrderFactor { a, coeffs, multiplicity: 1 }
    }

    pub fn from_ints(a: i64, coeffs: &[i64]) -> Self {
        FirstOrderFactor::new(a.into(), coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn with_multiplicity(mut self, k: usize) -> Self {
        self.multiplicity = k;
        self
    }

    /// Number of space variables.
    pub fn n(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn a0(&self) -> ExactComplex {
        self.coeff(0)
    }

    pub fn coeff(&self, j: usize) -> ExactComplex {
        self.coeffs.get(j).cloned().unwrap_or_else(ExactComplex::zero)
    }

    /// The factor (multiplicity ignored) as a polynomial in `D_0, .., D_n`.
    pub fn symbol(&self) -> Poly {
        let mut p = Poly::constant(self.a.clone());
        for (j, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::var(j), c.clone());
        }
        p
    }

    pub fn operator(&self) -> OperatorExpr {
        OperatorExpr::from_diff_poly(&self.symbol())
    }

    fn decay(&self, sign: i64) -> ExpPoly {
        let rate = &(&self.a / &self.a0()) * &ExactComplex::from(sign);
        ExpPoly::exp([(0, rate)])
    }
}

/// Permutation of the variables with nonzero coefficient such that every
/// partial sum `a_0 + a_{p_1} + .. + a_{p_{k-1}}`, `k = 1..n'`, is nonzero.
/// The lexicographically first one is returned.
pub fn order_variables(factor: &FirstOrderFactor) -> Result<Vec<usize>> {
    if factor.a0().is_zero() {
        return Err(Error::ZeroLeadCoefficient);
    }
    let active: Vec<usize> = (1..=factor.n()).filter(|&j| !factor.coeff(j).is_zero()).collect();
    let mut perm = Vec::with_capacity(active.len());
    let mut used = vec![false; active.len()];
    if search_order(factor, &active, &mut used, &mut perm, factor.a0()) {
        Ok(perm)
    } else {
        Err(Error::NoOrdering)
    }
}

fn search_order(
    factor: &FirstOrderFactor,
    active: &[usize],
    used: &mut [bool],
    perm: &mut Vec<usize>,
    sum: ExactComplex,
) -> bool {
    if perm.len() == active.len() {
        return true;
    }
    // the sum before placing the next variable must be nonzero
    if sum.is_zero() {
        return false;
    }
    for k in 0..active.len() {
        if used[k] {
            continue;
        }
        used[k] = true;
        perm.push(active[k]);
        let next = &sum + &factor.coeff(active[k]);
        if search_order(factor, active, used, perm, next) {
            return true;
        }
        perm.pop();
        used[k] = false;
    }
    false
}

/// Characteristic change of variables `Z` and its inverse. Row 0 keeps `t`;
/// the `k`-th ordered variable `x_{p_k}` is replaced by
/// `t + x_{p_1} + .. + x_{p_{k-1}} − s_{k-1} x_{p_k} / a_{p_k}`; variables
/// with zero coefficient are kept.
pub fn charvar_matrix(factor: &FirstOrderFactor, perm: &[usize]) -> Result<(Matrix, Matrix)> {
    let n = factor.n();
    let mut z = Matrix::identity(n + 1);
    let mut sum = factor.a0();
    for (k, &p) in perm.iter().enumerate() {
        for j in 0..=n {
            z[(p, j)] = ExactComplex::zero();
        }
        z[(p, 0)] = ExactComplex::one();
        for &q in &perm[..k] {
            z[(p, q)] = ExactComplex::one();
        }
        let a_p = factor.coeff(p);
        z[(p, p)] = -(&sum / &a_p);
        sum = &sum + &a_p;
    }
    let zi = z.inverse()?;
    Ok((z, zi))
}

/// Transversal variables `x_j − (a_j/a_0) t`, used when no ordering with
/// nonzero partial sums exists.
pub fn transversal_matrix(factor: &FirstOrderFactor) -> Result<(Matrix, Matrix)> {
    let n = factor.n();
    let mut z = Matrix::identity(n + 1);
    for j in 1..=n {
        z[(j, 0)] = -(&factor.coeff(j) / &factor.a0());
    }
    let zi = z.inverse()?;
    Ok((z, zi))
}

/// Change of variables for a factor together with the lift that makes the
/// state operator reproduce its datum at `t = 0`.
#[derive(Clone, Debug)]
pub struct Characteristics {
    pub z: LinearSubst,
    pub z_inv: LinearSubst,
    /// `diag(0, L⁻¹)` where `L` is the space block of `Z`.
    pub lift: LinearSubst,
    /// `false` when the transversal fallback was used.
    pub ordered: bool,
}

pub fn characteristics(factor: &FirstOrderFactor) -> Result<Characteristics> {
    if factor.a0().is_zero() {
        return Err(Error::ZeroLeadCoefficient);
    }
    let (z, zi, ordered) = match order_variables(factor) {
        Ok(perm) => {
            let (z, zi) = charvar_matrix(factor, &perm)?;
            (z, zi, true)
        }
        Err(Error::NoOrdering) => {
            let (z, zi) = transversal_matrix(factor)?;
            (z, zi, false)
        }
        Err(e) => return Err(e),
    };
    let n = factor.n();
    let mut space = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            space[(i, j)] = z[(i + 1, j + 1)].clone();
        }
    }
    let space_inv = space.inverse()?;
    let mut lift = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            lift[(i + 1, j + 1)] = space_inv[(i, j)].clone();
        }
    }
    if n == 0 {
        lift = Matrix::zeros(1, 1);
    }
    Ok(Characteristics {
        z: LinearSubst::from_matrix(&z),
        z_inv: LinearSubst::from_matrix(&zi),
        lift: LinearSubst::from_matrix(&lift),
        ordered,
    })
}

/// `H f = e^{−a t/a_0} · f(Λ Z x)`.
pub fn first_order_state(factor: &FirstOrderFactor) -> Result<StateOperator> {
    let ch = characteristics(factor)?;
    let row = OperatorExpr::mul_by(factor.decay(-1)).then(&OperatorExpr::subst(ch.z));
    Ok(StateOperator { rows: vec![normalize_or_raw(row)], lift: ch.lift })
}

/// Right inverse `a_0⁻¹ Z* e^{−at/a_0} A_t e^{at/a_0} Z̃*`, which also
/// vanishes at `t = 0`.
pub fn first_order_rightinv(factor: &FirstOrderFactor) -> Result<SignalOperator> {
    let ch = characteristics(factor)?;
    let inv_a0 = factor.a0().inv().ok_or(Error::ZeroLeadCoefficient)?;
    let word = OperatorExpr::subst(ch.z)
        .then(&OperatorExpr::mul_by(factor.decay(-1)))
        .then(&OperatorExpr::int(0))
        .then(&OperatorExpr::mul_by(factor.decay(1)))
        .then(&OperatorExpr::subst(ch.z_inv))
        .scale(&inv_a0);
    Ok(SignalOperator::new(normalize_or_raw(word)))
}

/// Generators of the kernel of `T^m`: the `i`-th maps `c` to
/// `t^{i-1}/(i-1)! · e^{−at/a_0} · c(Λ Z x)`.
pub fn general_solution_power(factor: &FirstOrderFactor, m: usize) -> Result<Vec<StateOperator>> {
    let ch = characteristics(factor)?;
    (0..m)
        .map(|i| {
            let c = ExactComplex::factorial(i as u32).inv().expect("nonzero");
            let weight = ExpPoly::monomial(c, Monomial::var_pow(0, i as u32), Frequency::zero()).mul(&factor.decay(-1));
            let row = OperatorExpr::mul_by(weight).then(&OperatorExpr::subst(ch.z.clone()));
            Ok(StateOperator { rows: vec![normalize_or_raw(row)], lift: ch.lift.clone() })
        })
        .collect()
}

/// The first-order Cauchy problem `(T, [u|_{t=0}])` with `G = (1 − P) G_T`
/// and `H` from the characteristics.
pub fn first_order_problem(factor: &FirstOrderFactor) -> Result<SolvedProblem> {
    let state = first_order_state(factor)?;
    let rinv = first_order_rightinv(factor)?;
    let basis = BoundaryBasis::cauchy(1);
    let projector = kernel_projector(&state, &basis)?;
    let signal = signal_from_projector(&projector, &rinv.op);
    Ok(SolvedProblem { problem: BoundaryProblem::new(factor.operator(), basis)?, signal, state })
}

/// Whether `T` (a polynomial in `D`) is `c·(D_t^m + T̃)` with
/// `deg_t T̃ < m` and `deg T̃ ≤ m`, `c ≠ 0`.
pub fn check_ck_form(op: &OperatorExpr, m: usize) -> bool {
    match op.to_diff_poly() {
        Some(p) => ck_poly(&p, m),
        None => false,
    }
}

fn ck_poly(p: &Poly, m: usize) -> bool {
    let lead = Monomial::var_pow(0, m as u32);
    if p.coeff(&lead).is_zero() {
        return false;
    }
    p.terms()
        .filter(|(mono, _)| **mono != lead)
        .all(|(mono, _)| mono.degree() as usize <= m && (mono.exp(0) as usize) < m)
}

/// Brings `T` into CK form by a shear `t ↦ t + Σ c_i x_i`: returns `T'` and
/// `M` with `T ∘ M* = M* ∘ T'`. Shears `c_i = 1` are tried first, then
/// `c_i = s` and `c_i = s^i` for `s = 2, 3, ..`.
pub fn ck_normalize(op: &OperatorExpr) -> Result<(OperatorExpr, LinearSubst)> {
    let p = op.to_diff_poly().ok_or_else(|| Error::NotDifferential(op.to_string()))?;
    if p.is_zero() {
        return Err(Error::NotCkForm);
    }
    let m = p.total_degree() as usize;
    if ck_poly(&p, m) {
        return Ok((op.clone(), LinearSubst::identity()));
    }
    let n = p.width().saturating_sub(1);
    let mut candidates: Vec<Vec<ExactComplex>> = vec![vec![ExactComplex::one(); n]];
    for s in 2..=64i64 {
        candidates.push(vec![ExactComplex::from(s); n]);
        candidates.push((1..=n as u32).map(|i| ExactComplex::from(s).pow(i)).collect());
    }
    for shear in candidates {
        let mut rows = Matrix::identity(n + 1);
        for (i, c) in shear.iter().enumerate() {
            rows[(0, i + 1)] = c.clone();
        }
        let subst = LinearSubst::from_matrix(&rows);
        let transformed = shear_symbol(&p, &shear);
        if ck_poly(&transformed, m) {
            return Ok((OperatorExpr::from_diff_poly(&transformed), subst));
        }
    }
    Err(Error::NotCkForm)
}

/// `P(D_0, D_1 + c_1 D_0, .., D_n + c_n D_0)`.
fn shear_symbol(p: &Poly, shear: &[ExactComplex]) -> Poly {
    let images: Vec<Poly> = (0..=shear.len())
        .map(|j| if j == 0 { Poly::var(0) } else { Poly::var(j).add(&Poly::var(0).scale(&shear[j - 1])) })
        .collect();
    let mut out = Poly::zero();
    for (mono, c) in p.terms() {
        let mut acc = Poly::constant(c.clone());
        for (j, &e) in mono.exponents().iter().enumerate() {
            acc = acc.mul(&images[j].pow(e));
        }
        out = out.add(&acc);
    }
    out
}

/// Product of the factor symbols with multiplicities.
pub fn expand_factors(factors: &[FirstOrderFactor]) -> Poly {
    factors.iter().fold(Poly::constant(ExactComplex::one()), |acc, f| acc.mul(&f.symbol().pow(f.multiplicity as u32)))
}

/// Whether the factors multiply to `T` up to a nonzero scalar.
pub fn verify_factorization(op: &OperatorExpr, factors: &[FirstOrderFactor]) -> bool {
    let Some(p) = op.to_diff_poly() else { return false };
    let q = expand_factors(factors);
    let Some((mono, cq)) = q.terms().next() else { return p.is_zero() };
    let cp = p.coeff(mono);
    if cp.is_zero() {
        return false;
    }
    q.scale(&(&cp / cq)) == p
}

/// Cauchy problem with data `f_i = D_t^{i-1} u |_{t=0}`.
#[derive(Clone, Debug)]
pub struct CauchyProblem {
    pub n: usize,
    pub factors: Vec<FirstOrderFactor>,
    pub data: Vec<ExpPoly>,
}

#[derive(Clone, Debug)]
pub struct CauchySolution {
    pub u: ExpPoly,
    pub operator: OperatorExpr,
    /// State operator on the Cauchy data `(f_1, .., f_m)`.
    pub state: StateOperator,
    pub signal: SignalOperator,
    /// The composed product problem, with its own basis and state operator.
    pub product: SolvedProblem,
}

impl CauchyProblem {
    pub fn new(n: usize, factors: Vec<FirstOrderFactor>, data: Vec<ExpPoly>) -> Self {
        CauchyProblem { n, factors, data }
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity).sum()
    }

    pub fn operator(&self) -> OperatorExpr {
        OperatorExpr::from_diff_poly(&expand_factors(&self.factors))
    }

    pub fn basis(&self) -> BoundaryBasis {
        BoundaryBasis::cauchy(self.order())
    }

    /// Factors repeated by multiplicity, padded to `n` space variables.
    pub fn simple_factors(&self) -> Vec<FirstOrderFactor> {
        self.factors
            .iter()
            .flat_map(|f| {
                let mut g = f.clone();
                g.coeffs.resize(self.n + 1, ExactComplex::zero());
                g.multiplicity = 1;
                std::iter::repeat_n(g, f.multiplicity)
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::Precondition("no factors given".into()));
        }
        for (k, f) in self.factors.iter().enumerate() {
            if f.multiplicity == 0 {
                return Err(Error::Precondition(format!("factor {} has multiplicity 0", k + 1)));
            }
            if f.coeffs.len() > self.n + 1 {
                return Err(Error::Dimension(format!(
                    "factor {} has {} coefficients for n = {}",
                    k + 1,
                    f.coeffs.len(),
                    self.n
                )));
            }
            if f.a0().is_zero() {
                return Err(Error::ZeroLeadCoefficient);
            }
        }
        if self.data.len() != self.order() {
            return Err(Error::Arity { expected: self.order(), got: self.data.len() });
        }
        for (k, f) in self.data.iter().enumerate() {
            if f.depends_on(0) {
                return Err(Error::Precondition(format!("datum f{} depends on t", k + 1)));
            }
            if f.width() > self.n + 1 {
                return Err(Error::Dimension(format!("datum f{} uses variables beyond x{}", k + 1, self.n)));
            }
        }
        Ok(())
    }
}

/// Composes the first-order problems, outermost factor first.
pub fn compose_factors(factors: &[FirstOrderFactor]) -> Result<SolvedProblem> {
    let mut problems = factors.iter().map(first_order_problem).collect::<Result<Vec<_>>>()?;
    let mut acc = problems.pop().ok_or_else(|| Error::Precondition("no factors given".into()))?;
    while let Some(outer) = problems.pop() {
        acc = compose_problems(&outer, &acc)?;
    }
    Ok(acc)
}

/// Coefficients expressing the product-basis coordinate `β_k` through the
/// Cauchy data: `β_k = Σ_i conv[k][i] f_i`, each entry a differential
/// operator in the space variables.
pub fn data_conversion(factors: &[FirstOrderFactor]) -> Vec<Vec<OperatorExpr>> {
    let m = factors.len();
    (0..m)
        .map(|k| {
            let rest = factors[k + 1..].iter().fold(Poly::constant(ExactComplex::one()), |acc, f| acc.mul(&f.symbol()));
            let mut row = vec![Poly::zero(); m];
            for (mono, c) in rest.terms() {
                let (e, space) = mono.split_var(0);
                row[e as usize].add_term(space, c.clone());
            }
            row.iter().map(OperatorExpr::from_diff_poly).collect()
        })
        .collect()
}

pub fn solve_cauchy(problem: &CauchyProblem) -> Result<CauchySolution> {
    problem.validate()?;
    let factors = problem.simple_factors();
    let product = compose_factors(&factors)?;
    let conv = data_conversion(&factors);
    let m = factors.len();
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = OperatorExpr::zero();
        for (k, conv_row) in conv.iter().enumerate() {
            row = row.add(&product.state.row_operator(k).then(&conv_row[i]));
        }
        rows.push(normalize_or_raw(row));
    }
    let state = StateOperator { rows, lift: LinearSubst::identity() };
    let u = state.apply(&problem.data)?;
    Ok(CauchySolution { u, operator: product.problem.operator.clone(), state, signal: product.signal.clone(), product })
}

/// Checks `T∘H = 0` (for every row) and `T∘G = 1` by normalization. `None`
/// when the budget ran out.
pub fn operator_identities(t: &OperatorExpr, state: &StateOperator, signal: &SignalOperator) -> Option<(bool, bool)> {
    let mut th_zero = true;
    for k in 0..state.rows.len() {
        let th = t.then(&state.row_operator(k)).normalize().ok()?;
        th_zero &= th.is_zero();
    }
    let tg = t.then(&signal.op).normalize().ok()?;
    Some((th_zero, tg == OperatorExpr::identity() && signal.correction.is_none()))
}

/// Word `D_0^k`.
pub fn lead_power(k: usize) -> OperatorExpr {
    OperatorExpr::word(vec![Generator::Diff(0); k])
}

/// Functional `β ∘ Q` for the `k`-th product-basis entry, kept for
/// inspection.
pub fn product_functional(factors: &[FirstOrderFactor], k: usize) -> BoundaryFunctional {
    let rest = factors[k + 1..].iter().fold(Poly::constant(ExactComplex::one()), |acc, f| acc.mul(&f.symbol()));
    BoundaryFunctional::cauchy(0).then(&OperatorExpr::from_diff_poly(&rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::trace;
    use crate::syntax::{parse_exppoly as ep, parse_operator as op};

    fn c(s: &str) -> ExactComplex {
        s.parse().unwrap()
    }

    fn transport() -> FirstOrderFactor {
        FirstOrderFactor::from_ints(0, &[1, 2])
    }

    #[test]
    fn ordering_examples() {
        assert_eq!(order_variables(&FirstOrderFactor::from_ints(0, &[1, 1, 1])).unwrap(), vec![1, 2]);
        assert_eq!(order_variables(&FirstOrderFactor::from_ints(0, &[1, -1, 1])).unwrap(), vec![2, 1]);
        assert_eq!(order_variables(&FirstOrderFactor::from_ints(3, &[2])).unwrap(), Vec::<usize>::new());
        assert!(matches!(order_variables(&FirstOrderFactor::from_ints(0, &[1, -1, -1])), Err(Error::NoOrdering)));
        assert!(matches!(order_variables(&FirstOrderFactor::from_ints(0, &[0, 1])), Err(Error::ZeroLeadCoefficient)));
    }

    #[test]
    fn charvar_examples() {
        let (z, zi) = charvar_matrix(&transport(), &[1]).unwrap();
        assert_eq!(z, Matrix::from_rows(vec![vec![c("1"), c("0")], vec![c("1"), c("-1/2")]]).unwrap());
        assert_eq!(zi.mul(&z).unwrap(), Matrix::identity(2));
        let (z, _) = charvar_matrix(&FirstOrderFactor::from_ints(1, &[1]), &[]).unwrap();
        assert_eq!(z, Matrix::identity(1));
        let (z, _) = charvar_matrix(&FirstOrderFactor::from_ints(0, &[1, -1]), &[1]).unwrap();
        assert_eq!(z.row(1), &[c("1"), c("1")]);
    }

    #[test]
    fn first_order_state_examples() {
        let h = first_order_state(&transport()).unwrap();
        assert_eq!(h.apply(&[ep("exp(3*x1)").unwrap()]).unwrap(), ep("exp(3*x1 - 6*t)").unwrap());
        let h = first_order_state(&FirstOrderFactor::from_ints(1, &[1])).unwrap();
        assert_eq!(h.apply(&[ep("5").unwrap()]).unwrap(), ep("5*exp(-t)").unwrap());
        assert!(h.apply(&[ExpPoly::zero()]).unwrap().is_zero());
    }

    #[test]
    fn rightinv_examples() {
        let g = first_order_rightinv(&FirstOrderFactor::from_ints(0, &[1])).unwrap();
        assert_eq!(g.op, OperatorExpr::int(0));
        let g = first_order_rightinv(&transport()).unwrap();
        assert_eq!(g.apply(&ExpPoly::one()).unwrap(), ep("t").unwrap());
        let g = first_order_rightinv(&FirstOrderFactor::from_ints(1, &[1])).unwrap();
        assert_eq!(g.apply(&ExpPoly::one()).unwrap(), ep("1 - exp(-t)").unwrap());
    }

    #[test]
    fn identities_hold_by_normalization() {
        for f in [transport(), FirstOrderFactor::from_ints(1, &[1]), FirstOrderFactor::from_ints(-2, &[3, 1, -1])] {
            let h = first_order_state(&f).unwrap();
            let g = first_order_rightinv(&f).unwrap();
            assert_eq!(operator_identities(&f.operator(), &h, &g), Some((true, true)), "{f:?}");
        }
    }

    #[test]
    fn fallback_variables_still_solve() {
        let f = FirstOrderFactor::from_ints(0, &[1, -1, -1]);
        assert!(!characteristics(&f).unwrap().ordered);
        let h = first_order_state(&f).unwrap();
        let u = h.apply(&[ep("x1*x2^2 + exp(x2)").unwrap()]).unwrap();
        assert!(f.operator().apply(&u).is_zero());
        assert_eq!(u.at_zero(0), ep("x1*x2^2 + exp(x2)").unwrap());
    }

    #[test]
    fn ck_examples() {
        assert!(check_ck_form(&op("D0 . D0 - D1 . D1").unwrap(), 2));
        assert!(!check_ck_form(&op("D1 . D1").unwrap(), 2));
        assert!(!check_ck_form(&op("D0 + D0 . D1").unwrap(), 1));
        assert!(!check_ck_form(&op("D0 + D0 . D1").unwrap(), 2));
        let wave = op("D0 . D0 - D1 . D1").unwrap();
        assert_eq!(ck_normalize(&wave).unwrap(), (wave.clone(), LinearSubst::identity()));
        let mixed = op("D1 . D0").unwrap();
        let (t2, m) = ck_normalize(&mixed).unwrap();
        assert!(check_ck_form(&t2, 2));
        let lhs = mixed.compose(&OperatorExpr::subst(m.clone())).unwrap();
        let rhs = OperatorExpr::subst(m).compose(&t2).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn factorization_examples() {
        let wave = op("D0 . D0 - D1 . D1").unwrap();
        let fs = [FirstOrderFactor::from_ints(0, &[1, -1]), FirstOrderFactor::from_ints(0, &[1, 1])];
        assert!(verify_factorization(&wave, &fs));
        let sq = op("D0 . D0 + 2*D0 . D1 + D1 . D1").unwrap();
        assert!(verify_factorization(&sq, &[FirstOrderFactor::from_ints(0, &[1, 1]).with_multiplicity(2)]));
        let heat = op("D0 - D1 . D1").unwrap();
        assert!(!verify_factorization(&heat, &fs));
        assert!(!verify_factorization(&heat, &[FirstOrderFactor::from_ints(0, &[1, 1]).with_multiplicity(2)]));
    }

    #[test]
    fn kernel_generators() {
        let gens = general_solution_power(&FirstOrderFactor::from_ints(0, &[1]), 2).unwrap();
        let u = gens[0].apply(&[ExpPoly::one()]).unwrap().add(&gens[1].apply(&[ExpPoly::one()]).unwrap());
        assert_eq!(u, ep("1 + t").unwrap());
        let f = FirstOrderFactor::from_ints(0, &[1, 1]);
        let t2 = f.operator().compose(&f.operator()).unwrap();
        for g in general_solution_power(&f, 2).unwrap() {
            let u = g.apply(&[ep("x1").unwrap()]).unwrap();
            assert!(t2.apply(&u).is_zero());
            assert!(!u.is_zero());
        }
    }

    #[test]
    fn wave_examples() {
        let fs = vec![FirstOrderFactor::from_ints(0, &[1, -1]), FirstOrderFactor::from_ints(0, &[1, 1])];
        let p = CauchyProblem::new(1, fs.clone(), vec![ep("x1^2").unwrap(), ExpPoly::zero()]);
        let s = solve_cauchy(&p).unwrap();
        assert_eq!(s.u, ep("x1^2 + t^2").unwrap());
        let p = CauchyProblem::new(1, fs, vec![ExpPoly::zero(), ep("x1").unwrap()]);
        let s = solve_cauchy(&p).unwrap();
        assert_eq!(s.u, ep("t*x1").unwrap());
        assert_eq!(trace(&p.basis(), &s.u).unwrap(), p.data);
    }

    #[test]
    fn arity_and_lead_errors() {
        let p = CauchyProblem::new(1, vec![transport()], vec![]);
        assert!(matches!(solve_cauchy(&p), Err(Error::Arity { expected: 1, got: 0 })));
        let p = CauchyProblem::new(1, vec![FirstOrderFactor::from_ints(0, &[0, 1])], vec![ExpPoly::one()]);
        assert!(matches!(solve_cauchy(&p), Err(Error::ZeroLeadCoefficient)));
    }
}
