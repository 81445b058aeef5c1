//! Boundary problems described by boundary bases: traces, interpolators,
//! state and signal operators, kernel projectors, products of problems, and
//! the evaluation-matrix method for finite-dimensional kernels.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exppoly::{ExpPoly, VarIndex};
use crate::matrix::{LinearSubst, Matrix};
use crate::operator::{Generator, Normalizer, OperatorExpr};
use crate::poly::Monomial;
use crate::scalar::ExactComplex;

/// Terminal evaluation of a boundary functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    /// Parametric evaluation `u ↦ u(Mx)`; variables kept by `M` stay free.
    Subst(LinearSubst),
    /// `u ↦ u|_{x_var = value}`.
    Point { var: VarIndex, value: ExactComplex },
}

/// `u ↦ eval(word u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryFunctional {
    pub word: OperatorExpr,
    pub eval: Evaluation,
}

impl BoundaryFunctional {
    /// `u ↦ (D_t^k u)|_{t=0}`, a function of the space variables.
    pub fn cauchy(k: usize) -> Self {
        BoundaryFunctional {
            word: OperatorExpr::word(vec![Generator::Diff(0); k]),
            eval: Evaluation::Subst(LinearSubst::evaluation(0)),
        }
    }

    /// `u ↦ (D_var^k u)(value)`.
    pub fn point(var: VarIndex, value: ExactComplex, k: usize) -> Self {
        BoundaryFunctional {
            word: OperatorExpr::word(vec![Generator::Diff(var); k]),
            eval: Evaluation::Point { var, value },
        }
    }

    pub fn apply(&self, u: &ExpPoly) -> Result<ExpPoly> {
        let v = self.word.apply(u);
        match &self.eval {
            Evaluation::Subst(m) => Ok(v.subst(m)),
            Evaluation::Point { var, value } => v
                .eval_var(*var, value)
                .ok_or_else(|| Error::NotRepresentable(format!("value of {v} at x{var} = {value} is transcendental"))),
        }
    }

    /// `β ∘ T`.
    pub fn then(&self, op: &OperatorExpr) -> BoundaryFunctional {
        BoundaryFunctional { word: self.word.then(op), eval: self.eval.clone() }
    }

    /// The functional as a single operator, when its evaluation is a
    /// substitution.
    pub fn as_operator(&self) -> Option<OperatorExpr> {
        match &self.eval {
            Evaluation::Subst(m) => Some(OperatorExpr::subst(m.clone()).then(&self.word)),
            Evaluation::Point { .. } => None,
        }
    }

    fn cauchy_index(&self) -> Option<usize> {
        if self.eval != Evaluation::Subst(LinearSubst::evaluation(0)) {
            return None;
        }
        let mut terms = self.word.terms();
        let (w, c) = terms.next()?;
        if terms.next().is_some() || !c.is_one() || w.iter().any(|g| *g != Generator::Diff(0)) {
            return None;
        }
        Some(w.len())
    }
}

impl std::fmt::Display for BoundaryFunctional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.eval {
            Evaluation::Subst(_) => {
                let op = self.as_operator().expect("substitution evaluation");
                write!(f, "{}", normalize_or_raw(op))
            }
            Evaluation::Point { var, value } => {
                write!(
                    f,
                    "eval(x{var} = {}) . {}",
                    crate::syntax::print_scalar(value),
                    normalize_or_raw(self.word.clone())
                )
            }
        }
    }
}

/// Ordered list of functionals; the order fixes data coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BoundaryBasis {
    pub functionals: Vec<BoundaryFunctional>,
}

/// One coordinate per basis functional.
pub type BoundaryData = Vec<ExpPoly>;

impl BoundaryBasis {
    pub fn new(functionals: Vec<BoundaryFunctional>) -> Self {
        BoundaryBasis { functionals }
    }

    /// `[(D_t^k u)|_{t=0} | k = 0..m]`.
    pub fn cauchy(m: usize) -> Self {
        BoundaryBasis::new((0..m).map(BoundaryFunctional::cauchy).collect())
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    /// Order `m` when the basis is exactly the Cauchy basis of order `m`.
    pub fn cauchy_order(&self) -> Option<usize> {
        self.functionals.iter().enumerate().all(|(k, b)| b.cauchy_index() == Some(k)).then_some(self.len())
    }

    /// `[β ∘ T | β ∈ self]`.
    pub fn then(&self, op: &OperatorExpr) -> BoundaryBasis {
        BoundaryBasis::new(self.functionals.iter().map(|b| b.then(op)).collect())
    }
}

pub fn trace(basis: &BoundaryBasis, u: &ExpPoly) -> Result<BoundaryData> {
    basis.functionals.iter().map(|b| b.apply(u)).collect()
}

/// Constant-coefficient differential operator with a boundary basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryProblem {
    pub operator: OperatorExpr,
    pub basis: BoundaryBasis,
}

impl BoundaryProblem {
    pub fn new(operator: OperatorExpr, basis: BoundaryBasis) -> Result<Self> {
        if operator.to_diff_poly().is_none() {
            return Err(Error::NotDifferential(operator.to_string()));
        }
        Ok(BoundaryProblem { operator, basis })
    }
}

/// `B ↦ Σ_k row_k (B_k ∘ lift)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateOperator {
    pub rows: Vec<OperatorExpr>,
    pub lift: LinearSubst,
}

impl StateOperator {
    pub fn apply(&self, data: &[ExpPoly]) -> Result<ExpPoly> {
        if data.len() != self.rows.len() {
            return Err(Error::Arity { expected: self.rows.len(), got: data.len() });
        }
        Ok(self.rows.iter().zip(data).fold(ExpPoly::zero(), |acc, (row, f)| acc.add(&row.apply(&f.subst(&self.lift)))))
    }

    /// Row `k` with the lift folded in.
    pub fn row_operator(&self, k: usize) -> OperatorExpr {
        self.rows[k].then(&OperatorExpr::subst(self.lift.clone()))
    }
}

/// `f ↦ (1 − P)(op f)` where the correction `P` is an evaluation-matrix
/// projector, or simply `op f` when the projector is already folded into
/// `op`.
#[derive(Clone, Debug)]
pub struct SignalOperator {
    pub op: OperatorExpr,
    pub correction: Option<EvaluationProjector>,
}

impl SignalOperator {
    pub fn new(op: OperatorExpr) -> Self {
        SignalOperator { op, correction: None }
    }

    pub fn apply(&self, f: &ExpPoly) -> Result<ExpPoly> {
        let v = self.op.apply(f);
        match &self.correction {
            None => Ok(v),
            Some(p) => Ok(v.sub(&p.apply(&v)?)),
        }
    }
}

/// Normalizes, keeping the raw expression when the budget runs out.
pub(crate) fn normalize_or_raw(op: OperatorExpr) -> OperatorExpr {
    Normalizer::default().run(&op).unwrap_or(op)
}

/// Taylor interpolator `(f_1, .., f_m) ↦ Σ t^k/k! f_{k+1}` as a state-like
/// operator with identity lift.
pub fn taylor_rows(m: usize) -> StateOperator {
    let rows = (0..m)
        .map(|k| {
            let c = ExactComplex::factorial(k as u32).inv().expect("factorial is nonzero");
            let tk = ExpPoly::monomial(c, Monomial::var_pow(0, k as u32), Default::default());
            if k == 0 {
                OperatorExpr::identity()
            } else {
                OperatorExpr::mul_by(tk)
            }
        })
        .collect();
    StateOperator { rows, lift: LinearSubst::identity() }
}

pub fn taylor_interpolator(basis: &BoundaryBasis, data: &[ExpPoly]) -> Result<ExpPoly> {
    let m = basis.cauchy_order().ok_or_else(|| Error::NotCauchyBasis("expected [D_t^k u at t = 0 | k < m]".into()))?;
    if data.len() != m {
        return Err(Error::Arity { expected: m, got: data.len() });
    }
    if let Some(k) = data.iter().position(|f| f.depends_on(0)) {
        return Err(Error::Precondition(format!("datum {} depends on t", k + 1)));
    }
    taylor_rows(m).apply(data)
}

/// `P = H ∘ trc` for a basis whose functionals end in substitutions.
pub fn kernel_projector(state: &StateOperator, basis: &BoundaryBasis) -> Result<OperatorExpr> {
    if state.rows.len() != basis.len() {
        return Err(Error::Arity { expected: basis.len(), got: state.rows.len() });
    }
    let mut p = OperatorExpr::zero();
    for (k, b) in basis.functionals.iter().enumerate() {
        let beta = b
            .as_operator()
            .ok_or_else(|| Error::Precondition("point functionals need an evaluation projector".into()))?;
        p = p.add(&state.row_operator(k).then(&beta));
    }
    Ok(normalize_or_raw(p))
}

/// `G = (1 − P) ∘ rinv`.
pub fn signal_from_projector(projector: &OperatorExpr, rinv: &OperatorExpr) -> SignalOperator {
    let one_minus_p = OperatorExpr::identity().sub(projector);
    SignalOperator::new(normalize_or_raw(one_minus_p.then(rinv)))
}

/// `H = P ∘ interp`, row by row.
pub fn state_from_projector(projector: &OperatorExpr, interp: &StateOperator) -> StateOperator {
    StateOperator {
        rows: interp.rows.iter().map(|r| normalize_or_raw(projector.then(r))).collect(),
        lift: interp.lift.clone(),
    }
}

/// A boundary problem with its signal and state operators.
#[derive(Clone, Debug)]
pub struct SolvedProblem {
    pub problem: BoundaryProblem,
    pub signal: SignalOperator,
    pub state: StateOperator,
}

/// Product `(T, B)(T̃, B̃) = (T T̃, B T̃ + B̃)`, with signal operator `G̃ G`
/// and state operator `B + B̃ ↦ G̃ H(B) + H̃(B̃)`. Data coordinates of the
/// first factor come first.
pub fn compose_problems(outer: &SolvedProblem, inner: &SolvedProblem) -> Result<SolvedProblem> {
    if outer.signal.correction.is_some() || inner.signal.correction.is_some() {
        return Err(Error::Precondition("products need operator-valued signal operators".into()));
    }
    let t = &outer.problem.operator;
    let t_inner = &inner.problem.operator;
    let operator = t.compose(t_inner)?;
    let mut functionals = outer.problem.basis.then(t_inner).functionals;
    functionals.extend(inner.problem.basis.functionals.iter().cloned());
    let g_inner = &inner.signal.op;
    let signal = SignalOperator::new(normalize_or_raw(g_inner.then(&outer.signal.op)));
    let mut rows: Vec<OperatorExpr> =
        (0..outer.state.rows.len()).map(|k| normalize_or_raw(g_inner.then(&outer.state.row_operator(k)))).collect();
    rows.extend((0..inner.state.rows.len()).map(|k| normalize_or_raw(inner.state.row_operator(k))));
    Ok(SolvedProblem {
        problem: BoundaryProblem { operator, basis: BoundaryBasis::new(functionals) },
        signal,
        state: StateOperator { rows, lift: LinearSubst::identity() },
    })
}

/// `M[i][j] = β_i(u_j)`; every entry must be a constant.
pub fn evaluation_matrix(kernel: &[ExpPoly], basis: &BoundaryBasis) -> Result<Matrix> {
    if kernel.len() != basis.len() {
        return Err(Error::Dimension(format!("{} kernel functions against {} functionals", kernel.len(), basis.len())));
    }
    let mut m = Matrix::zeros(basis.len(), kernel.len());
    for (i, b) in basis.functionals.iter().enumerate() {
        for (j, u) in kernel.iter().enumerate() {
            let v = b.apply(u)?;
            m[(i, j)] = v
                .as_constant()
                .ok_or_else(|| Error::NotRepresentable(format!("functional {i} of {u} is {v}, not a constant")))?;
        }
    }
    Ok(m)
}

/// Kernel projector of a problem with finite-dimensional kernel:
/// `P u = Σ_j c_j u_j` with `c = M⁻¹ β(u)`.
#[derive(Clone, Debug)]
pub struct EvaluationProjector {
    pub kernel: Vec<ExpPoly>,
    pub basis: BoundaryBasis,
    pub inverse: Matrix,
}

impl EvaluationProjector {
    pub fn apply(&self, u: &ExpPoly) -> Result<ExpPoly> {
        let values = trace(&self.basis, u)?
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.as_constant().ok_or_else(|| Error::NotRepresentable(format!("functional {i} gives {v}"))))
            .collect::<Result<Vec<_>>>()?;
        let c = self.inverse.mul_vec(&values)?;
        Ok(self.kernel.iter().zip(&c).fold(ExpPoly::zero(), |acc, (u_j, c_j)| acc.add(&u_j.scale(c_j))))
    }
}

pub fn lode_projector(kernel: &[ExpPoly], basis: &BoundaryBasis) -> Result<EvaluationProjector> {
    let m = evaluation_matrix(kernel, basis)?;
    let inverse = m.inverse().map_err(|_| Error::NonRegular(format!("evaluation matrix {m} is singular")))?;
    Ok(EvaluationProjector { kernel: kernel.to_vec(), basis: basis.clone(), inverse })
}

/// Signal operator `(1 − P) ∘ rinv` for an evaluation-matrix projector.
pub fn lode_signal(projector: EvaluationProjector, rinv: OperatorExpr) -> SignalOperator {
    SignalOperator { op: rinv, correction: Some(projector) }
}
