//! Partial integro-differential operators with linear substitutions.
//!
//! An [`OperatorExpr`] is a finite sum of scalar multiples of words over
//! [`Generator`]s. A word `[g0, g1, .., gk]` denotes the composition
//! `g0 ∘ g1 ∘ .. ∘ gk`, so `gk` acts first.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exppoly::{ExpPoly, Frequency, VarIndex};
use crate::matrix::LinearSubst;
use crate::poly::{Monomial, Poly};
use crate::random;
use crate::scalar::ExactComplex;

/// Default rewrite step budget per normalization.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Generator {
    /// `∂/∂x_i`
    Diff(VarIndex),
    /// `u ↦ ∫_0^{x_i} u`
    Int(VarIndex),
    /// `u(x) ↦ u(Mx)`
    Subst(LinearSubst),
    /// `u ↦ f·u`
    MulBy(ExpPoly),
}

impl Generator {
    pub fn apply(&self, u: &ExpPoly) -> ExpPoly {
        match self {
            Generator::Diff(i) => u.diff(*i),
            Generator::Int(i) => u.integrate(*i),
            Generator::Subst(m) => u.subst(m),
            Generator::MulBy(f) => f.mul(u),
        }
    }

    fn width(&self) -> usize {
        match self {
            Generator::Diff(i) | Generator::Int(i) => i + 1,
            Generator::Subst(m) => m.dim(),
            Generator::MulBy(f) => f.width(),
        }
    }
}

pub type Word = Vec<Generator>;

/// Formal sum `Σ c_w · w`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OperatorExpr {
    terms: BTreeMap<Word, ExactComplex>,
}

fn add_into(map: &mut BTreeMap<Word, ExactComplex>, w: Word, c: ExactComplex) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(v) => {
            *v += &c;
            if v.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, c);
        }
    }
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr::default()
    }

    pub fn identity() -> Self {
        OperatorExpr::scalar(ExactComplex::one())
    }

    pub fn scalar(c: ExactComplex) -> Self {
        OperatorExpr::term(c, Vec::new())
    }

    pub fn term(c: ExactComplex, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, w, c);
        OperatorExpr { terms }
    }

    pub fn word(w: Word) -> Self {
        OperatorExpr::term(ExactComplex::one(), w)
    }

    pub fn generator(g: Generator) -> Self {
        OperatorExpr::word(vec![g])
    }

    pub fn diff(i: VarIndex) -> Self {
        OperatorExpr::generator(Generator::Diff(i))
    }

    pub fn int(i: VarIndex) -> Self {
        OperatorExpr::generator(Generator::Int(i))
    }

    pub fn subst(m: LinearSubst) -> Self {
        OperatorExpr::generator(Generator::Subst(m))
    }

    pub fn mul_by(f: ExpPoly) -> Self {
        OperatorExpr::generator(Generator::MulBy(f))
    }

    /// Constant-coefficient differential operator from a polynomial in the
    /// symbols `D_0, D_1, ..`: the monomial `D^β` becomes the word
    /// `D0^β0 . D1^β1 . ..`.
    pub fn from_diff_poly(p: &Poly) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms() {
            add_into(&mut terms, diff_word(m), c.clone());
        }
        OperatorExpr { terms }
    }

    /// Inverse of [`from_diff_poly`](Self::from_diff_poly): `Some` when every
    /// word consists of `Diff` generators only.
    pub fn to_diff_poly(&self) -> Option<Poly> {
        let mut p = Poly::zero();
        for (w, c) in &self.terms {
            let mut exps = Vec::new();
            for g in w {
                let Generator::Diff(i) = g else { return None };
                if exps.len() <= *i {
                    exps.resize(i + 1, 0);
                }
                exps[*i] += 1;
            }
            p.add_term(Monomial::new(exps), c.clone());
        }
        Some(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &OperatorExpr) -> OperatorExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> OperatorExpr {
        self.scale(&-ExactComplex::one())
    }

    pub fn scale(&self, s: &ExactComplex) -> OperatorExpr {
        if s.is_zero() {
            return OperatorExpr::zero();
        }
        OperatorExpr { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect() }
    }

    /// Unnormalized composition `self ∘ rhs` (word concatenation).
    pub fn then(&self, rhs: &OperatorExpr) -> OperatorExpr {
        let mut terms = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().cloned());
                add_into(&mut terms, w, ca * cb);
            }
        }
        OperatorExpr { terms }
    }

    /// Normalized composition `self ∘ rhs`.
    pub fn compose(&self, rhs: &OperatorExpr) -> Result<OperatorExpr> {
        self.then(rhs).normalize()
    }

    /// One past the largest variable index any generator touches.
    pub fn width(&self) -> usize {
        self.terms.keys().flat_map(|w| w.iter().map(Generator::width)).max().unwrap_or(0)
    }

    pub fn apply(&self, u: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (w, c) in &self.terms {
            let mut v = u.clone();
            for g in w.iter().rev() {
                if v.is_zero() {
                    break;
                }
                v = g.apply(&v);
            }
            out = out.add(&v.scale(c));
        }
        out
    }

    pub fn normalize(&self) -> Result<OperatorExpr> {
        Normalizer::default().run(self)
    }

    /// Whether some word still holds an `Int` left of a `Subst` that no rule
    /// could move.
    pub fn has_int_subst_word(&self) -> bool {
        self.terms.keys().any(|w| {
            w.iter().enumerate().any(|(p, g)| {
                matches!(g, Generator::Int(_)) && w[p + 1..].iter().any(|h| matches!(h, Generator::Subst(_)))
            })
        })
    }
}

fn diff_word(m: &Monomial) -> Word {
    let mut w = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        for _ in 0..e {
            w.push(Generator::Diff(i));
        }
    }
    w
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_operator(self))
    }
}

impl fmt::Debug for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Op({self})")
    }
}

/// Which redex of a word is rewritten first.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Strategy {
    /// Rightmost redex first: the one nearest the argument.
    #[default]
    Innermost,
    /// Leftmost redex first.
    Outermost,
}

#[derive(Clone, Copy, Debug)]
pub struct Normalizer {
    pub strategy: Strategy,
    pub budget: usize,
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer { strategy: Strategy::Innermost, budget: DEFAULT_BUDGET }
    }
}

/// A rule instance: replace `word[start..start + len]` by the weighted sum
/// of `replacement` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub rule: Rule,
    pub start: usize,
    pub len: usize,
    pub replacement: Vec<(ExactComplex, Word)>,
}

/// Rule names, used by soundness tests and step statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `Subst(M)·Subst(N) → Subst(N·M)`
    SubstSubst,
    /// `D_i·Subst(M) → Σ_j M[j,i] Subst(M)·D_j`
    ChainRule,
    /// `D_i·f → f' + f·D_i`
    Leibniz,
    /// `Subst(M)·f → (f∘M)·Subst(M)`
    SubstMul,
    /// `D_i·A_i → 1`
    Section,
    /// `D_i·A_j → A_j·D_i`, `i ≠ j`
    DiffIntCommute,
    /// `A_i·f·A_i → F·A_i − A_i·F`, `F = A_i f`
    RotaBaxter,
    /// `A_i·D^β → (1 − E_i)·D^{β−e_i}` for `β_i > 0`
    Evaluation,
    /// `f·g → fg`
    MulMul,
    /// Splits `MulBy` into exponential monomials, drops `MulBy(0)`,
    /// `MulBy(1)` and `Subst(I)`.
    Linearity,
    /// `D_i·D_j → D_j·D_i` for `i > j`
    SortDiff,
    /// `A_i·f·D^β → f·D^{β−e_i} − f|₀·E_i·D^{β−e_i} − A_i·f'·D^{β−e_i}`
    ByParts,
    /// `A_i·(g·h) → h·A_i·g` for `h` free of `x_i`
    PullOut,
    /// `[A_i·[g]·]Subst(M)` when `M` scales `x_i` alone, or drops it
    IntSubst,
    /// `Subst(M)·X·A_i → 0` when row `i` of `M` is zero and `X` keeps
    /// functions vanishing on `x_i = 0` vanishing there
    SubstKillsInt,
    /// `A_i·[f]·A_j → A_j·A_i·[f]` for `j < i`
    SortInt,
}

impl Rule {
    pub const ALL: [Rule; 16] = [
        Rule::SubstSubst,
        Rule::ChainRule,
        Rule::Leibniz,
        Rule::SubstMul,
        Rule::Section,
        Rule::DiffIntCommute,
        Rule::RotaBaxter,
        Rule::Evaluation,
        Rule::MulMul,
        Rule::Linearity,
        Rule::SortDiff,
        Rule::ByParts,
        Rule::PullOut,
        Rule::IntSubst,
        Rule::SubstKillsInt,
        Rule::SortInt,
    ];
}

/// `MulBy(m)` with `m` a single exponential monomial of coefficient 1, other
/// than the constant 1.
fn canonical_mul(g: &Generator) -> Option<&ExpPoly> {
    match g {
        Generator::MulBy(f) if is_unit_monomial(f) => Some(f),
        _ => None,
    }
}

fn is_unit_monomial(f: &ExpPoly) -> bool {
    let mut it = f.monomials();
    match (it.next(), it.next()) {
        (Some((c, m, freq)), None) => c.is_one() && !(m.is_one() && freq.is_zero()),
        _ => false,
    }
}

/// Splits a unit monomial into its `x_i` part and the rest.
fn split_monomial(f: &ExpPoly, i: VarIndex) -> (ExpPoly, ExpPoly) {
    let (_, m, freq) = f.monomials().next().expect("unit monomial");
    let (e, rest_m) = m.split_var(i);
    let lam = freq.get(i);
    let own = ExpPoly::monomial(ExactComplex::one(), Monomial::var_pow(i, e), Frequency::from_pairs([(i, lam)]));
    let rest = ExpPoly::monomial(ExactComplex::one(), rest_m, freq.without(i));
    (own, rest)
}

fn mul_or_unit(f: ExpPoly) -> Word {
    if f == ExpPoly::one() {
        Vec::new()
    } else {
        vec![Generator::MulBy(f)]
    }
}

fn concat(parts: &[&[Generator]]) -> Word {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// The maximal run of `Diff` generators starting at `from`.
fn diff_block(w: &[Generator], from: usize) -> &[Generator] {
    let end = w[from..].iter().position(|g| !matches!(g, Generator::Diff(_))).map_or(w.len(), |k| from + k);
    &w[from..end]
}

fn remove_diff(block: &[Generator], i: VarIndex) -> Option<Word> {
    let k = block.iter().position(|g| *g == Generator::Diff(i))?;
    let mut out = block.to_vec();
    out.remove(k);
    Some(out)
}

fn one() -> ExactComplex {
    ExactComplex::one()
}

fn rw(rule: Rule, start: usize, len: usize, replacement: Vec<(ExactComplex, Word)>) -> Option<Rewrite> {
    Some(Rewrite { rule, start, len, replacement })
}

/// The rewrite applicable at position `p`, if any. Rules read at most three
/// generators starting at `p` (or a whole `Diff` block).
pub fn rewrite_at(w: &[Generator], p: usize) -> Option<Rewrite> {
    let g = &w[p];
    // single-generator rules
    match g {
        Generator::MulBy(f) if !is_unit_monomial(f) => {
            let repl = f
                .monomials()
                .map(|(c, m, freq)| {
                    let unit = ExpPoly::monomial(one(), m.clone(), freq.clone());
                    (c.clone(), mul_or_unit(unit))
                })
                .collect();
            return rw(Rule::Linearity, p, 1, repl);
        }
        Generator::Subst(m) if m.is_identity() => return rw(Rule::Linearity, p, 1, vec![(one(), vec![])]),
        _ => {}
    }
    if let Generator::Subst(m) = g {
        if let Some(r) = subst_kills(w, p, m) {
            return Some(r);
        }
    }
    let h = w.get(p + 1)?;
    if let Generator::MulBy(_) = h {
        canonical_mul(h)?;
    }
    if let Generator::Subst(m) = h {
        if m.is_identity() {
            return None;
        }
    }
    match (g, h) {
        (Generator::MulBy(f), Generator::MulBy(k)) => rw(Rule::MulMul, p, 2, vec![(one(), mul_or_unit(f.mul(k)))]),
        (Generator::Subst(m), Generator::Subst(n)) => {
            rw(Rule::SubstSubst, p, 2, vec![(one(), vec![Generator::Subst(n.mul(m))])])
        }
        (Generator::Subst(m), Generator::MulBy(f)) => {
            rw(Rule::SubstMul, p, 2, vec![(one(), concat(&[&mul_or_unit(f.subst(m)), std::slice::from_ref(g)]))])
        }
        (Generator::Diff(i), Generator::Subst(m)) => {
            let repl = m.column_terms(*i).into_iter().map(|(j, c)| (c, vec![h.clone(), Generator::Diff(j)])).collect();
            rw(Rule::ChainRule, p, 2, repl)
        }
        (Generator::Diff(i), Generator::MulBy(f)) => rw(
            Rule::Leibniz,
            p,
            2,
            vec![(one(), mul_or_unit(f.diff(*i))), (one(), vec![h.clone(), g.clone()])]
                .into_iter()
                .filter(|(_, w)| !matches!(w.first(), Some(Generator::MulBy(z)) if z.is_zero()))
                .collect(),
        ),
        (Generator::Diff(i), Generator::Int(j)) if i == j => rw(Rule::Section, p, 2, vec![(one(), vec![])]),
        (Generator::Diff(_), Generator::Int(_)) => {
            rw(Rule::DiffIntCommute, p, 2, vec![(one(), vec![h.clone(), g.clone()])])
        }
        (Generator::Diff(i), Generator::Diff(j)) if i > j => {
            rw(Rule::SortDiff, p, 2, vec![(one(), vec![h.clone(), g.clone()])])
        }
        (Generator::Int(i), _) => int_rules(w, p, *i),
        _ => None,
    }
}

/// End of the run starting at `from` of generators that commute with both
/// `A_i` and `D_i`: integrals in other variables and multipliers free of
/// `x_i`.
fn commuting_run(w: &[Generator], from: usize, i: VarIndex) -> usize {
    let mut q = from;
    while let Some(g) = w.get(q) {
        let ok = match g {
            Generator::Int(j) => *j != i,
            Generator::MulBy(f) => is_unit_monomial(f) && !f.depends_on(i),
            _ => false,
        };
        if !ok {
            break;
        }
        q += 1;
    }
    q
}

/// Whether `g` maps functions vanishing on `x_i = 0` to such functions.
fn keeps_vanishing(g: &Generator, i: VarIndex) -> bool {
    match g {
        Generator::MulBy(_) => true,
        Generator::Int(j) | Generator::Diff(j) => *j != i,
        Generator::Subst(n) => n.row_terms(i).iter().all(|(k, _)| *k == i),
    }
}

/// `Subst(M)·X·A_i → 0` when row `i` of `M` is zero and `X` keeps
/// functions vanishing on `x_i = 0` vanishing there.
fn subst_kills(w: &[Generator], p: usize, m: &LinearSubst) -> Option<Rewrite> {
    for i in 0..m.dim() {
        if !m.row_is_zero(i) {
            continue;
        }
        for (q, g) in w.iter().enumerate().skip(p + 1) {
            if *g == Generator::Int(i) {
                return rw(Rule::SubstKillsInt, p, q + 1 - p, vec![]);
            }
            if !keeps_vanishing(g, i) {
                break;
            }
        }
    }
    None
}

fn int_rules(w: &[Generator], p: usize, i: VarIndex) -> Option<Rewrite> {
    let g = &w[p];
    let h = &w[p + 1];
    let xi = ExpPoly::var(i);
    match h {
        Generator::Int(j) if *j == i => {
            return rw(
                Rule::RotaBaxter,
                p,
                2,
                vec![
                    (one(), vec![Generator::MulBy(xi.clone()), g.clone()]),
                    (-one(), vec![g.clone(), Generator::MulBy(xi)]),
                ],
            )
        }
        Generator::Int(j) if *j < i => {
            return rw(Rule::SortInt, p, 2, vec![(one(), vec![h.clone(), g.clone()])]);
        }
        Generator::Subst(m) => {
            return if let Some(c) = m.isolated_scale(i) {
                let inv = c.inv().expect("isolated scale is nonzero");
                rw(Rule::IntSubst, p, 2, vec![(inv, vec![h.clone(), g.clone()])])
            } else if m.column_is_zero(i) {
                rw(Rule::IntSubst, p, 2, vec![(one(), vec![Generator::MulBy(xi), h.clone()])])
            } else {
                None
            };
        }
        _ => {}
    }
    let mut f = None;
    if let Generator::MulBy(m) = h {
        let (own, rest) = split_monomial(m, i);
        if rest != ExpPoly::one() {
            return rw(
                Rule::PullOut,
                p,
                2,
                vec![(one(), concat(&[&[Generator::MulBy(rest)], std::slice::from_ref(g), &mul_or_unit(own)]))],
            );
        }
        // `m` depends on x_i alone from here on
        match w.get(p + 2) {
            Some(Generator::Int(j)) if *j < i => {
                return rw(Rule::SortInt, p, 3, vec![(one(), vec![w[p + 2].clone(), g.clone(), h.clone()])]);
            }
            Some(k @ Generator::Subst(n)) => {
                return if let Some(c) = n.isolated_scale(i) {
                    let inv = c.inv().expect("isolated scale is nonzero");
                    let mut scale = vec![ExactComplex::one(); i + 1];
                    scale[i] = inv.clone();
                    let pulled = m.subst(&LinearSubst::diagonal(&scale));
                    rw(Rule::IntSubst, p, 3, vec![(inv, concat(&[&[k.clone(), g.clone()], &mul_or_unit(pulled)]))])
                } else if n.column_is_zero(i) {
                    rw(Rule::IntSubst, p, 3, vec![(one(), vec![Generator::MulBy(m.integrate(i)), k.clone()])])
                } else {
                    None
                };
            }
            _ => {}
        }
        f = Some(m);
    }
    // A_i·[f]·R·X with R commuting with A_i, f and D_i
    let run_start = p + 1 + usize::from(f.is_some());
    let run_end = commuting_run(w, run_start, i);
    let run = &w[run_start..run_end];
    match (w.get(run_end)?, f) {
        (Generator::Int(j), None) if *j == i => {
            // A_i·R·A_i = R·A_i·A_i
            rw(
                Rule::RotaBaxter,
                p,
                run_end + 1 - p,
                vec![
                    (one(), concat(&[run, &[Generator::MulBy(xi.clone()), g.clone()]])),
                    (-one(), concat(&[run, &[g.clone(), Generator::MulBy(xi)]])),
                ],
            )
        }
        (Generator::Int(j), Some(m)) if *j == i => {
            let big_f = m.integrate(i);
            rw(
                Rule::RotaBaxter,
                p,
                run_end + 1 - p,
                vec![
                    (one(), concat(&[run, &[Generator::MulBy(big_f.clone()), g.clone()]])),
                    (-one(), concat(&[run, &[g.clone(), Generator::MulBy(big_f)]])),
                ],
            )
        }
        (Generator::Diff(_), f) => {
            let block = diff_block(w, run_end);
            let rest = remove_diff(block, i)?;
            let eval_i = Generator::Subst(LinearSubst::evaluation(i));
            let len = run_end + block.len() - p;
            match f {
                None => rw(
                    Rule::Evaluation,
                    p,
                    len,
                    vec![(one(), concat(&[run, &rest])), (-one(), concat(&[run, &[eval_i], &rest]))],
                ),
                Some(m) => {
                    let mut repl = vec![
                        (one(), concat(&[run, std::slice::from_ref(h), &rest])),
                        (-one(), concat(&[run, &mul_or_unit(m.at_zero(i)), &[eval_i], &rest])),
                    ];
                    let dm = m.diff(i);
                    if !dm.is_zero() {
                        repl.push((-one(), concat(&[run, &[g.clone(), Generator::MulBy(dm)], &rest])));
                    }
                    rw(Rule::ByParts, p, len, repl)
                }
            }
        }
        _ => None,
    }
}

/// First rewrite of a word under `strategy`.
pub fn find_rewrite(w: &[Generator], strategy: Strategy) -> Option<Rewrite> {
    match strategy {
        Strategy::Outermost => (0..w.len()).find_map(|p| rewrite_at(w, p)),
        Strategy::Innermost => (0..w.len()).rev().find_map(|p| rewrite_at(w, p)),
    }
}

impl Rewrite {
    pub fn apply_to(&self, w: &[Generator]) -> Vec<(ExactComplex, Word)> {
        self.replacement
            .iter()
            .map(|(c, mid)| (c.clone(), concat(&[&w[..self.start], mid, &w[self.start + self.len..]])))
            .collect()
    }
}

impl Normalizer {
    pub fn new(strategy: Strategy, budget: usize) -> Self {
        Normalizer { strategy, budget }
    }

    /// Rewrites until no rule applies. Like terms are merged as soon as they
    /// appear so cancellations happen before further expansion.
    pub fn run(&self, op: &OperatorExpr) -> Result<OperatorExpr> {
        let mut pending = op.terms.clone();
        let mut done = BTreeMap::new();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_first() {
            match find_rewrite(&w, self.strategy) {
                None => add_into(&mut done, w, c),
                Some(r) => {
                    steps += 1;
                    if steps > self.budget {
                        return Err(Error::BudgetExceeded { budget: self.budget });
                    }
                    for (k, nw) in r.apply_to(&w) {
                        add_into(&mut pending, nw, &c * &k);
                    }
                }
            }
        }
        Ok(OperatorExpr { terms: done })
    }
}

/// Semantic comparison on a deterministic pseudo-random sample of
/// exponential monomials. A semi-decision: `false` is always correct.
pub fn op_equal_via_probing(a: &OperatorExpr, b: &OperatorExpr, sample_size: usize, seed: u64) -> bool {
    probe_witness(a, b, sample_size, seed).is_none()
}

/// A probe input on which the two operators differ.
pub fn probe_witness(a: &OperatorExpr, b: &OperatorExpr, sample_size: usize, seed: u64) -> Option<ExpPoly> {
    if a == b {
        return None;
    }
    let nvars = a.width().max(b.width()).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..sample_size.max(1)).map(|_| random::exp_monomial(&mut rng, nvars, 3)).find(|u| a.apply(u) != b.apply(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_exppoly as ep, parse_operator as op};

    #[test]
    fn apply_examples() {
        assert_eq!(op("D1 . A1").unwrap().apply(&ep("x1^3 + exp(t)").unwrap()), ep("x1^3 + exp(t)").unwrap());
        assert_eq!(op("A1 . D1").unwrap().apply(&ep("x1 + 1").unwrap()), ep("x1").unwrap());
        let a = op("mul(exp(-2*t)) . subst[[1,0],[-2,1]]").unwrap();
        assert_eq!(a.apply(&ep("exp(3*x1)").unwrap()), ep("exp(-2*t)*exp(3*(x1 - 2*t))").unwrap());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(op("D1 . A1").unwrap().normalize().unwrap(), OperatorExpr::identity());
        let r = op("A1 . D1").unwrap().normalize().unwrap();
        assert_eq!(r, OperatorExpr::identity().sub(&OperatorExpr::subst(LinearSubst::evaluation(1))));
        let r = op("D1 . subst[[1,0],[0,2]]").unwrap().normalize().unwrap();
        assert_eq!(r, op("2*subst[[1,0],[0,2]] . D1").unwrap());
        let e = ep("exp(x1)").unwrap();
        assert_eq!(r.apply(&e), op("D1 . subst[[1,0],[0,2]]").unwrap().apply(&e));
    }

    #[test]
    fn compose_examples() {
        let a = op("D0 + D1").unwrap();
        let b = op("D0 - D1").unwrap();
        assert_eq!(a.compose(&b).unwrap(), op("D0 . D0 - D1 . D1").unwrap());
        assert_eq!(OperatorExpr::identity().compose(&a).unwrap(), a);
        assert!(a.add(&a.scale(&(-1).into())).is_zero());
    }

    #[test]
    fn probing_examples() {
        let d1 = OperatorExpr::diff(1);
        assert!(op_equal_via_probing(&d1, &d1, 5, 1));
        assert!(op_equal_via_probing(&op("D1 . A1").unwrap(), &OperatorExpr::identity(), 5, 1));
        assert!(!op_equal_via_probing(&d1, &OperatorExpr::diff(2), 5, 1));
    }

    #[test]
    fn budget_is_reported() {
        let a = op("D1 . D1 . D1 . mul(x1^3*exp(x1))").unwrap();
        let err = Normalizer::new(Strategy::Innermost, 3).run(&a).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 3 }));
    }

    #[test]
    fn int_subst_unsound_row_only_instance_is_not_rewritten() {
        // t ↦ t + x1: row 1 is e_1 but column 1 is not, and A1 does not
        // commute with the substitution.
        let w = op("A1 . subst[[1,1],[0,1]]").unwrap();
        let u = ep("t").unwrap();
        let swapped = op("subst[[1,1],[0,1]] . A1").unwrap();
        assert_ne!(w.apply(&u), swapped.apply(&u));
        assert_eq!(w.normalize().unwrap(), w);
        assert!(w.has_int_subst_word());
    }
}
