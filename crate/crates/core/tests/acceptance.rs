//! Acceptance suite: ten end-to-end criteria, one report line each.
//! Runs without the libtest harness so the lines are always printed.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use pidos::boundary::{
    compose_problems, evaluation_matrix, lode_projector, lode_signal, taylor_interpolator, trace, BoundaryBasis,
    BoundaryFunctional,
};
use pidos::cauchy::{
    first_order_problem, first_order_rightinv, first_order_state, solve_cauchy, CauchyProblem, FirstOrderFactor,
};
use pidos::operator::{rewrite_at, Generator, Normalizer, Rule, Strategy, DEFAULT_BUDGET};
use pidos::oracle::{dalembert_reference, residual_check, series_solve, series_solve_with, Elimination};
use pidos::{parse_exppoly, parse_operator, random, ExactComplex, ExpPoly, Matrix, OperatorExpr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ep(s: &str) -> ExpPoly {
    parse_exppoly(s).unwrap()
}

fn transport() -> Outcome {
    let factor = FirstOrderFactor::from_ints(0, &[1, 2]);
    let problem = CauchyProblem::new(1, vec![factor], vec![ep("exp(3*x1)")]);
    let s = solve_cauchy(&problem).map_err(|e| e.to_string())?;
    let exact = ep("exp(3*x1 - 6*t)");
    ensure(s.u == exact, || format!("u = {}", s.u))?;
    let r = residual_check(&s.operator, &s.u);
    ensure(r.is_zero(), || format!("residual {r}"))?;
    ensure(trace(&problem.basis(), &s.u).unwrap() == problem.data, || "trace differs".into())?;
    let series = series_solve(&s.operator, 1, &problem.data, 8).map_err(|e| e.to_string())?;
    let taylor = s.u.taylor(8);
    let mismatches = series.coeffs().chain(taylor.coeffs()).filter(|(m, _)| series.get(m) != taylor.get(m)).count();
    ensure(mismatches == 0, || format!("{mismatches} series coefficients differ"))?;
    Ok(format!("u = {}, {} series coefficients agree", s.u, taylor.coeffs().count()))
}

fn wave_factors() -> Vec<FirstOrderFactor> {
    vec![FirstOrderFactor::from_ints(0, &[1, -1]), FirstOrderFactor::from_ints(0, &[1, 1])]
}

fn dalembert() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..20 {
        let (f, g) = (random::wave_datum(&mut rng), random::wave_datum(&mut rng));
        let problem = CauchyProblem::new(1, wave_factors(), vec![f.clone(), g.clone()]);
        let u = solve_cauchy(&problem).map_err(|e| e.to_string())?.u;
        let reference = dalembert_reference(&f, &g);
        ensure(u == reference, || format!("pair {k} (f = {f}, g = {g}): {u} vs {reference}"))?;
    }
    Ok("20 data pairs equal the reference".into())
}

fn operator_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let normalizer = Normalizer::new(Strategy::Innermost, DEFAULT_BUDGET);
    for k in 0..50 {
        let n = rng.gen_range(1..=3);
        let factor = random::first_order_factor(&mut rng, n);
        let t = factor.operator();
        let h = first_order_state(&factor).map_err(|e| e.to_string())?;
        let g = first_order_rightinv(&factor).map_err(|e| e.to_string())?;
        let th = normalizer.run(&t.then(&h.row_operator(0))).map_err(|e| format!("factor {k}: {e}"))?;
        ensure(th.is_zero(), || format!("factor {k} {factor:?}: T.H = {th}"))?;
        let tg = normalizer.run(&t.then(&g.op)).map_err(|e| format!("factor {k}: {e}"))?;
        ensure(tg == OperatorExpr::identity(), || format!("factor {k} {factor:?}: T.G = {tg}"))?;
        for _ in 0..50 {
            let f = random::exppoly(&mut rng, n + 1, 2, 2);
            let c = random::space_function(&mut rng, n, 2, 2);
            ensure(t.apply(&h.apply(std::slice::from_ref(&c)).unwrap()).is_zero(), || {
                format!("factor {k}: T H {c} != 0")
            })?;
            let tgf = t.apply(&g.apply(&f).unwrap());
            ensure(tgf == f, || format!("factor {k}: T G {f} = {tgf}"))?;
        }
    }
    Ok("50 factors by normalization and by 50 probes each".into())
}

fn projector_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..20 {
        let n = rng.gen_range(1..=2);
        let m = rng.gen_range(1..=2);
        let problem = random::cauchy_problem(&mut rng, n, m);
        let s = solve_cauchy(&problem).map_err(|e| e.to_string())?;
        let basis = problem.basis();
        let project = |u: &ExpPoly| s.state.apply(&trace(&basis, u).unwrap()).unwrap();
        for _ in 0..50 {
            let u = random::exppoly(&mut rng, n + 1, 2, 2);
            let pu = project(&u);
            ensure(project(&pu) == pu, || format!("problem {k}: P^2 != P on {u}"))?;
            ensure(s.operator.apply(&pu).is_zero(), || format!("problem {k}: T P {u} != 0"))?;
        }
    }
    Ok("20 problems, 50 inputs each".into())
}

fn taylor_interpolation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in 1..=4 {
        let basis = BoundaryBasis::cauchy(m);
        for _ in 0..50 {
            let n = rng.gen_range(1..=3);
            let data: Vec<ExpPoly> = (0..m).map(|_| random::space_function(&mut rng, n, 3, 3)).collect();
            let u = taylor_interpolator(&basis, &data).map_err(|e| e.to_string())?;
            ensure(trace(&basis, &u).unwrap() == data, || format!("order {m}: trace of {u}"))?;
        }
    }
    Ok("50 tuples for each order 1..4".into())
}

fn two_point_bvp() -> Outcome {
    let zero = ExactComplex::from(0);
    let one = ExactComplex::from(1);
    let kernel = vec![ExpPoly::one(), ep("x1")];
    let basis = BoundaryBasis::new(vec![
        BoundaryFunctional::point(1, zero.clone(), 0),
        BoundaryFunctional::point(1, one.clone(), 0),
    ]);
    let m = evaluation_matrix(&kernel, &basis).map_err(|e| e.to_string())?;
    let expected = Matrix::from_rows(vec![vec![one.clone(), zero.clone()], vec![one.clone(), one]]).unwrap();
    ensure(m == expected, || format!("evaluation matrix {m}"))?;
    let projector = lode_projector(&kernel, &basis).map_err(|e| e.to_string())?;
    let g = lode_signal(projector, parse_operator("A1 . A1").unwrap());
    let u = g.apply(&ExpPoly::one()).map_err(|e| e.to_string())?;
    ensure(u == ep("1/2*x1^2 - 1/2*x1"), || format!("G 1 = {u}"))?;
    Ok(format!("G 1 = {u}, evaluation matrix {m}"))
}

fn product_coherence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..20 {
        let n = rng.gen_range(1..=2);
        let outer = first_order_problem(&random::first_order_factor(&mut rng, n)).map_err(|e| e.to_string())?;
        let inner = first_order_problem(&random::first_order_factor(&mut rng, n)).map_err(|e| e.to_string())?;
        let product = compose_problems(&outer, &inner).map_err(|e| e.to_string())?;
        let f = random::exppoly(&mut rng, n + 1, 2, 2);
        let composed = inner.signal.apply(&outer.signal.apply(&f).unwrap()).unwrap();
        let direct = product.signal.apply(&f).unwrap();
        ensure(direct == composed, || format!("pair {k}: G {f} = {direct}, inner(outer) = {composed}"))?;
        let (b, bt) = (random::space_function(&mut rng, n, 2, 2), random::space_function(&mut rng, n, 2, 2));
        let via_formula = inner
            .signal
            .apply(&outer.state.apply(std::slice::from_ref(&b)).unwrap())
            .unwrap()
            .add(&inner.state.apply(std::slice::from_ref(&bt)).unwrap());
        let u = product.state.apply(&[b.clone(), bt.clone()]).unwrap();
        ensure(u == via_formula, || format!("pair {k}: state {u} vs {via_formula}"))?;
        ensure(product.problem.operator.apply(&u).is_zero(), || format!("pair {k}: T u != 0"))?;
        ensure(trace(&product.problem.basis, &u).unwrap() == vec![b, bt], || format!("pair {k}: trace of {u}"))?;
    }
    Ok("20 pairs: signal, state formula, equation and trace".into())
}

const RULE_SAMPLES: usize = 200;

/// `A_i` followed by up to two random generators and a derivative, the
/// shape that integration by parts and evaluation act on.
fn integral_redex(rng: &mut ChaCha8Rng, nvars: usize) -> Vec<Generator> {
    let i = rng.gen_range(0..nvars);
    let mut word = vec![Generator::Int(i)];
    for _ in 0..rng.gen_range(0..=2) {
        word.push(random::generator(rng, nvars));
    }
    word.push(Generator::Diff(if rng.gen_bool(0.7) { i } else { rng.gen_range(0..nvars) }));
    word
}
const CONFLUENCE_TERMS: usize = 500;

fn rewrite_soundness_and_confluence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked: BTreeMap<Rule, usize> = BTreeMap::new();
    let mut attempts = 0usize;
    while Rule::ALL.iter().any(|r| checked.get(r).copied().unwrap_or(0) < RULE_SAMPLES) && attempts < 400_000 {
        attempts += 1;
        let nvars = rng.gen_range(2..=3);
        let word = if rng.gen_bool(0.25) {
            integral_redex(&mut rng, nvars)
        } else {
            let len = rng.gen_range(2..=4);
            (0..len).map(|_| random::generator(&mut rng, nvars)).collect()
        };
        for p in 0..word.len() {
            let Some(rw) = rewrite_at(&word, p) else { continue };
            let count = checked.entry(rw.rule).or_default();
            if *count >= RULE_SAMPLES {
                continue;
            }
            let lhs = OperatorExpr::word(word.clone());
            let rhs = rw
                .apply_to(&word)
                .into_iter()
                .fold(OperatorExpr::zero(), |acc, (c, w)| acc.add(&OperatorExpr::term(c, w)));
            let u = random::exppoly(&mut rng, nvars, 2, 2);
            let (a, b) = (lhs.apply(&u), rhs.apply(&u));
            ensure(a == b, || format!("{:?} unsound: {lhs} -> {rhs} on {u}", rw.rule))?;
            *count += 1;
        }
    }
    if let Some(r) = Rule::ALL.iter().find(|r| checked.get(r).copied().unwrap_or(0) < RULE_SAMPLES) {
        return Err(format!("only {} instances of {r:?} found", checked.get(r).copied().unwrap_or(0)));
    }
    let inner = Normalizer::new(Strategy::Innermost, DEFAULT_BUDGET);
    let outer = Normalizer::new(Strategy::Outermost, DEFAULT_BUDGET);
    let (mut accepted, mut skipped) = (0usize, 0usize);
    while accepted < CONFLUENCE_TERMS {
        let term = random::operator(&mut rng, 3, 2, 6);
        let x = inner.run(&term).map_err(|e| format!("{term}: {e}"))?;
        let y = outer.run(&term).map_err(|e| format!("{term}: {e}"))?;
        if x.has_int_subst_word() || y.has_int_subst_word() {
            skipped += 1;
            continue;
        }
        ensure(x == y, || format!("strategies disagree on {term}:\n  {x}\n  {y}"))?;
        let u = random::exppoly(&mut rng, 3, 2, 2);
        ensure(term.apply(&u) == x.apply(&u), || format!("normal form of {term} changes its action on {u}"))?;
        accepted += 1;
    }
    Ok(format!(
        "{} rules x {RULE_SAMPLES} instances sound; {CONFLUENCE_TERMS} terms agree ({skipped} with Int.Subst words set aside)",
        Rule::ALL.len()
    ))
}

fn factor_order() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for k in 0..5 {
        let n = rng.gen_range(1..=2);
        let problem = random::cauchy_problem(&mut rng, n, 3);
        let base = solve_cauchy(&problem).map_err(|e| e.to_string())?.u;
        for perm in &PERMS[1..] {
            let factors = perm.iter().map(|&i| problem.factors[i].clone()).collect();
            let permuted = CauchyProblem::new(n, factors, problem.data.clone());
            let u = solve_cauchy(&permuted).map_err(|e| e.to_string())?.u;
            ensure(u == base, || format!("problem {k}, order {perm:?}: {u} vs {base}"))?;
        }
    }
    Ok("5 three-factor problems, all 6 orders".into())
}

fn series_orders() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for k in 0..20 {
        let n = rng.gen_range(1..=2);
        let m = rng.gen_range(1..=3);
        let problem = random::cauchy_problem(&mut rng, n, m);
        let t = problem.operator();
        let a = series_solve_with(&t, m, &problem.data, 8, Elimination::DegreeMajor).map_err(|e| e.to_string())?;
        let b = series_solve_with(&t, m, &problem.data, 8, Elimination::TimeSlices).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("problem {k}: elimination orders disagree"))?;
        ensure(!a.is_zero() || problem.data.iter().all(ExpPoly::is_zero), || format!("problem {k}: empty series"))?;
    }
    Ok("20 problems at truncation 8".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("transport equation", transport),
        ("wave equation against d'Alembert", dalembert),
        ("operator identities T.H = 0, T.G = 1", operator_identities),
        ("projector laws", projector_laws),
        ("Taylor interpolator", taylor_interpolation),
        ("two-point boundary problem", two_point_bvp),
        ("product coherence", product_coherence),
        ("rewrite soundness and confluence", rewrite_soundness_and_confluence),
        ("factor-order independence", factor_order),
        ("series elimination orders", series_orders),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name} [{secs:.2}s]: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} [{secs:.2}s]: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
