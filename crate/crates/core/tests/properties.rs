use pidos::boundary::trace;
use pidos::cauchy::{solve_cauchy, CauchyProblem};
use pidos::oracle::{series_solve, series_solve_with, Elimination};
use pidos::{parse_exppoly, random, ExactComplex, ExpPoly, LinearSubst, OperatorExpr};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sample(seed: u64) -> ExpPoly {
    random::exppoly(&mut rng(seed), 3, 3, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integrate_then_diff_is_identity(seed: u64, i in 0usize..3) {
        let u = sample(seed);
        prop_assert_eq!(u.integrate(i).diff(i), u);
    }

    #[test]
    fn integral_vanishes_at_origin(seed: u64, i in 0usize..3) {
        prop_assert!(sample(seed).integrate(i).subst(&LinearSubst::evaluation(i)).is_zero());
    }

    #[test]
    fn ring_laws(a: u64, b: u64, c: u64) {
        let (u, v, w) = (sample(a), sample(b), sample(c));
        prop_assert_eq!(u.mul(&v), v.mul(&u));
        prop_assert_eq!(u.add(&v), v.add(&u));
        prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
        prop_assert_eq!(u.mul(&v.add(&w)), u.mul(&v).add(&u.mul(&w)));
        prop_assert!(u.sub(&u).is_zero());
    }

    #[test]
    fn substitution_is_contravariant(seed: u64) {
        let mut r = rng(seed);
        let u = random::exppoly(&mut r, 3, 3, 2);
        let m = random::substitution(&mut r, 3);
        let n = random::substitution(&mut r, 3);
        prop_assert_eq!(u.subst(&n).subst(&m), u.subst(&n.mul(&m)));
    }

    #[test]
    fn taylor_is_multiplicative(a: u64, b: u64) {
        let (u, v) = (sample(a), sample(b));
        prop_assert_eq!(u.mul(&v).taylor(5), u.taylor(5).mul(&v.taylor(5)));
    }

    #[test]
    fn print_then_parse(seed: u64) {
        let u = sample(seed);
        prop_assert_eq!(parse_exppoly(&u.to_string()).unwrap(), u);
    }

    #[test]
    fn operator_print_then_parse(seed: u64) {
        let a = random::operator(&mut rng(seed), 3, 3, 4);
        prop_assert_eq!(pidos::parse_operator(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn composition_acts_multiplicatively(seed: u64) {
        let mut r = rng(seed);
        let a = random::operator(&mut r, 3, 2, 3);
        let b = random::operator(&mut r, 3, 2, 3);
        let u = random::exppoly(&mut r, 3, 2, 2);
        if let Ok(ab) = a.compose(&b) {
            prop_assert_eq!(ab.apply(&u), a.apply(&b.apply(&u)));
        }
    }

    #[test]
    fn normalization_preserves_action(seed: u64) {
        let mut r = rng(seed);
        let a = random::operator(&mut r, 3, 3, 5);
        let u = random::exppoly(&mut r, 3, 2, 2);
        if let Ok(n) = a.normalize() {
            prop_assert_eq!(n.apply(&u), a.apply(&u));
        }
    }
}

fn random_problem(seed: u64) -> CauchyProblem {
    let mut r = rng(seed);
    let n = r.gen_range(1..=2);
    let m = r.gen_range(1..=2);
    random::cauchy_problem(&mut r, n, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solution_satisfies_equation_and_data(seed: u64) {
        let p = random_problem(seed);
        let s = solve_cauchy(&p).unwrap();
        prop_assert!(s.operator.apply(&s.u).is_zero());
        prop_assert_eq!(trace(&p.basis(), &s.u).unwrap(), p.data.clone());
    }

    #[test]
    fn signal_and_state_superpose(seed: u64) {
        let mut r = rng(seed ^ 1);
        let p = random_problem(seed);
        let s = solve_cauchy(&p).unwrap();
        let f = random::exppoly(&mut r, p.n + 1, 2, 2);
        let u = s.signal.apply(&f).unwrap().add(&s.u);
        prop_assert_eq!(s.operator.apply(&u), f.clone());
        prop_assert_eq!(trace(&p.basis(), &u).unwrap(), p.data.clone());
        let g = s.signal.apply(&f).unwrap();
        prop_assert!(trace(&p.basis(), &g).unwrap().iter().all(ExpPoly::is_zero));
    }

    #[test]
    fn complement_of_projector_has_zero_trace(seed: u64) {
        let mut r = rng(seed ^ 2);
        let p = random_problem(seed);
        let s = solve_cauchy(&p).unwrap();
        let u = random::exppoly(&mut r, p.n + 1, 2, 2);
        let pu = s.state.apply(&trace(&p.basis(), &u).unwrap()).unwrap();
        prop_assert!(trace(&p.basis(), &u.sub(&pu)).unwrap().iter().all(ExpPoly::is_zero));
    }

    #[test]
    fn state_operator_is_linear(seed: u64) {
        let mut r = rng(seed ^ 3);
        let p = random_problem(seed);
        let s = solve_cauchy(&p).unwrap();
        let other: Vec<ExpPoly> = (0..p.order()).map(|_| random::space_function(&mut r, p.n, 2, 2)).collect();
        let c = random::small_scalar(&mut r);
        let combined: Vec<ExpPoly> = p.data.iter().zip(&other).map(|(a, b)| a.add(&b.scale(&c))).collect();
        let lhs = s.state.apply(&combined).unwrap();
        let rhs = s.u.add(&s.state.apply(&other).unwrap().scale(&c));
        prop_assert_eq!(lhs, rhs);
        let zeros = vec![ExpPoly::zero(); p.order()];
        prop_assert!(s.state.apply(&zeros).unwrap().is_zero());
    }

    #[test]
    fn solver_agrees_with_series(seed: u64) {
        let p = random_problem(seed);
        let s = solve_cauchy(&p).unwrap();
        let series = series_solve(&s.operator, p.order(), &p.data, 8).unwrap();
        prop_assert_eq!(&series, &s.u.taylor(8));
        let alt = series_solve_with(&s.operator, p.order(), &p.data, 8, Elimination::TimeSlices).unwrap();
        prop_assert_eq!(series, alt);
    }

    #[test]
    fn identities_by_probing(seed: u64) {
        let p = random_problem(seed);
        let s = solve_cauchy(&p).unwrap();
        for k in 0..s.state.rows.len() {
            let th = s.operator.then(&s.state.row_operator(k));
            prop_assert!(pidos::operator::op_equal_via_probing(&th, &OperatorExpr::zero(), 50, seed));
        }
        let tg = s.operator.then(&s.signal.op);
        prop_assert!(pidos::operator::op_equal_via_probing(&tg, &OperatorExpr::identity(), 50, seed));
    }
}

#[test]
fn zero_data_gives_zero_solution() {
    let mut r = rng(11);
    for _ in 0..10 {
        let mut p = random::cauchy_problem(&mut r, 2, 2);
        p.data = vec![ExpPoly::zero(); 2];
        assert!(solve_cauchy(&p).unwrap().u.is_zero());
    }
}

#[test]
fn scalars_survive_printing() {
    let mut r = rng(12);
    for _ in 0..100 {
        let c = random::coefficient(&mut r);
        assert_eq!(c.to_string().parse::<ExactComplex>().unwrap(), c);
    }
}
