//! Seeded generators for probe inputs and random problems.
//!
//! Everything draws from a caller-supplied RNG so runs are reproducible from
//! a seed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cauchy::{CauchyProblem, FirstOrderFactor};
use crate::exppoly::{ExpPoly, Frequency};
use crate::matrix::{LinearSubst, Matrix};
use crate::operator::{Generator, OperatorExpr};
use crate::poly::Monomial;
use crate::scalar::ExactComplex;

/// `{±1, ±2, ±i, ±1/2}`
pub fn small_scalar<R: Rng>(rng: &mut R) -> ExactComplex {
    let base = match rng.gen_range(0..4) {
        0 => ExactComplex::from(1),
        1 => ExactComplex::from(2),
        2 => ExactComplex::i(),
        _ => ExactComplex::rational(1, 2),
    };
    if rng.gen_bool(0.5) {
        -base
    } else {
        base
    }
}

/// Small nonzero Gaussian rational with numerator and denominator up to 3.
pub fn coefficient<R: Rng>(rng: &mut R) -> ExactComplex {
    let re = ExactComplex::rational(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    let im = if rng.gen_bool(0.3) {
        ExactComplex::rational(rng.gen_range(-2..=2), rng.gen_range(1..=2)) * ExactComplex::i()
    } else {
        ExactComplex::from(0)
    };
    let c = re + im;
    if num_traits::Zero::is_zero(&c) {
        ExactComplex::from(1)
    } else {
        c
    }
}

/// Frequency entry from `{0, ±1, ±2, ±i}`, zero half of the time.
fn frequency_entry<R: Rng>(rng: &mut R) -> ExactComplex {
    if rng.gen_bool(0.5) {
        return ExactComplex::from(0);
    }
    let pool = [
        ExactComplex::from(1),
        ExactComplex::from(-1),
        ExactComplex::from(2),
        ExactComplex::from(-2),
        ExactComplex::i(),
        -ExactComplex::i(),
    ];
    pool.choose(rng).unwrap().clone()
}

/// `c · x^α · e^{λ·x}` over variables `0..nvars` with `|α| ≤ max_degree`.
pub fn exp_monomial<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32) -> ExpPoly {
    let mut exps = vec![0u32; nvars];
    let degree = rng.gen_range(0..=max_degree);
    for _ in 0..degree {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    let freq = Frequency::from_pairs((0..nvars).map(|k| (k, frequency_entry(rng))));
    ExpPoly::monomial(coefficient(rng), Monomial::new(exps), freq)
}

/// Sum of up to `max_terms` random exponential monomials.
pub fn exppoly<R: Rng>(rng: &mut R, nvars: usize, max_terms: usize, max_degree: u32) -> ExpPoly {
    let terms = rng.gen_range(1..=max_terms.max(1));
    (0..terms).fold(ExpPoly::zero(), |acc, _| acc.add(&exp_monomial(rng, nvars, max_degree)))
}

/// Function of the space variables `x1..x_n` only.
pub fn space_function<R: Rng>(rng: &mut R, n: usize, max_terms: usize, max_degree: u32) -> ExpPoly {
    if n == 0 {
        return ExpPoly::constant(coefficient(rng));
    }
    let u = exppoly(rng, n, max_terms, max_degree);
    // shift variables 0..n to 1..=n
    let mut rows = vec![vec![ExactComplex::from(0); n + 1]; n];
    for (k, row) in rows.iter_mut().enumerate() {
        row[k + 1] = ExactComplex::from(1);
    }
    u.subst(&LinearSubst::from_rows(rows).expect("rectangular"))
}

/// Univariate datum in `x1`: a polynomial of degree at most 4 or an
/// exponential with frequency in `{±1, ±2, ±i}`, times a scalar.
pub fn wave_datum<R: Rng>(rng: &mut R) -> ExpPoly {
    if rng.gen_bool(0.5) {
        let degree = rng.gen_range(0..=4);
        (0..=degree).fold(ExpPoly::zero(), |acc, e| {
            let c = ExactComplex::from(rng.gen_range(-3..=3));
            acc.add(&ExpPoly::monomial(c, Monomial::var_pow(1, e), Frequency::zero()))
        })
    } else {
        let lam = [1, -1, 2, -2, 0, 0]
            .choose(rng)
            .map(|&k| if k == 0 { ExactComplex::i() } else { ExactComplex::from(k) })
            .unwrap();
        let lam = if rng.gen_bool(0.5) && lam == ExactComplex::i() { -lam } else { lam };
        ExpPoly::exp([(1, lam)]).scale(&coefficient(rng))
    }
}

/// Random substitution over `nvars` variables: a scaling, an evaluation, a
/// swap, a shear or a dense small-integer block.
pub fn substitution<R: Rng>(rng: &mut R, nvars: usize) -> LinearSubst {
    let n = nvars.max(2);
    let mut m = Matrix::identity(n);
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    match rng.gen_range(0..5) {
        0 => m[(i, i)] = small_scalar(rng),
        1 => m[(i, i)] = ExactComplex::from(0),
        2 => {
            m[(i, i)] = ExactComplex::from(0);
            m[(j, j)] = ExactComplex::from(0);
            m[(i, j)] = ExactComplex::from(1);
            m[(j, i)] = ExactComplex::from(1);
        }
        3 => m[(i, j)] = small_scalar(rng),
        _ => {
            for a in 0..n {
                for b in 0..n {
                    m[(a, b)] = ExactComplex::from(rng.gen_range(-1..=2));
                }
            }
        }
    }
    LinearSubst::from_matrix(&m)
}

/// Random generator over variables `0..nvars`.
pub fn generator<R: Rng>(rng: &mut R, nvars: usize) -> Generator {
    match rng.gen_range(0..7) {
        0 | 1 => Generator::Diff(rng.gen_range(0..nvars)),
        2 | 3 => Generator::Int(rng.gen_range(0..nvars)),
        4 => Generator::Subst(substitution(rng, nvars)),
        _ => Generator::MulBy(exp_monomial(rng, nvars, 2)),
    }
}

/// Random sum of words of length up to `max_len`.
pub fn operator<R: Rng>(rng: &mut R, nvars: usize, max_terms: usize, max_len: usize) -> OperatorExpr {
    let terms = rng.gen_range(1..=max_terms.max(1));
    (0..terms).fold(OperatorExpr::zero(), |acc, _| {
        let len = rng.gen_range(1..=max_len.max(1));
        let word = (0..len).map(|_| generator(rng, nvars)).collect();
        acc.add(&OperatorExpr::term(coefficient(rng), word))
    })
}

/// First-order factor in `n` space variables with every coefficient drawn
/// by [`small_scalar`].
pub fn first_order_factor<R: Rng>(rng: &mut R, n: usize) -> FirstOrderFactor {
    let coeffs = (0..=n).map(|_| small_scalar(rng)).collect();
    FirstOrderFactor::new(small_scalar(rng), coeffs)
}

/// Cauchy problem with `factors` random first-order factors and random
/// space-only data.
pub fn cauchy_problem<R: Rng>(rng: &mut R, n: usize, factors: usize) -> CauchyProblem {
    let fs: Vec<FirstOrderFactor> = (0..factors).map(|_| first_order_factor(rng, n)).collect();
    let data = (0..factors).map(|_| space_function(rng, n, 2, 2)).collect();
    CauchyProblem::new(n, fs, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_generators_are_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert_eq!(exppoly(&mut a, 3, 3, 3), exppoly(&mut b, 3, 3, 3));
        }
    }

    #[test]
    fn space_function_avoids_t() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            assert!(!space_function(&mut rng, 2, 3, 3).depends_on(0));
        }
    }
}
