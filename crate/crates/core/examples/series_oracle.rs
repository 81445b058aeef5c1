//! Power-series cross-check of a closed-form solution.

use pidos::cauchy::{solve_cauchy, CauchyProblem, FirstOrderFactor};
use pidos::oracle::{grid_compare, grid_points, series_solve, series_solve_with, Elimination, Reference};
use pidos::parse_exppoly;

fn main() -> pidos::Result<()> {
    let factors = vec![FirstOrderFactor::from_ints(0, &[1, 1]), FirstOrderFactor::from_ints(1, &[2, -1])];
    let data = vec![parse_exppoly("exp(1/2*x1)")?, parse_exppoly("x1^2")?];
    let problem = CauchyProblem::new(1, factors, data.clone());
    let solution = solve_cauchy(&problem)?;
    println!("u = {}", solution.u);

    let series = series_solve(&solution.operator, 2, &data, 8)?;
    let slices = series_solve_with(&solution.operator, 2, &data, 8, Elimination::TimeSlices)?;
    println!("series coefficients: {}", series.coeffs().count());
    println!("matches Taylor expansion of u: {}", series == solution.u.taylor(8));
    println!("elimination orders agree: {}", series == slices);

    let points = grid_points(&[(-0.25, 0.25), (-0.25, 0.25)], &[5, 5]);
    let report = grid_compare(&solution.u, Reference::Series(&series), &points, 1e-6);
    println!("max |u - series| on the grid: {:.3e} (pass: {})", report.max_error, report.passed);
    Ok(())
}
