//! The wave equation factored as `(D_t - D_x)(D_t + D_x)` and compared with
//! d'Alembert's formula.

use pidos::cauchy::{solve_cauchy, CauchyProblem, FirstOrderFactor};
use pidos::oracle::dalembert_reference;
use pidos::parse_exppoly;

fn main() -> pidos::Result<()> {
    let factors = vec![FirstOrderFactor::from_ints(0, &[1, -1]), FirstOrderFactor::from_ints(0, &[1, 1])];
    let cases = [("x1^2", "0"), ("0", "x1"), ("exp(i*x1)", "x1^3 - 2"), ("exp(2*x1)", "exp(-x1)")];
    for (f, g) in cases {
        let (f, g) = (parse_exppoly(f)?, parse_exppoly(g)?);
        let problem = CauchyProblem::new(1, factors.clone(), vec![f.clone(), g.clone()]);
        let solution = solve_cauchy(&problem)?;
        let reference = dalembert_reference(&f, &g);
        println!("f = {f}, g = {g}");
        println!("  u = {}", solution.u);
        println!("  matches d'Alembert: {}", solution.u == reference);
    }
    let solution = solve_cauchy(&CauchyProblem::new(1, factors, vec![parse_exppoly("0")?, parse_exppoly("0")?]))?;
    for (k, row) in solution.state.rows.iter().enumerate() {
        println!("H{} = {row}", k + 1);
    }
    println!("G = {}", solution.signal.op);
    Ok(())
}
