//! Composing two first-order Cauchy problems into a second-order one.

use pidos::boundary::{compose_problems, trace};
use pidos::cauchy::{first_order_problem, FirstOrderFactor};
use pidos::parse_exppoly;

fn main() -> pidos::Result<()> {
    let outer = first_order_problem(&FirstOrderFactor::from_ints(1, &[1, 1]))?;
    let inner = first_order_problem(&FirstOrderFactor::from_ints(0, &[2, -1]))?;
    let product = compose_problems(&outer, &inner)?;
    println!("T = {}", product.problem.operator);
    for (k, b) in product.problem.basis.functionals.iter().enumerate() {
        println!("B{} = {b}", k + 1);
    }
    println!("G = {}", product.signal.op);

    let f = parse_exppoly("t*x1")?;
    let u = product.signal.apply(&f)?;
    println!("G({f}) = {u}");
    println!("  T u = {}", product.problem.operator.apply(&u));

    let data = vec![parse_exppoly("x1")?, parse_exppoly("exp(x1)")?];
    let v = product.state.apply(&data)?;
    let shown: Vec<String> = trace(&product.problem.basis, &v)?.iter().map(ToString::to_string).collect();
    println!("H(x1, exp(x1)) = {v}");
    println!("  trace = ({})", shown.join(", "));
    Ok(())
}
