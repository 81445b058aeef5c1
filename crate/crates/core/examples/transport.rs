//! Transport equation `u_t + 2 u_x = 0` with `u(0, x) = e^{3x}`, solved by
//! characteristics.

use pidos::cauchy::{characteristics, first_order_rightinv, first_order_state, FirstOrderFactor};
use pidos::parse_exppoly;

fn main() -> pidos::Result<()> {
    let factor = FirstOrderFactor::from_ints(0, &[1, 2]);
    let ch = characteristics(&factor)?;
    println!("characteristic substitution {}", ch.z);
    println!("inverse                      {}", ch.z_inv);

    let h = first_order_state(&factor)?;
    let g = first_order_rightinv(&factor)?;
    println!("H = {}", h.row_operator(0).normalize()?);
    println!("G = {}", g.op);

    let f = parse_exppoly("exp(3*x1)")?;
    let u = h.apply(&[f])?;
    println!("u = {u}");
    println!("T u = {}", factor.operator().apply(&u));

    let rhs = parse_exppoly("x1*t")?;
    let v = g.apply(&rhs)?;
    println!("G({rhs}) = {v}");
    println!("T G({rhs}) = {}", factor.operator().apply(&v));
    Ok(())
}
