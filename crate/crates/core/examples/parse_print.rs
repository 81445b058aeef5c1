//! The expression and operator grammar: parsing, canonical printing and
//! exact calculus.

use pidos::{parse_exppoly, parse_operator, LinearSubst};

fn main() -> pidos::Result<()> {
    let u = parse_exppoly("(x1 + t)^2 * exp(2*x1 - i*t) + 3/4 - x1*exp(2*x1 - i*t)")?;
    println!("u          = {u}");
    println!("d/dx1 u    = {}", u.diff(1));
    println!("int_x1 u   = {}", u.integrate(1));
    println!("u at t = 0 = {}", u.subst(&LinearSubst::evaluation(0)));
    println!("round trip : {}", parse_exppoly(&u.to_string())? == u);

    let op = parse_operator("2*D0 . subst[[1,0],[1,-1/2]] - mul(exp(t)) . A1 + 1/2")?;
    println!("op         = {op}");
    println!("op u       = {}", op.apply(&parse_exppoly("x1")?));
    println!("normalized = {}", op.normalize()?);
    Ok(())
}
