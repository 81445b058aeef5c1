//! Rewriting integro-differential operator words to normal form under both
//! strategies, with the action checked on a sample function.

use pidos::operator::{Normalizer, Strategy};
use pidos::{parse_exppoly, parse_operator};

fn main() -> pidos::Result<()> {
    let inputs = [
        "D1 . A1",
        "A1 . D1",
        "D1 . subst[[1,0],[2,3]]",
        "A1 . mul(x1) . A1",
        "D0 . mul(exp(2*t)) . A0 . mul(exp(-2*t))",
        "subst[[1,0],[0,0]] . mul(x1) . A1",
        "A1 . mul(t*x1^2) . D1 . D0",
    ];
    let u = parse_exppoly("x1^2*exp(t) + t*x1")?;
    for text in inputs {
        let op = parse_operator(text)?;
        let inner = Normalizer::new(Strategy::Innermost, 10_000).run(&op)?;
        let outer = Normalizer::new(Strategy::Outermost, 10_000).run(&op)?;
        println!("{op}");
        println!("  -> {inner}");
        println!("  strategies agree: {}, action kept: {}", inner == outer, inner.apply(&u) == op.apply(&u));
    }
    Ok(())
}
