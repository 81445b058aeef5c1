//! `u'' = f` on `[0, 1]` with `u(0) = u(1) = 0`: the Green's operator from
//! the evaluation matrix of the kernel `{1, x}`.

use pidos::boundary::{evaluation_matrix, lode_projector, lode_signal, trace, BoundaryBasis, BoundaryFunctional};
use pidos::{parse_exppoly, parse_operator, ExactComplex, ExpPoly};

fn main() -> pidos::Result<()> {
    let kernel = vec![ExpPoly::one(), parse_exppoly("x1")?];
    let basis = BoundaryBasis::new(vec![
        BoundaryFunctional::point(1, ExactComplex::from(0), 0),
        BoundaryFunctional::point(1, ExactComplex::from(1), 0),
    ]);
    println!("evaluation matrix {}", evaluation_matrix(&kernel, &basis)?);
    let g = lode_signal(lode_projector(&kernel, &basis)?, parse_operator("A1 . A1")?);
    for f in ["1", "x1", "x1^2", "x1^3 - x1"] {
        let f = parse_exppoly(f)?;
        let u = g.apply(&f)?;
        let values: Vec<String> = trace(&basis, &u)?.iter().map(ToString::to_string).collect();
        println!("f = {f}: u = {u}, u'' = {}, boundary values ({})", u.diff(1).diff(1), values.join(", "));
    }
    Ok(())
}
