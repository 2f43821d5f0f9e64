//! Exact polynomials and truncated Laurent series.

use plane_ivhs::exact::{int, parse_poly, series_mul, series_residue, substitute_series, DiffForm, TruncSeries};

fn main() -> plane_ivhs::Result<()> {
    let f = parse_poly("(x + y)^3 - 3/2*x*y", &["x", "y"])?;
    let g = parse_poly("x - y", &["x", "y"])?;
    println!("f       = {f}");
    println!("f * g   = {}", &f * &g);
    println!("df/dx   = {}", f.derivative(0));

    // (t^-1 + 1) * t = 1 + t
    let a = TruncSeries::from_ints("t", -1, &[1, 1], None)?;
    let b = TruncSeries::from_ints("t", 1, &[1], None)?;
    println!("product = {}", series_mul(&a, &b)?);

    // windows combine: known below t^4 times known below t^3
    let p = TruncSeries::from_ints("t", -2, &[1, 2, 0, 5], Some(4))?;
    let q = TruncSeries::from_ints("t", 0, &[1, -1], Some(3))?;
    println!("windowed product = {}", p.mul(&q)?);

    let w = DiffForm::new(TruncSeries::from_ints("t", -3, &[2, 0, 7, 1], Some(2))?);
    println!("Res ({}) dt = {}", w.coeff_series, series_residue(&w)?);

    // the cusp (t^2, t^3) lies on y^2 - x^3
    let cusp = parse_poly("y^2 - x^3", &["x", "y"])?;
    let x = TruncSeries::monomial("t", 2, int(1));
    let y = TruncSeries::monomial("t", 3, int(1));
    println!("y^2 - x^3 along (t^2, t^3) = {}", substitute_series(&cusp, &x, &y)?);
    Ok(())
}
