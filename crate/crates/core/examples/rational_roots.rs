//! Resultants and exact rational roots.

use plane_ivhs::exact::parse_poly;
use plane_ivhs::exact::roots::{rational_roots, resultant_in_y, to_scalars};

fn main() -> plane_ivhs::Result<()> {
    // (2x - 3)(x + 5)(x^2 + 1)
    let p = to_scalars(&[-15, 7, -13, 7, 2]);
    let roots: Vec<String> = rational_roots(&p).iter().map(|r| r.to_string()).collect();
    println!("rational roots: {}", roots.join(", "));

    // circle and line x = y meet where 2x^2 = 1: resultant has no rational root
    let f = parse_poly("x^2 + y^2 - 1", &["x", "y"])?;
    let g = parse_poly("y - x", &["x", "y"])?;
    let r = resultant_in_y(&f, &g);
    let shown: Vec<String> = r.iter().map(|c| c.to_string()).collect();
    println!("Res_y = [{}] (low to high), roots {:?}", shown.join(", "), rational_roots(&r).len());
    Ok(())
}
