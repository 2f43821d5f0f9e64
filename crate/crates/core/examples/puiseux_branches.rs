//! Newton–Puiseux branches, intersection multiplicities and conductor exponents.

use plane_ivhs::branches::{conductor_exponents, local_branches, pairwise_intersection_multiplicity};
use plane_ivhs::exact::parse_poly;

fn main() -> plane_ivhs::Result<()> {
    for text in ["y^2 - x^3", "y^2 - x^4 - x^5", "x^2*y - y^4", "x^3 + x*y^3"] {
        let f = parse_poly(text, &["x", "y"])?;
        let bs = local_branches(&f, 10)?;
        println!("{text}: {} branch(es)", bs.len());
        for (i, b) in bs.iter().enumerate() {
            println!("  #{i}: x = {}, y = {}, delta {}", b.x_series, b.y_series, b.delta()?);
        }
        for i in 0..bs.len() {
            for j in i + 1..bs.len() {
                println!("  I(#{i}, #{j}) = {}", pairwise_intersection_multiplicity(&bs[i], &bs[j])?);
            }
        }
        println!("  conductors {:?}", conductor_exponents(&bs)?);
    }
    Ok(())
}
