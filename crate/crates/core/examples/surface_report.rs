//! Numerical data for curves on surfaces in P^3.

use plane_ivhs::report::{surface_report, OutputFormat, SurfaceInput};

fn main() -> plane_ivhs::Result<()> {
    for (e, m, s) in [(4, 3, vec![]), (4, 3, vec!["A_3", "5*A_1"]), (5, 2, vec!["10*A_1"])] {
        let input = SurfaceInput { surface_degree: e, multiple: m, singularities: s.into_iter().map(String::from).collect() };
        print!("{}", surface_report(&input)?.render(OutputFormat::Text));
        println!();
    }
    Ok(())
}
