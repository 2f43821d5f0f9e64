//! ADE classification and invariants of the standard models.

use plane_ivhs::curvekit::{point, AdeType, PlaneCurve};

fn main() -> plane_ivhs::Result<()> {
    let types = ["A_1", "A_2", "A_3", "A_4", "A_5", "D_4", "D_5", "E_6", "E_7", "E_8"];
    println!("{:<5} {:>3} {:>3} {:>3}  conductors  source", "type", "mu", "dl", "r");
    for t in types {
        let ty: AdeType = t.parse()?;
        let local = ty.model();
        let d = local.total_degree().unwrap();
        let form = local.homogenize(2, d)?;
        let mut curve = PlaneCurve::new(form)?;
        curve.classify_points(&[point(0, 0, 1)])?;
        let s = &curve.singularities[0];
        println!(
            "{:<5} {:>3} {:>3} {:>3}  {:<10}  {:?}",
            s.ade_type.to_string(),
            s.milnor,
            s.delta,
            s.branch_count,
            format!("{:?}", s.conductor_exponents),
            s.conductor_source
        );
    }
    Ok(())
}
