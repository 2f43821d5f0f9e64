//! Adjoint forms, double-vanishing forms and the residue-span cross-check.

use plane_ivhs::adjoint::{adjoint_space, double_vanishing_space, residue_span_check, NodalScheme};
use plane_ivhs::report::CurveInput;

fn main() -> plane_ivhs::Result<()> {
    for json in [
        include_str!("../data/curves/quartic-1node.json"),
        include_str!("../data/curves/tacnodal-quartic.json"),
        include_str!("../data/curves/quintic-2nodes.json"),
    ] {
        let curve = CurveInput::from_json(json)?.build(None)?;
        let adj = adjoint_space(&curve)?;
        println!("{}", curve.form);
        println!("  adjoint degree {} dimension {}", adj.form_degree, adj.dimension());
        for (label, _) in adj.row_labels.iter().zip(&adj.condition_matrix) {
            println!("    condition: {label}");
        }
        for b in &adj.basis {
            println!("    basis: {b}");
        }
        let dv = double_vanishing_space(&curve, &NodalScheme::of_curve(&curve));
        println!("  double-vanishing dimension {} (inside adjoints: {})", dv.dimension(), adj.contains(&dv));
        let v = residue_span_check(&curve)?;
        println!("  span {} of {}, hypotheses {}, equivalence {:?}", v.span_dimension, v.genus, v.hypotheses_hold, v.equivalence_holds);
    }
    Ok(())
}
