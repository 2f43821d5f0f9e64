//! Node residue functionals on both branches and the assembled operator.

use plane_ivhs::adjoint::adjoint_space;
use plane_ivhs::ivhs::{assemble_from, node_functionals, rank_bound, Normalization};
use plane_ivhs::report::CurveInput;

fn main() -> plane_ivhs::Result<()> {
    let curve = CurveInput::from_json(include_str!("../data/curves/quintic-2nodes.json"))?.build(None)?;
    let adj = adjoint_space(&curve)?;
    for branch in [0, 1] {
        for f in node_functionals(&curve, &adj, branch)? {
            let c: Vec<String> = f.coordinates.iter().map(|x| x.to_string()).collect();
            let norm = match &f.normalization {
                Normalization::DxOverFy { leading } => format!("A x'/F_y, lead {leading}"),
                Normalization::DyOverFx { leading } => format!("-A y'/F_x, lead {leading}"),
                Normalization::Empty => "empty".into(),
            };
            println!("node {} branch {branch}: [{}]  ({norm})", f.node, c.join(", "));
        }
    }
    let op = assemble_from(&curve, &adj, node_functionals(&curve, &adj, 0)?);
    println!(
        "genus {}: image {} / span {} / rank bound {}",
        op.genus,
        op.image_dimension,
        op.node_span_dimension,
        rank_bound(&curve)
    );
    Ok(())
}
