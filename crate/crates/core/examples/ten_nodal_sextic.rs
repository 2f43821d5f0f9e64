//! The square-symmetric 10-nodal rational sextic and seeded moved copies.

use plane_ivhs::adjoint::{double_vanishing_space, NodalScheme};
use plane_ivhs::curvekit::{geometric_genus, point_label};
use plane_ivhs::exact::int;
use plane_ivhs::families::{ten_nodal_sextic, ten_nodal_sextic_sample};

fn main() -> plane_ivhs::Result<()> {
    let (f, nodes) = ten_nodal_sextic(&int(1), &int(2))?;
    println!("F = {f}");
    let labels: Vec<String> = nodes.iter().map(point_label).collect();
    println!("nodes: {}", labels.join(" "));
    for seed in 0..3 {
        let c = ten_nodal_sextic_sample(seed)?;
        let dv = double_vanishing_space(&c, &NodalScheme::of_curve(&c));
        println!(
            "seed {seed}: {} nodes, genus {}, double-vanishing {}",
            c.node_count(),
            geometric_genus(&c)?.geometric_genus,
            dv.dimension()
        );
    }
    Ok(())
}
