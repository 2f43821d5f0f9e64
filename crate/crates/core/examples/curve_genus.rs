//! Geometric genus of the bundled catalog curves.

use plane_ivhs::curvekit::geometric_genus;
use plane_ivhs::report::CurveInput;

const CATALOG: &[(&str, &str)] = &[
    ("nodal cubic", include_str!("../data/curves/nodal-cubic.json")),
    ("cuspidal cubic", include_str!("../data/curves/cuspidal-cubic.json")),
    ("1-nodal quartic", include_str!("../data/curves/quartic-1node.json")),
    ("3-nodal quartic", include_str!("../data/curves/quartic-3nodes.json")),
    ("tacnodal quartic", include_str!("../data/curves/tacnodal-quartic.json")),
    ("2-nodal quintic", include_str!("../data/curves/quintic-2nodes.json")),
    ("10-nodal sextic", include_str!("../data/curves/sextic-10nodes.json")),
    ("E_6 septic", include_str!("../data/curves/e6-septic.json")),
];

fn main() -> plane_ivhs::Result<()> {
    for (name, json) in CATALOG {
        let curve = CurveInput::from_json(json)?.build(None)?;
        let g = geometric_genus(&curve)?;
        let types: Vec<String> = curve.singularities.iter().map(|s| s.ade_type.to_string()).collect();
        println!(
            "{name:<17} d={} p_a={:<2} g={:<2} [{}]",
            curve.degree,
            g.arithmetic_genus,
            g.geometric_genus,
            types.join(" ")
        );
    }
    Ok(())
}
