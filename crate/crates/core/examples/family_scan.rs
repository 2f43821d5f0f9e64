//! Sample a family with prescribed nodes and print the summary and CSV rows.

use plane_ivhs::families::{family_scan, FamilySpec};

fn main() -> plane_ivhs::Result<()> {
    let spec = FamilySpec::from_json(include_str!("../data/families/quintic-2nodes.json"))?;
    let spec = FamilySpec { sample_count: 6, ..spec };
    let res = family_scan(&spec)?;
    let s = &res.summary;
    println!(
        "kernel {} verified {} degenerate {} max span {} at-max {:.2} full {:.2}",
        s.kernel_dimension, s.verified, s.degenerate, s.max_span, s.fraction_at_max, s.fraction_full_span
    );
    if let Some(o) = &s.openness {
        println!("openness probe from sample {}: {:?} holds={}", o.base_index, o.perturbed_spans, o.holds);
    }
    res.write_csv(std::io::stdout())
}
