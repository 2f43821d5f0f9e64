//! Local node and cusp pairings on explicit Laurent data, then seeded tallies.

use plane_ivhs::exact::{DiffForm, TruncSeries};
use plane_ivhs::ivhs::{lemma_trials, local_pairing_cusp, local_pairing_node};

fn form(min: i64, c: &[i64]) -> DiffForm {
    DiffForm::new(TruncSeries::from_ints("t", min, c, None).unwrap())
}

fn main() -> plane_ivhs::Result<()> {
    let w1 = (form(-1, &[1, 3]), form(-1, &[-1, 0, 2]));
    let w2 = (form(-1, &[2]), form(-1, &[-2, 5]));
    let p = local_pairing_node(&w1, &w2)?;
    println!("node: engine {} formA {} formB {} (A: {}, B: {})", p.engine, p.form_a, p.form_b, p.engine_matches_a, p.engine_matches_b);

    println!("cusp (t^-2+1, t^-2+t): {}", local_pairing_cusp(&form(-2, &[1, 0, 1]), &form(-2, &[1, 0, 0, 1]))?);
    println!("cusp (t^-2+t^2, t^-2): {}", local_pairing_cusp(&form(-2, &[1, 0, 0, 0, 1]), &form(-2, &[1]))?);
    match local_pairing_cusp(&form(-2, &[1, 5]), &form(-2, &[1])) {
        Err(e) => println!("cusp (t^-2+5t^-1, .): {e}"),
        Ok(v) => println!("unexpected value {v}"),
    }

    let t = lemma_trials(1, 200, 12)?;
    println!(
        "200 trials: bilinear {} symmetric {} formA {} formB {} cusp-zero {} principal-zero {} top-pole {}",
        t.node_bilinear, t.node_symmetric, t.node_matches_form_a, t.node_matches_form_b, t.cusp_zero,
        t.cusp_zero_principal_only, t.top_pole_invariant
    );
    Ok(())
}
