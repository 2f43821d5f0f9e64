//! Claim-by-claim verdicts for a curve.

use plane_ivhs::ivhs::maximality_report;
use plane_ivhs::report::CurveInput;

fn main() -> plane_ivhs::Result<()> {
    let path = std::env::args().nth(1);
    let json = match &path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| plane_ivhs::Error::Input(e.to_string()))?,
        None => include_str!("../data/curves/quintic-2nodes.json").to_string(),
    };
    let curve = CurveInput::from_json(&json)?.build(None)?;
    let r = maximality_report(&curve, 7)?;
    for c in &r.claims {
        let verdict = match c.agree {
            Some(true) => "agree",
            Some(false) => "DISAGREE",
            None => "n/a",
        };
        println!("{:<18} {:<8} {}", c.id, verdict, c.computed);
        if let Some(w) = &c.witness {
            println!("{:<18} witness: {w}", "");
        }
    }
    println!("all consistent: {}", r.all_consistent());
    for f in &r.tension_flags {
        println!("tension: {f}");
    }
    Ok(())
}
