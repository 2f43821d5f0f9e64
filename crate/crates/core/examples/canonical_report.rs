//! The canonical JSON envelope, rendered twice to show it is byte-stable.

use plane_ivhs::report::{analyze, CurveInput, OutputFormat};

fn main() -> plane_ivhs::Result<()> {
    let raw = include_str!("../data/curves/cuspidal-cubic.json");
    let input = CurveInput::from_json(raw)?;
    let a = analyze(&input, raw.as_bytes(), 1, None)?.render(OutputFormat::Json);
    let b = analyze(&input, raw.as_bytes(), 1, None)?.render(OutputFormat::Json);
    print!("{a}");
    eprintln!("identical: {}", a == b);
    Ok(())
}
