use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use plane_ivhs::families::FamilySpec;
use plane_ivhs::report::{self, CurveInput, OutputFormat, SurfaceInput, DEGREE_CAP_ENV};
use plane_ivhs::{Error, Result};

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "plane-ivhs", version, about = "Singular plane curves: invariants, adjoints, residue functionals, IVHS rank checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 12)]
    truncation: i64,
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Default degree cap for curve inputs.
    #[arg(long, global = true, env = DEGREE_CAP_ENV)]
    degree_cap: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline on a curve file.
    Analyze,
    /// Randomized checks of the local node and cusp pairings.
    VerifyLemmas,
    /// Sample a family with prescribed nodes.
    FamilyScan,
    /// Numerical data for a curve on a surface in P^3.
    SurfaceReport {
        #[arg(long)]
        surface_degree: Option<i64>,
        #[arg(long)]
        multiple: Option<i64>,
        /// e.g. "A_3, 5*A_1"
        #[arg(long, default_value = "")]
        singularities: String,
    },
}

fn read_input(cli: &Cli) -> Result<Vec<u8>> {
    let path = cli.input.as_ref().ok_or_else(|| Error::Input("--input FILE is required".into()))?;
    std::fs::read(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn text(raw: &[u8]) -> Result<&str> {
    std::str::from_utf8(raw).map_err(|e| Error::Parse(e.to_string()))
}

fn run(cli: &Cli) -> Result<String> {
    let format = match cli.format {
        Format::Json => OutputFormat::Json,
        Format::Text => OutputFormat::Text,
    };
    let env = match &cli.command {
        Command::Analyze => {
            let raw = read_input(cli)?;
            let input = CurveInput::from_json(text(&raw)?)?;
            report::analyze(&input, &raw, cli.seed, cli.degree_cap)?
        }
        Command::VerifyLemmas => report::verify_lemmas(cli.seed, cli.trials, cli.truncation)?,
        Command::FamilyScan => {
            let raw = read_input(cli)?;
            let spec = FamilySpec::from_json(text(&raw)?)?;
            let (env, res) = report::family_scan_report(&spec, &raw)?;
            if let Some(path) = &cli.csv {
                let f = std::fs::File::create(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
                res.write_csv(f)?;
            }
            env
        }
        Command::SurfaceReport { surface_degree, multiple, singularities } => {
            let input = match (&cli.input, surface_degree, multiple) {
                (Some(_), _, _) => serde_json::from_slice::<SurfaceInput>(&read_input(cli)?)
                    .map_err(|e| Error::Parse(format!("surface input: {e}")))?,
                (None, Some(e), Some(m)) => SurfaceInput {
                    surface_degree: *e,
                    multiple: *m,
                    singularities: singularities.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
                },
                _ => return Err(Error::Input("give --input FILE or --surface-degree and --multiple".into())),
            };
            report::surface_report(&input)?
        }
    };
    Ok(env.render(format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
