use clap::{Parser, Subcommand, ValueEnum};
use quivercover::field::Field;
use quivercover_cli::runner::{self, FunctorKindInput, KindInput, OutputFormat, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "quivercover",
    about = "Exact computations with bound quiver categories, Galois coverings \
             and finitely presented functors",
    version
)]
struct Cli {
    /// Field override: a prime (e.g. 101) or `q` for the rationals
    #[arg(long, global = true)]
    field: Option<String>,
    /// Window radius / search radius
    #[arg(long, global = true, default_value_t = 3)]
    radius: i64,
    /// Admissibility certification cap
    #[arg(long, global = true, default_value_t = 32)]
    cap: u32,
    /// Seed for all seeded procedures (recorded in every report)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Fixture,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a fixture and certify admissibility
    Validate { fixture: String },
    /// Enumerate the indecomposables of a special biserial fixture
    Ind { fixture: String },
    /// Compute the Auslander-Reiten quiver
    Ar { fixture: String },
    /// Compute the mesh presentation of the AR quiver
    Mesh { fixture: String },
    /// Verify the covering hom-dimension identity on a window
    CoverCheck { fixture: String },
    /// Enumerate periodic line orbits of a cover
    Lines { fixture: String },
    /// Classify a module over the orbit algebra of a cover
    Kind {
        fixture: String,
        /// Classify the push-down of the simple at this slab vertex
        #[arg(long)]
        simple: Option<String>,
        /// Classify the band module on a periodic line (line index defaults
        /// to 0) with this scalar companion
        #[arg(long)]
        band: Option<i64>,
        #[arg(long, default_value_t = 0)]
        line: usize,
        /// Classify a serialized representation over the orbit presentation
        #[arg(long)]
        module: Option<String>,
    },
    /// Classify a finitely presented functor over an algebra fixture
    FunctorKind {
        fixture: String,
        /// The hom functor at the i-th canonical indecomposable
        #[arg(long)]
        yoneda: Option<usize>,
        /// The functor of the band on the mesh cover's cycle with this
        /// scalar companion
        #[arg(long)]
        cycle_band: Option<i64>,
        #[arg(long, default_value_t = 0)]
        line: usize,
        /// A serialized module over the mesh presentation
        #[arg(long)]
        mesh_module: Option<String>,
    },
    /// Run the bundled reproduction suite (both primes unless --field is set)
    Reproduce,
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "q" | "Q" | "rationals" => Ok(Field::Rationals),
        other => other
            .parse::<u64>()
            .map_err(|_| format!("bad field `{other}`"))
            .and_then(|p| Field::prime(p).map_err(|e| e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let field_override = match cli.field.as_deref().map(parse_field) {
        Some(Ok(f)) => Some(f),
        Some(Err(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
        None => None,
    };
    let cfg = RunConfig {
        field_override,
        radius: cli.radius,
        cap: cli.cap,
        seed: cli.seed,
        format: match cli.format {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
            Format::Dot => OutputFormat::Dot,
            Format::Fixture => OutputFormat::FixtureText,
        },
    };
    let out = match cli.command {
        Command::Validate { fixture } => runner::cmd_validate(&fixture, &cfg),
        Command::Ind { fixture } => runner::cmd_ind(&fixture, &cfg),
        Command::Ar { fixture } => runner::cmd_ar(&fixture, &cfg),
        Command::Mesh { fixture } => runner::cmd_mesh(&fixture, &cfg),
        Command::CoverCheck { fixture } => runner::cmd_cover_check(&fixture, &cfg),
        Command::Lines { fixture } => runner::cmd_lines(&fixture, &cfg),
        Command::Kind { fixture, simple, band, line, module } => {
            let input = if let Some(v) = simple {
                KindInput::Simple(v)
            } else if let Some(lambda) = band {
                KindInput::Band(line, lambda)
            } else if let Some(file) = module {
                KindInput::ModuleFile(file)
            } else {
                eprintln!("error: kind needs --simple, --band or --module");
                return ExitCode::from(3);
            };
            runner::cmd_kind(&fixture, input, &cfg)
        }
        Command::FunctorKind { fixture, yoneda, cycle_band, line, mesh_module } => {
            let input = if let Some(i) = yoneda {
                FunctorKindInput::Yoneda(i)
            } else if let Some(lambda) = cycle_band {
                FunctorKindInput::CycleBand(line, lambda)
            } else if let Some(file) = mesh_module {
                FunctorKindInput::MeshModuleFile(file)
            } else {
                eprintln!("error: functor-kind needs --yoneda, --cycle-band or --mesh-module");
                return ExitCode::from(3);
            };
            runner::cmd_functor_kind(&fixture, input, &cfg)
        }
        Command::Reproduce => runner::cmd_reproduce(&cfg),
    };
    match cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &out.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
        }
    }
    ExitCode::from(out.exit_code as u8)
}
