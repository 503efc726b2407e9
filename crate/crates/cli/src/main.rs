use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tangent_cli::corpus;
use tangent_cli::file::DEFAULT_SEED;
use tangent_cli::{exit, run_analyze, Format, Outcome, Overrides};
use tangent_core::poly::MonomialOrder;

#[derive(Parser)]
#[command(
    name = "tangent",
    version,
    about = "Compare tangent spaces of affine schemes at a point"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Grevlex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Paper,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a problem file.
    Analyze {
        file: PathBuf,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
        #[arg(long, value_enum)]
        order: Option<Order>,
        /// Skip irreducibility checks of tower steps.
        #[arg(long)]
        trust_point: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the bundled or randomly generated corpus.
    Corpus {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 60)]
        count: usize,
    },
    /// Print bases and matrices for a problem file.
    Explain { file: PathBuf },
}

fn emit(outcome: Outcome) -> ExitCode {
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}

fn read(path: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome {
        code: exit::INPUT,
        stdout: String::new(),
        stderr: format!("error: cannot read {}: {e}\n", path.display()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            file,
            json: _,
            text,
            order,
            trust_point,
            seed,
        } => {
            let input = match read(&file) {
                Ok(t) => t,
                Err(o) => return emit(o),
            };
            let overrides = Overrides {
                order: order.map(|o| match o {
                    Order::Lex => MonomialOrder::Lex,
                    Order::Grevlex => MonomialOrder::GrevLex,
                }),
                trust_point,
                seed,
            };
            let format = if text { Format::Text } else { Format::Json };
            emit(run_analyze(&input, format, overrides))
        }
        Command::Explain { file } => match read(&file) {
            Ok(t) => emit(run_analyze(&t, Format::Explain, Overrides::default())),
            Err(o) => emit(o),
        },
        Command::Corpus { mode, seed, count } => {
            let (stdout, failed) = match mode {
                Mode::Paper => {
                    let (s, f) = corpus::run_paper();
                    (s, f > 0)
                }
                Mode::Random => {
                    let summary = corpus::run_random(seed, count);
                    (summary.render(), summary.failures() > 0)
                }
            };
            emit(Outcome {
                code: if failed { exit::INVARIANT } else { exit::OK },
                stdout,
                stderr: String::new(),
            })
        }
    }
}
