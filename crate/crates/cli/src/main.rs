mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lnd_core::{Error, ErrorClass, Session};

use report::{Bounds, Inputs, Outcome, Status};

/// Exact computations with locally nilpotent derivations.
#[derive(Parser)]
#[command(name = "lnd", version)]
struct Cli {
    /// Session file with the ring, derivations, maps and polynomials.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Print the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 8)]
    max_degree: usize,
    #[arg(long, global = true, default_value_t = 64)]
    max_power: usize,
    #[arg(long, global = true, default_value_t = 64)]
    max_iter: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nilpotency certificates for derivations (all of them by default).
    Check { names: Vec<String> },
    /// Lie bracket and its membership in the span of earlier derivations.
    Bracket {
        d: String,
        e: String,
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<String>>,
    },
    /// Coefficients of a derivation in the k-span of others.
    Span { target: String, basis: Vec<String> },
    /// exp(tD) of a locally nilpotent derivation.
    Exp {
        name: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
    },
    /// Derivation of a unipotent map.
    Log { name: String },
    /// Composition of two maps.
    Compose { u: String, v: String },
    /// Degree-truncated common kernel.
    Invariants {
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Generator f of the invariant ring.
    Kernel {
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Preslice p and generator q with D_i(p) = q(f).
    Preslice {
        #[arg(long)]
        index: usize,
        #[arg(long)]
        f: Option<String>,
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Degenerate fibers from the generators q_i.
    Fibers {
        #[arg(long)]
        f: Option<String>,
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Slice descent from a preslice of the first derivation.
    Descent {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, value_delimiter = ',')]
        slices: Vec<String>,
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Slices s_1..s_n for a triangular family with trivial kernel.
    Rectify {
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Coordinate certificate or degenerate-fiber report.
    Certify {
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Coordinates on the fiber f = alpha.
    FiberRectify {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        f: Option<String>,
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Derivations dual to the components of a map with constant Jacobian.
    Mates { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Bracket { .. } => "bracket",
            Command::Span { .. } => "span",
            Command::Exp { .. } => "exp",
            Command::Log { .. } => "log",
            Command::Compose { .. } => "compose",
            Command::Invariants { .. } => "invariants",
            Command::Kernel { .. } => "kernel",
            Command::Preslice { .. } => "preslice",
            Command::Fibers { .. } => "fibers",
            Command::Descent { .. } => "descent",
            Command::Rectify { .. } => "rectify",
            Command::Certify { .. } => "certify",
            Command::FiberRectify { .. } => "fiber-rectify",
            Command::Mates { .. } => "mates",
        }
    }
}

fn dispatch(cmd: &Command, s: &Session, b: &Bounds) -> lnd_core::Result<Outcome> {
    use commands as c;
    match cmd {
        Command::Check { names } => c::check(s, names, b),
        Command::Bracket { d, e, basis } => c::bracket(s, d, e, basis.as_deref()),
        Command::Span { target, basis } => c::span(s, target, basis),
        Command::Exp { name, t } => c::exp(s, name, t, b),
        Command::Log { name } => c::log(s, name, b),
        Command::Compose { u, v } => c::compose(s, u, v),
        Command::Invariants { names } => c::invariants(s, names, b),
        Command::Kernel { names } => c::kernel(s, names, b),
        Command::Preslice { index, f, names } => c::preslice(s, names, *index, f.as_deref(), b),
        Command::Fibers { f, names } => c::fibers(s, names, f.as_deref(), b),
        Command::Descent { p, slices, names } => c::descent(s, names, p, slices, b),
        Command::Rectify { names } => c::rectify(s, names, b),
        Command::Certify { names } => c::certify(s, names, b),
        Command::FiberRectify { alpha, f, names } => {
            c::fiber_rect(s, names, alpha, f.as_deref(), b)
        }
        Command::Mates { name } => c::mates(s, name),
    }
}

const USAGE_EXIT: u8 = 3;

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE_EXIT)
}

/// Raw argument tail after the subcommand name, echoed in the report.
fn echoed_args(cmd: &str) -> Vec<String> {
    std::env::args()
        .skip_while(|a| a != cmd)
        .skip(1)
        .filter(|a| a != "--json")
        .collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE_EXIT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let Some(path) = &cli.input else {
        return usage_error("missing --in FILE");
    };
    let contents = match std::fs::read(path) {
        Ok(c) => c,
        Err(e) => return usage_error(format!("cannot read {}: {e}", path.display())),
    };
    let text = match std::str::from_utf8(&contents) {
        Ok(t) => t,
        Err(_) => return usage_error(format!("{} is not UTF-8", path.display())),
    };
    let session = match Session::parse(text) {
        Ok(s) => s,
        Err(e) => return usage_error(format!("{}: {e}", path.display())),
    };
    let bounds = Bounds {
        max_degree: cli.max_degree,
        max_power: cli.max_power,
        max_iter: cli.max_iter,
    };
    let name = cli.command.name();
    let args = echoed_args(name);
    let file = path.display().to_string();
    let inputs = Inputs {
        command: name,
        args: &args,
        file: &file,
        contents: &contents,
    };
    let (report, status) = match dispatch(&cli.command, &session, &bounds) {
        Ok(outcome) => {
            let status = outcome.status;
            (report::success(&inputs, &bounds, outcome), status)
        }
        Err(e) => {
            let status = match e.class() {
                ErrorClass::Usage => return usage_error(describe(name, &e)),
                ErrorClass::Domain => Status::Domain,
                ErrorClass::Inconclusive => Status::Inconclusive,
            };
            (report::failure(&inputs, &bounds, status, &e), status)
        }
    };
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        );
    } else {
        print!("{}", report::render(&report));
    }
    ExitCode::from(status.exit_code())
}

fn describe(cmd: &str, e: &Error) -> String {
    format!("{cmd}: {e}")
}
