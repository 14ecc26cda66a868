use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use ceresa_cli::selftest::selftest;
use ceresa_cli::{parse_graph, render, run, CliError, Command, Options};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ceresa", version, about = "Exact Jacobians and Ceresa classes of tropical curves")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Spanning tree edge ids, comma-separated.
    #[arg(long, global = true, value_delimiter = ',')]
    tree: Option<Vec<String>>,
    /// A vertex name or `EDGE@OFFSET`; overrides the document basepoint.
    #[arg(long, global = true)]
    basepoint: Option<String>,
    /// Divisor terms `v:NAME*MULT` or `e:ID@NUM/DEN*MULT`, comma-separated.
    #[arg(long, global = true, allow_hyphen_values = true)]
    divisor: Option<String>,
    /// Print a plain-text summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Genus, spanning tree and fundamental cycles.
    Info { input: Option<PathBuf> },
    /// The polarization matrix and unit tangents.
    Jacobian { input: Option<PathBuf> },
    /// Abel-Jacobi image of `--divisor`.
    Aj { input: Option<PathBuf> },
    /// Pointed Ceresa class at the basepoint.
    Ceresa { input: Option<PathBuf> },
    /// Unpointed Ceresa class.
    CeresaUnpointed { input: Option<PathBuf> },
    /// The class w in Q_{3,0}.
    Wclass { input: Option<PathBuf> },
    /// Orders of the pointed and unpointed classes.
    Torsion { input: Option<PathBuf> },
    /// The multitwist matrix, the group B and the class n.
    Morita { input: Option<PathBuf> },
    /// Checks that the image of n is the unpointed class.
    Compare { input: Option<PathBuf> },
    /// Randomized checks on generated graphs.
    Selftest {
        #[arg(long, default_value_t = 8)]
        cases: usize,
    },
}

impl Cmd {
    fn split(&self) -> Option<(Command, Option<&PathBuf>)> {
        let (c, p) = match self {
            Cmd::Info { input } => (Command::Info, input),
            Cmd::Jacobian { input } => (Command::Jacobian, input),
            Cmd::Aj { input } => (Command::Aj, input),
            Cmd::Ceresa { input } => (Command::Ceresa, input),
            Cmd::CeresaUnpointed { input } => (Command::CeresaUnpointed, input),
            Cmd::Wclass { input } => (Command::Wclass, input),
            Cmd::Torsion { input } => (Command::Torsion, input),
            Cmd::Morita { input } => (Command::Morita, input),
            Cmd::Compare { input } => (Command::Compare, input),
            Cmd::Selftest { .. } => return None,
        };
        Some((c, p.as_ref()))
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::Io { path: p.display().to_string(), message: e.to_string() }),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io { path: "<stdin>".into(), message: e.to_string() })?;
            Ok(s)
        }
    }
}

fn execute(cli: &Cli) -> Result<(serde_json::Value, bool), CliError> {
    let Some((command, path)) = cli.command.split() else {
        let Cmd::Selftest { cases } = cli.command else { unreachable!() };
        return selftest(cli.seed, cases);
    };
    let input = parse_graph(&read_input(path)?)?;
    let opts = Options { tree: cli.tree.clone(), basepoint: cli.basepoint.clone(), divisor: cli.divisor.clone() };
    let (doc, notices) = run(command, &input, &opts)?;
    for n in notices {
        eprintln!("notice: {n}");
    }
    Ok((doc, true))
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let text = e.to_string();
            let err =
                CliError::Usage(text.lines().next().unwrap_or_default().trim_start_matches("error: ").to_string());
            eprint!("{e}");
            emit(&render(&err.to_json(), false));
            return ExitCode::from(2);
        }
    };
    match execute(&cli) {
        Ok((doc, ok)) => {
            emit(&render(&doc, cli.pretty));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            emit(&render(&err.to_json(), cli.pretty));
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
