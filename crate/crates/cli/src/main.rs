//! `ultrafix`: axiom audits, supported models of logic programs and
//! discrete-event feedback loops.
//!
//! Exit codes: 0 success, 1 audit found violations, 2 input or usage error, 3 program not locally
//! hierarchical, 4 no convergence (including loops that are not strictly
//! causal).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ultrafix::defeedback::{DefeedbackError, Network};
use ultrafix::designal::DesignalSpace;
use ultrafix::herbrand::{HerbrandSpace, LevelMap};
use ultrafix::lpfront::{
    default_budget, infer_level_mapping, load_program, solve_supported_model, LpError,
};
use ultrafix::seqspace::SeqSpace;
use ultrafix::{audit_axioms, RationalTime, SolveConfig, SolveError, UltrametricSemilattice};

const INPUT_ERROR: u8 = 2;
const NOT_HIERARCHICAL: u8 = 3;
const NO_CONVERGENCE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ultrafix",
    version,
    about = "Fixed points of strictly contracting functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the semilattice and ultrametric axioms on random triples.
    Audit {
        instance: Instance,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the supported model of a locally hierarchical program.
    Lp {
        path: PathBuf,
        /// Print the iteration trace to standard error.
        #[arg(long)]
        trace: bool,
        /// Stage budget (default: levels plus base size plus two).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a discrete-event pipeline closed in feedback.
    De {
        path: PathBuf,
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Instance {
    /// Strings over {a, b} up to length 4.
    Seq,
    /// Signals over {a, b} on [0, 4).
    Designal,
    /// Four atoms p, q, r, s on levels 0, 1, 1, 2.
    Herbrand,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Audit {
            instance,
            samples,
            seed,
            out,
        } => audit(instance, samples as usize, seed, out.as_deref()),
        Command::Lp {
            path,
            trace,
            budget,
            out,
        } => lp(&path, trace, budget.map(|b| b as usize), out.as_deref()),
        Command::De {
            path,
            trace,
            budget,
            out,
        } => de(&path, trace, budget as usize, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<u8, (u8, String)>;

fn emit(out: Option<&Path>, text: &str) -> Result<(), (u8, String)> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| (INPUT_ERROR, format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, (u8, String)> {
    fs::read_to_string(path).map_err(|e| (INPUT_ERROR, format!("{}: {e}", path.display())))
}

fn audit_space<S: UltrametricSemilattice>(
    space: &S,
    samples: usize,
    seed: u64,
    out: Option<&Path>,
) -> CmdResult {
    let report = audit_axioms(space, samples, seed).map_err(|e| (INPUT_ERROR, e.to_string()))?;
    emit(out, &report.render(space))?;
    Ok(if report.is_clean() { 0 } else { 1 })
}

fn audit(instance: Instance, samples: usize, seed: u64, out: Option<&Path>) -> CmdResult {
    match instance {
        Instance::Seq => audit_space(
            &SeqSpace::new(&['a', 'b'], 4).expect("alphabet"),
            samples,
            seed,
            out,
        ),
        Instance::Designal => {
            let space = DesignalSpace::new(RationalTime::integer(4), &["a", "b"]).expect("horizon");
            audit_space(&space, samples, seed, out)
        }
        Instance::Herbrand => {
            let levels = LevelMap::new([("p", 0), ("q", 1), ("r", 1), ("s", 2)]).expect("levels");
            audit_space(&HerbrandSpace::new(levels), samples, seed, out)
        }
    }
}

fn lp(path: &Path, trace: bool, budget: Option<usize>, out: Option<&Path>) -> CmdResult {
    let program = load_program(&read(path)?)
        .map_err(|e| (INPUT_ERROR, format!("{}: {e}", path.display())))?;
    let space = match infer_level_mapping(&program) {
        Ok(levels) => HerbrandSpace::new(levels),
        Err(e @ LpError::NotLocallyHierarchical { .. }) => {
            return Err((NOT_HIERARCHICAL, e.to_string()))
        }
        Err(e) => return Err((INPUT_ERROR, e.to_string())),
    };
    let budget = budget.unwrap_or_else(|| default_budget(space.levels()));
    match solve_supported_model(&program, Some(budget)) {
        Ok(solution) => {
            if trace {
                eprint!("{}", solution.fix.trace.render(&space));
            }
            let mut text = String::new();
            for atom in solution.model().names(program.base()) {
                text.push_str(atom);
                text.push('\n');
            }
            emit(out, &text)?;
            Ok(0)
        }
        Err(LpError::Solver(e)) => {
            if let (true, Some(t)) = (trace, e.trace()) {
                eprint!("{}", t.render(&space));
            }
            Err((NO_CONVERGENCE, e.to_string()))
        }
        Err(e) => Err((INPUT_ERROR, e.to_string())),
    }
}

fn de(path: &Path, trace: bool, budget: usize, out: Option<&Path>) -> CmdResult {
    let network = Network::from_json_str(&read(path)?)
        .map_err(|e| (INPUT_ERROR, format!("{}: {e}", path.display())))?;
    let space = network.space();
    match network.solve(SolveConfig::with_budget(budget)) {
        Ok(fix) => {
            if trace {
                eprint!("{}", fix.trace.render(&space));
            }
            emit(out, &format!("{}\n", fix.fixed_point.to_json_string()))?;
            Ok(0)
        }
        Err(DefeedbackError::Solver(e)) => {
            if let (true, Some(t)) = (trace, e.trace()) {
                eprint!("{}", t.render(&space));
            }
            let code = if matches!(*e, SolveError::ZeroBudget) {
                INPUT_ERROR
            } else {
                NO_CONVERGENCE
            };
            Err((code, e.to_string()))
        }
        Err(e @ DefeedbackError::NotStrictlyCausal { .. }) => Err((NO_CONVERGENCE, e.to_string())),
        Err(e) => Err((INPUT_ERROR, e.to_string())),
    }
}
