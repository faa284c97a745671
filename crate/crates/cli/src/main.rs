//! Command-line entry point: pattern-database lifecycle, heuristic
//! training, evaluation, solving, and the validation experiments.
//!
//! Exit codes: 0 success, 1 validation/verification failure, 2 budget
//! exceeded, 3 bad input.

mod eval_cmd;
mod experiment_cmds;
mod pdb_cmds;
mod solve_cmd;
mod train_cmd;
mod util;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use util::CliResult;

#[derive(Parser)]
#[command(name = "hsearch", version, about = "Pattern databases, learned admissible heuristics, and A* experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a pattern database and write it to disk.
    BuildPdb(pdb_cmds::BuildPdbArgs),
    /// Min-compress a plain PDB with a fixed group size.
    Compress(pdb_cmds::CompressArgs),
    /// Delta-decompose a PDB against a sub-pattern PDB.
    Delta(pdb_cmds::DeltaArgs),
    /// Train a heuristic network on PDB labels.
    Train(train_cmd::TrainArgs),
    /// Evaluate a model or compressed PDB against its source PDB.
    Evaluate(eval_cmd::EvaluateArgs),
    /// Solve instances with A*.
    Solve(solve_cmd::SolveArgs),
    /// Generate a deterministic instance file.
    GenInstances(solve_cmd::GenInstancesArgs),
    /// Generalization-gap study on the 8-puzzle.
    Gap(experiment_cmds::GapArgs),
    /// Randomized validation of the reopening suboptimality bound.
    BoundCheck(experiment_cmds::BoundCheckArgs),
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::BuildPdb(a) => pdb_cmds::cmd_build_pdb(a),
        Command::Compress(a) => pdb_cmds::cmd_compress(a),
        Command::Delta(a) => pdb_cmds::cmd_delta(a),
        Command::Train(a) => train_cmd::cmd_train(a),
        Command::Evaluate(a) => eval_cmd::cmd_evaluate(a),
        Command::Solve(a) => solve_cmd::cmd_solve(a),
        Command::GenInstances(a) => solve_cmd::cmd_gen_instances(a),
        Command::Gap(a) => experiment_cmds::cmd_gap(a),
        Command::BoundCheck(a) => experiment_cmds::cmd_bound_check(a),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
