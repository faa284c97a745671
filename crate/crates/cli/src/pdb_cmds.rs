//! PDB lifecycle commands: build, min-compress, delta-decompose.

use crate::util::{config_header, parse_indices, CliError, CliResult};
use clap::Args;
use pdb::{io as pdb_io, CompressedPdb, DeltaPdb, PatternDatabase};
use puzzle_core::Pattern;
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct BuildPdbArgs {
    /// Corner cubies to track, e.g. `0..7` or `0,1,2`.
    #[arg(long, conflicts_with = "edges")]
    pub corners: Option<String>,
    /// Edge cubies to track, e.g. `0..5`.
    #[arg(long)]
    pub edges: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
    /// Abort if the entry table would exceed this many bytes.
    #[arg(long, default_value_t = pdb::DEFAULT_MEMORY_BUDGET)]
    pub memory_budget: u64,
}

pub fn pattern_from_flags(corners: &Option<String>, edges: &Option<String>) -> CliResult<Pattern> {
    match (corners, edges) {
        (Some(c), None) => {
            Pattern::corners(parse_indices(c)?).map_err(|e| CliError::BadInput(e.to_string()))
        }
        (None, Some(e)) => {
            Pattern::edges(parse_indices(e)?).map_err(|e| CliError::BadInput(e.to_string()))
        }
        _ => Err(CliError::BadInput("give exactly one of --corners / --edges".into())),
    }
}

pub fn cmd_build_pdb(args: &BuildPdbArgs) -> CliResult<()> {
    let pattern = pattern_from_flags(&args.corners, &args.edges)?;
    print!(
        "{}",
        config_header(
            "build-pdb",
            &[
                ("pattern", format!("{pattern:?}")),
                ("state_count", pattern.state_count().to_string()),
                ("memory_budget", args.memory_budget.to_string()),
                ("out", args.out.display().to_string()),
            ],
        )
    );
    let db = PatternDatabase::build_with_budget(&pattern, args.memory_budget)?;
    pdb_io::write_pdb(&db, &args.out)?;
    println!("h,count");
    for (h, n) in db.distribution().iter().enumerate() {
        println!("{h},{n}");
    }
    println!("# average = {:.4}", db.average());
    println!("# entries = {}", db.entries().len());
    Ok(())
}

#[derive(Args, Debug)]
pub struct CompressArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Entries per min-group.
    #[arg(long)]
    pub group: u32,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_compress(args: &CompressArgs) -> CliResult<()> {
    print!(
        "{}",
        config_header(
            "compress",
            &[
                ("input", args.input.display().to_string()),
                ("group", args.group.to_string()),
                ("out", args.out.display().to_string()),
            ],
        )
    );
    let db = pdb_io::read_pdb(&args.input)?;
    let c = CompressedPdb::compress(&db, args.group)?;
    pdb_io::write_compressed(&c, &args.out)?;
    println!("# entries = {}", c.entries().len());
    println!("# average = {:.4} (original {:.4})", c.average(), db.average());
    Ok(())
}

#[derive(Args, Debug)]
pub struct DeltaArgs {
    /// Plain PDB file of the larger pattern.
    #[arg(long)]
    pub large: PathBuf,
    /// Plain PDB file of the base (sub-)pattern.
    #[arg(long)]
    pub base: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Exhaustively reconstruct every rank and compare with the large PDB.
    #[arg(long)]
    pub verify: bool,
}

pub fn cmd_delta(args: &DeltaArgs) -> CliResult<()> {
    print!(
        "{}",
        config_header(
            "delta",
            &[
                ("large", args.large.display().to_string()),
                ("base", args.base.display().to_string()),
                ("out", args.out.display().to_string()),
                ("verify", args.verify.to_string()),
            ],
        )
    );
    let large = pdb_io::read_pdb(&args.large)?;
    let base = pdb_io::read_pdb(&args.base)?;
    let d = DeltaPdb::build(&large, &base)?;
    pdb_io::write_delta(&d, &args.out)?;
    println!("# max_delta = {}", d.max_value());
    if args.verify {
        for rank in 0..large.pattern().state_count() {
            let got = d.reconstruct(&base, rank)?;
            let want = large.entry(rank);
            if got != want {
                return Err(CliError::Failed(format!(
                    "delta reconstruction mismatch at rank {rank}: {got} != {want}"
                )));
            }
        }
        println!("# verify = ok ({} ranks)", large.pattern().state_count());
    }
    Ok(())
}
