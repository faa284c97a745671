//! Instance solving (A*) and instance-file generation.

use crate::util::{config_header, parse_indices, CliError, CliResult};
use clap::Args;
use pdb::io::{read_any, PdbFile};
use pdb::TilePdb;
use puzzle_core::{CubieState, TilePuzzleState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use search::{
    astar, bfs_distances, domains::CubeProblem, domains::TileProblem, min_optimal_path_gap,
    psi, SearchLimits,
};
use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;

pub const RESULT_CSV_HEADER: &str =
    "instance_id,cost,optimal_cost,expansions,reopenings,psi,bound_slack";

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// `cube` or `tile8`.
    #[arg(long)]
    pub domain: String,
    /// Cube heuristic: a PDB file (plain or min-compressed).
    #[arg(long)]
    pub heuristic: Option<PathBuf>,
    /// Tile heuristic: tracked tile labels, e.g. `1,2,3,4`.
    #[arg(long)]
    pub tiles: Option<String>,
    /// One start state per line, canonical serialization.
    #[arg(long)]
    pub instances: PathBuf,
    #[arg(long, default_value_t = 10_000_000)]
    pub max_expansions: u64,
    /// Disable node reopening.
    #[arg(long)]
    pub no_reopen: bool,
    /// Result CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read_lines(path: &PathBuf) -> CliResult<Vec<String>> {
    Ok(std::fs::read_to_string(path)?
        .lines()
        .map(|l| l.trim().to_string())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

pub fn cmd_solve(args: &SolveArgs) -> CliResult<()> {
    let header = config_header(
        "solve",
        &[
            ("domain", args.domain.clone()),
            ("heuristic", format!("{:?}", args.heuristic)),
            ("tiles", format!("{:?}", args.tiles)),
            ("instances", args.instances.display().to_string()),
            ("max_expansions", args.max_expansions.to_string()),
            ("reopen", (!args.no_reopen).to_string()),
        ],
    );
    print!("{header}");
    let lines = read_lines(&args.instances)?;
    let limits = SearchLimits { max_expansions: args.max_expansions, record_trace: false };
    let allow_reopen = !args.no_reopen;

    let mut rows = Vec::with_capacity(lines.len());
    match args.domain.as_str() {
        "cube" => {
            let path = args
                .heuristic
                .as_ref()
                .ok_or_else(|| CliError::BadInput("cube domain needs --heuristic".into()))?;
            let h: Box<dyn Fn(&CubieState) -> f64> = match read_any(path)? {
                PdbFile::Plain(db) => Box::new(move |s| db.lookup(s) as f64),
                PdbFile::Compressed(c) => Box::new(move |s| c.lookup(s) as f64),
                PdbFile::Delta(_) => {
                    return Err(CliError::BadInput(
                        "delta PDBs need their base; solve expects plain or compressed".into(),
                    ))
                }
            };
            for (id, line) in lines.iter().enumerate() {
                let start = CubieState::from_canonical_string(line)
                    .map_err(|e| CliError::BadInput(format!("instance {id}: {e}")))?;
                let r = astar(&CubeProblem { start }, &h, allow_reopen, &limits)?;
                rows.push(format!(
                    "{id},{},,{},{},,",
                    r.cost as u64, r.expansions, r.reopenings
                ));
            }
        }
        "tile8" => {
            let tiles = parse_indices(
                args.tiles
                    .as_deref()
                    .ok_or_else(|| CliError::BadInput("tile8 domain needs --tiles".into()))?,
            )?;
            let pdb = TilePdb::build(&tiles)?;
            let h_star: HashMap<TilePuzzleState, u32> =
                bfs_distances(TilePuzzleState::solved(), |s| s.successors(), 200_000)
                    .map_err(|e| CliError::Budget(e.to_string()))?;
            let h = |s: &TilePuzzleState| pdb.lookup(s) as f64;
            for (id, line) in lines.iter().enumerate() {
                let start = TilePuzzleState::from_canonical_string(line)
                    .ok_or_else(|| CliError::BadInput(format!("instance {id}: bad state")))?;
                let r = astar(&TileProblem { start }, h, allow_reopen, &limits)?;
                let c_star = h_star[&start];
                // canonical optimal path: greedy h* descent, smallest state
                let mut path = vec![start];
                while h_star[path.last().unwrap()] > 0 {
                    let cur = *path.last().unwrap();
                    let d = h_star[&cur];
                    let next = cur
                        .successors()
                        .into_iter()
                        .filter(|n| h_star[n] == d - 1)
                        .min()
                        .unwrap();
                    path.push(next);
                }
                let gap = psi(h, &path, &h_star, 1.0)
                    .map_err(|e| CliError::Failed(e.to_string()))?;
                let (rhs, _) = min_optimal_path_gap(
                    &h,
                    &start,
                    |s| s.successors(),
                    &h_star,
                    1.0,
                )
                .expect("start present in oracle");
                let slack = rhs - (r.cost - c_star as f64);
                rows.push(format!(
                    "{id},{},{c_star},{},{},{:.4},{slack:.4}",
                    r.cost as u64, r.expansions, r.reopenings, gap.psi
                ));
            }
        }
        other => return Err(CliError::BadInput(format!("unknown domain {other:?}"))),
    }

    println!("{RESULT_CSV_HEADER}");
    for row in &rows {
        println!("{row}");
    }
    if let Some(out) = &args.out {
        let mut f = std::io::BufWriter::new(std::fs::File::create(out)?);
        write!(f, "{header}")?;
        writeln!(f, "{RESULT_CSV_HEADER}")?;
        for row in &rows {
            writeln!(f, "{row}")?;
        }
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct GenInstancesArgs {
    /// `cube` or `tile8`.
    #[arg(long)]
    pub domain: String,
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Scramble length for cube instances.
    #[arg(long, default_value_t = 30)]
    pub scramble_len: usize,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_gen_instances(args: &GenInstancesArgs) -> CliResult<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut f = std::io::BufWriter::new(std::fs::File::create(&args.out)?);
    write!(
        f,
        "{}",
        config_header(
            "gen-instances",
            &[
                ("domain", args.domain.clone()),
                ("count", args.count.to_string()),
                ("seed", args.seed.to_string()),
                ("scramble_len", args.scramble_len.to_string()),
            ],
        )
    )?;
    match args.domain.as_str() {
        "cube" => {
            for _ in 0..args.count {
                let s = CubieState::scrambled(&mut rng, args.scramble_len);
                writeln!(f, "{}", s.to_canonical_string())?;
            }
        }
        "tile8" => {
            for _ in 0..args.count {
                let s = TilePuzzleState::random_reachable(&mut rng);
                writeln!(f, "{}", s.to_canonical_string())?;
            }
        }
        other => return Err(CliError::BadInput(format!("unknown domain {other:?}"))),
    }
    println!("# wrote {} instances to {}", args.count, args.out.display());
    Ok(())
}
