//! Experiment commands: the generalization-gap study and the randomized
//! suboptimality-bound validation.

use crate::util::{config_header, fnv_mix, parse_usize_list, CliError, CliResult};
use clap::Args;
use eval::{generalization_gap, GapCurve};
use puzzle_core::TilePuzzleState;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use search::{
    bfs_distances, check_suboptimality_bound, domains::random_connected_graph,
    domains::GraphProblem, domains::TileProblem, SearchLimits,
};
use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct GapArgs {
    /// Sample sizes, comma separated.
    #[arg(long, default_value = "64,256,1024,4096")]
    pub sizes: String,
    #[arg(long, default_value_t = 30)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Range of the random inadmissible heuristic (values in [0, scale)).
    #[arg(long, default_value_t = 40)]
    pub scale: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn cmd_gap(args: &GapArgs) -> CliResult<()> {
    let sizes = parse_usize_list(&args.sizes)?;
    let header = config_header(
        "gap",
        &[
            ("sizes", args.sizes.clone()),
            ("trials", args.trials.to_string()),
            ("seed", args.seed.to_string()),
            ("scale", args.scale.to_string()),
        ],
    );
    print!("{header}");
    let seed = args.seed;
    let scale = args.scale;
    // fixed pseudo-random inadmissible heuristic derived from the seed
    let h = move |s: &TilePuzzleState| (fnv_mix(seed, &s.cells) % scale) as f64;
    let curve = generalization_gap(&h, &sizes, args.trials, args.seed);

    println!("{}", GapCurve::CSV_HEADER);
    for row in curve.csv_rows() {
        println!("{row}");
    }
    if let Some(out) = &args.out {
        let mut f = std::io::BufWriter::new(std::fs::File::create(out)?);
        write!(f, "{header}")?;
        writeln!(f, "{}", GapCurve::CSV_HEADER)?;
        for row in curve.csv_rows() {
            writeln!(f, "{row}")?;
        }
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct BoundCheckArgs {
    /// `graph` or `tile8`.
    #[arg(long)]
    pub domain: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Maximum node count for random graphs.
    #[arg(long, default_value_t = 200)]
    pub max_nodes: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub max_expansions: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn cmd_bound_check(args: &BoundCheckArgs) -> CliResult<()> {
    let header = config_header(
        "bound-check",
        &[
            ("domain", args.domain.clone()),
            ("trials", args.trials.to_string()),
            ("seed", args.seed.to_string()),
            ("max_nodes", args.max_nodes.to_string()),
            ("max_expansions", args.max_expansions.to_string()),
        ],
    );
    print!("{header}");
    let limits = SearchLimits { max_expansions: args.max_expansions, record_trace: false };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut rows = Vec::with_capacity(args.trials);
    let mut violations = 0usize;

    match args.domain.as_str() {
        "graph" => {
            for trial in 0..args.trials {
                let n = rng.gen_range(5..=args.max_nodes.max(5));
                let extra = rng.gen_range(0..2 * n);
                let adj = random_connected_graph(&mut rng, n, extra);
                let goal = rng.gen_range(0..n);
                let start = rng.gen_range(0..n);
                let h_star: HashMap<usize, u32> =
                    bfs_distances(goal, |&u| adj[u].clone(), n).unwrap();
                let table: Vec<f64> = (0..n)
                    .map(|v| {
                        if v == goal {
                            0.0
                        } else {
                            rng.gen_range(0.0..h_star[&v] as f64 + 5.0)
                        }
                    })
                    .collect();
                let p = GraphProblem { adjacency: adj, start, goal };
                let check =
                    check_suboptimality_bound(&p, |v: &usize| table[*v], &h_star, &limits)?;
                if !check.holds() {
                    violations += 1;
                    eprintln!(
                        "VIOLATION trial {trial}: start {start} goal {goal} \
                         cost {} C* {} rhs {}\nheuristic table: {table:?}\nwitness: {:?}",
                        check.cost, check.optimal_cost, check.rhs, check.violation
                    );
                }
                rows.push(format!(
                    "{trial},graph,{n},{},{},{:.4},{:.4}",
                    check.cost, check.optimal_cost, check.rhs, check.slack
                ));
            }
        }
        "tile8" => {
            let h_star: HashMap<TilePuzzleState, u32> =
                bfs_distances(TilePuzzleState::solved(), |s| s.successors(), 200_000)
                    .map_err(|e| CliError::Budget(e.to_string()))?;
            for trial in 0..args.trials {
                let start = TilePuzzleState::random_reachable(&mut rng);
                let seed = args.seed.wrapping_add(trial as u64);
                let hs = h_star.clone();
                let h = move |s: &TilePuzzleState| {
                    let d = hs[s];
                    if d == 0 {
                        0.0
                    } else {
                        let u = fnv_mix(seed, &s.cells) as f64 / u64::MAX as f64;
                        u * (d as f64 + 5.0)
                    }
                };
                let p = TileProblem { start };
                let check = check_suboptimality_bound(&p, h, &h_star, &limits)?;
                if !check.holds() {
                    violations += 1;
                    eprintln!(
                        "VIOLATION trial {trial}: start {} cost {} C* {} rhs {}\nwitness: {:?}",
                        start.to_canonical_string(),
                        check.cost,
                        check.optimal_cost,
                        check.rhs,
                        check.violation
                    );
                }
                rows.push(format!(
                    "{trial},tile8,181440,{},{},{:.4},{:.4}",
                    check.cost, check.optimal_cost, check.rhs, check.slack
                ));
            }
        }
        other => return Err(CliError::BadInput(format!("unknown domain {other:?}"))),
    }

    println!("trial,domain,n,cost,optimal_cost,rhs,slack");
    for row in &rows {
        println!("{row}");
    }
    println!("# violations = {violations} / {}", args.trials);
    if let Some(out) = &args.out {
        let mut f = std::io::BufWriter::new(std::fs::File::create(out)?);
        write!(f, "{header}")?;
        writeln!(f, "trial,domain,n,cost,optimal_cost,rhs,slack")?;
        for row in &rows {
            writeln!(f, "{row}")?;
        }
        writeln!(f, "# violations = {violations} / {}", args.trials)?;
    }
    if violations > 0 {
        return Err(CliError::Failed(format!("{violations} bound violations")));
    }
    Ok(())
}
