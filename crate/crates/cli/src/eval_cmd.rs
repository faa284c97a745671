//! Evaluation command: a trained model or a compressed PDB against the
//! original PDB it derives from.

use crate::util::{config_header, CliError, CliResult};
use clap::Args;
use eval::{net_metrics, EvalReport, NetMetrics};
use pdb::io as pdb_io;
use std::io::Write;
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct EvaluateArgs {
    /// Ground-truth plain PDB file.
    #[arg(long)]
    pub pdb: PathBuf,
    /// Model file to evaluate.
    #[arg(long, conflicts_with = "compressed")]
    pub model: Option<PathBuf>,
    /// Compressed PDB file to evaluate instead of a model.
    #[arg(long)]
    pub compressed: Option<PathBuf>,
    /// Evaluate on a uniform rank sample instead of the full space.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Result CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> CliResult<()> {
    let db = pdb_io::read_pdb(&args.pdb)?;
    let header = config_header(
        "evaluate",
        &[
            ("pdb", args.pdb.display().to_string()),
            ("model", format!("{:?}", args.model)),
            ("compressed", format!("{:?}", args.compressed)),
            ("sample", format!("{:?}", args.sample)),
            ("seed", args.seed.to_string()),
        ],
    );
    print!("{header}");

    let pdb_bytes = db.entries().len() as u64;
    let report = match (&args.model, &args.compressed) {
        (Some(model_path), None) => {
            let net = learn::read_model(model_path)?;
            let m = net_metrics(&net, &db, args.sample.map(|n| (n, args.seed)))?;
            let disk = std::fs::metadata(model_path)?.len();
            EvalReport::new(&m, db.average(), disk, pdb_bytes)
        }
        (None, Some(comp_path)) => {
            let c = pdb_io::read_compressed(comp_path)?;
            if c.pattern() != db.pattern() {
                return Err(CliError::BadInput(
                    "compressed PDB pattern does not match the reference PDB".into(),
                ));
            }
            let total = db.pattern().state_count();
            let mut over = 0u64;
            let mut agree = 0u64;
            let mut sum = 0u64;
            for rank in 0..total {
                let got = c.entry_for_rank(rank);
                let want = db.entry(rank);
                if got > want {
                    over += 1;
                }
                if got == want {
                    agree += 1;
                }
                sum += got as u64;
            }
            let m = NetMetrics {
                avg_heuristic: sum as f64 / total as f64,
                overestimation_rate: over as f64 / total as f64,
                agreement_rate: agree as f64 / total as f64,
                states: total,
            };
            let disk = std::fs::metadata(comp_path)?.len();
            EvalReport::new(&m, db.average(), disk, pdb_bytes)
        }
        _ => {
            return Err(CliError::BadInput(
                "give exactly one of --model / --compressed".into(),
            ))
        }
    };

    print!("{}", report.text_table());
    if let Some(out) = &args.out {
        let mut f = std::io::BufWriter::new(std::fs::File::create(out)?);
        write!(f, "{header}")?;
        writeln!(f, "{}", EvalReport::CSV_HEADER)?;
        writeln!(f, "{}", report.csv_row())?;
    }
    Ok(())
}
