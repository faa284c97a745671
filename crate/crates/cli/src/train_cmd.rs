//! Heuristic-network training command.

use crate::util::{config_header, CliError, CliResult, Config};
use clap::Args;
use learn::{
    train, Dataset, EpochLog, LossConfig, LossMode, NetworkArchitecture, Schedule,
    TrainConfig,
};
use pdb::io as pdb_io;
use puzzle_core::encode::feature_width;
use puzzle_core::PatternKind;
use std::io::Write;
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct TrainArgs {
    /// Plain PDB file providing states and labels.
    #[arg(long)]
    pub pdb: PathBuf,
    /// Hidden layer widths, comma separated.
    #[arg(long)]
    pub hidden: Option<String>,
    /// Loss: `cea` or `ce`.
    #[arg(long)]
    pub loss: Option<String>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub lr: Option<f32>,
    /// Per-epoch multiplicative learning-rate decay.
    #[arg(long)]
    pub lr_decay: Option<f32>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub batch_size: Option<usize>,
    /// Train on a uniform sample of this many states instead of all.
    #[arg(long)]
    pub sample: Option<usize>,
    /// Evaluate per epoch on a sample instead of the full space.
    #[arg(long)]
    pub eval_sample: Option<usize>,
    #[arg(long)]
    pub schedule_window: Option<usize>,
    /// Disable the automatic (beta, eta) halving schedule.
    #[arg(long)]
    pub no_schedule: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output model file.
    #[arg(long)]
    pub out: PathBuf,
    /// Training-log CSV.
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Store the model at 16-bit precision.
    #[arg(long)]
    pub quantize: bool,
    /// Optional key-value config file (flags take precedence).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

pub fn cmd_train(args: &TrainArgs) -> CliResult<()> {
    let cfg = Config::load(args.config.as_deref(), "train")?;
    let db = pdb_io::read_pdb(&args.pdb)?;
    let kind = db.pattern().kind();

    // Defaults follow the published per-pattern hyperparameters: corners
    // lr 1e-3, beta 1.0, eta 0.01; edges lr 3e-3, beta 0.6, eta 0.001.
    let (def_lr, def_beta, def_eta) = match kind {
        PatternKind::Corners => (1e-3f32, 1.0f64, 0.01f64),
        PatternKind::Edges => (3e-3, 0.6, 0.001),
    };
    let loss_name = cfg.resolve(&args.loss, "loss", "cea".to_string())?;
    let mode = match loss_name.as_str() {
        "cea" => LossMode::Cea,
        "ce" => LossMode::Ce,
        other => return Err(CliError::BadInput(format!("unknown loss {other:?}"))),
    };
    let beta = cfg.resolve(&args.beta, "beta", def_beta)?;
    let eta = cfg.resolve(&args.eta, "eta", def_eta)?;
    let lr = cfg.resolve(&args.lr, "lr", def_lr)?;
    let lr_decay = cfg.resolve(&args.lr_decay, "lr_decay", 1.0f32)?;
    let epochs = cfg.resolve(&args.epochs, "epochs", 200)?;
    let batch_size = cfg.resolve(&args.batch_size, "batch_size", 4096)?;
    let window = cfg.resolve(&args.schedule_window, "schedule_window", 20)?;
    let hidden_spec = cfg.resolve(&args.hidden, "hidden", "128".to_string())?;
    let hidden: Vec<usize> = hidden_spec
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::BadInput(format!("bad hidden widths {hidden_spec:?}")))
        })
        .collect::<CliResult<_>>()?;

    let header = config_header(
        "train",
        &[
            ("pdb", args.pdb.display().to_string()),
            ("pattern", format!("{:?}", db.pattern())),
            ("hidden", hidden_spec.clone()),
            ("loss", loss_name.clone()),
            ("beta", beta.to_string()),
            ("eta", eta.to_string()),
            ("optimizer", "adam".to_string()),
            ("lr", lr.to_string()),
            ("lr_decay", lr_decay.to_string()),
            ("epochs", epochs.to_string()),
            ("batch_size", batch_size.to_string()),
            ("sample", format!("{:?}", args.sample)),
            ("schedule", (!args.no_schedule).to_string()),
            ("schedule_window", window.to_string()),
            ("seed", args.seed.to_string()),
            ("quantize", args.quantize.to_string()),
            ("out", args.out.display().to_string()),
        ],
    );
    print!("{header}");

    let train_set = Dataset::from_pdb(&db, args.sample.map(|n| (n, args.seed ^ 0x5eed)));
    let eval_set = match args.eval_sample {
        Some(n) => Dataset::from_pdb(&db, Some((n, args.seed ^ 0xe5a1))),
        None => train_set.clone(),
    };
    let arch = NetworkArchitecture::new(feature_width(db.pattern()), hidden, train_set.classes)
        .map_err(|e| CliError::BadInput(e.to_string()))?;
    let tc = TrainConfig {
        epochs,
        batch_size,
        lr,
        lr_decay,
        loss: LossConfig { mode, beta, eta },
        schedule: if args.no_schedule {
            None
        } else {
            Some(Schedule { window, factor: 0.5 })
        },
        seed: args.seed,
    };
    let (net, logs) = train(&train_set, &eval_set, arch, &tc)
        .map_err(|e| CliError::Failed(e.to_string()))?;

    let model = if args.quantize { net.quantize_half() } else { net };
    learn::write_model(&model, &args.out)?;

    if let Some(log_path) = &args.log {
        let mut f = std::io::BufWriter::new(std::fs::File::create(log_path)?);
        write!(f, "{header}")?;
        writeln!(f, "{}", EpochLog::CSV_HEADER)?;
        for l in &logs {
            writeln!(f, "{}", l.csv_row())?;
        }
    }
    if let Some(last) = logs.last() {
        println!(
            "# final: loss {:.6}, overestimation {:.6}, avg_h {:.4}",
            last.loss, last.overestimation_rate, last.avg_predicted_h
        );
    }
    println!("# model_bytes = {}", model.param_bytes());
    Ok(())
}
