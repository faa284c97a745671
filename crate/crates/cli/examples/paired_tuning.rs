//! Scratch harness for sizing the paired CEA/CE run.
//! args: hidden epochs batch lr beta eta mode(cea|ce|both) window(0=off) eval_n(0=full)

use learn::{train, Dataset, LossConfig, NetworkArchitecture, Schedule, TrainConfig};
use pdb::PatternDatabase;
use puzzle_core::Pattern;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let hidden: Vec<usize> =
        args.get(1).map(|s| s.split(',').map(|t| t.parse().unwrap()).collect()).unwrap_or(vec![128]);
    let epochs: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(30);
    let batch: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1024);
    let lr: f32 = args.get(4).and_then(|s| s.parse().ok()).unwrap_or(1e-3);
    let beta: f64 = args.get(5).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let eta: f64 = args.get(6).and_then(|s| s.parse().ok()).unwrap_or(0.01);
    let mode = args.get(7).cloned().unwrap_or_else(|| "both".into());
    let window: usize = args.get(8).and_then(|s| s.parse().ok()).unwrap_or(0);
    let eval_n: usize = args.get(9).and_then(|s| s.parse().ok()).unwrap_or(0);
    let lr_decay: f32 = args.get(10).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let ncorners: u8 = args.get(11).and_then(|s| s.parse().ok()).unwrap_or(4);

    let p = Pattern::corners((0..ncorners).collect()).unwrap();
    let db = PatternDatabase::build(&p).unwrap();
    println!("pdb avg {:.4}", db.average());
    let set = Dataset::from_pdb(&db, None);
    let eval_set =
        if eval_n > 0 { Dataset::from_pdb(&db, Some((eval_n, 99))) } else { Dataset::from_pdb(&db, None) };

    let arch = NetworkArchitecture::new(324, hidden, set.classes).unwrap();
    for (name, loss) in [("cea", LossConfig::cea(beta, eta)), ("ce", LossConfig::ce())] {
        if mode != "both" && mode != name {
            continue;
        }
        let cfg = TrainConfig {
            epochs,
            batch_size: batch,
            lr,
            lr_decay,
            loss,
            schedule: if window > 0 && name == "cea" {
                Some(Schedule { window, factor: 0.5 })
            } else {
                None
            },
            seed: 42,
        };
        let t0 = Instant::now();
        let (net, logs) = train(&set, &eval_set, arch.clone(), &cfg).unwrap();
        println!("== {name} trajectory (eval_n {eval_n}) ==");
        for l in &logs {
            println!("{}", l.csv_row());
        }
        let m = eval::net_metrics(&net, &db, None).unwrap();
        println!(
            "{name}: {:?} over {:.6} avg {:.4} agree {:.4} (pdb avg {:.4})",
            t0.elapsed(),
            m.overestimation_rate,
            m.avg_heuristic,
            m.agreement_rate,
            db.average()
        );
    }
}
