//! Training loop: PDB-labeled datasets, Adam updates, per-epoch logging,
//! and the automatic (beta, eta) halving schedule.

use crate::loss::{LossConfig, LossMode};
use crate::network::{LearnError, Network, NetworkArchitecture};
use crate::optim::Adam;
use ndarray::{Array2, Axis};
use pdb::PatternDatabase;
use puzzle_core::encode::{encode_abstract_into, feature_width};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct Dataset {
    pub features: Array2<f32>,
    /// Heuristic values, used directly as 0-based class labels.
    pub labels: Vec<usize>,
    pub classes: usize,
}

impl Dataset {
    /// Labeled dataset from a PDB: every abstract state, or a uniform
    /// sample of `n` ranks when `sample = (n, seed)` is given.
    pub fn from_pdb(db: &PatternDatabase, sample: Option<(usize, u64)>) -> Dataset {
        let p = db.pattern();
        let total = p.state_count();
        let ranks: Vec<u64> = match sample {
            None => (0..total).collect(),
            Some((n, seed)) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..n).map(|_| rng.gen_range(0..total)).collect()
            }
        };
        let width = feature_width(p);
        let mut features = Array2::zeros((ranks.len(), width));
        let mut labels = Vec::with_capacity(ranks.len());
        for (i, &r) in ranks.iter().enumerate() {
            let a = p.unrank(r);
            encode_abstract_into(p, &a, features.row_mut(i).as_slice_mut().unwrap());
            labels.push(db.entries()[r as usize] as usize);
        }
        Dataset { features, labels, classes: db.max_value() as usize + 1 }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Automatic stagnation schedule: when neither the training loss nor the
/// evaluation overestimation rate has improved for `window` consecutive
/// epochs, both beta and eta are scaled by `factor`.
#[derive(Clone, Debug)]
pub struct Schedule {
    pub window: usize,
    pub factor: f64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { window: 20, factor: 0.5 }
    }
}

#[derive(Clone, Debug)]
pub struct TrainConfig {
    pub epochs: usize,
    pub batch_size: usize,
    pub lr: f32,
    /// Per-epoch multiplicative learning-rate decay (1.0 = constant).
    pub lr_decay: f32,
    pub loss: LossConfig,
    pub schedule: Option<Schedule>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpochLog {
    pub epoch: usize,
    pub loss: f64,
    pub overestimation_rate: f64,
    pub beta: f64,
    pub eta: f64,
    pub avg_predicted_h: f64,
}

impl EpochLog {
    pub const CSV_HEADER: &'static str =
        "epoch,loss,overestimation_rate,beta,eta,avg_predicted_h";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.6},{:.6},{},{},{:.6}",
            self.epoch, self.loss, self.overestimation_rate, self.beta, self.eta,
            self.avg_predicted_h
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TrainError {
    #[error("training diverged at epoch {epoch} (non-finite loss)")]
    Diverged { epoch: usize, checkpoint: Box<Network> },
    #[error(transparent)]
    Learn(#[from] LearnError),
}

/// Evaluation metrics of a network on a labeled set.
pub fn evaluate(net: &Network, set: &Dataset) -> Result<(f64, f64), LearnError> {
    let mut over = 0usize;
    let mut sum = 0u64;
    for chunk in 0..set.len().div_ceil(4096) {
        let lo = chunk * 4096;
        let hi = (lo + 4096).min(set.len());
        let p = net.forward(set.features.slice(ndarray::s![lo..hi, ..]))?;
        for (i, row) in p.axis_iter(Axis(0)).enumerate() {
            let mut best = 0;
            for (k, &v) in row.iter().enumerate() {
                if v > row[best] {
                    best = k;
                }
            }
            if best > set.labels[lo + i] {
                over += 1;
            }
            sum += best as u64;
        }
    }
    Ok((over as f64 / set.len() as f64, sum as f64 / set.len() as f64))
}

pub fn train(
    train_set: &Dataset,
    eval_set: &Dataset,
    arch: NetworkArchitecture,
    cfg: &TrainConfig,
) -> Result<(Network, Vec<EpochLog>), TrainError> {
    assert!(!train_set.is_empty() && !eval_set.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut net = Network::random(arch, &mut rng);
    let mut adam = Adam::new(cfg.lr, &net);
    let mut loss_cfg = cfg.loss;

    let mut logs = Vec::with_capacity(cfg.epochs);
    let mut last_good = net.clone();
    let mut indices: Vec<usize> = (0..train_set.len()).collect();
    let mut best_loss = f64::INFINITY;
    let mut best_over = f64::INFINITY;
    let mut stale = 0usize;

    for epoch in 0..cfg.epochs {
        adam.lr = cfg.lr * cfg.lr_decay.powi(epoch as i32);
        indices.shuffle(&mut rng);
        let mut epoch_loss = 0.0f64;
        for batch in indices.chunks(cfg.batch_size) {
            let x = train_set.features.select(Axis(0), batch);
            let labels: Vec<usize> = batch.iter().map(|&i| train_set.labels[i]).collect();
            let (loss, grads) = match net.loss_and_gradients_f32(x.view(), &labels, &loss_cfg) {
                Ok(out) => out,
                Err(LearnError::NonFinite { .. }) => {
                    return Err(TrainError::Diverged { epoch, checkpoint: Box::new(last_good) })
                }
                Err(e) => return Err(e.into()),
            };
            if !loss.is_finite() {
                return Err(TrainError::Diverged { epoch, checkpoint: Box::new(last_good) });
            }
            adam.step(&mut net, &grads);
            epoch_loss += loss * batch.len() as f64;
        }
        epoch_loss /= train_set.len() as f64;
        last_good = net.clone();

        let (over_rate, avg_h) = evaluate(&net, eval_set)?;
        logs.push(EpochLog {
            epoch,
            loss: epoch_loss,
            overestimation_rate: over_rate,
            beta: loss_cfg.beta,
            eta: loss_cfg.eta,
            avg_predicted_h: avg_h,
        });

        if let Some(schedule) = &cfg.schedule {
            // stagnation = no meaningful relative improvement: 0.1% on the
            // loss, 5% on the overestimation rate
            let improved = epoch_loss < best_loss * (1.0 - 1e-3)
                || over_rate < best_over * (1.0 - 0.05);
            best_loss = best_loss.min(epoch_loss);
            best_over = best_over.min(over_rate);
            if improved {
                stale = 0;
            } else {
                stale += 1;
                if stale >= schedule.window && loss_cfg.mode == LossMode::Cea {
                    loss_cfg.beta *= schedule.factor;
                    loss_cfg.eta *= schedule.factor;
                    stale = 0;
                }
            }
        }
    }
    Ok((net, logs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use puzzle_core::Pattern;

    fn corner2_dataset() -> Dataset {
        let p = Pattern::corners(vec![0, 1]).unwrap();
        let db = PatternDatabase::build(&p).unwrap();
        Dataset::from_pdb(&db, None)
    }

    #[test]
    fn dataset_shapes_and_labels() {
        let set = corner2_dataset();
        assert_eq!(set.len(), 504);
        assert_eq!(set.features.ncols(), 324);
        assert!(set.labels.iter().all(|&l| l < set.classes));
        let sampled = {
            let p = Pattern::corners(vec![0, 1]).unwrap();
            let db = PatternDatabase::build(&p).unwrap();
            Dataset::from_pdb(&db, Some((100, 9)))
        };
        assert_eq!(sampled.len(), 100);
    }

    #[test]
    fn training_is_deterministic() {
        let set = corner2_dataset();
        let arch = NetworkArchitecture::new(324, vec![16], set.classes).unwrap();
        let cfg = TrainConfig {
            epochs: 3,
            batch_size: 128,
            lr: 1e-3,
            lr_decay: 1.0,
            loss: LossConfig::cea(1.0, 0.01),
            schedule: None,
            seed: 42,
        };
        let (a, la) = train(&set, &set, arch.clone(), &cfg).unwrap();
        let (b, lb) = train(&set, &set, arch, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(la, lb);
    }

    #[test]
    fn memorizes_the_tiny_corner_pdb() {
        let set = corner2_dataset();
        let arch = NetworkArchitecture::new(324, vec![128], set.classes).unwrap();
        let cfg = TrainConfig {
            epochs: 800,
            batch_size: 64,
            lr: 3e-3,
            lr_decay: 1.0,
            loss: LossConfig::cea(1.0, 0.01),
            schedule: Some(Schedule::default()),
            seed: 7,
        };
        let (net, logs) = train(&set, &set, arch, &cfg).unwrap();
        let (over, _) = evaluate(&net, &set).unwrap();
        assert_eq!(over, 0.0, "overestimation after memorization");
        // exact agreement with the PDB on every state
        let mut agree = 0;
        for i in 0..set.len() {
            if net.predict(set.features.row(i)).unwrap() == set.labels[i] {
                agree += 1;
            }
        }
        assert_eq!(agree, set.len());
        // schedule never raises beta or eta
        for w in logs.windows(2) {
            assert!(w[1].beta <= w[0].beta && w[1].eta <= w[0].eta);
        }
    }
}
