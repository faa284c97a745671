//! Predictor-vs-PDB metrics over the abstract state space.

use learn::Network;
use ndarray::Array2;
use pdb::PatternDatabase;
use puzzle_core::encode::{encode_abstract_into, feature_width};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("network input width {net} does not match pattern feature width {pattern}")]
    PatternMismatch { net: usize, pattern: usize },
    #[error(transparent)]
    Learn(#[from] learn::LearnError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NetMetrics {
    pub avg_heuristic: f64,
    pub overestimation_rate: f64,
    /// Fraction of states where the prediction equals the PDB exactly.
    pub agreement_rate: f64,
    pub states: u64,
}

const CHUNK: usize = 4096;

/// Evaluates a network against its source PDB over every abstract state,
/// or over a uniform rank sample `(n, seed)` for large patterns.
pub fn net_metrics(
    net: &Network,
    db: &PatternDatabase,
    sample: Option<(usize, u64)>,
) -> Result<NetMetrics, EvalError> {
    let p = db.pattern();
    let width = feature_width(p);
    if net.architecture().input != width {
        return Err(EvalError::PatternMismatch { net: net.architecture().input, pattern: width });
    }
    let total = p.state_count();
    let ranks: Vec<u64> = match sample {
        None => (0..total).collect(),
        Some((n, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| rng.gen_range(0..total)).collect()
        }
    };

    let mut sum = 0u64;
    let mut over = 0u64;
    let mut agree = 0u64;
    let mut feats = Array2::<f32>::zeros((CHUNK, width));
    for chunk in ranks.chunks(CHUNK) {
        for (i, &r) in chunk.iter().enumerate() {
            let a = p.unrank(r);
            encode_abstract_into(p, &a, feats.row_mut(i).as_slice_mut().unwrap());
        }
        let probs = net.forward(feats.slice(ndarray::s![..chunk.len(), ..]))?;
        for (i, &r) in chunk.iter().enumerate() {
            let row = probs.row(i);
            let mut best = 0;
            for (k, &v) in row.iter().enumerate() {
                if v > row[best] {
                    best = k;
                }
            }
            let truth = db.entries()[r as usize] as usize;
            sum += best as u64;
            if best > truth {
                over += 1;
            }
            if best == truth {
                agree += 1;
            }
        }
    }
    let n = ranks.len() as u64;
    Ok(NetMetrics {
        avg_heuristic: sum as f64 / n as f64,
        overestimation_rate: over as f64 / n as f64,
        agreement_rate: agree as f64 / n as f64,
        states: n,
    })
}
