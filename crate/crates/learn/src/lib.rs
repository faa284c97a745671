//! Feedforward heuristic classifiers trained with either plain
//! cross-entropy or the admissibility-weighted CEA loss, plus the Adam
//! optimizer, the (beta, eta) stagnation schedule, and model
//! serialization.

pub mod io;
pub mod loss;
pub mod network;
pub mod optim;
pub mod train;

pub use io::{read_model, write_model};
pub use loss::{batch_loss, sample_loss, sample_loss_f64, LossConfig, LossMode};
pub use network::{Gradients, LearnError, Network, NetworkArchitecture, Precision};
pub use optim::{Adam, Sgd};
pub use train::{evaluate, train, Dataset, EpochLog, Schedule, TrainConfig, TrainError};
