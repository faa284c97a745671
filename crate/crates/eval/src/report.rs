//! Size accounting and the combined evaluation report.

use crate::metrics::NetMetrics;
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeReport {
    /// Bytes of the raw payload (PDB entries or network parameters).
    pub raw_bytes: u64,
    /// Bytes of the serialized artifact on disk, when one exists.
    pub disk_bytes: Option<u64>,
}

pub fn size_accounting(raw_bytes: u64, artifact: Option<&Path>) -> SizeReport {
    let disk_bytes = artifact.and_then(|p| std::fs::metadata(p).ok()).map(|m| m.len());
    SizeReport { raw_bytes, disk_bytes }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub avg_heuristic: f64,
    pub overestimation_rate: f64,
    pub agreement_rate: f64,
    pub pdb_avg_heuristic: f64,
    pub model_size_bytes: u64,
    pub pdb_size_bytes: u64,
}

impl EvalReport {
    pub fn new(
        metrics: &NetMetrics,
        pdb_avg_heuristic: f64,
        model_size_bytes: u64,
        pdb_size_bytes: u64,
    ) -> EvalReport {
        EvalReport {
            avg_heuristic: metrics.avg_heuristic,
            overestimation_rate: metrics.overestimation_rate,
            agreement_rate: metrics.agreement_rate,
            pdb_avg_heuristic,
            model_size_bytes,
            pdb_size_bytes,
        }
    }

    /// PDB bytes per model byte.
    pub fn compression_rate(&self) -> f64 {
        self.pdb_size_bytes as f64 / self.model_size_bytes as f64
    }

    pub const CSV_HEADER: &'static str = "avg_heuristic,overestimation_rate,agreement_rate,\
pdb_avg_heuristic,model_size_bytes,pdb_size_bytes,compression_rate";

    pub fn csv_row(&self) -> String {
        format!(
            "{:.6},{:.8},{:.6},{:.6},{},{},{:.3}",
            self.avg_heuristic,
            self.overestimation_rate,
            self.agreement_rate,
            self.pdb_avg_heuristic,
            self.model_size_bytes,
            self.pdb_size_bytes,
            self.compression_rate()
        )
    }

    /// Human-readable table.
    pub fn text_table(&self) -> String {
        let mb = |b: u64| b as f64 / 1_000_000.0;
        format!(
            "avg heuristic        {:>12.4} (pdb {:.4})\n\
             overestimation rate  {:>12.3e}\n\
             agreement rate       {:>12.4}\n\
             model size (MB)      {:>12.3}\n\
             pdb size (MB)        {:>12.3}\n\
             compression rate     {:>12.1}x\n",
            self.avg_heuristic,
            self.pdb_avg_heuristic,
            self.overestimation_rate,
            self.agreement_rate,
            mb(self.model_size_bytes),
            mb(self.pdb_size_bytes),
            self.compression_rate()
        )
    }
}
