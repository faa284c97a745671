//! Pattern databases: exact abstract distances built by breadth-first
//! search over the abstract cube space, plus min compression and delta
//! decomposition on top of them.

pub mod compress;
pub mod delta;
pub mod io;
pub mod tile;

pub use compress::CompressedPdb;
pub use delta::DeltaPdb;
pub use tile::TilePdb;

use puzzle_core::cube::ALL_MOVES;
use puzzle_core::{CubieState, Pattern};
use std::time::SystemTime;

#[derive(Debug, thiserror::Error)]
pub enum PdbError {
    #[error("building this PDB needs {required} bytes but the budget is {budget}")]
    MemoryBudget { required: u64, budget: u64 },
    #[error("{0} abstract states were never reached from the goal")]
    Unreachable(u64),
    #[error("base pattern is not a subset of the large pattern")]
    NotSubset,
    #[error("pattern of the supplied database does not match")]
    PatternMismatch,
    #[error("group size must be at least 1")]
    BadGroupSize,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("bad file: {0}")]
    Format(String),
}

/// Dense table of exact shortest abstract distances, one byte per rank.
pub struct PatternDatabase {
    pattern: Pattern,
    entries: Vec<u8>,
    max_value: u8,
    built_at: Option<SystemTime>,
}

/// Default build budget: enough for the 8-corner PDB with scratch space.
pub const DEFAULT_MEMORY_BUDGET: u64 = 2_500_000_000;

impl PatternDatabase {
    /// Builds the PDB by layered BFS from the abstract goal. The move set
    /// is closed under inverses, so forward expansion from the goal gives
    /// the same distances as backward predecessor expansion.
    pub fn build(pattern: &Pattern) -> Result<PatternDatabase, PdbError> {
        PatternDatabase::build_with_budget(pattern, DEFAULT_MEMORY_BUDGET)
    }

    pub fn build_with_budget(pattern: &Pattern, budget: u64) -> Result<PatternDatabase, PdbError> {
        let n = pattern.state_count();
        // entries plus a small constant for the per-layer bookkeeping
        let required = n + (1 << 10);
        if required > budget {
            return Err(PdbError::MemoryBudget { required, budget });
        }

        const UNSEEN: u8 = u8::MAX;
        let mut entries = vec![UNSEEN; n as usize];
        let goal_rank = pattern.rank(&pattern.goal_abstract());
        entries[goal_rank as usize] = 0;

        let mut depth: u8 = 0;
        let mut layer_size: u64 = 1;
        let mut reached: u64 = 1;
        while layer_size > 0 && reached < n {
            layer_size = 0;
            // scan pass: expand every state at the current depth
            for r in 0..n as usize {
                if entries[r] != depth {
                    continue;
                }
                let a = pattern.unrank(r as u64);
                for m in ALL_MOVES {
                    let nr = pattern.rank(&pattern.apply_move_abstract(&a, m)) as usize;
                    if entries[nr] == UNSEEN {
                        entries[nr] = depth + 1;
                        layer_size += 1;
                    }
                }
            }
            reached += layer_size;
            depth += 1;
        }
        if reached < n {
            return Err(PdbError::Unreachable(n - reached));
        }
        let max_value = entries.iter().copied().max().unwrap_or(0);
        Ok(PatternDatabase {
            pattern: pattern.clone(),
            entries,
            max_value,
            built_at: Some(SystemTime::now()),
        })
    }

    pub(crate) fn from_parts(pattern: Pattern, entries: Vec<u8>, max_value: u8) -> PatternDatabase {
        PatternDatabase { pattern, entries, max_value, built_at: None }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn max_value(&self) -> u8 {
        self.max_value
    }

    pub fn built_at(&self) -> Option<SystemTime> {
        self.built_at
    }

    pub fn entry(&self, rank: u64) -> u8 {
        self.entries[rank as usize]
    }

    /// Heuristic value for a full cube state.
    pub fn lookup(&self, s: &CubieState) -> u8 {
        self.entries[self.pattern.rank(&self.pattern.abstract_state(s)) as usize]
    }

    /// Count of entries per distance value, indexed by distance.
    pub fn distribution(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.max_value as usize + 1];
        for &e in &self.entries {
            counts[e as usize] += 1;
        }
        counts
    }

    pub fn average(&self) -> f64 {
        let sum: u64 = self.entries.iter().map(|&e| e as u64).sum();
        sum as f64 / self.entries.len() as f64
    }
}
