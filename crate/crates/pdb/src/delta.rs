//! Delta decomposition: store only the difference between a large PDB
//! and a PDB over a sub-pattern, reconstructing the large value as
//! base + delta at lookup time.

use crate::{PatternDatabase, PdbError};
use puzzle_core::{CubieState, Pattern};

pub struct DeltaPdb {
    large: Pattern,
    base: Pattern,
    delta: Vec<u8>,
    max_value: u8,
}

impl DeltaPdb {
    /// `delta[r] = large[r] - base[project(r)]`, always non-negative
    /// because the base pattern is a further abstraction of the large one.
    pub fn build(large: &PatternDatabase, base: &PatternDatabase) -> Result<DeltaPdb, PdbError> {
        if !large.pattern().contains(base.pattern()) {
            return Err(PdbError::NotSubset);
        }
        let lp = large.pattern();
        let bp = base.pattern();
        let n = lp.state_count();
        let mut delta = Vec::with_capacity(n as usize);
        for r in 0..n {
            let a = lp.unrank(r);
            let base_val = base.entry(bp.rank(&lp.project(&a, bp)));
            let large_val = large.entry(r);
            debug_assert!(large_val >= base_val);
            delta.push(large_val - base_val);
        }
        let max_value = delta.iter().copied().max().unwrap_or(0);
        Ok(DeltaPdb { large: lp.clone(), base: bp.clone(), delta, max_value })
    }

    pub(crate) fn from_parts(
        large: Pattern,
        base: Pattern,
        delta: Vec<u8>,
        max_value: u8,
    ) -> DeltaPdb {
        DeltaPdb { large, base, delta, max_value }
    }

    pub fn large_pattern(&self) -> &Pattern {
        &self.large
    }

    pub fn base_pattern(&self) -> &Pattern {
        &self.base
    }

    pub fn delta_entries(&self) -> &[u8] {
        &self.delta
    }

    pub fn max_value(&self) -> u8 {
        self.max_value
    }

    pub fn delta_for_rank(&self, rank: u64) -> u8 {
        self.delta[rank as usize]
    }

    /// Reconstructs the large-PDB value at a large-pattern rank.
    pub fn reconstruct(&self, base_db: &PatternDatabase, rank: u64) -> Result<u8, PdbError> {
        if base_db.pattern() != &self.base {
            return Err(PdbError::PatternMismatch);
        }
        let a = self.large.unrank(rank);
        let b = self.base.rank(&self.large.project(&a, &self.base));
        Ok(base_db.entry(b) + self.delta[rank as usize])
    }

    pub fn lookup(&self, base_db: &PatternDatabase, s: &CubieState) -> Result<u8, PdbError> {
        self.reconstruct(base_db, self.large.rank(&self.large.abstract_state(s)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_of_pdb_with_itself_is_zero() {
        let p = Pattern::corners(vec![0, 5]).unwrap();
        let db = PatternDatabase::build(&p).unwrap();
        let d = DeltaPdb::build(&db, &db).unwrap();
        assert!(d.delta_entries().iter().all(|&x| x == 0));
        for r in 0..p.state_count() {
            assert_eq!(d.reconstruct(&db, r).unwrap(), db.entry(r));
        }
    }

    #[test]
    fn reconstruction_is_exact_everywhere() {
        let large = Pattern::corners(vec![0, 1, 2]).unwrap();
        let base = Pattern::corners(vec![0, 1]).unwrap();
        let large_db = PatternDatabase::build(&large).unwrap();
        let base_db = PatternDatabase::build(&base).unwrap();
        let d = DeltaPdb::build(&large_db, &base_db).unwrap();
        for r in 0..large.state_count() {
            assert_eq!(d.reconstruct(&base_db, r).unwrap(), large_db.entry(r));
        }
    }

    #[test]
    fn subset_precondition_enforced() {
        let a = PatternDatabase::build(&Pattern::corners(vec![0, 1]).unwrap()).unwrap();
        let b = PatternDatabase::build(&Pattern::corners(vec![2, 3]).unwrap()).unwrap();
        assert!(matches!(DeltaPdb::build(&a, &b), Err(PdbError::NotSubset)));
        let e = PatternDatabase::build(&Pattern::edges(vec![0, 1]).unwrap()).unwrap();
        assert!(matches!(DeltaPdb::build(&a, &e), Err(PdbError::NotSubset)));
    }
}
