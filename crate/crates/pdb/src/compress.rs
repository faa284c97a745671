//! Min compression: groups of `g` consecutive ranks collapse to the
//! group's minimum, so a compressed lookup never exceeds the original
//! and the heuristic stays admissible.

use crate::{PatternDatabase, PdbError};
use puzzle_core::{CubieState, Pattern};

pub struct CompressedPdb {
    pattern: Pattern,
    group_size: u32,
    entries: Vec<u8>,
    max_value: u8,
}

impl CompressedPdb {
    pub fn compress(db: &PatternDatabase, group_size: u32) -> Result<CompressedPdb, PdbError> {
        if group_size == 0 {
            return Err(PdbError::BadGroupSize);
        }
        let g = group_size as usize;
        let entries: Vec<u8> = db
            .entries()
            .chunks(g)
            .map(|chunk| chunk.iter().copied().min().unwrap())
            .collect();
        let max_value = entries.iter().copied().max().unwrap_or(0);
        Ok(CompressedPdb { pattern: db.pattern().clone(), group_size, entries, max_value })
    }

    pub(crate) fn from_parts(
        pattern: Pattern,
        group_size: u32,
        entries: Vec<u8>,
        max_value: u8,
    ) -> CompressedPdb {
        CompressedPdb { pattern, group_size, entries, max_value }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn group_size(&self) -> u32 {
        self.group_size
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn max_value(&self) -> u8 {
        self.max_value
    }

    pub fn entry_for_rank(&self, rank: u64) -> u8 {
        self.entries[(rank / self.group_size as u64) as usize]
    }

    pub fn lookup(&self, s: &CubieState) -> u8 {
        self.entry_for_rank(self.pattern.rank(&self.pattern.abstract_state(s)))
    }

    pub fn average(&self) -> f64 {
        // averaged over ranks, not over stored groups, so partial tail
        // groups are weighted correctly
        let n = self.pattern.state_count();
        let mut sum = 0u64;
        for r in 0..n {
            sum += self.entry_for_rank(r) as u64;
        }
        sum as f64 / n as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_of_small_group() {
        // group [3,5,2] with g=3 compresses to 2
        let p = Pattern::corners(vec![0]).unwrap();
        let db = PatternDatabase::from_parts(p.clone(), vec![3, 5, 2, 1, 0, 4], 5);
        let c = CompressedPdb::compress(&db, 3).unwrap();
        assert_eq!(c.entries(), &[2, 0]);
    }

    #[test]
    fn group_size_one_is_identity() {
        let p = Pattern::corners(vec![0, 1]).unwrap();
        let db = PatternDatabase::build(&p).unwrap();
        let c = CompressedPdb::compress(&db, 1).unwrap();
        assert_eq!(c.entries(), db.entries());
        for r in 0..p.state_count() {
            assert_eq!(c.entry_for_rank(r), db.entry(r));
        }
    }

    #[test]
    fn never_exceeds_original_and_average_drops() {
        let p = Pattern::corners(vec![2, 4, 7]).unwrap();
        let db = PatternDatabase::build(&p).unwrap();
        for g in [2u32, 3, 7, 23, 64] {
            let c = CompressedPdb::compress(&db, g).unwrap();
            for r in 0..p.state_count() {
                assert!(c.entry_for_rank(r) <= db.entry(r));
            }
            assert!(c.average() <= db.average() + 1e-12);
        }
    }

    #[test]
    fn zero_group_size_rejected() {
        let p = Pattern::corners(vec![0]).unwrap();
        let db = PatternDatabase::build(&p).unwrap();
        assert!(matches!(CompressedPdb::compress(&db, 0), Err(PdbError::BadGroupSize)));
    }
}
