//! Pattern database for the 3x3 sliding tile puzzle: tracks the blank
//! plus a subset of tiles and stores exact abstract distances. Admissible
//! and consistent under the unit move cost, which makes it the heuristic
//! of choice for the oracle-checked search experiments.

use crate::PdbError;
use puzzle_core::TilePuzzleState;
use std::collections::HashMap;
use std::collections::VecDeque;

/// Abstract tile state: blank cell followed by the cells of the tracked
/// tiles, in tracked order.
type AbstractTiles = Vec<u8>;

pub struct TilePdb {
    tracked: Vec<u8>,
    dist: HashMap<AbstractTiles, u8>,
}

impl TilePdb {
    /// BFS from the goal projection over the abstract space. `tracked`
    /// are tile labels in 1..=8.
    pub fn build(tracked: &[u8]) -> Result<TilePdb, PdbError> {
        if tracked.is_empty()
            || tracked.iter().any(|&t| !(1..=8).contains(&t))
            || (1..tracked.len()).any(|i| tracked[..i].contains(&tracked[i]))
        {
            return Err(PdbError::Format("tracked tiles must be distinct labels in 1..=8".into()));
        }
        let tracked = tracked.to_vec();
        let goal = Self::project_cells(&TilePuzzleState::solved(), &tracked);
        let mut dist: HashMap<AbstractTiles, u8> = HashMap::new();
        dist.insert(goal.clone(), 0);
        let mut queue = VecDeque::new();
        queue.push_back(goal);
        while let Some(a) = queue.pop_front() {
            let d = dist[&a];
            for n in Self::abstract_successors(&a) {
                if !dist.contains_key(&n) {
                    dist.insert(n.clone(), d + 1);
                    queue.push_back(n);
                }
            }
        }
        Ok(TilePdb { tracked, dist })
    }

    fn project_cells(s: &TilePuzzleState, tracked: &[u8]) -> AbstractTiles {
        let mut out = Vec::with_capacity(tracked.len() + 1);
        out.push(s.blank_pos() as u8);
        for &t in tracked {
            out.push(s.cells.iter().position(|&c| c == t).unwrap() as u8);
        }
        out
    }

    /// Blank swaps with an adjacent cell; a tracked tile sitting there
    /// moves into the old blank cell, anything else is anonymous.
    fn abstract_successors(a: &AbstractTiles) -> Vec<AbstractTiles> {
        let b = a[0] as i32;
        let (r, c) = (b / 3, b % 3);
        let mut out = Vec::with_capacity(4);
        for (dr, dc) in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
            let (nr, nc) = (r + dr, c + dc);
            if (0..3).contains(&nr) && (0..3).contains(&nc) {
                let n = (nr * 3 + nc) as u8;
                let mut next = a.clone();
                next[0] = n;
                for p in next[1..].iter_mut() {
                    if *p == n {
                        *p = b as u8;
                    }
                }
                out.push(next);
            }
        }
        out
    }

    pub fn tracked(&self) -> &[u8] {
        &self.tracked
    }

    pub fn state_count(&self) -> usize {
        self.dist.len()
    }

    pub fn lookup(&self, s: &TilePuzzleState) -> u8 {
        self.dist[&Self::project_cells(s, &self.tracked)]
    }
}
