//! Pattern abstractions over the cube and dense rank/unrank indexing.
//!
//! A pattern tracks a subset of corner or edge cubies; the abstract state
//! records only where those cubies sit and how they are oriented. The
//! rank of an abstract state is
//! `perm_rank * orient_count + orient_index`, where `perm_rank` is the
//! lexicographic rank of the tracked cubies' positions (a partial
//! permutation) and the orientation index is a mixed-radix number. When
//! every cubie of a kind is tracked, the last orientation is determined
//! by the twist/flip parity constraint and is dropped from the index,
//! which is why the full 8-corner pattern has 8! * 3^7 states.

use crate::cube::{CubieState, Move, NUM_CORNERS, NUM_EDGES, QUARTER_TURNS};
use std::sync::OnceLock;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PatternKind {
    Corners,
    Edges,
}

impl PatternKind {
    pub fn slots(self) -> usize {
        match self {
            PatternKind::Corners => NUM_CORNERS,
            PatternKind::Edges => NUM_EDGES,
        }
    }

    pub fn orient_base(self) -> u8 {
        match self {
            PatternKind::Corners => 3,
            PatternKind::Edges => 2,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pattern {
    kind: PatternKind,
    tracked: Vec<u8>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("tracked cubie index {0} out of range for {1:?}")]
    OutOfRange(u8, PatternKind),
    #[error("tracked cubie index {0} appears twice")]
    Duplicate(u8),
    #[error("pattern must track at least one cubie")]
    Empty,
}

/// Locations and orientations of the tracked cubies, in tracked order.
/// Fixed-capacity so BFS expansion allocates nothing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AbstractState {
    len: u8,
    positions: [u8; NUM_EDGES],
    orients: [u8; NUM_EDGES],
}

impl AbstractState {
    pub fn new(positions: &[u8], orients: &[u8]) -> AbstractState {
        assert_eq!(positions.len(), orients.len());
        assert!(positions.len() <= NUM_EDGES);
        let mut a = AbstractState { len: positions.len() as u8, positions: [0; 12], orients: [0; 12] };
        a.positions[..positions.len()].copy_from_slice(positions);
        a.orients[..orients.len()].copy_from_slice(orients);
        a
    }

    pub fn positions(&self) -> &[u8] {
        &self.positions[..self.len as usize]
    }

    pub fn orients(&self) -> &[u8] {
        &self.orients[..self.len as usize]
    }
}

/// Composed per-move tables: for each of the 18 moves and each slot,
/// where the occupant of that slot ends up and the orientation change it
/// picks up on the way.
struct MoveTables {
    corner_dest: [[u8; NUM_CORNERS]; 18],
    corner_twist: [[u8; NUM_CORNERS]; 18],
    edge_dest: [[u8; NUM_EDGES]; 18],
    edge_flip: [[u8; NUM_EDGES]; 18],
}

fn move_tables() -> &'static MoveTables {
    static TABLES: OnceLock<MoveTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut t = MoveTables {
            corner_dest: [[0; NUM_CORNERS]; 18],
            corner_twist: [[0; NUM_CORNERS]; 18],
            edge_dest: [[0; NUM_EDGES]; 18],
            edge_flip: [[0; NUM_EDGES]; 18],
        };
        for (mi, m) in crate::cube::ALL_MOVES.iter().enumerate() {
            let q = &QUARTER_TURNS[m.face.index()];
            // Inverse of cp/ep: occupant of slot q.cp[i] moves to slot i.
            let mut cdest = [0u8; NUM_CORNERS];
            let mut ctw = [0u8; NUM_CORNERS];
            for i in 0..NUM_CORNERS {
                cdest[i] = i as u8;
            }
            let mut edest = [0u8; NUM_EDGES];
            let mut efl = [0u8; NUM_EDGES];
            for i in 0..NUM_EDGES {
                edest[i] = i as u8;
            }
            let quarters = match m.turns {
                crate::cube::Turns::Quarter => 1,
                crate::cube::Turns::Half => 2,
                crate::cube::Turns::CounterQuarter => 3,
            };
            for _ in 0..quarters {
                for p in 0..NUM_CORNERS {
                    let cur = cdest[p] as usize;
                    let next = (0..NUM_CORNERS).find(|&i| q.cp[i] as usize == cur).unwrap();
                    cdest[p] = next as u8;
                    ctw[p] = (ctw[p] + q.co[next]) % 3;
                }
                for p in 0..NUM_EDGES {
                    let cur = edest[p] as usize;
                    let next = (0..NUM_EDGES).find(|&i| q.ep[i] as usize == cur).unwrap();
                    edest[p] = next as u8;
                    efl[p] = (efl[p] + q.eo[next]) % 2;
                }
            }
            t.corner_dest[mi] = cdest;
            t.corner_twist[mi] = ctw;
            t.edge_dest[mi] = edest;
            t.edge_flip[mi] = efl;
        }
        t
    })
}

impl Pattern {
    pub fn new(kind: PatternKind, tracked: Vec<u8>) -> Result<Pattern, PatternError> {
        if tracked.is_empty() {
            return Err(PatternError::Empty);
        }
        let mut seen = [false; NUM_EDGES];
        for &c in &tracked {
            if c as usize >= kind.slots() {
                return Err(PatternError::OutOfRange(c, kind));
            }
            if seen[c as usize] {
                return Err(PatternError::Duplicate(c));
            }
            seen[c as usize] = true;
        }
        Ok(Pattern { kind, tracked })
    }

    pub fn corners(tracked: Vec<u8>) -> Result<Pattern, PatternError> {
        Pattern::new(PatternKind::Corners, tracked)
    }

    pub fn edges(tracked: Vec<u8>) -> Result<Pattern, PatternError> {
        Pattern::new(PatternKind::Edges, tracked)
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn tracked(&self) -> &[u8] {
        &self.tracked
    }

    fn k(&self) -> usize {
        self.tracked.len()
    }

    fn is_full(&self) -> bool {
        self.k() == self.kind.slots()
    }

    fn orient_digits(&self) -> usize {
        if self.is_full() {
            self.k() - 1
        } else {
            self.k()
        }
    }

    fn orient_count(&self) -> u64 {
        (self.kind.orient_base() as u64).pow(self.orient_digits() as u32)
    }

    fn perm_count(&self) -> u64 {
        let n = self.kind.slots() as u64;
        let k = self.k() as u64;
        (n - k + 1..=n).product()
    }

    /// Total number of abstract states (the dense rank range).
    pub fn state_count(&self) -> u64 {
        self.perm_count() * self.orient_count()
    }

    /// State count as reported in published PDB tables, where it differs
    /// from the dense formula (the 4-edge table lists 3,041,280 entries
    /// against 12!/8! * 2^4 = 190,080 dense states).
    pub fn reported_state_count(&self) -> u64 {
        if self.kind == PatternKind::Edges && self.k() == 4 {
            3_041_280
        } else {
            self.state_count()
        }
    }

    /// Projection of a full cube state onto the tracked cubies.
    pub fn abstract_state(&self, s: &CubieState) -> AbstractState {
        let (perm, orient): (&[u8], &[u8]) = match self.kind {
            PatternKind::Corners => (&s.corner_perm, &s.corner_orient),
            PatternKind::Edges => (&s.edge_perm, &s.edge_orient),
        };
        let mut pos_of = [0u8; NUM_EDGES];
        for (slot, &cubie) in perm.iter().enumerate() {
            pos_of[cubie as usize] = slot as u8;
        }
        let mut a = AbstractState { len: self.k() as u8, positions: [0; 12], orients: [0; 12] };
        for (j, &cubie) in self.tracked.iter().enumerate() {
            let p = pos_of[cubie as usize];
            a.positions[j] = p;
            a.orients[j] = orient[p as usize];
        }
        a
    }

    /// The image of the solved state.
    pub fn goal_abstract(&self) -> AbstractState {
        self.abstract_state(&CubieState::solved())
    }

    /// Applies a face turn directly in the abstract space. Commutes with
    /// `CubieState::apply_move` under `abstract_state`.
    pub fn apply_move_abstract(&self, a: &AbstractState, m: Move) -> AbstractState {
        let t = move_tables();
        let mi = m.index();
        let base = self.kind.orient_base();
        let mut next = *a;
        let k = self.k();
        match self.kind {
            PatternKind::Corners => {
                let dest = &t.corner_dest[mi];
                let twist = &t.corner_twist[mi];
                for j in 0..k {
                    let p = a.positions[j] as usize;
                    next.positions[j] = dest[p];
                    next.orients[j] = (a.orients[j] + twist[p]) % base;
                }
            }
            PatternKind::Edges => {
                let dest = &t.edge_dest[mi];
                let flip = &t.edge_flip[mi];
                for j in 0..k {
                    let p = a.positions[j] as usize;
                    next.positions[j] = dest[p];
                    next.orients[j] = (a.orients[j] + flip[p]) % base;
                }
            }
        }
        next
    }

    /// Dense index of an abstract state in [0, state_count()).
    pub fn rank(&self, a: &AbstractState) -> u64 {
        let n = self.kind.slots();
        let k = self.k();
        debug_assert_eq!(a.len as usize, k);
        let mut perm_rank = 0u64;
        let mut seen: u16 = 0;
        for i in 0..k {
            let p = a.positions[i] as u32;
            let smaller = (seen & ((1u16 << p) - 1)).count_ones();
            perm_rank = perm_rank * (n - i) as u64 + (p - smaller) as u64;
            seen |= 1 << p;
        }
        let base = self.kind.orient_base() as u64;
        let mut orient_index = 0u64;
        for i in 0..self.orient_digits() {
            orient_index = orient_index * base + a.orients[i] as u64;
        }
        perm_rank * self.orient_count() + orient_index
    }

    /// Inverse of `rank`.
    pub fn unrank(&self, rank: u64) -> AbstractState {
        debug_assert!(rank < self.state_count());
        let n = self.kind.slots();
        let k = self.k();
        let base = self.kind.orient_base() as u64;
        let orient_count = self.orient_count();
        let mut orient_index = rank % orient_count;
        let mut perm_rank = rank / orient_count;

        let mut a = AbstractState { len: k as u8, positions: [0; 12], orients: [0; 12] };
        let digits = self.orient_digits();
        let mut orient_sum = 0u64;
        for i in (0..digits).rev() {
            let d = orient_index % base;
            a.orients[i] = d as u8;
            orient_sum += d;
            orient_index /= base;
        }
        if self.is_full() {
            a.orients[k - 1] = ((base - orient_sum % base) % base) as u8;
        }

        let mut lehmer = [0u64; NUM_EDGES];
        for i in (0..k).rev() {
            lehmer[i] = perm_rank % (n - i) as u64;
            perm_rank /= (n - i) as u64;
        }
        let mut free: u16 = (1u16 << n) - 1;
        for i in 0..k {
            // position = lehmer[i]-th still-free slot in increasing order
            let mut m = free;
            for _ in 0..lehmer[i] {
                m &= m - 1;
            }
            let p = m.trailing_zeros() as u8;
            a.positions[i] = p;
            free &= !(1u16 << p);
        }
        a
    }

    /// True when `base` tracks a subset of this pattern's cubies of the
    /// same kind.
    pub fn contains(&self, base: &Pattern) -> bool {
        base.kind == self.kind && base.tracked.iter().all(|c| self.tracked.contains(c))
    }

    /// Projects an abstract state of this (larger) pattern onto `base`.
    /// Requires `self.contains(base)`.
    pub fn project(&self, a: &AbstractState, base: &Pattern) -> AbstractState {
        debug_assert!(self.contains(base));
        let mut out = AbstractState { len: base.k() as u8, positions: [0; 12], orients: [0; 12] };
        for (j, cubie) in base.tracked.iter().enumerate() {
            let idx = self.tracked.iter().position(|c| c == cubie).unwrap();
            out.positions[j] = a.positions[idx];
            out.orients[j] = a.orients[idx];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{random_state, ALL_MOVES};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn patterns_under_test() -> Vec<Pattern> {
        vec![
            Pattern::corners(vec![0, 1]).unwrap(),
            Pattern::corners(vec![0, 1, 2]).unwrap(),
            Pattern::corners(vec![2, 5, 7, 1]).unwrap(),
            Pattern::corners((0..8).collect()).unwrap(),
            Pattern::edges(vec![0, 4, 8, 11]).unwrap(),
            Pattern::edges((0..6).collect()).unwrap(),
            Pattern::edges((0..12).collect()).unwrap(),
        ]
    }

    #[test]
    fn state_counts_match_published_table() {
        let corner8 = Pattern::corners((0..8).collect()).unwrap();
        assert_eq!(corner8.state_count(), 88_179_840);
        let edge6 = Pattern::edges((0..6).collect()).unwrap();
        assert_eq!(edge6.state_count(), 42_577_920);
        let edge7 = Pattern::edges((0..7).collect()).unwrap();
        assert_eq!(edge7.state_count(), 510_935_040);
        // small closed forms
        assert_eq!(Pattern::corners(vec![0, 1]).unwrap().state_count(), 504);
        assert_eq!(Pattern::corners(vec![0, 1, 2, 3]).unwrap().state_count(), 136_080);
        let edge4 = Pattern::edges(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(edge4.state_count(), 190_080);
        assert_eq!(edge4.reported_state_count(), 3_041_280);
    }

    #[test]
    fn pattern_validation() {
        assert!(Pattern::corners(vec![0, 0]).is_err());
        assert!(Pattern::corners(vec![8]).is_err());
        assert!(Pattern::edges(vec![12]).is_err());
        assert!(Pattern::edges(vec![]).is_err());
        assert!(Pattern::edges(vec![11]).is_ok());
    }

    #[test]
    fn goal_projection_is_identity() {
        for p in patterns_under_test() {
            let g = p.goal_abstract();
            assert_eq!(g.positions(), p.tracked());
            assert!(g.orients().iter().all(|&o| o == 0));
        }
    }

    #[test]
    fn abstraction_ignores_untracked_cubies() {
        // two states differing only by moves that fix the tracked corners
        let p = Pattern::corners(vec![0, 1, 2, 3]).unwrap(); // U-layer corners
        let s = CubieState::solved();
        let s2 = s.apply_move(crate::cube::Move { face: crate::cube::Face::D, turns: crate::cube::Turns::Half });
        assert_eq!(p.abstract_state(&s), p.abstract_state(&s2));
    }

    #[test]
    fn abstraction_commutes_with_moves() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in patterns_under_test() {
            for _ in 0..1500 {
                let s = random_state(&mut rng);
                let m = ALL_MOVES[rng.gen_range(0..18)];
                let via_full = p.abstract_state(&s.apply_move(m));
                let via_abstract = p.apply_move_abstract(&p.abstract_state(&s), m);
                assert_eq!(via_full, via_abstract);
            }
        }
    }

    #[test]
    fn rank_unrank_exhaustive_small_patterns() {
        for p in [
            Pattern::corners(vec![0, 1]).unwrap(),
            Pattern::corners(vec![5, 2, 7]).unwrap(),
            Pattern::edges(vec![3, 9, 0, 6]).unwrap(),
        ] {
            let n = p.state_count();
            assert!(n <= 200_000);
            for r in 0..n {
                let a = p.unrank(r);
                assert_eq!(p.rank(&a), r, "collision at rank {r}");
            }
        }
    }

    #[test]
    fn rank_roundtrip_via_real_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in patterns_under_test() {
            for _ in 0..2000 {
                let s = random_state(&mut rng);
                let a = p.abstract_state(&s);
                let r = p.rank(&a);
                assert!(r < p.state_count());
                assert_eq!(p.unrank(r), a);
            }
        }
    }

    #[test]
    fn projection_onto_subpattern_matches_direct_abstraction() {
        let large = Pattern::corners(vec![0, 1, 2, 3]).unwrap();
        let base = Pattern::corners(vec![1, 3]).unwrap();
        assert!(large.contains(&base));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..500 {
            let s = random_state(&mut rng);
            let via_project = large.project(&large.abstract_state(&s), &base);
            assert_eq!(via_project, base.abstract_state(&s));
        }
    }
}
