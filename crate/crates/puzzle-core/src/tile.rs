//! The 3x3 sliding tile puzzle. Small enough to enumerate exhaustively,
//! which makes it the oracle domain for the search experiments.

use std::fmt;

/// Row-major 3x3 grid; 0 is the blank. Goal is `1..8` with the blank in
/// the bottom-right cell.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TilePuzzleState {
    pub cells: [u8; 9],
}

impl TilePuzzleState {
    pub fn solved() -> TilePuzzleState {
        TilePuzzleState { cells: [1, 2, 3, 4, 5, 6, 7, 8, 0] }
    }

    pub fn new(cells: [u8; 9]) -> Option<TilePuzzleState> {
        let mut seen = [false; 9];
        for &c in &cells {
            if c > 8 || seen[c as usize] {
                return None;
            }
            seen[c as usize] = true;
        }
        Some(TilePuzzleState { cells })
    }

    pub fn blank_pos(&self) -> usize {
        self.cells.iter().position(|&c| c == 0).unwrap()
    }

    /// Solvable half-space test: for width 3 a state reaches the goal iff
    /// its tile inversion count is even.
    pub fn is_reachable(&self) -> bool {
        let tiles: Vec<u8> = self.cells.iter().copied().filter(|&c| c != 0).collect();
        let mut inv = 0;
        for i in 0..tiles.len() {
            for j in i + 1..tiles.len() {
                if tiles[i] > tiles[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 0
    }

    pub fn successors(&self) -> Vec<TilePuzzleState> {
        let b = self.blank_pos();
        let (r, c) = (b / 3, b % 3);
        let mut out = Vec::with_capacity(4);
        for (dr, dc) in [(-1i32, 0i32), (1, 0), (0, -1), (0, 1)] {
            let (nr, nc) = (r as i32 + dr, c as i32 + dc);
            if (0..3).contains(&nr) && (0..3).contains(&nc) {
                let n = (nr * 3 + nc) as usize;
                let mut next = *self;
                next.cells.swap(b, n);
                out.push(next);
            }
        }
        out
    }

    /// Uniform sample from the reachable half-space.
    pub fn random_reachable(rng: &mut impl rand::Rng) -> TilePuzzleState {
        loop {
            let mut cells = [0u8, 1, 2, 3, 4, 5, 6, 7, 8];
            // Fisher-Yates
            for i in (1..9).rev() {
                let j = rng.gen_range(0..=i);
                cells.swap(i, j);
            }
            let s = TilePuzzleState { cells };
            if s.is_reachable() {
                return s;
            }
        }
    }

    pub fn to_canonical_string(&self) -> String {
        self.cells.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn from_canonical_string(s: &str) -> Option<TilePuzzleState> {
        let vals: Result<Vec<u8>, _> = s.trim().split(',').map(|t| t.trim().parse()).collect();
        let cells: [u8; 9] = vals.ok()?.try_into().ok()?;
        TilePuzzleState::new(cells)
    }
}

impl fmt::Debug for TilePuzzleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tile({})", self.to_canonical_string())
    }
}
