//! Cubie-level representation of the 3x3 Rubik's Cube.
//!
//! Corner slots are indexed URF=0, UFL=1, ULB=2, UBR=3, DFR=4, DLF=5,
//! DBL=6, DRB=7. Edge slots are UR=0, UF=1, UL=2, UB=3, DR=4, DF=5, DL=6,
//! DB=7, FR=8, FL=9, BL=10, BR=11. Corner orientation counts clockwise
//! twists of the U/D facelet away from the U/D face; edge orientation is
//! the usual flip bit. Centers are fixed and not represented.

use std::fmt;

pub const NUM_CORNERS: usize = 8;
pub const NUM_EDGES: usize = 12;

/// Exact cube configuration. `corner_perm[slot]` is the corner cubie
/// occupying `slot`; `corner_orient[slot]` is the twist of that cubie.
/// Same layout for edges.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubieState {
    pub corner_perm: [u8; NUM_CORNERS],
    pub corner_orient: [u8; NUM_CORNERS],
    pub edge_perm: [u8; NUM_EDGES],
    pub edge_orient: [u8; NUM_EDGES],
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Face {
    U,
    R,
    F,
    D,
    L,
    B,
}

impl Face {
    pub const ALL: [Face; 6] = [Face::U, Face::R, Face::F, Face::D, Face::L, Face::B];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Number of clockwise quarter turns a move applies; half turns count as
/// a single move (18-move metric).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Turns {
    Quarter,
    Half,
    CounterQuarter,
}

impl Turns {
    fn count(self) -> usize {
        match self {
            Turns::Quarter => 1,
            Turns::Half => 2,
            Turns::CounterQuarter => 3,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Move {
    pub face: Face,
    pub turns: Turns,
}

impl Move {
    pub fn inverse(self) -> Move {
        let turns = match self.turns {
            Turns::Quarter => Turns::CounterQuarter,
            Turns::Half => Turns::Half,
            Turns::CounterQuarter => Turns::Quarter,
        };
        Move { face: self.face, turns }
    }

    /// Dense index in [0, 18): face * 3 + (turn count - 1).
    pub fn index(self) -> usize {
        self.face.index() * 3 + (self.turns.count() - 1)
    }

    pub fn from_index(i: usize) -> Move {
        assert!(i < 18);
        let face = Face::ALL[i / 3];
        let turns = [Turns::Quarter, Turns::Half, Turns::CounterQuarter][i % 3];
        Move { face, turns }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = match self.turns {
            Turns::Quarter => "",
            Turns::Half => "2",
            Turns::CounterQuarter => "'",
        };
        write!(f, "{:?}{}", self.face, suffix)
    }
}

/// The full 18-move set: six faces, three turn amounts each.
pub const ALL_MOVES: [Move; 18] = {
    let mut moves = [Move { face: Face::U, turns: Turns::Quarter }; 18];
    let faces = [Face::U, Face::R, Face::F, Face::D, Face::L, Face::B];
    let turns = [Turns::Quarter, Turns::Half, Turns::CounterQuarter];
    let mut i = 0;
    while i < 18 {
        moves[i] = Move { face: faces[i / 3], turns: turns[i % 3] };
        i += 1;
    }
    moves
};

/// Effect of one clockwise quarter turn on the cubie arrays.
/// `cp[slot]` names the slot whose occupant moves into `slot`; `co[slot]`
/// is the twist added to the cubie arriving at `slot` (mod 3). Same for
/// edges with flips mod 2.
pub(crate) struct QuarterTurn {
    pub cp: [u8; NUM_CORNERS],
    pub co: [u8; NUM_CORNERS],
    pub ep: [u8; NUM_EDGES],
    pub eo: [u8; NUM_EDGES],
}

pub(crate) const QUARTER_TURNS: [QuarterTurn; 6] = [
    // U
    QuarterTurn {
        cp: [3, 0, 1, 2, 4, 5, 6, 7],
        co: [0; 8],
        ep: [3, 0, 1, 2, 4, 5, 6, 7, 8, 9, 10, 11],
        eo: [0; 12],
    },
    // R
    QuarterTurn {
        cp: [4, 1, 2, 0, 7, 5, 6, 3],
        co: [2, 0, 0, 1, 1, 0, 0, 2],
        ep: [8, 1, 2, 3, 11, 5, 6, 7, 4, 9, 10, 0],
        eo: [0; 12],
    },
    // F
    QuarterTurn {
        cp: [1, 5, 2, 3, 0, 4, 6, 7],
        co: [1, 2, 0, 0, 2, 1, 0, 0],
        ep: [0, 9, 2, 3, 4, 8, 6, 7, 1, 5, 10, 11],
        eo: [0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0],
    },
    // D
    QuarterTurn {
        cp: [0, 1, 2, 3, 5, 6, 7, 4],
        co: [0; 8],
        ep: [0, 1, 2, 3, 5, 6, 7, 4, 8, 9, 10, 11],
        eo: [0; 12],
    },
    // L
    QuarterTurn {
        cp: [0, 2, 6, 3, 4, 1, 5, 7],
        co: [0, 1, 2, 0, 0, 2, 1, 0],
        ep: [0, 1, 10, 3, 4, 5, 9, 7, 8, 2, 6, 11],
        eo: [0; 12],
    },
    // B
    QuarterTurn {
        cp: [0, 1, 3, 7, 4, 5, 2, 6],
        co: [0, 0, 1, 2, 0, 0, 2, 1],
        ep: [0, 1, 2, 11, 4, 5, 6, 10, 8, 9, 3, 7],
        eo: [0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1],
    },
];

impl CubieState {
    pub fn solved() -> CubieState {
        CubieState {
            corner_perm: [0, 1, 2, 3, 4, 5, 6, 7],
            corner_orient: [0; NUM_CORNERS],
            edge_perm: [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
            edge_orient: [0; NUM_EDGES],
        }
    }

    pub fn is_solved(&self) -> bool {
        *self == CubieState::solved()
    }

    fn quarter(&self, face: Face) -> CubieState {
        let t = &QUARTER_TURNS[face.index()];
        let mut next = *self;
        for i in 0..NUM_CORNERS {
            let from = t.cp[i] as usize;
            next.corner_perm[i] = self.corner_perm[from];
            next.corner_orient[i] = (self.corner_orient[from] + t.co[i]) % 3;
        }
        for i in 0..NUM_EDGES {
            let from = t.ep[i] as usize;
            next.edge_perm[i] = self.edge_perm[from];
            next.edge_orient[i] = (self.edge_orient[from] + t.eo[i]) % 2;
        }
        next
    }

    /// Pure successor function: the state after one face turn.
    pub fn apply_move(&self, m: Move) -> CubieState {
        let mut s = *self;
        for _ in 0..m.turns.count() {
            s = s.quarter(m.face);
        }
        s
    }

    pub fn apply_moves(&self, moves: &[Move]) -> CubieState {
        moves.iter().fold(*self, |s, &m| s.apply_move(m))
    }

    /// Checks the permutation/orientation invariants of a legal cube state.
    pub fn is_valid(&self) -> bool {
        let mut seen_c = [false; NUM_CORNERS];
        let mut seen_e = [false; NUM_EDGES];
        for &c in &self.corner_perm {
            if c as usize >= NUM_CORNERS || seen_c[c as usize] {
                return false;
            }
            seen_c[c as usize] = true;
        }
        for &e in &self.edge_perm {
            if e as usize >= NUM_EDGES || seen_e[e as usize] {
                return false;
            }
            seen_e[e as usize] = true;
        }
        self.corner_orient.iter().all(|&o| o < 3)
            && self.edge_orient.iter().all(|&o| o < 2)
            && self.corner_orient.iter().map(|&o| o as u32).sum::<u32>() % 3 == 0
            && self.edge_orient.iter().map(|&o| o as u32).sum::<u32>() % 2 == 0
    }

    /// Canonical text form: four space-separated digit groups
    /// (corner perm, corner orient, edge perm, edge orient).
    pub fn to_canonical_string(&self) -> String {
        let join = |xs: &[u8]| {
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        format!(
            "{} {} {} {}",
            join(&self.corner_perm),
            join(&self.corner_orient),
            join(&self.edge_perm),
            join(&self.edge_orient)
        )
    }

    pub fn from_canonical_string(s: &str) -> Result<CubieState, ParseStateError> {
        let groups: Vec<&str> = s.split_whitespace().collect();
        if groups.len() != 4 {
            return Err(ParseStateError::FieldCount(groups.len()));
        }
        fn parse_group<const N: usize>(g: &str) -> Result<[u8; N], ParseStateError> {
            let vals: Result<Vec<u8>, _> = g.split(',').map(|t| t.parse::<u8>()).collect();
            let vals = vals.map_err(|_| ParseStateError::BadNumber(g.to_string()))?;
            vals.try_into().map_err(|v: Vec<u8>| ParseStateError::GroupLen(v.len(), N))
        }
        let state = CubieState {
            corner_perm: parse_group::<NUM_CORNERS>(groups[0])?,
            corner_orient: parse_group::<NUM_CORNERS>(groups[1])?,
            edge_perm: parse_group::<NUM_EDGES>(groups[2])?,
            edge_orient: parse_group::<NUM_EDGES>(groups[3])?,
        };
        if !state.is_valid() {
            return Err(ParseStateError::InvalidState);
        }
        Ok(state)
    }
}

impl fmt::Debug for CubieState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubieState({})", self.to_canonical_string())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseStateError {
    #[error("expected 4 space-separated groups, found {0}")]
    FieldCount(usize),
    #[error("unparsable number in group {0:?}")]
    BadNumber(String),
    #[error("group has {0} entries, expected {1}")]
    GroupLen(usize, usize),
    #[error("arrays do not form a legal cube state")]
    InvalidState,
}

impl CubieState {
    /// Random reachable state from a scramble of `len` uniform moves.
    pub fn scrambled(rng: &mut impl rand::Rng, len: usize) -> CubieState {
        let moves: Vec<Move> = (0..len).map(|_| ALL_MOVES[rng.gen_range(0..18)]).collect();
        CubieState::solved().apply_moves(&moves)
    }
}

#[cfg(test)]
pub(crate) fn random_state(rng: &mut impl rand::Rng) -> CubieState {
    let n = rng.gen_range(10..40);
    CubieState::scrambled(rng, n)
}
