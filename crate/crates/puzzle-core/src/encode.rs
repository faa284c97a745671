//! One-hot feature encodings of abstract cube states, used as network
//! inputs.
//!
//! Corner patterns are rendered as sticker colors: six color channels per
//! face, nine stickers each (6 faces * 6 colors * 9 = 324 entries), with
//! every non-corner cubie and every untracked corner slot drawn solved.
//! Edge patterns use three 12-entry channels per tracked edge: a location
//! one-hot over the 12 edge positions, an orientation indicator at that
//! location, and a fixed goal-position one-hot.

use crate::cube::CubieState;
use crate::pattern::{AbstractState, Pattern, PatternKind};

// (face, sticker) per corner slot, stickers row-major 0..9 per face;
// faces ordered U=0, R=1, F=2, D=3, L=4, B=5.
const CORNER_FACELET: [[(usize, usize); 3]; 8] = [
    [(0, 8), (1, 0), (2, 2)], // URF
    [(0, 6), (2, 0), (4, 2)], // UFL
    [(0, 0), (4, 0), (5, 2)], // ULB
    [(0, 2), (5, 0), (1, 2)], // UBR
    [(3, 2), (2, 8), (1, 6)], // DFR
    [(3, 0), (4, 8), (2, 6)], // DLF
    [(3, 6), (5, 8), (4, 6)], // DBL
    [(3, 8), (1, 8), (5, 6)], // DRB
];

const CORNER_COLOR: [[usize; 3]; 8] = [
    [0, 1, 2],
    [0, 2, 4],
    [0, 4, 5],
    [0, 5, 1],
    [3, 2, 1],
    [3, 4, 2],
    [3, 5, 4],
    [3, 1, 5],
];

/// Feature-vector width for a pattern.
pub fn feature_width(p: &Pattern) -> usize {
    match p.kind() {
        PatternKind::Corners => 6 * 6 * 9,
        PatternKind::Edges => 3 * p.tracked().len() * 12,
    }
}

/// Encodes an abstract state into `out` (length `feature_width(p)`).
pub fn encode_abstract_into(p: &Pattern, a: &AbstractState, out: &mut [f32]) {
    assert_eq!(out.len(), feature_width(p));
    out.fill(0.0);
    match p.kind() {
        PatternKind::Corners => {
            // sticker colors, initially solved
            let mut color = [[0usize; 9]; 6];
            for (f, face) in color.iter_mut().enumerate() {
                face.fill(f);
            }
            // untracked corner slots stay solved; tracked cubies overwrite
            // the slots they occupy
            for (j, &cubie) in p.tracked().iter().enumerate() {
                let slot = a.positions()[j] as usize;
                let ori = a.orients()[j] as usize;
                for n in 0..3 {
                    let (face, sticker) = CORNER_FACELET[slot][(n + ori) % 3];
                    color[face][sticker] = CORNER_COLOR[cubie as usize][n];
                }
            }
            for f in 0..6 {
                for s in 0..9 {
                    out[f * 54 + color[f][s] * 9 + s] = 1.0;
                }
            }
        }
        PatternKind::Edges => {
            for (j, &cubie) in p.tracked().iter().enumerate() {
                let base = j * 36;
                let pos = a.positions()[j] as usize;
                out[base + pos] = 1.0;
                if a.orients()[j] == 0 {
                    out[base + 12 + pos] = 1.0;
                }
                out[base + 24 + cubie as usize] = 1.0;
            }
        }
    }
}

pub fn encode_abstract(p: &Pattern, a: &AbstractState) -> Vec<f32> {
    let mut out = vec![0.0; feature_width(p)];
    encode_abstract_into(p, a, &mut out);
    out
}

/// One-hot encoding of a full state under a pattern; depends only on the
/// state's abstraction.
pub fn encode_one_hot(state: &CubieState, p: &Pattern) -> Vec<f32> {
    encode_abstract(p, &p.abstract_state(state))
}
