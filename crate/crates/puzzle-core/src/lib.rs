//! Exact state spaces for the 3x3 Rubik's Cube and the 3x3 sliding tile
//! puzzle, together with the pattern abstractions and rank/unrank indexing
//! that back pattern-database storage.
//!
//! All types are plain immutable values and all operations are pure, so
//! everything here can be shared freely across threads.

pub mod cube;
pub mod encode;
pub mod pattern;
pub mod tile;

pub use cube::{CubieState, Face, Move, Turns, ALL_MOVES};
pub use encode::encode_one_hot;
pub use pattern::{AbstractState, Pattern, PatternKind};
pub use tile::TilePuzzleState;
