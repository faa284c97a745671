//! SearchProblem adapters for the cube, the 3x3 tile puzzle, and
//! explicit unit-cost digraphs (used for randomized bound validation).

use crate::astar::SearchProblem;
use puzzle_core::{CubieState, TilePuzzleState, ALL_MOVES};
use rand::Rng;

/// Rubik's cube under the 18-move metric, goal = solved.
pub struct CubeProblem {
    pub start: CubieState,
}

impl SearchProblem for CubeProblem {
    type State = CubieState;

    fn start(&self) -> CubieState {
        self.start
    }

    fn is_goal(&self, s: &CubieState) -> bool {
        *s == CubieState::solved()
    }

    fn successors(&self, s: &CubieState) -> Vec<CubieState> {
        ALL_MOVES.iter().map(|m| s.apply_move(*m)).collect()
    }
}

/// 8-puzzle, goal = the standard solved arrangement.
pub struct TileProblem {
    pub start: TilePuzzleState,
}

impl SearchProblem for TileProblem {
    type State = TilePuzzleState;

    fn start(&self) -> TilePuzzleState {
        self.start
    }

    fn is_goal(&self, s: &TilePuzzleState) -> bool {
        *s == TilePuzzleState::solved()
    }

    fn successors(&self, s: &TilePuzzleState) -> Vec<TilePuzzleState> {
        s.successors()
    }
}

/// Explicit directed graph with unit edge costs; states are node ids.
pub struct GraphProblem {
    pub adjacency: Vec<Vec<usize>>,
    pub start: usize,
    pub goal: usize,
}

impl SearchProblem for GraphProblem {
    type State = usize;

    fn start(&self) -> usize {
        self.start
    }

    fn is_goal(&self, s: &usize) -> bool {
        *s == self.goal
    }

    fn successors(&self, s: &usize) -> Vec<usize> {
        self.adjacency[*s].clone()
    }
}

impl GraphProblem {
    /// Reversed-edge adjacency, for goal-rooted distance oracles.
    pub fn reversed(&self) -> Vec<Vec<usize>> {
        let mut rev = vec![Vec::new(); self.adjacency.len()];
        for (u, outs) in self.adjacency.iter().enumerate() {
            for &v in outs {
                rev[v].push(u);
            }
        }
        rev
    }
}

/// Random connected undirected graph (each undirected edge stored as two
/// arcs): a random spanning tree plus `extra_edges` random chords.
pub fn random_connected_graph<R: Rng>(
    rng: &mut R,
    nodes: usize,
    extra_edges: usize,
) -> Vec<Vec<usize>> {
    assert!(nodes >= 2);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let add = |adj: &mut Vec<Vec<usize>>, u: usize, v: usize| {
        if u != v && !adj[u].contains(&v) {
            adj[u].push(v);
            adj[v].push(u);
        }
    };
    for v in 1..nodes {
        let u = rng.gen_range(0..v);
        add(&mut adj, u, v);
    }
    for _ in 0..extra_edges {
        let u = rng.gen_range(0..nodes);
        let v = rng.gen_range(0..nodes);
        add(&mut adj, u, v);
    }
    for outs in adj.iter_mut() {
        outs.sort_unstable();
    }
    adj
}
