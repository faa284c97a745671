//! Exact-distance oracles via full breadth-first enumeration.
//!
//! On unit-cost spaces Dijkstra from the goal degenerates to BFS, and
//! the move sets we care about are closed under inverses, so distances
//! from the goal equal distances to the goal.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("state-space enumeration exceeded the budget of {budget} states")]
pub struct BudgetExceeded {
    pub budget: usize,
}

/// Distances from `root` to every reachable state, by BFS.
pub fn bfs_distances<S, F, I>(
    root: S,
    mut successors: F,
    max_states: usize,
) -> Result<HashMap<S, u32>, BudgetExceeded>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S) -> I,
    I: IntoIterator<Item = S>,
{
    let mut dist = HashMap::new();
    dist.insert(root.clone(), 0u32);
    let mut queue = VecDeque::from([root]);
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        for n in successors(&s) {
            if !dist.contains_key(&n) {
                if dist.len() >= max_states {
                    return Err(BudgetExceeded { budget: max_states });
                }
                dist.insert(n.clone(), d + 1);
                queue.push_back(n);
            }
        }
    }
    Ok(dist)
}
