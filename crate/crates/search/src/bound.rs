//! Suboptimality-bound checker for A* with reopening.
//!
//! The bound: the cost returned by A* with reopening exceeds C* by at
//! most max_{v in P_opt} [h(v) - h*(v)] for an optimal path P_opt. The
//! bound holds for every optimal path, so the checker uses the tightest
//! form: the minimum over all optimal paths of the path-max gap.
//!
//! On a unit-cost space a path from the start is optimal exactly when
//! h* drops by one along every edge, so the set of optimal paths is the
//! h*-descent DAG rooted at the start, and the min-over-paths of the
//! path-max gap is a dynamic program over that DAG in increasing h*
//! order.

use crate::astar::{astar, SearchError, SearchLimits, SearchProblem};
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;

#[derive(Clone, Debug, PartialEq)]
pub struct BoundViolation<S> {
    /// The optimal path achieving the minimal path-max gap.
    pub witness_path: Vec<S>,
    /// h(v) − h*(v) along the witness path.
    pub gaps: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck<S> {
    pub cost: f64,
    pub optimal_cost: f64,
    /// min over optimal paths of max_{v in path} (h(v) − h*(v)).
    pub rhs: f64,
    /// rhs − (cost − optimal_cost); the bound holds iff slack ≥ 0.
    pub slack: f64,
    pub violation: Option<BoundViolation<S>>,
}

impl<S> BoundCheck<S> {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// min over optimal start→goal paths of the path-max gap, with a path
/// achieving it. Returns None when the start is absent from the h* map
/// (goal unreachable).
pub fn min_optimal_path_gap<S, H, F, I>(
    h: &H,
    start: &S,
    mut successors: F,
    h_star: &HashMap<S, u32>,
    edge_cost: f64,
) -> Option<(f64, Vec<S>)>
where
    S: Clone + Eq + Hash + Ord,
    H: Fn(&S) -> f64,
    F: FnMut(&S) -> I,
    I: IntoIterator<Item = S>,
{
    let c_star = *h_star.get(start)?;

    // Collect the h*-descent DAG reachable from the start.
    let mut dag: HashMap<S, Vec<S>> = HashMap::new();
    let mut seen: HashSet<S> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(v) = queue.pop_front() {
        let d = h_star[&v];
        let next: Vec<S> = if d == 0 {
            Vec::new()
        } else {
            successors(&v)
                .into_iter()
                .filter(|w| h_star.get(w) == Some(&(d - 1)))
                .collect()
        };
        for w in &next {
            if seen.insert(w.clone()) {
                queue.push_back(w.clone());
            }
        }
        dag.insert(v, next);
    }

    // best(v) = max(gap(v), min over DAG successors of best), processed
    // in increasing h* order so successors are always finished first.
    let mut by_depth: Vec<Vec<S>> = vec![Vec::new(); c_star as usize + 1];
    for v in dag.keys() {
        by_depth[h_star[v] as usize].push(v.clone());
    }
    let mut best: HashMap<S, f64> = HashMap::new();
    let mut pick: HashMap<S, S> = HashMap::new();
    for layer in &by_depth {
        for v in layer {
            let gap = h(v) - h_star[v] as f64 * edge_cost;
            let down = dag[v]
                .iter()
                .min_by(|a, b| best[a].partial_cmp(&best[b]).unwrap().then_with(|| a.cmp(b)));
            let b = match down {
                Some(w) => {
                    pick.insert(v.clone(), w.clone());
                    gap.max(best[w])
                }
                None => gap,
            };
            best.insert(v.clone(), b);
        }
    }

    let mut path = vec![start.clone()];
    while let Some(next) = pick.get(path.last().unwrap()) {
        path.push(next.clone());
    }
    Some((best[start], path))
}

/// Runs A* with reopening and checks the bound. Requires h(goal) = 0 and
/// h finite on all states in the h* map.
pub fn check_suboptimality_bound<P, H>(
    problem: &P,
    h: H,
    h_star: &HashMap<P::State, u32>,
    limits: &SearchLimits,
) -> Result<BoundCheck<P::State>, SearchError>
where
    P: SearchProblem,
    H: Fn(&P::State) -> f64,
{
    let c0 = problem.edge_cost();
    let result = astar(problem, &h, true, limits)?;
    let start = problem.start();
    let (rhs, witness) = min_optimal_path_gap(&h, &start, |s| problem.successors(s), h_star, c0)
        .expect("start state missing from the h* map");
    let optimal_cost = h_star[&start] as f64 * c0;
    let slack = rhs - (result.cost - optimal_cost);
    let violation = if slack < -1e-9 {
        let gaps = witness.iter().map(|v| h(v) - h_star[v] as f64 * c0).collect();
        Some(BoundViolation { witness_path: witness, gaps })
    } else {
        None
    };
    Ok(BoundCheck { cost: result.cost, optimal_cost, rhs, slack, violation })
}
