//! A* with optional node reopening.
//!
//! Selection always takes the OPEN state with minimum f = g + h, ties
//! broken by a fixed total order on states (their `Ord`), so two runs on
//! identical inputs expand identical sequences. The open list is a
//! binary heap with lazy invalidation: stale entries are recognized on
//! pop by a recorded g that no longer matches the state's current g.

use ordered_float::NotNan;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::hash::Hash;

/// Implicit unit-cost search space: every edge costs the same `edge_cost`.
pub trait SearchProblem {
    type State: Clone + Eq + Hash + Ord;

    fn start(&self) -> Self::State;
    fn is_goal(&self, s: &Self::State) -> bool;
    fn successors(&self, s: &Self::State) -> Vec<Self::State>;

    /// The constant edge cost c0.
    fn edge_cost(&self) -> f64 {
        1.0
    }
}

#[derive(Clone, Debug)]
pub struct SearchLimits {
    pub max_expansions: u64,
    /// Record the full expansion order (for determinism checks).
    pub record_trace: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_expansions: 10_000_000, record_trace: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult<S> {
    pub cost: f64,
    pub path: Vec<S>,
    pub expansions: u64,
    pub reopenings: u64,
    pub generated: u64,
    pub trace: Vec<S>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SearchError {
    #[error("open list exhausted after {expansions} expansions without reaching a goal")]
    UnreachableGoal { expansions: u64 },
    #[error("expansion budget {budget} exceeded ({expansions} expansions, {reopenings} reopenings, {generated} generated)")]
    BudgetExceeded { budget: u64, expansions: u64, reopenings: u64, generated: u64 },
    #[error("heuristic returned a non-finite value")]
    NonFiniteHeuristic,
}

struct NodeInfo<S> {
    g: f64,
    parent: Option<S>,
    closed: bool,
}

pub fn astar<P, H>(
    problem: &P,
    h: H,
    allow_reopen: bool,
    limits: &SearchLimits,
) -> Result<SearchResult<P::State>, SearchError>
where
    P: SearchProblem,
    H: Fn(&P::State) -> f64,
{
    let c0 = problem.edge_cost();
    let eval = |s: &P::State| -> Result<NotNan<f64>, SearchError> {
        let v = h(s);
        if !v.is_finite() {
            return Err(SearchError::NonFiniteHeuristic);
        }
        Ok(NotNan::new(v).unwrap())
    };

    let mut nodes: HashMap<P::State, NodeInfo<P::State>> = HashMap::new();
    // max-heap of Reverse((f, tie-order state, g at push time))
    let mut open: BinaryHeap<Reverse<(NotNan<f64>, P::State, NotNan<f64>)>> = BinaryHeap::new();

    let start = problem.start();
    let g0 = NotNan::new(0.0).unwrap();
    open.push(Reverse((eval(&start)?, start.clone(), g0)));
    nodes.insert(start, NodeInfo { g: 0.0, parent: None, closed: false });

    let mut expansions: u64 = 0;
    let mut reopenings: u64 = 0;
    let mut generated: u64 = 1;
    let mut trace = Vec::new();

    while let Some(Reverse((_f, state, g_pushed))) = open.pop() {
        {
            let info = &nodes[&state];
            // stale entry or already expanded at this g
            if info.closed || g_pushed.into_inner() > info.g {
                continue;
            }
        }

        if expansions >= limits.max_expansions {
            return Err(SearchError::BudgetExceeded {
                budget: limits.max_expansions,
                expansions,
                reopenings,
                generated,
            });
        }
        expansions += 1;
        if limits.record_trace {
            trace.push(state.clone());
        }

        if problem.is_goal(&state) {
            let cost = nodes[&state].g;
            let mut path = vec![state.clone()];
            let mut cur = state;
            while let Some(p) = nodes[&cur].parent.clone() {
                path.push(p.clone());
                cur = p;
            }
            path.reverse();
            return Ok(SearchResult { cost, path, expansions, reopenings, generated, trace });
        }

        let g_state = nodes[&state].g;
        for child in problem.successors(&state) {
            let g_new = g_state + c0;
            match nodes.get_mut(&child) {
                None => {
                    let f = NotNan::new(g_new).unwrap() + eval(&child)?;
                    nodes.insert(
                        child.clone(),
                        NodeInfo { g: g_new, parent: Some(state.clone()), closed: false },
                    );
                    open.push(Reverse((f, child, NotNan::new(g_new).unwrap())));
                    generated += 1;
                }
                Some(info) if g_new < info.g => {
                    if info.closed {
                        if !allow_reopen {
                            continue;
                        }
                        info.closed = false;
                        reopenings += 1;
                    }
                    info.g = g_new;
                    info.parent = Some(state.clone());
                    let f = NotNan::new(g_new).unwrap() + eval(&child)?;
                    open.push(Reverse((f, child, NotNan::new(g_new).unwrap())));
                }
                Some(_) => {}
            }
        }

        nodes.get_mut(&state).unwrap().closed = true;
    }

    Err(SearchError::UnreachableGoal { expansions })
}
