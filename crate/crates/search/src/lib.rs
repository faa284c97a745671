//! A* with node reopening, exact-distance oracles, and the
//! inconsistency/inadmissibility measures used to validate the
//! suboptimality bound of A* with reopening.

pub mod astar;
pub mod bound;
pub mod domains;
pub mod measures;
pub mod oracle;

pub use astar::{astar, SearchError, SearchLimits, SearchProblem, SearchResult};
pub use bound::{check_suboptimality_bound, min_optimal_path_gap, BoundCheck, BoundViolation};
pub use measures::{inconsistency, psi, OptimalPathGap, PsiError};
pub use oracle::{bfs_distances, BudgetExceeded};
