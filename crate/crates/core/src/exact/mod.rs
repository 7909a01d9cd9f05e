//! Exact flip distances: breadth-first tables, A* with admissible bounds,
//! and the candidate-set pipeline for worst-case values.

mod astar;
mod bfs;
mod bounds;
mod candidates;

pub use astar::{astar_distance, Solver, SolverConfig};
pub use bfs::{
    bfs_distances, bfs_distances_threaded, DistanceTable, HEADER_LEN, MAX_BFS_BURNT,
    MAX_BFS_UNBURNT, MEM_LIMIT_ENV, UNSET,
};
pub use bounds::{
    greedy_lb_burnt, greedy_lb_burnt_limited, greedy_lb_unburnt, GreedyBound,
    DEFAULT_GREEDY_NODE_LIMIT,
};
pub use candidates::{
    candidate_set, candidate_set_burnt, candidate_set_unburnt, max_flips, max_flips_by_candidates,
    verify_trace, CandidateSet, DistanceSlices, MaxFlips,
};
