//! Sorting stacks of burnt and unburnt pancakes by prefix reversals.
//!
//! * [`stack`], [`structure`], [`rank`], [`text`], [`trace`]: stack types,
//!   flips, adjacency structure, state indexing and the text format.
//! * [`potential`]: the potential function and its lower bounds.
//! * [`sorters`]: average-case, randomized and greedy-lookahead sorters.
//! * [`exact`]: BFS tables, A* and the candidate-set pipeline.
//! * [`experiments`]: sampling harness and closed-form reference values.

pub mod error;
pub mod exact;
pub mod experiments;
pub mod potential;
pub mod rank;
pub mod sorters;
pub mod stack;
pub mod structure;
pub mod text;
pub mod trace;

pub use error::{PancakeError, Result};
pub use potential::{
    delta_v, identity_thirds, lower_bound_potential, neg_identity_bound, potential,
    PotentialBreakdown,
};
pub use rank::{rank, state_count, unrank};
pub use stack::{
    AnyStack, BurntStack, MixedPancake, MixedStack, Orientation, SpecialStack, UnburntStack,
    Variant,
};
pub use structure::{
    analyze_structure, contract, contract_mixed, cyclic_renumber, cyclic_renumber_mixed, expand,
    mixed_adjacent, single_flip_adjacency, Interval, StructureReport,
};
pub use text::{format, parse, parse_burnt, parse_unburnt};
pub use trace::{parse_flip_list, FlipTrace};
