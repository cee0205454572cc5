//! Brute-force machinery for instances small enough to scan all of `Q^V`.
//!
//! Colorings are identified with their base-q code (vertex 0 least
//! significant) and sets of colorings are kept sorted by code.

mod enumerate;
mod events;
mod lll;
mod move_graph;
mod tail;
mod tvd;

pub use enumerate::{
    enumerate_proper, enumerate_proper_range, state_count, EnumerationResult, OmegaWalk, DEFAULT_BUDGET,
};
pub use events::{event_census, hss_transfer_check, EventCensus, EventProbabilities, HssCheck};
pub use lll::{lll_premise_check, EdgePremise, LllParams, LllReport};
pub use move_graph::{move_graph, MoveGraph};
pub use tail::{level_tail_bound, binomial_upper_tail, sunflower_center_tail, TailBound};
pub use tvd::{exact_tvd, total_variation, tvd_from_counts};
