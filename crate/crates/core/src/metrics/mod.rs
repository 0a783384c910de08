//! Distances, routing, expansion, cuts, the induced partial order and mixing.

mod cut;
mod distance;
mod expansion;
mod mixing;
mod order;
mod route;

pub use cut::{matching_cut_search, MatchingCut, MAX_CUT_VERTICES};
pub use distance::{
    bfs_distances, diameter_bounds, diameter_exact, diameter_lower_bound, eccentricities, eccentricity,
    DiameterBounds, MAX_EXACT_DIAMETER_VERTICES,
};
pub use expansion::{
    badly_matched, expansion_probe, matched_fraction, second_neighborhood, vertex_boundary, ExpansionReport,
    FamilyStats, ProbeReport, SetFamily, MAX_EXHAUSTIVE_VERTICES,
};
pub use mixing::{mixing_profile, MixingProfile, MAX_MIXING_VERTICES};
pub use order::{partial_order_build, PartialOrder, MAX_CLOSURE_VERTICES, MAX_ORDER_VERTICES};
pub use route::{greedy_route, Hop, RouteTrace};
