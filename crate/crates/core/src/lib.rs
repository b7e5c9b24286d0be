//! Q-point configuration spaces and Lipschitz extension machinery.
//!
//! A *configuration* is an unordered multiset of `Q` points of `R^n`. The
//! space of all such configurations carries a metric computed by optimally
//! matching the atoms of one configuration against the atoms of the other
//! and taking the root-sum-of-squares of the matched distances; the optimal
//! matching is found with an exact assignment solver.
//!
//! On top of the metric the crate provides:
//!
//! - [`AnchoredMap`]: maps from finitely many anchor points of `R^m` into
//!   configuration space, with Lipschitz constants taken against Euclidean
//!   distance on the domain ([`AnchoredMap::lip_constant`]).
//! - One-point extensions ([`solve_one_point`], [`nearest_point_extension`])
//!   that assign a value at a new domain point while controlling the worst
//!   ratio of configuration distance to domain distance, plus a grid-based
//!   certified lower bound on the best achievable ratio
//!   ([`certified_lower_bound`]).
//! - A concrete regular-hexagon instance ([`hexagon_instance`]) for which
//!   the minimal one-point stretch provably exceeds the Lipschitz constant
//!   of the map, together with a machine-checkable verification report
//!   ([`verify_counterexample`]).
//! - A seeded randomized search ([`lower_bound_search`]) for instances with
//!   a large stretch-to-Lipschitz-constant ratio.

pub mod error;
pub mod extend;
pub mod hexagon;
pub mod lipmap;
mod onecenter;
pub mod qspace;
pub mod search;
pub mod tol;

pub use error::{Error, Result};
pub use extend::{
    certified_lower_bound, nearest_point_extension, solve_one_point, ExtensionResult,
    LowerBoundOptions, SolveOptions, SolveStatus,
};
pub use hexagon::{half_plane_check, hexagon_instance, verify_counterexample, HexagonReport};
pub use lipmap::{Anchor, AnchoredMap};
pub use qspace::{g_distance, g_distance_bruteforce, optimal_matching, Matching, Point, QConfig};
pub use search::{lower_bound_search, Improvement, SearchParams, SearchReport};
