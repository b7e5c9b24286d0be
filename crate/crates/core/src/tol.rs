//! Tolerance policy, stated once and used everywhere.

/// Absolute tolerance for equality-style comparisons: canonical-form
/// coordinate equality, matching-cost ties, zero-distance tests.
pub const EQ_TOL: f64 = 1e-12;

/// Slack granted to metric inequalities (triangle inequality, invariance
/// checks) and to recomputation agreement on reported quantities.
pub const METRIC_SLACK: f64 = 1e-9;

/// Two domain points closer than this are treated as the same point.
pub const COINCIDENCE_EPS: f64 = 1e-12;
