//! Numeric tolerances shared across the crate.

/// Allowed violation of `sum of path flows == demand`.
pub const FEASIBILITY: f64 = 1e-9;

/// Accuracy expected from delay evaluation.
pub const EVALUATION: f64 = 1e-12;

/// Default relative equilibrium tolerance for Wardrop verification.
pub const EQUILIBRIUM: f64 = 1e-6;

/// A unilateral deviation only counts when it improves by more than this.
pub const DEVIATION: f64 = 1e-9;

/// A path counts as "used" when it carries more than this fraction of its
/// commodity's demand.
pub const USED_FLOW: f64 = 1e-9;

/// Social optimum below `UNBOUNDED * total demand` is treated as zero.
pub const UNBOUNDED: f64 = 1e-9;

/// Default cap on the number of simple paths per commodity.
pub const DEFAULT_PATH_CAP: usize = 10_000;

/// Default cap on the number of pure profiles of an atomic game.
pub const DEFAULT_PROFILE_CAP: usize = 1_000_000;
