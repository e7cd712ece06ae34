//! Analytic bounds, numeric Pigou/Gamma estimates, the root recursion, the
//! mediant check and the lower-bound instance generators.

mod formulas;
pub mod generators;
mod mediant;
mod pigou;
mod report;
mod root;

pub use formulas::*;
pub use mediant::mediant_partition_check;
pub use pigou::{
    alpha_ratio, class_functions, gamma_bound_numeric, gamma_ratio, instance_class,
    pigou_bound_numeric, AlphaEstimate, GammaEstimate, Grid, PigouEstimate, Witness,
};
pub use report::{BoundEntry, BoundReport, Mode, VIOLATION_TOLERANCE};
pub use root::{poa_root, poa_root_iterates, root_polynomial};
