use serde::Serialize;

use super::formulas::*;
use crate::model::{Classification, DelayClassStats};

/// Slack allowed before a measured price of anarchy counts as a violation.
pub const VIOLATION_TOLERANCE: f64 = 1e-6;

/// Equilibrium concept a bound speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Nonatomic,
    Atomic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub value: f64,
    /// Delay class and setting the bound is proved for.
    pub theorem: &'static str,
    /// Whether the instance falls in that class; inapplicable bounds are
    /// listed for reference and never produce violations.
    pub applicable: bool,
    /// The alternative statement of a bound, shown for comparison only.
    pub variant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub stats: DelayClassStats,
    pub bounds: Vec<BoundEntry>,
    /// `None` when not measured or no equilibrium exists; infinite when
    /// unbounded.
    #[serde(serialize_with = "serialize_measured")]
    pub measured: Option<f64>,
    /// Names of applicable bounds below the measured value.
    pub violations: Vec<&'static str>,
}

fn serialize_measured<S: serde::Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) if x.is_infinite() => s.serialize_str("inf"),
        Some(x) => s.serialize_f64(*x),
        None => s.serialize_none(),
    }
}

impl BoundReport {
    /// Every bound for `mode`, with applicability taken from the
    /// classification. `variants` adds the alternative statements.
    pub fn new(class: &Classification, mode: Mode, measured: Option<f64>, variants: bool) -> Self {
        let stats = class.stats.clone();
        let decomposable_poly = class.decomposable && class.theta_complete;
        let mut bounds = Vec::new();
        let mut push = |name: &'static str,
                        f: fn(&DelayClassStats) -> f64,
                        theorem: &'static str,
                        applicable: bool,
                        variant: bool| {
            if !variant || variants {
                bounds.push(BoundEntry {
                    name,
                    value: f(&stats),
                    theorem,
                    applicable,
                    variant,
                });
            }
        };
        match mode {
            Mode::Nonatomic => {
                push(
                    "nonatomic_decomposable_poly",
                    bound_nonatomic_decomposable,
                    "non-atomic, decomposable theta-polynomial delays",
                    decomposable_poly,
                    false,
                );
                push(
                    "nonatomic_heterogeneous_poly",
                    bound_nonatomic_heterogeneous_poly,
                    "non-atomic, heterogeneous theta-polynomial delays",
                    class.theta_complete,
                    false,
                );
                push(
                    "nonatomic_heterogeneous_poly_variant",
                    bound_nonatomic_heterogeneous_poly_abstract,
                    "non-atomic, heterogeneous theta-polynomial delays (alternative form)",
                    class.theta_complete,
                    true,
                );
                push(
                    "nonatomic_heterogeneous_affine",
                    bound_nonatomic_heterogeneous_affine,
                    "non-atomic, heterogeneous affine delays",
                    class.affine,
                    false,
                );
                push(
                    "nonatomic_heterogeneous_affine_variant",
                    bound_nonatomic_heterogeneous_affine_abstract,
                    "non-atomic, heterogeneous affine delays (alternative form)",
                    class.affine,
                    true,
                );
            }
            Mode::Atomic => {
                push(
                    "atomic_decomposable_affine",
                    bound_atomic_decomposable_affine,
                    "atomic, decomposable affine delays",
                    class.decomposable && class.affine,
                    false,
                );
                push(
                    "atomic_decomposable_poly",
                    bound_atomic_decomposable_poly,
                    "atomic, decomposable theta-polynomial delays",
                    decomposable_poly,
                    false,
                );
                push(
                    "atomic_uniform_affine",
                    bound_atomic_uniform_affine,
                    "atomic, two-commodity uniform affine delays",
                    class.uniform && class.affine && stats.k == 2,
                    false,
                );
            }
        }
        let violations = match measured {
            Some(m) => bounds
                .iter()
                .filter(|b| b.applicable && !b.variant && m > b.value + VIOLATION_TOLERANCE)
                .map(|b| b.name)
                .collect(),
            None => Vec::new(),
        };
        Self {
            stats,
            bounds,
            measured,
            violations,
        }
    }

    /// One row per bound: `name,value,theorem,applicable,variant,measured,violated`.
    pub fn to_csv(&self) -> String {
        let measured = match self.measured {
            Some(x) if x.is_infinite() => "inf".to_string(),
            Some(x) => x.to_string(),
            None => String::new(),
        };
        let mut out = String::from("name,value,theorem,applicable,variant,measured,violated\n");
        for b in &self.bounds {
            out.push_str(&format!(
                "{},{},\"{}\",{},{},{},{}\n",
                b.name,
                b.value,
                b.theorem,
                b.applicable,
                b.variant,
                measured,
                self.violations.contains(&b.name)
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::generators::{gen_fig2, gen_fig6, gen_unbounded};

    fn entry<'a>(report: &'a BoundReport, name: &str) -> &'a BoundEntry {
        report.bounds.iter().find(|b| b.name == name).unwrap()
    }

    #[test]
    fn decomposable_instance_gets_its_bound() {
        let instance = gen_fig2(3, 2, 2.0).unwrap();
        let report = BoundReport::new(instance.classification(), Mode::Nonatomic, Some(4.0), false);
        let b = entry(&report, "nonatomic_decomposable_poly");
        assert!(b.applicable);
        assert_eq!(b.value, 18.0);
        assert!(report.violations.is_empty());
        assert!(!report.bounds.iter().any(|b| b.variant));
    }

    #[test]
    fn violations_list_exceeded_bounds() {
        let instance = gen_fig6(4.0).unwrap();
        let report = BoundReport::new(instance.classification(), Mode::Atomic, Some(5.0), true);
        assert_eq!(entry(&report, "atomic_uniform_affine").value, 4.0);
        assert_eq!(report.violations, vec!["atomic_uniform_affine"]);
    }

    #[test]
    fn poly_bounds_need_theta_completeness() {
        let instance = gen_unbounded().unwrap();
        let report = BoundReport::new(
            instance.classification(),
            Mode::Nonatomic,
            Some(f64::INFINITY),
            true,
        );
        assert!(report.bounds.iter().all(|b| !b.applicable));
        assert!(report.violations.is_empty());
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["measured"], "inf");
        assert_eq!(json["bounds"][0]["applicable"], false);
    }

    #[test]
    fn csv_has_one_row_per_bound() {
        let instance = gen_fig2(3, 2, 2.0).unwrap();
        let report = BoundReport::new(instance.classification(), Mode::Nonatomic, None, true);
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), report.bounds.len() + 1);
        assert!(csv
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("nonatomic_decomposable_poly,18,"));
    }
}
