use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::equilibrium::{solve_ne_nonatomic, NeConfig};
use super::optimum::{for_each_profile, solve_so, OptimumReport, SoConfig};
use super::verify::WardropReport;
use crate::error::Result;
use crate::model::{FlowAssignment, Routing};
use crate::tolerance;
use crate::Poa;

/// Seeds and solver settings for the worst-equilibrium search.
#[derive(Debug, Clone, PartialEq)]
pub struct PoaConfig {
    pub ne: NeConfig,
    pub so: SoConfig,
    /// Random interior seeds for the equilibrium search.
    pub random_seeds: usize,
    /// Single-path corner seeds are used when there are at most this many.
    pub corner_cap: usize,
}

impl Default for PoaConfig {
    fn default() -> Self {
        Self {
            ne: NeConfig::default(),
            so: SoConfig::default(),
            random_seeds: 20,
            corner_cap: 4_096,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonatomicPoa {
    pub poa: Poa,
    /// The most expensive verified equilibrium.
    pub worst_ne: Option<WardropReport>,
    pub so: OptimumReport,
    pub seeds_tried: usize,
    pub equilibria_found: usize,
    /// Smallest VI gap over all seeds, useful when nothing verified.
    pub best_vi_gap: f64,
}

/// Worst verified equilibrium over a seed set divided by the best optimum.
///
/// Seeds are the single-path corners, the uniform split and random interior
/// flows; every seed is driven by [`solve_ne_nonatomic`] and only verified
/// equilibria count. A numerically zero optimum under a positive equilibrium
/// gives [`Poa::Unbounded`]; no verified seed gives [`Poa::NoEquilibrium`].
pub fn poa_nonatomic(routing: &Routing, config: &PoaConfig) -> Result<NonatomicPoa> {
    let seeds = equilibrium_seeds(routing, config)?;
    let mut worst: Option<WardropReport> = None;
    let mut found = 0;
    let mut best_vi_gap = f64::INFINITY;
    for seed in &seeds {
        let report = solve_ne_nonatomic(routing, Some(seed), &config.ne)?;
        best_vi_gap = best_vi_gap.min(report.vi_gap);
        if !report.converged {
            continue;
        }
        found += 1;
        if worst.as_ref().is_none_or(|w| report.cost > w.cost) {
            worst = Some(report);
        }
    }

    let so = solve_so(routing, &config.so)?;
    let zero = tolerance::UNBOUNDED * routing.instance().total_demand();
    let poa = match &worst {
        Some(ne) => Poa::from_costs(ne.cost, so.cost, zero),
        None => Poa::NoEquilibrium,
    };
    Ok(NonatomicPoa {
        poa,
        worst_ne: worst,
        so,
        seeds_tried: seeds.len(),
        equilibria_found: found,
        best_vi_gap,
    })
}

fn equilibrium_seeds(routing: &Routing, config: &PoaConfig) -> Result<Vec<FlowAssignment>> {
    let counts = routing.path_counts();
    let mut seeds = Vec::new();
    let corners: u128 = counts.iter().map(|&c| c as u128).product();
    if corners <= config.corner_cap as u128 {
        for_each_profile(&counts, |choice| seeds.push(routing.corner_flow(choice)));
    }
    seeds.push(routing.uniform_flow());
    let demands = routing.instance().demands();
    for s in 0..config.random_seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(config.so.seed ^ 0x5eed_f10e);
        rng.set_stream(s as u64);
        let flows = counts
            .iter()
            .zip(&demands)
            .map(|(&n, &r)| {
                let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
                let total: f64 = w.iter().sum();
                w.iter().map(|x| r * x / total).collect()
            })
            .collect();
        seeds.push(routing.flow(flows)?);
    }
    Ok(seeds)
}
