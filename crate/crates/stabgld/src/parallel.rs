//! Parallel sampling and optimization.
//!
//! Work runs on a rayon pool sized by `STABGLD_THREADS` when that holds a
//! positive integer, otherwise by the available parallelism. Every parallel
//! result is assembled in input order, so outputs do not depend on the
//! thread count.

use num_complex::Complex64;
use rayon::prelude::*;
use stabgld_core::gepner::{gepner_stab, perturb_trial, PerturbReport};
use stabgld_core::polygon::{best_restart, default_options, PolygonMinimum, PolygonModel};
use stabgld_core::stability::{gldim, StabRep};
use stabgld_core::tame::{
    a2_chart, a2_chart_gldim, a2_in_domain, charge_from_z, kron_gldim_formula, kron_gldim_truncated, kron_in_domain,
};
use stabgld_core::{DerivedCategory, DynkinType, Error, Quiver, Result};

pub const THREADS_ENV: &str = "STABGLD_THREADS";

pub fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `f` inside a pool honoring [`thread_count`].
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(thread_count()).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Parallel version of
/// [`minimize_polygon_gldim`](stabgld_core::polygon::minimize_polygon_gldim);
/// identical results for identical arguments.
pub fn minimize_polygon_gldim(n: usize, seed: u64, restarts: u64) -> Result<PolygonMinimum> {
    if n < 2 {
        return Err(Error::UnsupportedRank { kind: 'A', rank: n });
    }
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    let model = PolygonModel::new(n)?;
    let opts = default_options();
    let results = with_pool(|| (0..restarts).into_par_iter().map(|r| model.restart(seed, r, &opts)).collect());
    best_restart(results)
}

/// Parallel version of [`perturb_test`](stabgld_core::gepner::perturb_test).
pub fn perturb_test(cat: &DerivedCategory, epsilon: f64, trials: u64, seed: u64) -> Result<PerturbReport> {
    let gepner = gepner_stab(cat)?;
    let floor = 1.0 - 2.0 / cat.coxeter_number() as f64;
    let outcomes: Vec<Option<f64>> =
        with_pool(|| (0..trials).into_par_iter().map(|t| perturb_trial(cat, &gepner, epsilon, seed, t)).collect());
    let values: Vec<f64> = outcomes.iter().flatten().copied().collect();
    Ok(PerturbReport {
        floor,
        skipped: outcomes.len() - values.len(),
        strictly_above: values.iter().filter(|&&v| v > floor + 1e-12).count(),
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LandscapeChart {
    A2,
    Kronecker,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandscapeRow {
    pub x: f64,
    pub y: f64,
    /// Closed-form value, where the point lies in the chart domain.
    pub formula: Option<f64>,
    /// Value from the semistable objects, where a stability condition with
    /// this coordinate is available.
    pub direct: Option<f64>,
}

/// Samples a chart on the grid `xs × ys` (rows ordered by `x`, then `y`).
pub fn landscape(chart: LandscapeChart, xs: &[f64], ys: &[f64], truncation: usize) -> Result<Vec<LandscapeRow>> {
    let a2 = match chart {
        LandscapeChart::A2 => Some(DerivedCategory::new(&Quiver::build_dynkin(DynkinType::A, 2)?)?),
        LandscapeChart::Kronecker => None,
    };
    let points: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();
    with_pool(|| {
        points
            .par_iter()
            .map(|&(x, y)| {
                let z = Complex64::new(x, y);
                let row = match &a2 {
                    Some(cat) => LandscapeRow {
                        x,
                        y,
                        formula: a2_in_domain(z).then(|| a2_chart_gldim(z)),
                        direct: a2_chart(z).ok().and_then(|c| gldim(cat, &StabRep::Chart(c)).ok()).map(|g| g.value),
                    },
                    None => LandscapeRow {
                        x,
                        y,
                        formula: kron_in_domain(z).then(|| kron_gldim_formula(z)),
                        direct: match charge_from_z(z) {
                            Ok(h) => Some(kron_gldim_truncated(&h, truncation)?),
                            Err(_) => None,
                        },
                    },
                };
                Ok(row)
            })
            .collect()
    })
}

/// `count` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect(),
    }
}
