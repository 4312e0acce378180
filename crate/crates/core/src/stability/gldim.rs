//! Global dimension and the predicates built on the semistable set.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

// Float methods resolve to std when it is linked and to libm otherwise.
#[allow(unused_imports)]
use num_traits::Float;

use super::{phase_cmp, semistable_set, validate_chart, ChartEntry, SlicingChart, StabRep};
use crate::derived::{DerivedCategory, IndecObject, RootId};
use crate::error::{Error, Result};
use crate::quiver::DimVector;

/// Pair of semistable modules `E`, `F` with `Hom(E, F[degree]) ≠ 0`
/// realising the global dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub source: DimVector,
    pub source_phase: f64,
    pub target: DimVector,
    pub target_phase: f64,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gldim {
    pub value: f64,
    pub witness: Witness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TotalStability {
    TotallyStable,
    TotallySemistableOnly,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Norm {
    #[default]
    Euclidean,
    L1,
    Max,
}

/// Phase difference contributed by `Hom(E, F[k])`.
///
/// Every caller computes the quantity through this function so that the
/// same pair always yields bit-identical values.
#[inline]
pub fn pair_value(source_phase: f64, target_phase: f64, k: i64) -> f64 {
    (target_phase - source_phase) + k as f64
}

fn entry_ids(cat: &DerivedCategory, entries: &[ChartEntry]) -> Result<Vec<RootId>> {
    entries.iter().map(|e| cat.root_id(&e.root).ok_or_else(|| Error::NotARoot(e.root.clone()))).collect()
}

/// `max φ(F) + k − φ(E)` over semistable modules `E`, `F` and `k ∈ {0, 1}`
/// with `Hom(E, F[k]) ≠ 0`.
pub fn gldim_of_entries(cat: &DerivedCategory, entries: &[ChartEntry]) -> Result<Gldim> {
    let ids = entry_ids(cat, entries)?;
    let mut best: Option<(f64, usize, usize, u32)> = None;
    for (a, &ea) in ids.iter().enumerate() {
        for (b, &eb) in ids.iter().enumerate() {
            for k in 0..2u32 {
                let nonzero = if k == 0 { cat.hom0(ea, eb) } else { cat.ext1(ea, eb) } != 0;
                if !nonzero {
                    continue;
                }
                let v = pair_value(entries[a].phase, entries[b].phase, k as i64);
                if best.is_none_or(|(bv, ..)| v > bv) {
                    best = Some((v, a, b, k));
                }
            }
        }
    }
    let (value, a, b, k) = best.ok_or_else(|| Error::InvalidChart("no semistable objects".into()))?;
    Ok(Gldim {
        value,
        witness: Witness {
            source: entries[a].root.clone(),
            source_phase: entries[a].phase,
            target: entries[b].root.clone(),
            target_phase: entries[b].phase,
            degree: k,
        },
    })
}

/// Global dimension of a stability condition. Charts are validated first.
pub fn gldim(cat: &DerivedCategory, stab: &StabRep) -> Result<Gldim> {
    match stab {
        StabRep::Heart(h) => gldim_of_entries(cat, &semistable_set(cat, h)?),
        StabRep::Chart(c) => {
            let report = validate_chart(cat, c);
            if let Some(v) = report.violations.first() {
                return Err(Error::InvalidChart(format!("{v}")));
            }
            gldim_of_entries(cat, &c.entries)
        }
    }
}

fn chart_total_stability(cat: &DerivedCategory, chart: &SlicingChart) -> TotalStability {
    let covered = cat.roots().iter().all(|r| chart.entries.iter().any(|e| &e.root == r));
    if !covered {
        TotalStability::Neither
    } else if chart.entries.iter().all(|e| e.stable) {
        TotalStability::TotallyStable
    } else {
        TotalStability::TotallySemistableOnly
    }
}

pub fn total_stability(cat: &DerivedCategory, stab: &StabRep) -> Result<TotalStability> {
    Ok(chart_total_stability(cat, &stab.to_chart(cat)?))
}

/// Constant phase shift of the Serre functor on semistables, if any.
pub fn serre_phase(cat: &DerivedCategory, stab: &StabRep) -> Result<Option<f64>> {
    let chart = stab.to_chart(cat)?;
    let ids = entry_ids(cat, &chart.entries)?;
    let mut shifts = Vec::with_capacity(ids.len());
    for (entry, &id) in chart.entries.iter().zip(&ids) {
        let image = cat.serre(IndecObject::new(id, 0));
        let Some(p) = chart.phase_of(cat.root(image.root)) else {
            return Ok(None);
        };
        shifts.push(pair_value(entry.phase, p, image.shift));
    }
    let Some(&first) = shifts.first() else {
        return Ok(None);
    };
    if shifts.iter().all(|&c| phase_cmp(c, first) == Ordering::Equal) {
        Ok(Some(shifts.into_iter().fold(f64::NEG_INFINITY, f64::max)))
    } else {
        Ok(None)
    }
}

/// `max ‖α‖ / |Z(α)|` over semistable classes.
pub fn support_constant(cat: &DerivedCategory, stab: &StabRep, norm: Norm) -> Result<f64> {
    let chart = stab.to_chart(cat)?;
    let mut best: f64 = 0.0;
    for e in &chart.entries {
        let len = match norm {
            Norm::Euclidean => e.root.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt(),
            Norm::L1 => e.root.iter().map(|&x| x.abs() as f64).sum(),
            Norm::Max => e.root.iter().map(|&x| x.abs()).max().unwrap_or(0) as f64,
        };
        let z = chart.charge.eval(&e.root).norm();
        if z == 0.0 {
            return Err(Error::VanishingCharge(e.root.clone()));
        }
        best = best.max(len / z);
    }
    Ok(best)
}
