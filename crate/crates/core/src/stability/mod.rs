//! Stability conditions on `D^b(kQ)`.
//!
//! A stability condition is given either by a central charge on the standard
//! heart (a [`HeartCharge`]; semistability is then decided by King's
//! criterion) or by an explicit [`SlicingChart`] listing the phase of every
//! semistable indecomposable module.

mod generic;
mod gldim;
mod heart;
mod validate;

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// Float methods resolve to std when it is linked and to libm otherwise.
#[allow(unused_imports)]
use num_traits::Float;

use crate::derived::{DerivedCategory, IndecObject};
use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use crate::PHASE_TOL;

pub use generic::{canonical_decomposition, generic_ext, generic_sub, proper_generic_subs};
pub use gldim::{
    gldim, gldim_of_entries, pair_value, serre_phase, support_constant, total_stability, Gldim, Norm, TotalStability,
    Witness,
};
pub use heart::{hn_factors, semistable_set};
pub use validate::{validate_chart, ChartReport, Violation};

/// Complex value per vertex, extended linearly to the Grothendieck lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralCharge {
    values: Vec<Complex64>,
}

impl CentralCharge {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn eval(&self, v: &[i64]) -> Complex64 {
        self.values.iter().zip(v).map(|(z, &c)| z * c as f64).sum()
    }

    pub fn scaled(&self, w: Complex64) -> Self {
        Self { values: self.values.iter().map(|z| z * w).collect() }
    }
}

/// `e^{iπt}` for complex `t`.
pub fn exp_i_pi(t: Complex64) -> Complex64 {
    (Complex64::i() * PI * t).exp()
}

/// Phase of a nonzero charge in the window `(0, 1]`; the negative real axis
/// has phase exactly 1.
pub fn heart_phase(z: Complex64) -> f64 {
    let p = z.im.atan2(z.re) / PI;
    if p <= 0.0 {
        // Only reachable for charges on (or rounding below) the negative real
        // axis once simples are in the window.
        1.0
    } else {
        p
    }
}

/// Central charge on the standard heart, all simples in the window.
#[derive(Debug, Clone, PartialEq)]
pub struct HeartCharge {
    charge: CentralCharge,
}

impl HeartCharge {
    pub fn new(charge: CentralCharge) -> Result<Self> {
        for (i, z) in charge.values().iter().enumerate() {
            let on_negative_axis = z.im == 0.0 && z.re < 0.0;
            if !(z.im > 0.0 || on_negative_axis) || !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::ChargeOutsideWindow(i + 1));
            }
        }
        Ok(Self { charge })
    }

    /// Charge with `Z(S_i) = r_i e^{iπ θ_i}`, each `θ_i ∈ (0, 1]`.
    pub fn from_polar(moduli: &[f64], phases: &[f64]) -> Result<Self> {
        let values = moduli
            .iter()
            .zip(phases)
            .map(|(&r, &t)| if t == 1.0 { Complex64::new(-r, 0.0) } else { Complex64::from_polar(r, PI * t) })
            .collect();
        Self::new(CentralCharge::new(values))
    }

    pub fn charge(&self) -> &CentralCharge {
        &self.charge
    }

    pub fn phase_of(&self, v: &[i64]) -> f64 {
        heart_phase(self.charge.eval(v))
    }
}

/// Phase of one semistable indecomposable module `M`; `M[k]` has phase
/// `phase + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartEntry {
    pub root: DimVector,
    pub phase: f64,
    pub stable: bool,
}

impl ChartEntry {
    pub fn stable(root: DimVector, phase: f64) -> Self {
        Self { root, phase, stable: true }
    }
}

/// Explicit slicing: the semistable indecomposables with their phases.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicingChart {
    pub entries: Vec<ChartEntry>,
    pub charge: CentralCharge,
}

impl SlicingChart {
    pub fn new(entries: Vec<ChartEntry>, charge: CentralCharge) -> Self {
        Self { entries, charge }
    }

    pub fn phase_of(&self, root: &[i64]) -> Option<f64> {
        self.entries.iter().find(|e| e.root == root).map(|e| e.phase)
    }

    /// Phase of the object `M[k]`, when `M` is in the chart.
    pub fn object_phase(&self, cat: &DerivedCategory, x: IndecObject) -> Option<f64> {
        self.phase_of(cat.root(x.root)).map(|p| p + x.shift as f64)
    }

    /// The `C`-action `s·(Z, P) = (Z e^{−iπs}, P(· + Re s))`: charges rotate
    /// and rescale, and every phase decreases by `Re s`.
    pub fn c_action(&self, s: Complex64) -> Self {
        Self {
            entries: self.entries.iter().map(|e| ChartEntry { phase: e.phase - s.re, ..e.clone() }).collect(),
            charge: self.charge.scaled(exp_i_pi(-s)),
        }
    }

    /// Image `Φ(σ) = (Z ∘ Φ⁻¹, Φ(P))` under `Φ = τ^a ∘ [b]`.
    pub fn autoequivalence(&self, cat: &DerivedCategory, a: i64, b: i64) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let id = cat.root_id(&e.root).ok_or_else(|| Error::NotARoot(e.root.clone()))?;
            let image = cat.ar_power(IndecObject::new(id, b), a);
            entries.push(ChartEntry {
                root: cat.root(image.root).to_vec(),
                phase: e.phase - image.shift as f64,
                stable: e.stable,
            });
        }
        entries.sort_by(|x, y| x.root.cmp(&y.root));
        // Z' = Z ∘ Φ⁻¹ on simples: Φ⁻¹ acts on classes by Cox^{-a} and (−1)^b.
        let n = cat.rank();
        let inv = if a >= 0 { cat.quiver().coxeter_inverse() } else { cat.quiver().coxeter_matrix() };
        let sign = if b.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let values = (0..n)
            .map(|i| {
                let mut v = crate::quiver::unit(n, i);
                for _ in 0..a.unsigned_abs() {
                    v = inv.apply(&v);
                }
                self.charge.eval(&v) * sign
            })
            .collect();
        Ok(Self { entries, charge: CentralCharge::new(values) })
    }
}

/// Either representation of a stability condition.
#[derive(Debug, Clone, PartialEq)]
pub enum StabRep {
    Heart(HeartCharge),
    Chart(SlicingChart),
}

impl StabRep {
    pub fn charge(&self) -> &CentralCharge {
        match self {
            StabRep::Heart(h) => h.charge(),
            StabRep::Chart(c) => &c.charge,
        }
    }

    /// Chart of semistable modules; heart charges are converted through
    /// [`semistable_set`].
    pub fn to_chart(&self, cat: &DerivedCategory) -> Result<SlicingChart> {
        match self {
            StabRep::Heart(h) => Ok(SlicingChart::new(semistable_set(cat, h)?, h.charge().clone())),
            StabRep::Chart(c) => Ok(c.clone()),
        }
    }
}

/// Every simple at `−1`, so the whole heart sits in phase 1.
pub fn aligned_charge(q: &Quiver) -> HeartCharge {
    let values = alloc::vec![Complex64::new(-1.0, 0.0); q.vertex_count()];
    HeartCharge { charge: CentralCharge::new(values) }
}

/// `s·σ`; always returned as a chart.
pub fn c_action(cat: &DerivedCategory, s: Complex64, stab: &StabRep) -> Result<StabRep> {
    Ok(StabRep::Chart(stab.to_chart(cat)?.c_action(s)))
}

/// Compares phases with absolute tolerance [`PHASE_TOL`].
pub fn phase_cmp(a: f64, b: f64) -> core::cmp::Ordering {
    if (a - b).abs() <= PHASE_TOL {
        core::cmp::Ordering::Equal
    } else if a < b {
        core::cmp::Ordering::Less
    } else {
        core::cmp::Ordering::Greater
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DynkinType;

    #[test]
    fn heart_phase_window() {
        assert_eq!(heart_phase(Complex64::new(-1.0, 0.0)), 1.0);
        assert_eq!(heart_phase(Complex64::new(-1.0, -0.0)), 1.0);
        assert!((heart_phase(Complex64::new(0.0, 1.0)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn heart_charge_rejects_lower_half_plane() {
        let bad = CentralCharge::new(alloc::vec![Complex64::new(1.0, 0.0)]);
        assert_eq!(HeartCharge::new(bad), Err(Error::ChargeOutsideWindow(1)));
        assert!(HeartCharge::from_polar(&[1.0, 2.0], &[1.0, 0.3]).is_ok());
    }

    #[test]
    fn shift_is_the_unit_c_action() {
        let q = Quiver::build_dynkin(DynkinType::A, 3).unwrap();
        let cat = DerivedCategory::new(&q).unwrap();
        let h = HeartCharge::from_polar(&[1.0, 1.5, 0.7], &[0.2, 0.5, 0.9]).unwrap();
        let chart = StabRep::Heart(h).to_chart(&cat).unwrap();
        let by_c = chart.c_action(Complex64::new(1.0, 0.0));
        let by_shift = chart.autoequivalence(&cat, 0, 1).unwrap();
        for (x, y) in by_c.charge.values().iter().zip(by_shift.charge.values()) {
            assert!((x - y).norm() < 1e-12);
        }
        let mut a = by_c.entries.clone();
        a.sort_by(|x, y| x.root.cmp(&y.root));
        for (x, y) in a.iter().zip(&by_shift.entries) {
            assert_eq!(x.root, y.root);
            assert!((x.phase - y.phase).abs() < 1e-12);
        }
        let identity = chart.c_action(Complex64::new(0.0, 0.0));
        assert_eq!(identity, chart);
    }
}
