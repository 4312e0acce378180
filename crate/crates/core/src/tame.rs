//! Closed-form global dimension charts for `A_2` and the Kronecker quiver.
//!
//! Both charts use the coordinate `z = x + iy` with
//! `e^{iπz} = Z(S_2) / Z(S_1)`, i.e. `z = Log(Z(S_2)/Z(S_1)) / (iπ)` on the
//! principal branch. On the standard heart `x = φ(S_2) − φ(S_1)` and
//! `y = −ln(|Z(S_2)| / |Z(S_1)|) / π`. With this convention the `A_2` Gepner
//! point sits at `z = 2/3`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use num_complex::Complex64;
// Float methods resolve to std when it is linked and to libm otherwise.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::stability::{exp_i_pi, pair_value, phase_cmp, CentralCharge, ChartEntry, HeartCharge, SlicingChart};

/// Tolerance for boundary-curve membership.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Default truncation of the Kronecker indecomposable families.
pub const KRONECKER_TRUNCATION: usize = 200;

/// Chart coordinate of a rank-two charge.
pub fn z_of_charge(charge: &CentralCharge) -> Result<Complex64> {
    if charge.rank() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: charge.rank() });
    }
    let (z1, z2) = (charge.values()[0], charge.values()[1]);
    if z1.norm() == 0.0 || z2.norm() == 0.0 {
        return Err(Error::VanishingCharge(if z1.norm() == 0.0 { vec![1, 0] } else { vec![0, 1] }));
    }
    Ok((z2 / z1).ln() / Complex64::new(0.0, PI))
}

/// Heart charge with coordinate `z`, placing `φ(S_1) = (1 − x)/2` so that
/// both simples sit symmetrically inside the window. Needs `|x| < 1`.
pub fn charge_from_z(z: Complex64) -> Result<HeartCharge> {
    if !(z.re.abs() < 1.0) || !z.im.is_finite() {
        return Err(Error::InvalidArgument("heart charges need -1 < x < 1".into()));
    }
    let phi1 = (1.0 - z.re) / 2.0;
    let z1 = exp_i_pi(Complex64::new(phi1, 0.0));
    HeartCharge::new(CentralCharge::new(vec![z1, z1 * exp_i_pi(z)]))
}

/// Which `A_2` boundary curve a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A2Boundary {
    /// `πy = −ln(−2 cos πx)`, the upper curve.
    LPlus,
    /// `πy = ln(−2 cos πx)`, the lower curve.
    LMinus,
}

fn a2_curve(x: f64) -> Option<f64> {
    (x > 0.5 && x <= 2.0 / 3.0).then(|| -(-2.0 * (PI * x).cos()).ln())
}

/// Membership in the closed fundamental domain of the `A_2` chart.
pub fn a2_in_domain(z: Complex64) -> bool {
    if z.re <= 0.5 {
        return z.im.is_finite();
    }
    match a2_curve(z.re) {
        Some(bound) => (PI * z.im).abs() <= bound + BOUNDARY_TOL,
        None => false,
    }
}

pub fn a2_boundary(z: Complex64) -> Option<A2Boundary> {
    let bound = a2_curve(z.re)?;
    let py = PI * z.im;
    if (py - bound).abs() <= BOUNDARY_TOL {
        Some(A2Boundary::LPlus)
    } else if (py + bound).abs() <= BOUNDARY_TOL {
        Some(A2Boundary::LMinus)
    } else {
        None
    }
}

/// `gldim = 1 − x` on the fundamental domain.
pub fn a2_chart_gldim(z: Complex64) -> f64 {
    1.0 - z.re
}

/// The `A_2` chart at `z` (any `x < 1`).
///
/// For `x > −1` this is the heart charge of [`charge_from_z`]; further left
/// the simples leave the window and `S_2` is pinned at phase 0 with `S_1` at
/// `−x`. `M_12` is stable for `x > 0`, strictly semistable at `x = 0` and
/// absent for `x < 0`.
pub fn a2_chart(z: Complex64) -> Result<SlicingChart> {
    let x = z.re;
    if !(x < 1.0) || !z.im.is_finite() {
        return Err(Error::InvalidArgument("the A2 chart needs x < 1".into()));
    }
    let phi1 = if x > -1.0 { (1.0 - x) / 2.0 } else { -x };
    let phi2 = phi1 + x;
    let z1 = exp_i_pi(Complex64::new(phi1, 0.0));
    let z2 = z1 * exp_i_pi(z);
    let mut entries = vec![ChartEntry::stable(vec![1, 0], phi1), ChartEntry::stable(vec![0, 1], phi2)];
    match x.partial_cmp(&0.0) {
        Some(Ordering::Greater) => {
            let w = Complex64::new(1.0, 0.0) + exp_i_pi(z);
            entries.push(ChartEntry::stable(vec![1, 1], phi1 + w.im.atan2(w.re) / PI));
        }
        Some(Ordering::Equal) => entries.push(ChartEntry { root: vec![1, 1], phase: phi1, stable: false }),
        _ => {}
    }
    Ok(SlicingChart::new(entries, CentralCharge::new(vec![z1, z2])))
}

/// Which Kronecker boundary curve a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KronBoundary {
    /// `πy = ln(−cos πx)`.
    K1,
    /// `πy = −ln(−cos πx)`.
    K0,
}

fn kron_curve(x: f64) -> Option<f64> {
    (x > 0.5 && x < 1.0).then(|| -(-(PI * x).cos()).ln())
}

/// Membership in the Kronecker chart domain: `x ≤ 1/2`, or `x ∈ (1/2, 1)`
/// between `k_0` and `k_1`.
pub fn kron_in_domain(z: Complex64) -> bool {
    if z.re <= 0.5 {
        return z.im.is_finite();
    }
    match kron_curve(z.re) {
        Some(bound) => (PI * z.im).abs() <= bound + BOUNDARY_TOL,
        None => false,
    }
}

pub fn kron_boundary(z: Complex64) -> Option<KronBoundary> {
    let bound = kron_curve(z.re)?;
    let py = PI * z.im;
    if (py + bound).abs() <= BOUNDARY_TOL {
        Some(KronBoundary::K1)
    } else if (py - bound).abs() <= BOUNDARY_TOL {
        Some(KronBoundary::K0)
    } else {
        None
    }
}

/// `max(1 − x, 1)`.
pub fn kron_gldim_formula(z: Complex64) -> f64 {
    (1.0 - z.re).max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KronFamily {
    /// Dimension vector `(n+1, n)`; `n = 0` is the simple projective `S_1`.
    Preprojective,
    /// Dimension vector `(n, n+1)`; `n = 0` is the simple injective `S_2`.
    Preinjective,
    /// Dimension vector `(n+1, n+1)`, one representative per class.
    Regular,
}

/// Indecomposable Kronecker module, up to the regular parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KronIndec {
    pub family: KronFamily,
    pub index: usize,
}

impl KronIndec {
    pub fn new(family: KronFamily, index: usize) -> Self {
        Self { family, index }
    }

    pub fn dim(&self) -> [i64; 2] {
        let n = self.index as i64;
        match self.family {
            KronFamily::Preprojective => [n + 1, n],
            KronFamily::Preinjective => [n, n + 1],
            KronFamily::Regular => [n + 1, n + 1],
        }
    }

    /// All indecomposables with index at most `n_max`.
    pub fn up_to(n_max: usize) -> Vec<Self> {
        [KronFamily::Preprojective, KronFamily::Regular, KronFamily::Preinjective]
            .into_iter()
            .flat_map(|f| (0..=n_max).map(move |i| Self::new(f, i)))
            .collect()
    }

    /// Subrepresentations of extremal slope: the simple `S_1` (minimal
    /// `d_2/d_1`) and the largest-`d_2/d_1` proper subobject. Phase is
    /// monotone in `d_2/d_1` on the heart, so these decide King's criterion.
    fn extremal_subs(&self) -> Vec<[i64; 2]> {
        let n = self.index as i64;
        match (self.family, n) {
            (KronFamily::Preprojective | KronFamily::Preinjective, 0) => vec![],
            (KronFamily::Preprojective, _) => vec![[1, 0], [n, n - 1]],
            (KronFamily::Preinjective, _) => vec![[1, 0], [n, n]],
            (KronFamily::Regular, 0) => vec![[1, 0]],
            (KronFamily::Regular, _) => vec![[1, 0], [n + 1, n], [n, n]],
        }
    }
}

/// Whether `Hom(a, b) ≠ 0`. Regular modules are taken in one tube, which
/// realises every nonvanishing the classes allow.
pub fn kron_hom_nonzero(a: KronIndec, b: KronIndec) -> bool {
    use KronFamily::*;
    match (a.family, b.family) {
        (Preprojective, Preprojective) => a.index <= b.index,
        (Preprojective, Regular) | (Regular, Regular) | (Regular, Preinjective) => true,
        (Preprojective, Preinjective) => a.index + b.index > 0,
        (Preinjective, Preinjective) => b.index <= a.index,
        (Regular, Preprojective) | (Preinjective, Preprojective) | (Preinjective, Regular) => false,
    }
}

/// Whether `Ext¹(a, b) ≠ 0`.
pub fn kron_ext_nonzero(a: KronIndec, b: KronIndec) -> bool {
    use KronFamily::*;
    match (a.family, b.family) {
        (Preprojective, Preprojective) => a.index >= b.index + 2,
        (Preinjective, Preinjective) => b.index >= a.index + 2,
        (Regular, Preprojective) | (Regular, Regular) | (Preinjective, Preprojective) | (Preinjective, Regular) => true,
        (Preprojective, Regular) | (Preprojective, Preinjective) | (Regular, Preinjective) => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KronEntry {
    pub indec: KronIndec,
    pub phase: f64,
    pub stable: bool,
}

fn check_kron(h: &HeartCharge, n_max: usize) -> Result<()> {
    if n_max == 0 {
        return Err(Error::BadTruncation);
    }
    if h.charge().rank() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: h.charge().rank() });
    }
    Ok(())
}

/// Semistable indecomposables with index at most `n_max`.
pub fn kron_semistable_set(h: &HeartCharge, n_max: usize) -> Result<Vec<KronEntry>> {
    check_kron(h, n_max)?;
    let mut out = Vec::new();
    for indec in KronIndec::up_to(n_max) {
        let phase = h.phase_of(&indec.dim());
        let mut semistable = true;
        let mut stable = true;
        for e in indec.extremal_subs() {
            match phase_cmp(h.phase_of(&e), phase) {
                Ordering::Greater => semistable = false,
                Ordering::Equal => stable = false,
                Ordering::Less => {}
            }
        }
        if semistable {
            out.push(KronEntry { indec, phase, stable });
        }
    }
    Ok(out)
}

/// Global dimension over the truncated semistable set.
pub fn kron_gldim_truncated(h: &HeartCharge, n_max: usize) -> Result<f64> {
    let ss = kron_semistable_set(h, n_max)?;
    let mut best = f64::NEG_INFINITY;
    for a in &ss {
        for b in &ss {
            if kron_hom_nonzero(a.indec, b.indec) {
                best = best.max(pair_value(a.phase, b.phase, 0));
            }
            if kron_ext_nonzero(a.indec, b.indec) {
                best = best.max(pair_value(a.phase, b.phase, 1));
            }
        }
    }
    Ok(best)
}
