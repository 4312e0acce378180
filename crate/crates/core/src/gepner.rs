//! The Gepner point `σ_G`, the solution of `τ(σ) = (−2/h)·σ`.
//!
//! Its central charge is the eigenvector of the Coxeter transformation for
//! `e^{−2πi/h}`; its phases are fixed on projectives by walking the
//! underlying tree and then transported along `τ`-orbits.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Euclid;
// Float methods resolve to std when it is linked and to libm otherwise.
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::derived::{DerivedCategory, IndecObject};
use crate::error::{Error, Result};
use crate::linalg;
use crate::quiver::{unit, Quiver};
use crate::stability::{exp_i_pi, gldim_of_entries, validate_chart, CentralCharge, ChartEntry, SlicingChart};

/// Tolerance for the Gepner equation checks.
pub const GEPNER_TOL: f64 = 1e-12;

/// Autoequivalence `τ^a ∘ [b]` together with the complex number `s` of the
/// equation `Φ(σ) = s·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GepnerParams {
    pub a: i64,
    pub b: i64,
    pub s: Complex64,
}

impl GepnerParams {
    /// `τ^a[b]` with the value of `s` that the Gepner point satisfies.
    pub fn for_gepner_point(a: i64, b: i64, h: u32) -> Self {
        Self { a, b, s: Complex64::new(b as f64 - 2.0 * a as f64 / h as f64, 0.0) }
    }
}

/// Left eigenvector of the Coxeter matrix, `Z ∘ Φ = e^{−2πi/h} Z`,
/// normalised by `Z(S_1) = 1`.
pub fn gepner_charge(q: &Quiver) -> Result<CentralCharge> {
    let h = q.coxeter_number().map_err(|_| Error::EigenvalueNotFound)?;
    let n = q.vertex_count();
    let lambda = Complex64::from_polar(1.0, -2.0 * PI / h as f64);
    let phi_t = q.coxeter_matrix().transpose().to_complex();
    let shifted: Vec<Vec<Complex64>> = phi_t
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row[i] -= lambda;
            row
        })
        .collect();
    let kernel = linalg::complex_kernel(&shifted, 1e-10);
    if kernel.len() != 1 {
        return Err(Error::EigenvalueNotFound);
    }
    let z = &kernel[0];
    if z[0].norm() < 1e-12 {
        return Err(Error::EigenvalueNotFound);
    }
    let scale = z[0].inv();
    Ok(CentralCharge::new((0..n).map(|i| z[i] * scale).collect()))
}

fn principal_phase(z: Complex64) -> f64 {
    let p = z.im.atan2(z.re) / PI;
    if p <= -1.0 {
        1.0
    } else {
        p
    }
}

/// Representative of `p` modulo 2 in `[lo, lo + 2)`.
fn reduce_mod2(p: f64, lo: f64) -> f64 {
    lo + Euclid::rem_euclid(&(p - lo), &2.0)
}

/// Gepner chart: every indecomposable stable, `φ(τE) = φ(E) − 2/h`.
pub fn gepner_stab(cat: &DerivedCategory) -> Result<SlicingChart> {
    let q = cat.quiver();
    let n = q.vertex_count();
    let h = cat.coxeter_number() as f64;
    let charge = gepner_charge(q)?;
    let proj_charge = |i: usize| charge.eval(cat.root(cat.projective(i)));

    let mut phase: Vec<Option<f64>> = vec![None; n];
    phase[0] = Some(principal_phase(proj_charge(0)));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let pi = phase[i].expect("queued vertices have phases");
        for &(s, t) in q.arrows() {
            let j = if s == i {
                t
            } else if t == i {
                s
            } else {
                continue;
            };
            if phase[j].is_some() {
                continue;
            }
            let raw = principal_phase(proj_charge(j));
            // P_i → P_j nonzero forces φ(P_j) ∈ [φ(P_i), φ(P_i)+1); otherwise
            // the map goes the other way and φ(P_j) ∈ (φ(P_i)−1, φ(P_i)].
            let pj = if cat.hom0(cat.projective(i), cat.projective(j)) != 0 {
                let r = reduce_mod2(raw, pi);
                if r >= pi + 1.0 {
                    return Err(Error::PropagationInconsistency(format!("no phase for P_{} in [{pi}, {pi}+1)", j + 1)));
                }
                r
            } else {
                let r = pi - Euclid::rem_euclid(&(pi - raw), &2.0);
                if r <= pi - 1.0 {
                    return Err(Error::PropagationInconsistency(format!("no phase for P_{} in ({pi}-1, {pi}]", j + 1)));
                }
                r
            };
            phase[j] = Some(pj);
            queue.push_back(j);
        }
    }

    let mut entries = Vec::with_capacity(cat.root_count());
    for r in 0..cat.root_count() {
        let (m, i) = cat.zq_coordinates(r);
        let p = phase[i].ok_or_else(|| Error::PropagationInconsistency(format!("vertex {} unreachable", i + 1)))?
            + 2.0 * m as f64 / h;
        entries.push(ChartEntry::stable(cat.root(r).to_vec(), p));
    }
    let chart = SlicingChart::new(entries, charge);
    let report = validate_chart(cat, &chart);
    if let Some(v) = report.violations.first() {
        return Err(Error::PropagationInconsistency(format!("{v}")));
    }
    Ok(chart)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GepnerReport {
    pub charge_deviation: f64,
    pub phase_deviation: f64,
    /// Chart entries whose image under `Φ` is not in the chart.
    pub missing: usize,
}

impl GepnerReport {
    pub fn passed(&self) -> bool {
        self.missing == 0 && self.charge_deviation < GEPNER_TOL && self.phase_deviation < GEPNER_TOL
    }
}

/// Checks `Z ∘ Φ⁻¹ = e^{−iπs} Z` on simples and `φ(ΦE) = φ(E) + Re s` on
/// every chart entry, for `Φ = τ^a[b]`.
pub fn check_gepner(cat: &DerivedCategory, chart: &SlicingChart, params: GepnerParams) -> GepnerReport {
    let n = cat.rank();
    let (a, b) = (params.a, params.b);
    let inv = if a >= 0 { cat.quiver().coxeter_inverse() } else { cat.quiver().coxeter_matrix() };
    let sign = if b.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let rot = exp_i_pi(-params.s);
    let mut charge_deviation: f64 = 0.0;
    for i in 0..n {
        let mut v = unit(n, i);
        for _ in 0..a.unsigned_abs() {
            v = inv.apply(&v);
        }
        let lhs = chart.charge.eval(&v) * sign;
        let rhs = rot * chart.charge.eval(&unit(n, i));
        charge_deviation = charge_deviation.max((lhs - rhs).norm());
    }
    let mut phase_deviation: f64 = 0.0;
    let mut missing = 0;
    for e in &chart.entries {
        let Some(id) = cat.root_id(&e.root) else {
            missing += 1;
            continue;
        };
        let image = cat.ar_power(IndecObject::new(id, b), a);
        match chart.object_phase(cat, image) {
            Some(p) => phase_deviation = phase_deviation.max((p - e.phase - params.s.re).abs()),
            None => missing += 1,
        }
    }
    GepnerReport { charge_deviation, phase_deviation, missing }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbReport {
    pub floor: f64,
    pub values: Vec<f64>,
    pub skipped: usize,
    /// Trials whose value exceeds the floor by more than the tolerance.
    pub strictly_above: usize,
}

impl PerturbReport {
    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One perturbation trial: moves `Z(S_i)` for `i ≥ 2` by at most `epsilon`,
/// transports phases continuously and returns the global dimension, or
/// `None` when the perturbed chart fails validation.
pub fn perturb_trial(cat: &DerivedCategory, gepner: &SlicingChart, epsilon: f64, seed: u64, trial: u64) -> Option<f64> {
    let mut rng = trial_rng(seed, trial);
    let mut values = gepner.charge.values().to_vec();
    for z in values.iter_mut().skip(1) {
        let r = epsilon * rng.gen::<f64>().sqrt();
        let t = 2.0 * PI * rng.gen::<f64>();
        *z += Complex64::from_polar(r, t);
    }
    let charge = CentralCharge::new(values);
    let entries: Vec<ChartEntry> = gepner
        .entries
        .iter()
        .map(|e| {
            let old = gepner.charge.eval(&e.root);
            let new = charge.eval(&e.root);
            let ratio = new / old;
            ChartEntry { phase: e.phase + ratio.im.atan2(ratio.re) / PI, ..e.clone() }
        })
        .collect();
    let chart = SlicingChart::new(entries, charge);
    if !validate_chart(cat, &chart).passed() {
        return None;
    }
    gldim_of_entries(cat, &chart.entries).ok().map(|g| g.value)
}

/// Perturbation experiment around the Gepner point.
pub fn perturb_test(cat: &DerivedCategory, epsilon: f64, trials: u64, seed: u64) -> Result<PerturbReport> {
    let gepner = gepner_stab(cat)?;
    let floor = 1.0 - 2.0 / cat.coxeter_number() as f64;
    let mut report = PerturbReport { floor, values: Vec::new(), skipped: 0, strictly_above: 0 };
    for t in 0..trials {
        match perturb_trial(cat, &gepner, epsilon, seed, t) {
            Some(v) => {
                if v > floor + 1e-12 {
                    report.strictly_above += 1;
                }
                report.values.push(v);
            }
            None => report.skipped += 1,
        }
    }
    Ok(report)
}
