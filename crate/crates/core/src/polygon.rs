//! Totally stable conditions on `A_n` as normalized convex polygons.
//!
//! A convex polygon `P_0 = 0, P_1 = 1, P_2, …, P_n` (anticlockwise) gives the
//! charge `Z(M_ij) = P_j − P_{i−1}` on the interval module supported on
//! `i..=j`, and every `M_ij` is stable. Phases are continuous arguments:
//! `φ(S_1) = 0`, consecutive simples turn by the exterior angle, and
//! `φ(M_ij)` sits between `φ(S_i)` and `φ(S_j)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// Float methods resolve to std when it is linked and to libm otherwise.
#[allow(unused_imports)]
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::derived::{DerivedCategory, IndecObject, RootId};
use crate::error::{Error, Result};
use crate::optim::{nelder_mead, NelderMeadOptions};
use crate::quiver::{DimVector, DynkinType, Quiver};
use crate::sampling::random_polygon;
use crate::stability::{pair_value, CentralCharge, ChartEntry, SlicingChart, StabRep, TotalStability};

const NORMALIZATION_TOL: f64 = 1e-12;
const TURNING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Complex64>,
}

impl Polygon {
    /// Wraps vertices `P_0..P_n`; see [`validate_polygon`] for the invariants.
    pub fn new(vertices: Vec<Complex64>) -> Self {
        Self { vertices }
    }

    /// The regular `(n+1)`-gon on the edge `[0, 1]`.
    pub fn regular(n: usize) -> Self {
        let m = n + 1;
        let mut p = Complex64::new(0.0, 0.0);
        let mut vertices = Vec::with_capacity(m);
        for k in 0..m {
            vertices.push(p);
            p += Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64);
        }
        vertices[1] = Complex64::new(1.0, 0.0);
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    /// Rank of the `A_n` quiver the polygon describes.
    pub fn n(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Largest vertex distance to another polygon with the same vertex count.
    pub fn distance(&self, other: &Polygon) -> f64 {
        self.vertices.iter().zip(&other.vertices).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn distance_to_regular(&self) -> f64 {
        self.distance(&Polygon::regular(self.n()))
    }
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Exterior angle from edge `a` to edge `b`, in `(−π, π]`.
fn turn(a: Complex64, b: Complex64) -> f64 {
    cross(a, b).atan2(a.re * b.re + a.im * b.im)
}

fn edges(v: &[Complex64]) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
    let m = v.len();
    (0..m).map(move |k| (v[(k + 1) % m] - v[k], v[(k + 2) % m] - v[(k + 1) % m]))
}

/// Checks normalization, strict convexity and anticlockwise orientation.
pub fn validate_polygon(p: &Polygon) -> core::result::Result<(), String> {
    let v = &p.vertices;
    if v.len() < 3 {
        return Err(format!("need at least 3 vertices, got {}", v.len()));
    }
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err("non-finite vertex".into());
    }
    if v[0].norm() > NORMALIZATION_TOL || (v[1] - 1.0).norm() > NORMALIZATION_TOL {
        return Err(format!("not normalized: P0 = {}, P1 = {}", v[0], v[1]));
    }
    let crosses: Vec<f64> = edges(v).map(|(a, b)| cross(a, b)).collect();
    if crosses.iter().all(|&c| c < 0.0) {
        return Err("vertices are in clockwise order".into());
    }
    if let Some(k) = crosses.iter().position(|&c| !(c > 0.0)) {
        return Err(format!("not strictly convex at vertex {}", (k + 1) % v.len()));
    }
    let total: f64 = edges(v).map(|(a, b)| turn(a, b)).sum();
    if (total - 2.0 * PI).abs() > TURNING_TOL {
        return Err(format!("boundary winds {:.3} times", total / (2.0 * PI)));
    }
    Ok(())
}

/// Interval `(i, j)`, 1-based and inclusive, of a root of `A_n`.
fn interval(root: &[i64]) -> (usize, usize) {
    let i = root.iter().position(|&x| x != 0).expect("nonzero root");
    let j = root.iter().rposition(|&x| x != 0).expect("nonzero root");
    (i + 1, j + 1)
}

/// Phases of `M_ij` for the given intervals, from a valid polygon.
fn interval_phases(v: &[Complex64], intervals: &[(usize, usize)]) -> Vec<f64> {
    let n = v.len() - 1;
    let z: Vec<Complex64> = (1..=n).map(|i| v[i] - v[i - 1]).collect();
    let mut simple = Vec::with_capacity(n);
    simple.push(0.0);
    for k in 1..n {
        simple.push(simple[k - 1] + turn(z[k - 1], z[k]) / PI);
    }
    intervals
        .iter()
        .map(|&(i, j)| {
            let d = v[j] - v[i - 1];
            simple[i - 1] + turn(z[i - 1], d) / PI
        })
        .collect()
}

fn type_a(n: usize) -> Result<Quiver> {
    Quiver::build_dynkin(DynkinType::A, n)
}

/// The totally stable chart on `A_n` encoded by a valid polygon.
pub fn polygon_to_stab(p: &Polygon) -> Result<SlicingChart> {
    validate_polygon(p).map_err(Error::InvalidPolygon)?;
    let q = type_a(p.n())?;
    let roots = q.positive_roots()?;
    Ok(chart_from_roots(p, &roots))
}

fn chart_from_roots(p: &Polygon, roots: &[DimVector]) -> SlicingChart {
    let v = &p.vertices;
    let intervals: Vec<_> = roots.iter().map(|r| interval(r)).collect();
    let phases = interval_phases(v, &intervals);
    let entries = roots.iter().zip(phases).map(|(r, phase)| ChartEntry::stable(r.clone(), phase)).collect();
    let charge = CentralCharge::new((1..v.len()).map(|i| v[i] - v[i - 1]).collect());
    SlicingChart::new(entries, charge)
}

/// Inverse of [`polygon_to_stab`] after normalizing `Z(S_1) = 1` by the
/// `ℂ`-action: `P_i = Z(M_1i) / Z(S_1)`.
pub fn stab_to_polygon(cat: &DerivedCategory, stab: &StabRep) -> Result<Polygon> {
    if !cat.quiver().is_standard_type_a() {
        return Err(Error::NotTypeA);
    }
    let chart = stab.to_chart(cat)?;
    let covered = cat.roots().iter().all(|r| chart.phase_of(r).is_some());
    if !covered || !chart.entries.iter().all(|e| e.stable) {
        let status = crate::stability::total_stability(cat, stab)?;
        debug_assert_ne!(status, TotalStability::TotallyStable);
        return Err(Error::NotTotallyStable);
    }
    let n = cat.rank();
    let z1 = chart.charge.values()[0];
    let mut vertices = Vec::with_capacity(n + 1);
    vertices.push(Complex64::new(0.0, 0.0));
    let mut root = alloc::vec![0i64; n];
    for i in 0..n {
        root[i] = 1;
        vertices.push(chart.charge.eval(&root) / z1);
    }
    vertices[1] = Complex64::new(1.0, 0.0);
    let p = Polygon::new(vertices);
    validate_polygon(&p).map_err(Error::InvalidPolygon)?;
    Ok(p)
}

/// Precomputed data for repeated polygon evaluations on a fixed `A_n`.
#[derive(Debug, Clone)]
pub struct PolygonModel {
    cat: DerivedCategory,
    intervals: Vec<(usize, usize)>,
    /// Serre image `τE[1]` of each root, as (root, shift).
    serre: Vec<(RootId, i64)>,
}

impl PolygonModel {
    pub fn new(n: usize) -> Result<Self> {
        let cat = DerivedCategory::new(&type_a(n)?)?;
        let intervals = cat.roots().iter().map(|r| interval(r)).collect();
        let serre = (0..cat.root_count())
            .map(|r| {
                let s = cat.serre(IndecObject::new(r, 0));
                (s.root, s.shift)
            })
            .collect();
        Ok(Self { cat, intervals, serre })
    }

    pub fn category(&self) -> &DerivedCategory {
        &self.cat
    }

    pub fn n(&self) -> usize {
        self.cat.rank()
    }

    pub fn chart(&self, p: &Polygon) -> Result<SlicingChart> {
        self.check(p)?;
        Ok(chart_from_roots(p, self.cat.roots()))
    }

    fn check(&self, p: &Polygon) -> Result<()> {
        if p.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n() + 1, got: p.vertices.len() });
        }
        validate_polygon(p).map_err(Error::InvalidPolygon)
    }

    /// `max_E φ(τE[1]) − φ(E)` on the induced chart.
    pub fn gldim(&self, p: &Polygon) -> Result<f64> {
        self.check(p)?;
        Ok(self.gldim_unchecked(&p.vertices))
    }

    fn gldim_unchecked(&self, v: &[Complex64]) -> f64 {
        let phases = interval_phases(v, &self.intervals);
        self.serre
            .iter()
            .enumerate()
            .map(|(r, &(s, k))| pair_value(phases[r], phases[s], k))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Objective over the free coordinates `(x_2, y_2, …, x_n, y_n)`: the
    /// global dimension on valid polygons, `2 + Σ max(0, −cross)²` plus a
    /// winding term otherwise. Valid polygons score below 1.
    pub fn objective(&self, x: &[f64]) -> f64 {
        let v = vertices_from_coords(x);
        let mut penalty = 0.0;
        let mut convex = true;
        let mut total = 0.0;
        for (a, b) in edges(&v) {
            let c = cross(a, b);
            if !(c > 0.0) {
                convex = false;
                penalty += if c.is_nan() { 1.0 } else { c * c };
            }
            total += turn(a, b);
        }
        if !total.is_finite() {
            return f64::INFINITY;
        }
        let winding = (total - 2.0 * PI) / (2.0 * PI);
        if convex && winding.abs() <= TURNING_TOL {
            self.gldim_unchecked(&v)
        } else {
            2.0 + penalty + winding * winding
        }
    }

    /// One seeded restart from a random polygon. `None` if the simplex ends
    /// outside the valid region.
    pub fn restart(&self, seed: u64, restart: u64, opts: &NelderMeadOptions) -> Option<RestartResult> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart);
        let start = random_polygon(&mut rng, self.n());
        let x0 = coords(&start);
        let m = nelder_mead(|x| self.objective(x), &x0, opts);
        let polygon = Polygon::new(vertices_from_coords(&m.x));
        let value = self.gldim(&polygon).ok()?;
        Some(RestartResult { restart, polygon, value, evals: m.evals })
    }
}

fn coords(p: &Polygon) -> Vec<f64> {
    p.vertices[2..].iter().flat_map(|z| [z.re, z.im]).collect()
}

fn vertices_from_coords(x: &[f64]) -> Vec<Complex64> {
    let mut v = Vec::with_capacity(x.len() / 2 + 2);
    v.push(Complex64::new(0.0, 0.0));
    v.push(Complex64::new(1.0, 0.0));
    v.extend(x.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])));
    v
}

/// Global dimension of the chart induced by a valid polygon.
pub fn polygon_gldim(p: &Polygon) -> Result<f64> {
    validate_polygon(p).map_err(Error::InvalidPolygon)?;
    PolygonModel::new(p.n())?.gldim(p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestartResult {
    pub restart: u64,
    pub polygon: Polygon,
    pub value: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonMinimum {
    pub polygon: Polygon,
    pub value: f64,
    /// Final value of every restart, `None` where it ended infeasible.
    pub restart_values: Vec<Option<f64>>,
}

/// Optimizer settings used by [`minimize_polygon_gldim`].
pub fn default_options() -> NelderMeadOptions {
    NelderMeadOptions { tol: 1e-10, max_evals: 100_000, initial_step: 0.1, max_restarts: 50, adaptive: true }
}

/// Picks the best feasible restart, lowest restart index on ties.
pub fn best_restart(results: Vec<Option<RestartResult>>) -> Result<PolygonMinimum> {
    let restart_values = results.iter().map(|r| r.as_ref().map(|r| r.value)).collect();
    let best = results
        .into_iter()
        .flatten()
        .min_by(|a, b| a.value.total_cmp(&b.value).then(a.restart.cmp(&b.restart)))
        .ok_or(Error::AllRestartsInfeasible)?;
    Ok(PolygonMinimum { polygon: best.polygon, value: best.value, restart_values })
}

/// Minimizes the global dimension over `Poly(n+1)` from `restarts` seeded
/// random polygons.
pub fn minimize_polygon_gldim(n: usize, seed: u64, restarts: u64) -> Result<PolygonMinimum> {
    if n < 2 {
        return Err(Error::UnsupportedRank { kind: 'A', rank: n });
    }
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    let model = PolygonModel::new(n)?;
    let opts = default_options();
    best_restart((0..restarts).map(|r| model.restart(seed, r, &opts)).collect())
}
