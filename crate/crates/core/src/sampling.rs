//! Seeded random stability data.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// Float methods resolve to std when it is linked and to libm otherwise.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::polygon::Polygon;
use crate::stability::HeartCharge;

/// Random charge on the standard heart with moduli in `[0.2, 3)`.
///
/// With `ticks = Some(k)` every phase is a multiple of `1/k` in `(0, 1]`, so
/// ties between simples are common; otherwise phases are uniform in `(0, 1]`.
pub fn random_heart_charge<R: Rng + ?Sized>(rng: &mut R, rank: usize, ticks: Option<u32>) -> HeartCharge {
    let moduli: Vec<f64> = (0..rank).map(|_| 0.2 + 2.8 * rng.gen::<f64>()).collect();
    let phases: Vec<f64> = (0..rank)
        .map(|_| match ticks {
            Some(k) => rng.gen_range(1..=k) as f64 / k as f64,
            None => 1.0 - rng.gen::<f64>(),
        })
        .collect();
    HeartCharge::from_polar(&moduli, &phases).expect("phases lie in (0, 1]")
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn strictly_convex(v: &[Complex64]) -> bool {
    let m = v.len();
    (0..m).all(|k| {
        let e1 = v[(k + 1) % m] - v[k];
        let e2 = v[(k + 2) % m] - v[(k + 1) % m];
        cross(e1, e2) > 1e-9 * e1.norm() * e2.norm()
    })
}

/// Random normalized convex polygon with `n + 1` vertices.
///
/// Points at sorted random angles on a random ellipse form a convex chain;
/// each vertex is then jittered a few times, keeping only moves that preserve
/// strict convexity, before the similarity taking the first edge to `[0, 1]`.
pub fn random_polygon<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Polygon {
    let m = n + 1;
    let a = 0.5 + 1.5 * rng.gen::<f64>();
    let b = 0.5 + 1.5 * rng.gen::<f64>();
    let mut angles: Vec<f64> = (0..m).map(|_| 2.0 * PI * rng.gen::<f64>()).collect();
    angles.sort_by(f64::total_cmp);
    let mut v: Vec<Complex64> = angles.iter().map(|t| Complex64::new(a * t.cos(), b * t.sin())).collect();
    if !strictly_convex(&v) {
        // Near-coincident angles; fall back to evenly spread ones.
        v = (0..m)
            .map(|k| {
                let t = 2.0 * PI * (k as f64 + 0.5 * rng.gen::<f64>()) / m as f64;
                Complex64::new(a * t.cos(), b * t.sin())
            })
            .collect();
    }
    let scale = v.iter().map(|p| p.norm()).fold(0.0, f64::max);
    for _ in 0..3 {
        for k in 0..m {
            let old = v[k];
            let dx = (2.0 * rng.gen::<f64>() - 1.0) * 0.3 * scale;
            let dy = (2.0 * rng.gen::<f64>() - 1.0) * 0.3 * scale;
            v[k] = old + Complex64::new(dx, dy);
            if !strictly_convex(&v) {
                v[k] = old;
            }
        }
    }
    let (v0, e) = (v[0], v[1] - v[0]);
    let mut vertices: Vec<Complex64> = v.iter().map(|p| (p - v0) / e).collect();
    vertices[0] = Complex64::new(0.0, 0.0);
    vertices[1] = Complex64::new(1.0, 0.0);
    Polygon::new(vertices)
}
