//! q-deformed central charges at the level of Grothendieck groups.
//!
//! The Calabi–Yau-`X` category is modelled only through its classes: `K` is
//! free over `R = ℤ[q^{±1}]` on the simples, with `q^k [E] = [E[kX]]`. A base
//! charge `Z` and `s ∈ ℂ` give `Z_s(Σ p_i(q) e_i) = Σ p_i(e^{iπs}) Z(e_i)`,
//! and the object `E[kX]` gets phase `φ(E) + k·Re(s)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Euclid;
// Float methods resolve to std when it is linked and to libm otherwise.
#[allow(unused_imports)]
use num_traits::Float;

use crate::derived::{DerivedCategory, IndecObject};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::stability::{exp_i_pi, gldim, CentralCharge, SlicingChart, StabRep};

pub const Q_GEPNER_TOL: f64 = 1e-12;

/// Laurent polynomial in `q` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c·q^k`.
    pub fn monomial(k: i32, c: i64) -> Self {
        Self::from_terms([(k, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: i32, c: i64) {
        let entry = self.terms.entry(k).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_terms(self.terms().map(|(k, a)| (k, a * c)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

/// Evaluates `p` at `q = e^{iπs}`.
pub fn q_specialize(p: &LaurentPoly, s: Complex64) -> Complex64 {
    p.terms().map(|(k, c)| exp_i_pi(s * k as f64) * c as f64).sum()
}

/// Class in `K ≅ Rⁿ`, one coefficient per simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RClass {
    pub coeffs: Vec<LaurentPoly>,
}

impl RClass {
    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![LaurentPoly::zero(); n] }
    }

    /// `q^k e_i`.
    pub fn basis(n: usize, i: usize, k: i32) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[i] = LaurentPoly::monomial(k, 1);
        c
    }

    /// Class of a base dimension vector, placed in degree `k`.
    pub fn from_dim(v: &[i64], k: i32) -> Self {
        Self { coeffs: v.iter().map(|&x| LaurentPoly::monomial(k, x)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    /// `(M ⊗ 1)` applied to the class.
    pub fn apply(&self, m: &IntMatrix) -> Self {
        let n = self.rank();
        let coeffs = (0..n)
            .map(|i| (0..n).fold(LaurentPoly::zero(), |acc, j| &acc + &self.coeffs[j].scale(m[(i, j)])))
            .collect();
        Self { coeffs }
    }
}

impl Add for &RClass {
    type Output = RClass;
    fn add(self, rhs: &RClass) -> RClass {
        RClass { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

/// Base charge together with the specialization parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct QCharge {
    pub base: CentralCharge,
    pub s: Complex64,
}

impl QCharge {
    pub fn eval(&self, c: &RClass) -> Result<Complex64> {
        if c.rank() != self.base.rank() {
            return Err(Error::DimensionMismatch { expected: self.base.rank(), got: c.rank() });
        }
        Ok(c.coeffs.iter().zip(self.base.values()).map(|(p, z)| q_specialize(p, self.s) * z).sum())
    }

    /// Phase of `E[kX]` for a base object of phase `phase`.
    pub fn phase(&self, phase: f64, k: i32) -> f64 {
        phase + k as f64 * self.s.re
    }
}

pub fn induce_q_charge(z: &CentralCharge, s: Complex64) -> QCharge {
    QCharge { base: z.clone(), s }
}

/// Whether `stab` induces a q-stability condition at `s`: `Re(s) ≥ gldim + 1`.
pub fn inducible(cat: &DerivedCategory, stab: &StabRep, s: Complex64) -> Result<bool> {
    let g = gldim(cat, stab)?.value;
    Ok(s.re >= g + 1.0 - Q_GEPNER_TOL)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QGepnerReport {
    /// `e^{2πi/h}`, the eigenvalue of `Z_s ∘ τ_X^{-1}`.
    pub eigenvalue: Complex64,
    /// Largest `|Z_s(τ_X^{-1} c) − λ Z_s(c)| / max(1, |Z_s(c)|)` over `q^k e_i`.
    pub charge_deviation: f64,
    /// Largest `|φ(τ^{-1}E[kX]) − φ(E[kX]) − 2/h|` over chart modules.
    pub phase_deviation: f64,
    /// Largest angular mismatch (units of `π`) between `Z_s(E[kX])` and its phase.
    pub charge_phase_deviation: f64,
}

impl QGepnerReport {
    pub fn passed(&self) -> bool {
        self.charge_deviation < Q_GEPNER_TOL
            && self.phase_deviation < Q_GEPNER_TOL
            && self.charge_phase_deviation < Q_GEPNER_TOL
    }
}

const DEGREES: core::ops::RangeInclusive<i32> = -2..=2;

fn angle_mod2(t: f64) -> f64 {
    // distance of t to the nearest even integer
    let r = Euclid::rem_euclid(&t, &2.0);
    r.min(2.0 - r)
}

/// Checks the q-Gepner equation for an arbitrary base chart.
pub fn check_q_gepner_chart(cat: &DerivedCategory, chart: &SlicingChart, s: Complex64) -> Result<QGepnerReport> {
    let n = cat.rank();
    let h = cat.coxeter_number() as f64;
    let eigenvalue = exp_i_pi(Complex64::new(2.0 / h, 0.0));
    let zq = induce_q_charge(&chart.charge, s);
    let inv = cat.quiver().coxeter_inverse();
    let mut charge_deviation: f64 = 0.0;
    for i in 0..n {
        for k in DEGREES {
            let c = RClass::basis(n, i, k);
            let lhs = zq.eval(&c.apply(&inv))?;
            let rhs = eigenvalue * zq.eval(&c)?;
            charge_deviation = charge_deviation.max((lhs - rhs).norm() / rhs.norm().max(1.0));
        }
    }
    let mut phase_deviation: f64 = 0.0;
    let mut charge_phase_deviation: f64 = 0.0;
    for e in &chart.entries {
        let id = cat.root_id(&e.root).ok_or_else(|| Error::NotARoot(e.root.clone()))?;
        let image = cat.ar_translate_inv(IndecObject::new(id, 0));
        let image_phase = chart.object_phase(cat, image);
        for k in DEGREES {
            let before = zq.phase(e.phase, k);
            match image_phase {
                Some(p) => {
                    let after = zq.phase(p, k);
                    phase_deviation = phase_deviation.max((after - before - 2.0 / h).abs());
                }
                None => phase_deviation = f64::INFINITY,
            }
            let w = zq.eval(&RClass::from_dim(&e.root, k))?;
            let arg = w.im.atan2(w.re) / core::f64::consts::PI;
            charge_phase_deviation = charge_phase_deviation.max(angle_mod2(arg - before));
        }
    }
    Ok(QGepnerReport { eigenvalue, charge_deviation, phase_deviation, charge_phase_deviation })
}

/// Checks the q-Gepner equation on the Gepner chart of `cat`.
pub fn check_q_gepner(cat: &DerivedCategory, s: Complex64) -> Result<QGepnerReport> {
    let chart = crate::gepner::gepner_stab(cat)?;
    check_q_gepner_chart(cat, &chart, s)
}
