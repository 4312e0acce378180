//! JSON file formats.
//!
//! Vertex labels and arrow endpoints are 1-based in every file.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use stabgld_core::gepner::GepnerReport;
use stabgld_core::polygon::Polygon;
use stabgld_core::qstab::{LaurentPoly, QGepnerReport, RClass};
use stabgld_core::stability::{ChartReport, Gldim, Witness};
use stabgld_core::{CentralCharge, ChartEntry, DynkinType, HeartCharge, Quiver, QuiverKind, SlicingChart};

use crate::error::{AppError, AppResult};

pub type Point = [f64; 2];

fn to_point(z: Complex64) -> Point {
    [z.re, z.im]
}

fn to_complex(p: &Point) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// `{"type":"A","rank":6}` or `{"vertices":n,"arrows":[[i,j],...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuiverSpec {
    Named {
        #[serde(rename = "type")]
        kind: String,
        #[serde(default)]
        rank: Option<usize>,
    },
    Arrows {
        vertices: usize,
        arrows: Vec<[usize; 2]>,
    },
}

impl QuiverSpec {
    pub fn to_quiver(&self) -> AppResult<Quiver> {
        match self {
            QuiverSpec::Named { kind, rank } => {
                let name = match rank {
                    Some(r) => format!("{kind}{r}"),
                    None => kind.clone(),
                };
                quiver_from_name(&name)
            }
            QuiverSpec::Arrows { vertices, arrows } => {
                let mut zero_based = Vec::with_capacity(arrows.len());
                for &[s, t] in arrows {
                    if s == 0 || t == 0 || s > *vertices || t > *vertices {
                        return Err(AppError::Input(format!("arrow [{s}, {t}] has a label outside 1..={vertices}")));
                    }
                    zero_based.push((s - 1, t - 1));
                }
                Ok(Quiver::from_arrows(*vertices, zero_based)?)
            }
        }
    }

    pub fn from_quiver(q: &Quiver) -> Self {
        match q.kind() {
            QuiverKind::Dynkin(t, r) => QuiverSpec::Named { kind: t.letter().to_string(), rank: Some(r) },
            QuiverKind::Kronecker => QuiverSpec::Named { kind: "Kronecker".into(), rank: None },
            QuiverKind::Custom => QuiverSpec::Arrows {
                vertices: q.vertex_count(),
                arrows: q.arrows().iter().map(|&(s, t)| [s + 1, t + 1]).collect(),
            },
        }
    }
}

/// Named quiver such as `A6`, `D4`, `E6` or `Kronecker`.
pub fn quiver_from_name(name: &str) -> AppResult<Quiver> {
    Quiver::from_name(name).map_err(|e| match e {
        stabgld_core::Error::InvalidArgument(m) => AppError::Input(m),
        other => AppError::Core(other),
    })
}

/// A `--quiver` argument: a name, or a path to a quiver JSON file.
pub fn parse_quiver_arg(arg: &str) -> AppResult<Quiver> {
    if Path::new(arg).is_file() {
        let spec: QuiverSpec = read_json(arg)?;
        spec.to_quiver()
    } else {
        quiver_from_name(arg)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> AppResult<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path.display().to_string(), e))?;
    Ok(serde_json::from_str(&text)?)
}

/// `{"quiver":{...},"charge":[[re,im],...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChargeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverSpec>,
    pub charge: Vec<Point>,
}

impl ChargeFile {
    pub fn central_charge(&self) -> CentralCharge {
        CentralCharge::new(self.charge.iter().map(to_complex).collect())
    }

    pub fn heart_charge(&self) -> AppResult<HeartCharge> {
        Ok(HeartCharge::new(self.central_charge())?)
    }

    pub fn from_charge(quiver: Option<&Quiver>, z: &CentralCharge) -> Self {
        Self { quiver: quiver.map(QuiverSpec::from_quiver), charge: z.values().iter().map(|&z| to_point(z)).collect() }
    }
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartEntryJson {
    pub root: Vec<i64>,
    pub phase: f64,
    /// `false` marks a strictly semistable module.
    #[serde(default = "default_true")]
    pub stable: bool,
}

/// `{"stable":[{"root":[...],"phase":x},...],"charge":[[re,im],...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverSpec>,
    pub stable: Vec<ChartEntryJson>,
    pub charge: Vec<Point>,
}

impl ChartFile {
    pub fn from_chart(quiver: Option<&Quiver>, chart: &SlicingChart) -> Self {
        Self {
            quiver: quiver.map(QuiverSpec::from_quiver),
            stable: chart
                .entries
                .iter()
                .map(|e| ChartEntryJson { root: e.root.clone(), phase: e.phase, stable: e.stable })
                .collect(),
            charge: chart.charge.values().iter().map(|&z| to_point(z)).collect(),
        }
    }

    pub fn to_chart(&self) -> SlicingChart {
        SlicingChart::new(
            self.stable.iter().map(|e| ChartEntry { root: e.root.clone(), phase: e.phase, stable: e.stable }).collect(),
            CentralCharge::new(self.charge.iter().map(to_complex).collect()),
        )
    }
}

/// `{"vertices":[[x,y],...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<Point>,
}

impl PolygonFile {
    pub fn from_polygon(p: &Polygon) -> Self {
        Self { vertices: p.vertices().iter().map(|&z| to_point(z)).collect() }
    }

    pub fn to_polygon(&self) -> Polygon {
        Polygon::new(self.vertices.iter().map(to_complex).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RClassTerm {
    pub vertex: usize,
    /// `[exponent, coefficient]` pairs.
    pub terms: Vec<(i32, i64)>,
}

/// `{"coeffs":[{"vertex":i,"terms":[[exp,coef],...]},...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RClassFile {
    pub coeffs: Vec<RClassTerm>,
}

impl RClassFile {
    pub fn from_class(c: &RClass) -> Self {
        Self {
            coeffs: c
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(i, p)| RClassTerm { vertex: i + 1, terms: p.terms().collect() })
                .collect(),
        }
    }

    /// Class of rank `n`; repeated vertices add up.
    pub fn to_class(&self, n: usize) -> AppResult<RClass> {
        let mut c = RClass::zero(n);
        for t in &self.coeffs {
            if t.vertex == 0 || t.vertex > n {
                return Err(AppError::Input(format!("vertex {} outside 1..={n}", t.vertex)));
            }
            let p = LaurentPoly::from_terms(t.terms.iter().copied());
            c.coeffs[t.vertex - 1] = &c.coeffs[t.vertex - 1] + &p;
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub source: Vec<i64>,
    pub source_phase: f64,
    pub target: Vec<i64>,
    pub target_phase: f64,
    pub degree: u32,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        Self {
            source: w.source.clone(),
            source_phase: w.source_phase,
            target: w.target.clone(),
            target_phase: w.target_phase,
            degree: w.degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GldimJson {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    /// Index bound of the Kronecker families, when the value is truncated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
}

impl From<&Gldim> for GldimJson {
    fn from(g: &Gldim) -> Self {
        Self { value: g.value, witness: Some((&g.witness).into()), truncation: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartReportJson {
    pub passed: bool,
    pub violations: Vec<String>,
    pub max_charge_deviation: f64,
}

impl From<&ChartReport> for ChartReportJson {
    fn from(r: &ChartReport) -> Self {
        Self {
            passed: r.passed(),
            violations: r.violations.iter().map(|v| v.to_string()).collect(),
            max_charge_deviation: r.max_charge_deviation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GepnerCheckJson {
    pub passed: bool,
    pub charge_deviation: f64,
    pub phase_deviation: f64,
    pub missing: usize,
}

impl From<&GepnerReport> for GepnerCheckJson {
    fn from(r: &GepnerReport) -> Self {
        Self {
            passed: r.passed(),
            charge_deviation: r.charge_deviation,
            phase_deviation: r.phase_deviation,
            missing: r.missing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QGepnerJson {
    pub passed: bool,
    pub eigenvalue: Point,
    pub charge_deviation: f64,
    pub phase_deviation: f64,
    pub charge_phase_deviation: f64,
}

impl From<&QGepnerReport> for QGepnerJson {
    fn from(r: &QGepnerReport) -> Self {
        Self {
            passed: r.passed(),
            eigenvalue: to_point(r.eigenvalue),
            charge_deviation: r.charge_deviation,
            phase_deviation: r.phase_deviation,
            charge_phase_deviation: r.charge_phase_deviation,
        }
    }
}

/// Short display name of a quiver (`A6`, `Kronecker`, `custom`).
pub fn quiver_name(q: &Quiver) -> String {
    match q.kind() {
        QuiverKind::Dynkin(t, r) => format!("{}{r}", t.letter()),
        QuiverKind::Kronecker => "Kronecker".into(),
        QuiverKind::Custom => "custom".into(),
    }
}

/// Rank of a standard `A_n` quiver.
pub fn type_a_rank(q: &Quiver) -> Option<usize> {
    match q.kind() {
        QuiverKind::Dynkin(DynkinType::A, r) => Some(r),
        _ => None,
    }
}
