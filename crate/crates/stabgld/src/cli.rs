//! Command-line surface. Every command returns the text it prints on stdout.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use stabgld_core::gepner::{check_gepner, gepner_stab, GepnerParams};
use stabgld_core::polygon::Polygon;
use stabgld_core::stability::{gldim, semistable_set, total_stability, validate_chart, StabRep, TotalStability};
use stabgld_core::tame::{kron_gldim_truncated, KRONECKER_TRUNCATION};
use stabgld_core::{DerivedCategory, Quiver, QuiverKind, SlicingChart};

use crate::error::{AppError, AppResult};
use crate::formats::{
    parse_quiver_arg, quiver_name, read_json, type_a_rank, ChargeFile, ChartFile, ChartReportJson, GepnerCheckJson,
    GldimJson, PolygonFile,
};
use crate::output::{check_output_path, landscape_csv, polygon_svg, semistable_csv, write_atomic, SvgOptions};
use crate::parallel::{self, LandscapeChart};

#[derive(Debug, Parser)]
#[command(name = "stabgld", version, about = "Global dimension of stability conditions on quiver categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Global dimension of a heart charge or a slicing chart.
    Gldim(GldimArgs),
    /// Build the Gepner point of a Dynkin quiver.
    Gepner(GepnerArgs),
    /// Minimize the global dimension over convex polygons (type A).
    Minimize(MinimizeArgs),
    /// Sample the A2 or Kronecker chart on a grid.
    Landscape(LandscapeArgs),
}

#[derive(Debug, Args)]
pub struct GldimArgs {
    /// Quiver name (A6, D4, E6, Kronecker) or quiver JSON file; defaults to
    /// the quiver recorded in the input file.
    #[arg(long)]
    pub quiver: Option<String>,
    /// Charge file on the standard heart.
    #[arg(long, conflicts_with = "chart", required_unless_present = "chart")]
    pub charge: Option<PathBuf>,
    /// Slicing chart file.
    #[arg(long)]
    pub chart: Option<PathBuf>,
    /// Index bound for the Kronecker families.
    #[arg(long, default_value_t = KRONECKER_TRUNCATION)]
    pub truncation: usize,
    /// Also write the semistable set as CSV.
    #[arg(long)]
    pub semistable_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GepnerArgs {
    #[arg(long)]
    pub quiver: String,
    /// Write the Gepner chart here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Draw the regular polygon with its diagonals (type A only).
    #[arg(long)]
    pub emit_svg: Option<PathBuf>,
    /// Verify the Gepner equation for the AR translation.
    #[arg(long)]
    pub check: bool,
    /// Also perturb the charge by at most this radius and report the
    /// resulting global dimensions.
    #[arg(long)]
    pub perturb: Option<f64>,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct MinimizeArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub restarts: u64,
    /// Write the minimizing polygon here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub emit_svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ChartKind {
    A2,
    Kronecker,
}

#[derive(Debug, Args)]
pub struct LandscapeArgs {
    #[arg(long, value_enum)]
    pub chart: ChartKind,
    /// `lo:hi` range of x.
    #[arg(long, default_value = "-2:1", allow_hyphen_values = true)]
    pub xrange: String,
    /// `lo:hi` range of y.
    #[arg(long, default_value = "0:0", allow_hyphen_values = true)]
    pub yrange: String,
    /// Number of x samples.
    #[arg(long)]
    pub samples: usize,
    /// Number of y samples.
    #[arg(long, default_value_t = 1)]
    pub ysamples: usize,
    #[arg(long, default_value_t = KRONECKER_TRUNCATION)]
    pub truncation: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn json<T: Serialize>(value: &T) -> AppResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn check_outputs<'a>(paths: impl IntoIterator<Item = &'a Option<PathBuf>>) -> AppResult<()> {
    paths.into_iter().flatten().try_for_each(|p| check_output_path(p))
}

pub fn run(cli: Cli) -> AppResult<String> {
    match cli.command {
        Command::Gldim(a) => cmd_gldim(&a),
        Command::Gepner(a) => cmd_gepner(&a),
        Command::Minimize(a) => cmd_minimize(&a),
        Command::Landscape(a) => cmd_landscape(&a),
    }
}

fn resolve_quiver(arg: Option<&str>, from_file: Option<&crate::formats::QuiverSpec>) -> AppResult<Quiver> {
    match (arg, from_file) {
        (Some(a), _) => parse_quiver_arg(a),
        (None, Some(spec)) => spec.to_quiver(),
        (None, None) => Err(AppError::Input("no quiver given: pass --quiver or record it in the input file".into())),
    }
}

fn dynkin_category(q: &Quiver) -> AppResult<DerivedCategory> {
    if !q.is_dynkin() {
        return Err(AppError::Unsupported(format!("{} is not a Dynkin quiver", quiver_name(q))));
    }
    Ok(DerivedCategory::new(q)?)
}

#[derive(Serialize)]
struct GldimOutput {
    quiver: String,
    #[serde(flatten)]
    gldim: GldimJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    total_stability: Option<&'static str>,
}

fn stability_label(t: TotalStability) -> &'static str {
    match t {
        TotalStability::TotallyStable => "totally_stable",
        TotalStability::TotallySemistableOnly => "totally_semistable",
        TotalStability::Neither => "neither",
    }
}

pub fn cmd_gldim(a: &GldimArgs) -> AppResult<String> {
    check_outputs([&a.semistable_csv])?;
    if a.truncation == 0 {
        return Err(AppError::Input("--truncation must be positive".into()));
    }
    let (stab_quiver, stab) = match (&a.charge, &a.chart) {
        (Some(path), _) => {
            let f: ChargeFile = read_json(path)?;
            let q = resolve_quiver(a.quiver.as_deref(), f.quiver.as_ref())?;
            if f.charge.len() != q.vertex_count() {
                return Err(AppError::Input(format!(
                    "charge has {} values, quiver has {} vertices",
                    f.charge.len(),
                    q.vertex_count()
                )));
            }
            (q, StabRep::Heart(f.heart_charge()?))
        }
        (None, Some(path)) => {
            let f: ChartFile = read_json(path)?;
            (resolve_quiver(a.quiver.as_deref(), f.quiver.as_ref())?, StabRep::Chart(f.to_chart()))
        }
        (None, None) => return Err(AppError::Input("pass --charge or --chart".into())),
    };
    let name = quiver_name(&stab_quiver);

    if stab_quiver.kind() == QuiverKind::Kronecker {
        let StabRep::Heart(h) = &stab else {
            return Err(AppError::Unsupported("Kronecker charts; pass a heart charge".into()));
        };
        let value = kron_gldim_truncated(h, a.truncation)?;
        let gldim = GldimJson { value, witness: None, truncation: Some(a.truncation) };
        return json(&GldimOutput { quiver: name, gldim, total_stability: None });
    }

    let cat = dynkin_category(&stab_quiver)?;
    if let StabRep::Chart(c) = &stab {
        let report = validate_chart(&cat, c);
        if !report.passed() {
            let r = ChartReportJson::from(&report);
            return Err(AppError::InvalidStability { message: r.violations[0].clone(), violations: r.violations });
        }
    }
    let g = gldim(&cat, &stab)?;
    if let Some(path) = &a.semistable_csv {
        let chart: SlicingChart = match &stab {
            StabRep::Heart(h) => SlicingChart::new(semistable_set(&cat, h)?, h.charge().clone()),
            StabRep::Chart(c) => c.clone(),
        };
        write_atomic(path, semistable_csv(&chart.entries, &chart.charge)?.as_bytes())?;
    }
    let t = total_stability(&cat, &stab)?;
    json(&GldimOutput { quiver: name, gldim: (&g).into(), total_stability: Some(stability_label(t)) })
}

#[derive(Serialize)]
struct GepnerOutput {
    quiver: String,
    coxeter_number: u32,
    value: f64,
    expected: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<GepnerCheckJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    perturbation: Option<PerturbJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chart: Option<ChartFile>,
}

#[derive(Serialize)]
struct PerturbJson {
    epsilon: f64,
    trials: u64,
    seed: u64,
    floor: f64,
    min: Option<f64>,
    max: Option<f64>,
    skipped: usize,
    strictly_above: usize,
}

pub fn cmd_gepner(a: &GepnerArgs) -> AppResult<String> {
    check_outputs([&a.out, &a.emit_svg])?;
    if let Some(eps) = a.perturb {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(AppError::Input("--perturb needs a positive radius".into()));
        }
    }
    let q = parse_quiver_arg(&a.quiver)?;
    let cat = dynkin_category(&q)?;
    let h = cat.coxeter_number();
    let chart = gepner_stab(&cat)?;
    let g = gldim(&cat, &StabRep::Chart(chart.clone()))?;
    let check = if a.check {
        let report = check_gepner(&cat, &chart, GepnerParams::for_gepner_point(1, 0, h));
        Some(GepnerCheckJson::from(&report))
    } else {
        None
    };
    let perturbation = match a.perturb {
        Some(epsilon) => {
            let r = parallel::perturb_test(&cat, epsilon, a.trials, a.seed)?;
            let (min, max) = if r.values.is_empty() { (None, None) } else { (Some(r.min()), Some(r.max())) };
            Some(PerturbJson {
                epsilon,
                trials: a.trials,
                seed: a.seed,
                floor: r.floor,
                min,
                max,
                skipped: r.skipped,
                strictly_above: r.strictly_above,
            })
        }
        None => None,
    };
    if let Some(path) = &a.emit_svg {
        let n = type_a_rank(&q).ok_or_else(|| AppError::Unsupported("polygon figures exist for type A only".into()))?;
        let svg = polygon_svg(&Polygon::regular(n), &SvgOptions { angle_arcs: true, ..Default::default() });
        write_atomic(path, svg.as_bytes())?;
    }
    let file = ChartFile::from_chart(Some(&q), &chart);
    let inline = match &a.out {
        Some(path) => {
            write_atomic(path, json(&file)?.as_bytes())?;
            None
        }
        None => Some(file),
    };
    let failed = check.as_ref().is_some_and(|c| !c.passed);
    let out = json(&GepnerOutput {
        quiver: quiver_name(&q),
        coxeter_number: h,
        value: g.value,
        expected: 1.0 - 2.0 / h as f64,
        check,
        perturbation,
        chart: inline,
    })?;
    if failed {
        return Err(AppError::InvalidStability {
            message: "Gepner equation check failed".into(),
            violations: vec![out],
        });
    }
    Ok(out)
}

#[derive(Serialize)]
struct MinimizeOutput {
    quiver: String,
    seed: u64,
    restarts: u64,
    value: f64,
    floor: f64,
    distance_to_regular: f64,
    polygon: PolygonFile,
    restart_values: Vec<Option<f64>>,
}

pub fn cmd_minimize(a: &MinimizeArgs) -> AppResult<String> {
    check_outputs([&a.out, &a.emit_svg])?;
    let q = parse_quiver_arg(&a.quiver)?;
    let n = type_a_rank(&q).ok_or_else(|| AppError::Unsupported("polygon minimization needs an A_n quiver".into()))?;
    if n < 2 {
        return Err(AppError::Input("polygon minimization needs n >= 2".into()));
    }
    if a.restarts == 0 {
        return Err(AppError::Input("--restarts must be at least 1".into()));
    }
    let m = parallel::minimize_polygon_gldim(n, a.seed, a.restarts)?;
    let file = PolygonFile::from_polygon(&m.polygon);
    if let Some(path) = &a.out {
        write_atomic(path, json(&file)?.as_bytes())?;
    }
    if let Some(path) = &a.emit_svg {
        write_atomic(path, polygon_svg(&m.polygon, &SvgOptions::default()).as_bytes())?;
    }
    json(&MinimizeOutput {
        quiver: quiver_name(&q),
        seed: a.seed,
        restarts: a.restarts,
        value: m.value,
        floor: 1.0 - 2.0 / (n as f64 + 1.0),
        distance_to_regular: m.polygon.distance_to_regular(),
        polygon: file,
        restart_values: m.restart_values,
    })
}

fn parse_range(s: &str) -> AppResult<(f64, f64)> {
    let bad = || AppError::Input(format!("range {s:?} is not of the form lo:hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[derive(Serialize)]
struct LandscapeSummary<'a> {
    rows: usize,
    path: &'a Path,
}

pub fn cmd_landscape(a: &LandscapeArgs) -> AppResult<String> {
    check_outputs([&a.out])?;
    if a.samples == 0 || a.ysamples == 0 {
        return Err(AppError::Input("sample counts must be positive".into()));
    }
    if a.truncation == 0 {
        return Err(AppError::Input("--truncation must be positive".into()));
    }
    let (x0, x1) = parse_range(&a.xrange)?;
    let (y0, y1) = parse_range(&a.yrange)?;
    let chart = match a.chart {
        ChartKind::A2 => LandscapeChart::A2,
        ChartKind::Kronecker => LandscapeChart::Kronecker,
    };
    let xs = parallel::linspace(x0, x1, a.samples);
    let ys = parallel::linspace(y0, y1, a.ysamples);
    let rows = parallel::landscape(chart, &xs, &ys, a.truncation)?;
    let csv = landscape_csv(&rows)?;
    match &a.out {
        Some(path) => {
            write_atomic(path, csv.as_bytes())?;
            json(&LandscapeSummary { rows: rows.len(), path })
        }
        None => Ok(csv),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-2:1").unwrap(), (-2.0, 1.0));
        assert!(parse_range("1:-2").is_err());
        assert!(parse_range("abc").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
