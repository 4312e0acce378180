//! Atomic file output, CSV tables and SVG figures.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use stabgld_core::polygon::Polygon;
use stabgld_core::stability::ChartEntry;
use stabgld_core::CentralCharge;

use crate::error::{AppError, AppResult};
use crate::parallel::LandscapeRow;

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so readers never observe a partial file.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> AppResult<()> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| AppError::io(&shown, e))?;
    tmp.write_all(bytes).map_err(|e| AppError::io(&shown, e))?;
    tmp.as_file().sync_all().map_err(|e| AppError::io(&shown, e))?;
    tmp.persist(path).map_err(|e| AppError::io(&shown, e.error))?;
    Ok(())
}

/// Fails early when the directory that would receive `path` is missing.
pub fn check_output_path(path: &Path) -> AppResult<()> {
    match path.parent() {
        Some(d) if !d.as_os_str().is_empty() && !d.is_dir() => {
            Err(AppError::Input(format!("output directory {} does not exist", d.display())))
        }
        _ => Ok(()),
    }
}

fn root_label(root: &[i64]) -> String {
    root.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Semistable set as CSV: `root, re, im, phase, stable`.
pub fn semistable_csv(entries: &[ChartEntry], charge: &CentralCharge) -> AppResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["root", "re", "im", "phase", "stable"])?;
    for e in entries {
        let z = charge.eval(&e.root);
        w.write_record([
            root_label(&e.root),
            z.re.to_string(),
            z.im.to_string(),
            e.phase.to_string(),
            e.stable.to_string(),
        ])?;
    }
    finish(w)
}

/// Landscape as CSV: `x, y, gldim_formula, gldim_direct`; undefined cells
/// are left empty.
pub fn landscape_csv(rows: &[LandscapeRow]) -> AppResult<String> {
    let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "y", "gldim_formula", "gldim_direct"])?;
    for r in rows {
        w.write_record([r.x.to_string(), r.y.to_string(), cell(r.formula), cell(r.direct)])?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> AppResult<String> {
    let bytes = w.into_inner().map_err(|e| AppError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    pub diagonals: bool,
    /// Marks every interior angle with an arc.
    pub angle_arcs: bool,
    pub size: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self { diagonals: true, angle_arcs: false, size: 480.0 }
    }
}

/// SVG drawing of a polygon, optionally with all diagonals and angle arcs.
pub fn polygon_svg(p: &Polygon, opts: &SvgOptions) -> String {
    let v = p.vertices();
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for z in v {
        lo_x = lo_x.min(z.re);
        hi_x = hi_x.max(z.re);
        lo_y = lo_y.min(z.im);
        hi_y = hi_y.max(z.im);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-12);
    let margin = 0.08 * opts.size;
    let scale = (opts.size - 2.0 * margin) / span;
    // SVG's y axis points down.
    let map = |z: &num_complex::Complex64| (margin + (z.re - lo_x) * scale, opts.size - margin - (z.im - lo_y) * scale);
    let pts: Vec<(f64, f64)> = v.iter().map(map).collect();

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        opts.size
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if opts.diagonals {
        for i in 0..pts.len() {
            for j in i + 2..pts.len() {
                if i == 0 && j == pts.len() - 1 {
                    continue;
                }
                let _ = writeln!(
                    s,
                    r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#888" stroke-width="1"/>"##,
                    pts[i].0, pts[i].1, pts[j].0, pts[j].1
                );
            }
        }
    }
    let outline: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(s, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#, outline.join(" "));
    if opts.angle_arcs {
        let m = pts.len();
        let r = 0.06 * opts.size;
        for k in 0..m {
            let (prev, here, next) = (pts[(k + m - 1) % m], pts[k], pts[(k + 1) % m]);
            let unit = |a: (f64, f64)| {
                let (dx, dy) = (a.0 - here.0, a.1 - here.1);
                let n = (dx * dx + dy * dy).sqrt();
                (here.0 + r * dx / n, here.1 + r * dy / n)
            };
            let (a, b) = (unit(next), unit(prev));
            let _ = writeln!(
                s,
                r##"<path d="M {:.3} {:.3} A {r:.3} {r:.3} 0 0 0 {:.3} {:.3}" fill="none" stroke="#c03" stroke-width="1.5"/>"##,
                a.0, a.1, b.0, b.1
            );
        }
    }
    for (k, (x, y)) in pts.iter().enumerate() {
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/>"#);
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" font-size="14">P{k}</text>"#, x + 5.0, y - 5.0);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heptagon_svg_has_all_diagonals() {
        let svg = polygon_svg(&Polygon::regular(6), &SvgOptions { angle_arcs: true, ..Default::default() });
        assert_eq!(svg.matches("<line").count(), 7 * 4 / 2);
        assert_eq!(svg.matches("<path").count(), 7);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        write_atomic(&path, b"first").unwrap();
        write_atomic(&path, b"second").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(check_output_path(&dir.path().join("missing/x.json")).is_err());
    }

    #[test]
    fn landscape_cells() {
        let rows = [LandscapeRow { x: 0.5, y: 0.0, formula: Some(0.5), direct: None }];
        assert_eq!(landscape_csv(&rows).unwrap(), "x,y,gldim_formula,gldim_direct\n0.5,0,0.5,\n");
    }
}
