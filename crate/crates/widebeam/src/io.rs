//! On-disk formats: pattern and cut CSV tables, excitation / geometry /
//! current-set / metrics / comparison JSON documents.
//!
//! Angles in files are degrees; conversion to radians happens only at this
//! boundary. CSV numbers carry 12 significant digits with `\n` line endings,
//! so every writer/reader pair round-trips to that precision and repeated
//! runs produce byte-identical files.

use crate::error::{Error, Result};
use crate::grid::{AngularGrid, Domain};
use crate::metrics::{CutComparison, PatternMetrics};
use crate::patch::{MagneticCurrentElement, MagneticCurrentSet, PatchGeometry};
use crate::pattern::{FarFieldPattern, PatternCut, LUDWIG3_CONVENTION};
use crate::synthesis::ArrayExcitation;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

/// Format a number with 12 significant digits, fixed point when the
/// magnitude is moderate, scientific otherwise.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        // Patterns are validated finite; dB columns are clamped. Fall back
        // to something parseable just in case.
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..=11).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

fn parse_field(path: &Path, line: usize, field: &str, what: &str) -> Result<f64> {
    field.trim().parse::<f64>().map_err(|_| Error::Parse {
        path: path.display().to_string(),
        line,
        message: format!("cannot parse {what} from {field:?}"),
    })
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Comment metadata `# key=value` collected from the head of a CSV file.
fn split_comment(line: &str) -> Option<(&str, &str)> {
    let body = line.strip_prefix('#')?.trim();
    let (k, v) = body.split_once('=')?;
    Some((k.trim(), v.trim()))
}

// ---------------------------------------------------------------------------
// Pattern CSV
// ---------------------------------------------------------------------------

pub const PATTERN_HEADER: &str = "theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi";

pub fn write_pattern_csv(path: &Path, p: &FarFieldPattern) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!("# domain={}\n", p.grid().domain().as_str()));
    if let Some(f) = p.frequency() {
        out.push_str(&format!("# frequency_hz={}\n", fmt12(f)));
    }
    out.push_str(PATTERN_HEADER);
    out.push('\n');
    for (idx, theta, phi) in p.grid().points() {
        let et = p.e_theta()[idx];
        let ep = p.e_phi()[idx];
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt12(theta.to_degrees()),
            fmt12(phi.to_degrees()),
            fmt12(et.re),
            fmt12(et.im),
            fmt12(ep.re),
            fmt12(ep.im),
        ));
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_pattern_csv(path: &Path) -> Result<FarFieldPattern> {
    let text = fs::read_to_string(path)?;
    let mut domain: Option<Domain> = None;
    let mut frequency: Option<f64> = None;
    let mut header_seen = false;
    let mut rows: Vec<(f64, f64, Complex64, Complex64)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some((k, v)) = split_comment(line) {
                match k {
                    "domain" => {
                        domain = Some(Domain::parse(v).ok_or_else(|| {
                            parse_error(path, lineno, format!("unknown domain {v:?}"))
                        })?)
                    }
                    "frequency_hz" => {
                        frequency = Some(parse_field(path, lineno, v, "frequency_hz")?)
                    }
                    _ => {}
                }
            }
            continue;
        }
        if !header_seen {
            if line != PATTERN_HEADER {
                return Err(parse_error(
                    path,
                    lineno,
                    format!("expected header {PATTERN_HEADER:?}"),
                ));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(parse_error(
                path,
                lineno,
                format!("expected 6 fields, got {}", fields.len()),
            ));
        }
        let theta = parse_field(path, lineno, fields[0], "theta_deg")?.to_radians();
        let phi = parse_field(path, lineno, fields[1], "phi_deg")?.to_radians();
        let et = Complex64::new(
            parse_field(path, lineno, fields[2], "re_etheta")?,
            parse_field(path, lineno, fields[3], "im_etheta")?,
        );
        let ep = Complex64::new(
            parse_field(path, lineno, fields[4], "re_ephi")?,
            parse_field(path, lineno, fields[5], "im_ephi")?,
        );
        rows.push((theta, phi, et, ep));
    }
    if rows.is_empty() {
        return Err(parse_error(path, 1, "no data rows"));
    }

    // Rows are theta-major: phi cycles fastest.
    let first_theta = rows[0].0;
    let n_phi = rows.iter().take_while(|r| r.0 == first_theta).count();
    if !rows.len().is_multiple_of(n_phi) {
        return Err(parse_error(
            path,
            1,
            format!("{} rows do not form a grid of {} azimuths", rows.len(), n_phi),
        ));
    }
    let n_theta = rows.len() / n_phi;
    let theta: Vec<f64> = (0..n_theta).map(|it| rows[it * n_phi].0).collect();
    let phi: Vec<f64> = rows[..n_phi].iter().map(|r| r.1).collect();
    for (i, row) in rows.iter().enumerate() {
        let (it, ip) = (i / n_phi, i % n_phi);
        if row.0 != theta[it] || row.1 != phi[ip] {
            return Err(parse_error(
                path,
                i + 2 + if frequency.is_some() { 1 } else { 0 },
                "rows are not in theta-major grid order",
            ));
        }
    }
    let domain = domain.unwrap_or_else(|| {
        if *theta.last().unwrap() <= std::f64::consts::FRAC_PI_2 + 1e-9 {
            Domain::UpperHemisphere
        } else {
            Domain::FullSphere
        }
    });
    let grid = AngularGrid::new(theta, phi, domain)?;
    let e_theta: Vec<Complex64> = rows.iter().map(|r| r.2).collect();
    let e_phi: Vec<Complex64> = rows.iter().map(|r| r.3).collect();
    FarFieldPattern::new(grid, e_theta, e_phi, frequency)
}

// ---------------------------------------------------------------------------
// Cut CSV
// ---------------------------------------------------------------------------

pub const CUT_HEADER: &str = "theta_deg,l3h_db,l3v_db";

/// Write a Ludwig-3 cut. `normalization_db` is the constant already
/// subtracted to put the peak at 0 dB; it is recorded in a header comment.
pub fn write_cut_csv(path: &Path, cut: &PatternCut, normalization_db: f64) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!("# phi_deg={}\n", fmt12(cut.phi_plane.to_degrees())));
    out.push_str(&format!("# convention={LUDWIG3_CONVENTION}\n"));
    out.push_str(&format!("# normalization_db={}\n", fmt12(normalization_db)));
    out.push_str(CUT_HEADER);
    out.push('\n');
    for i in 0..cut.theta_deg.len() {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt12(cut.theta_deg[i]),
            fmt12(cut.l3h_db[i]),
            fmt12(cut.l3v_db[i]),
        ));
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_cut_csv(path: &Path) -> Result<PatternCut> {
    let text = fs::read_to_string(path)?;
    let mut phi_deg: Option<f64> = None;
    let mut header_seen = false;
    let mut theta = Vec::new();
    let mut l3h = Vec::new();
    let mut l3v = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some((k, v)) = split_comment(line) {
                if k == "phi_deg" {
                    phi_deg = Some(parse_field(path, lineno, v, "phi_deg")?);
                }
            }
            continue;
        }
        if !header_seen {
            if line != CUT_HEADER {
                return Err(parse_error(
                    path,
                    lineno,
                    format!("expected header {CUT_HEADER:?}"),
                ));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(parse_error(
                path,
                lineno,
                format!("expected 3 fields, got {}", fields.len()),
            ));
        }
        theta.push(parse_field(path, lineno, fields[0], "theta_deg")?);
        l3h.push(parse_field(path, lineno, fields[1], "l3h_db")?);
        l3v.push(parse_field(path, lineno, fields[2], "l3v_db")?);
    }
    let phi_deg = phi_deg
        .ok_or_else(|| parse_error(path, 1, "missing `# phi_deg=<value>` comment line"))?;
    PatternCut::new(phi_deg.to_radians(), theta, l3h, l3v)
}

// ---------------------------------------------------------------------------
// Excitation JSON
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ExcitationFile {
    m_max: usize,
    spacing_over_lambda: f64,
    coefficients: Vec<[f64; 2]>,
}

pub fn write_excitation_json(path: &Path, exc: &ArrayExcitation) -> Result<()> {
    let doc = ExcitationFile {
        m_max: exc.m_max(),
        spacing_over_lambda: exc.spacing_over_lambda(),
        coefficients: exc.coefficients().iter().map(|c| [c.re, c.im]).collect(),
    };
    write_json(path, &doc)
}

pub fn read_excitation_json(path: &Path) -> Result<ArrayExcitation> {
    let doc: ExcitationFile = read_json(path)?;
    let coefficients = doc
        .coefficients
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    ArrayExcitation::new(doc.m_max, doc.spacing_over_lambda, coefficients)
}

// ---------------------------------------------------------------------------
// Geometry JSON
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GeometryFile {
    l_p: f64,
    w_p: f64,
    l_par: f64,
    w_par: f64,
    w_g: f64,
    h: f64,
    eps_r: f64,
    #[serde(default)]
    tan_delta: f64,
}

pub fn write_geometry_json(path: &Path, g: &PatchGeometry) -> Result<()> {
    let doc = GeometryFile {
        l_p: g.l_p,
        w_p: g.w_p,
        l_par: g.l_par,
        w_par: g.w_par,
        w_g: g.w_g,
        h: g.h,
        eps_r: g.eps_r,
        tan_delta: g.tan_delta,
    };
    write_json(path, &doc)
}

pub fn read_geometry_json(path: &Path) -> Result<PatchGeometry> {
    let doc: GeometryFile = read_json(path)?;
    PatchGeometry::new(
        doc.l_p, doc.w_p, doc.l_par, doc.w_par, doc.w_g, doc.h, doc.eps_r, doc.tan_delta,
    )
}

// ---------------------------------------------------------------------------
// Current-set JSON
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CurrentElementFile {
    x: f64,
    y: f64,
    ux: f64,
    uy: f64,
    re_amp: f64,
    im_amp: f64,
    length: f64,
}

pub fn write_current_set_json(path: &Path, set: &MagneticCurrentSet) -> Result<()> {
    let doc: Vec<CurrentElementFile> = set
        .elements()
        .iter()
        .map(|e| CurrentElementFile {
            x: e.position[0],
            y: e.position[1],
            ux: e.orientation[0],
            uy: e.orientation[1],
            re_amp: e.amplitude.re,
            im_amp: e.amplitude.im,
            length: e.length,
        })
        .collect();
    write_json(path, &doc)
}

/// The file format carries no frequency; the caller supplies it.
pub fn read_current_set_json(path: &Path, frequency: f64) -> Result<MagneticCurrentSet> {
    let doc: Vec<CurrentElementFile> = read_json(path)?;
    let elements = doc
        .iter()
        .map(|e| MagneticCurrentElement {
            position: [e.x, e.y],
            orientation: [e.ux, e.uy],
            amplitude: Complex64::new(e.re_amp, e.im_amp),
            length: e.length,
        })
        .collect();
    MagneticCurrentSet::new(elements, frequency)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct MetricsFile {
    pub hpbw_deg: f64,
    pub directivity_dbi: f64,
    pub peak_theta_deg: f64,
    pub peak_phi_deg: f64,
    pub convention: String,
}

pub fn write_metrics_json(path: &Path, m: &PatternMetrics) -> Result<()> {
    let doc = MetricsFile {
        hpbw_deg: m.hpbw_deg,
        directivity_dbi: m.directivity_dbi,
        peak_theta_deg: m.peak_theta_deg,
        peak_phi_deg: m.peak_phi_deg,
        convention: LUDWIG3_CONVENTION.to_string(),
    };
    write_json(path, &doc)
}

pub fn read_metrics_json(path: &Path) -> Result<MetricsFile> {
    read_json(path)
}

#[derive(Serialize)]
pub struct ComparisonFile {
    pub floor_db: f64,
    pub tolerance_db: Option<f64>,
    pub pass: bool,
    pub comparison: CutComparison,
}

pub fn write_comparison_json(path: &Path, doc: &ComparisonFile) -> Result<()> {
    write_json(path, doc)
}

#[derive(Serialize)]
pub struct ResonanceEntry {
    pub geometry: String,
    pub resonance_hz: f64,
}

#[derive(Serialize)]
pub struct ResonanceFile {
    pub entries: Vec<ResonanceEntry>,
    /// First geometry's bandwidth figure relative to the second, when two
    /// geometries were given.
    pub bandwidth_ratio: Option<f64>,
}

pub fn write_resonance_json(path: &Path, doc: &ResonanceFile) -> Result<()> {
    write_json(path, doc)
}

// ---------------------------------------------------------------------------
// Generic numeric tables (CSV or JSON flavors)
// ---------------------------------------------------------------------------

/// Write a plain numeric table as CSV with `# key=value` comments.
pub fn write_table_csv(
    path: &Path,
    comments: &[(String, String)],
    columns: &[&str],
    rows: &[Vec<f64>],
) -> Result<()> {
    let mut out = String::new();
    for (k, v) in comments {
        out.push_str(&format!("# {k}={v}\n"));
    }
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = row.iter().map(|&v| fmt12(v)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

#[derive(Serialize)]
struct TableFile<'a> {
    metadata: std::collections::BTreeMap<String, String>,
    columns: Vec<&'a str>,
    rows: &'a [Vec<f64>],
}

/// JSON flavor of [`write_table_csv`], used when `--format json` is set.
pub fn write_table_json(
    path: &Path,
    comments: &[(String, String)],
    columns: &[&str],
    rows: &[Vec<f64>],
) -> Result<()> {
    let doc = TableFile {
        metadata: comments.iter().cloned().collect(),
        columns: columns.to_vec(),
        rows,
    };
    write_json(path, &doc)
}

fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: e.line(),
        message: e.to_string(),
    })
}
