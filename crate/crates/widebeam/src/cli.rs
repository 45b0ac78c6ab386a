//! Implementations behind the `widebeam` binary.
//!
//! Every command reads inputs, writes data files into the output directory,
//! and logs a short summary to stderr. Nothing goes to stdout, so the tool
//! scripts cleanly. Exit codes: 0 success, 1 usage or input error, 2
//! tolerance failure in `compare`.

use crate::error::{Error, Result};
use crate::grid::{linspace, AngularGrid, Domain};
use crate::io;
use crate::metrics::{
    compare_cuts, directivity, hpbw, interp_linear, peak_direction, PatternMetrics,
};
use crate::patch::{
    bandwidth_ratio, estimate_resonance, far_field, mode1_currents, mode2_currents,
    mode2_default_separation, superpose_modes,
};
use crate::pattern::{field_db, great_circle_cut, great_circle_power, FarFieldPattern};
use crate::synthesis::{
    composite_pattern, fejer_taper, synthesize_coefficients, SynthesisTarget,
    MIN_QUADRATURE_SAMPLES,
};
use clap::{Args, ValueEnum};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DataFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Taper {
    None,
    Fejer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PatchMode {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Mix,
}

/// Global output options shared by all commands.
#[derive(Debug, Clone)]
pub struct OutputOpts {
    pub output_dir: PathBuf,
    pub format: DataFormat,
    pub theta_step_deg: f64,
    pub phi_step_deg: f64,
}

impl OutputOpts {
    fn prepare(&self) -> Result<()> {
        if !(self.theta_step_deg > 0.0 && self.theta_step_deg <= 90.0) {
            return Err(Error::InvalidGrid(format!(
                "theta step {} outside (0, 90] degrees",
                self.theta_step_deg
            )));
        }
        if !(self.phi_step_deg > 0.0 && self.phi_step_deg <= 120.0) {
            return Err(Error::InvalidGrid(format!(
                "phi step {} outside (0, 120] degrees",
                self.phi_step_deg
            )));
        }
        fs::create_dir_all(&self.output_dir)?;
        Ok(())
    }

    fn data_path(&self, stem: &str) -> PathBuf {
        let ext = match self.format {
            DataFormat::Csv => "csv",
            DataFormat::Json => "json",
        };
        self.output_dir.join(format!("{stem}.{ext}"))
    }

    fn report_path(&self, name: &str) -> PathBuf {
        self.output_dir.join(name)
    }

    fn write_table(
        &self,
        stem: &str,
        comments: &[(String, String)],
        columns: &[&str],
        rows: &[Vec<f64>],
    ) -> Result<PathBuf> {
        let path = self.data_path(stem);
        match self.format {
            DataFormat::Csv => io::write_table_csv(&path, comments, columns, rows)?,
            DataFormat::Json => io::write_table_json(&path, comments, columns, rows)?,
        }
        Ok(path)
    }
}

fn samples_for_span(span_deg: f64, step_deg: f64) -> usize {
    ((span_deg / step_deg).round() as usize + 1).max(3)
}

/// Parse a complex number given as `RE` or `RE,IM`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("cannot parse {t:?} as a number"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(format!("expected RE or RE,IM, got {s:?}")),
    }
}

// ---------------------------------------------------------------------------
// synthesize
// ---------------------------------------------------------------------------

#[derive(Args, Debug, Clone)]
pub struct SynthesizeArgs {
    /// Element pattern: the builtin `sin-theta` or a path to a cut CSV.
    #[arg(long, default_value = "sin-theta")]
    pub element: String,

    /// Array order M; the array has 2M+1 elements.
    #[arg(long, default_value_t = 1)]
    pub m_max: usize,

    /// Element spacing d/lambda.
    #[arg(long, default_value_t = 0.5)]
    pub spacing: f64,

    /// Coefficient taper applied after synthesis.
    #[arg(long, value_enum, default_value_t = Taper::Fejer)]
    pub taper: Taper,

    /// Clip applied to the element pattern before inversion.
    #[arg(long, default_value_t = 1e-6)]
    pub clip_floor: f64,
}

/// Element magnitude over a uniform [0, pi] grid of `n` samples.
///
/// A cut file parametrizes a great circle with theta in [-90, 90] degrees;
/// the synthesis polar angle runs over [0, 180], so the cut angle is shifted
/// by 90 degrees. Outside the measured range the edge value is held.
fn element_samples(source: &str, clip_floor: f64, n: usize) -> Result<(SynthesisTarget, Vec<f64>)> {
    if source == "sin-theta" {
        let target = SynthesisTarget::sin_theta_element(MIN_QUADRATURE_SAMPLES, clip_floor)?;
        let element = linspace(0.0, PI, n).iter().map(|t| t.sin()).collect();
        return Ok((target, element));
    }
    let cut = io::read_cut_csv(Path::new(source))?;
    let theta_el: Vec<f64> = cut.theta_deg.iter().map(|t| t + 90.0).collect();
    let field: Vec<f64> = cut
        .power_linear()
        .iter()
        .map(|p| p.sqrt())
        .collect();
    let resample = |count: usize| -> Vec<f64> {
        (0..count)
            .map(|j| {
                let t = 180.0 * j as f64 / (count - 1) as f64;
                let t = t.clamp(theta_el[0], theta_el[theta_el.len() - 1]);
                interp_linear(&theta_el, &field, t)
            })
            .collect()
    };
    let target =
        SynthesisTarget::inverse_of_element(resample(MIN_QUADRATURE_SAMPLES), clip_floor)?;
    Ok((target, resample(n)))
}

pub fn run_synthesize(args: &SynthesizeArgs, out: &OutputOpts) -> Result<u8> {
    out.prepare()?;
    let n = samples_for_span(180.0, out.theta_step_deg);
    let grid = AngularGrid::theta_cut(0.0, PI, n, 0.0, Domain::FullSphere)?;
    let (target, element) = element_samples(&args.element, args.clip_floor, n)?;

    let mut exc = synthesize_coefficients(&target, args.m_max, args.spacing)?;
    if args.taper == Taper::Fejer {
        exc = fejer_taper(&exc);
    }
    let exc_path = out.report_path("excitation.json");
    io::write_excitation_json(&exc_path, &exc)?;

    let composite = composite_pattern(&element, &exc, grid.theta());
    let power: Vec<f64> = composite.iter().map(|c| c * c).collect();
    let peak = composite.iter().cloned().fold(0.0f64, f64::max);
    if peak <= 0.0 {
        return Err(Error::DegeneratePattern);
    }
    let rows: Vec<Vec<f64>> = grid
        .theta()
        .iter()
        .zip(&power)
        .zip(&composite)
        .map(|((t, &p), &c)| vec![t.to_degrees(), p, field_db(c, peak)])
        .collect();
    let comments = vec![(
        "normalization_db".to_string(),
        io::fmt12(20.0 * peak.log10()),
    )];
    let composite_path = out.write_table(
        "composite",
        &comments,
        &["theta_deg", "power_linear", "power_db"],
        &rows,
    )?;

    let metrics = PatternMetrics::new(
        hpbw(grid.theta(), &power)?,
        directivity(&FarFieldPattern::from_scalar(grid.clone(), &composite)?)?,
        peak_direction(&FarFieldPattern::from_scalar(grid, &composite)?)?.0,
        0.0,
    )?;
    let metrics_path = out.report_path("metrics.json");
    io::write_metrics_json(&metrics_path, &metrics)?;

    eprintln!(
        "synthesize: m_max={} spacing={} hpbw={:.2} deg directivity={:.3} dBi",
        args.m_max, args.spacing, metrics.hpbw_deg, metrics.directivity_dbi
    );
    eprintln!(
        "synthesize: wrote {}, {}, {}",
        exc_path.display(),
        composite_path.display(),
        metrics_path.display()
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// array-factor
// ---------------------------------------------------------------------------

#[derive(Args, Debug, Clone)]
pub struct ArrayFactorArgs {
    /// Excitation JSON file.
    #[arg(long)]
    pub excitation: PathBuf,
}

pub fn run_array_factor(args: &ArrayFactorArgs, out: &OutputOpts) -> Result<u8> {
    out.prepare()?;
    let exc = io::read_excitation_json(&args.excitation)?;
    let n = samples_for_span(180.0, out.theta_step_deg);
    let theta = linspace(0.0, PI, n);
    let factor = crate::synthesis::array_factor(&exc, &theta);
    let peak = factor.iter().map(|f| f.norm()).fold(0.0f64, f64::max);
    if peak <= 0.0 {
        return Err(Error::DegeneratePattern);
    }
    let rows: Vec<Vec<f64>> = theta
        .iter()
        .zip(&factor)
        .map(|(t, f)| vec![t.to_degrees(), f.re, f.im, field_db(f.norm(), peak)])
        .collect();
    let comments = vec![(
        "normalization_db".to_string(),
        io::fmt12(20.0 * peak.log10()),
    )];
    let path = out.write_table(
        "array_factor",
        &comments,
        &["theta_deg", "re_f", "im_f", "mag_db"],
        &rows,
    )?;
    eprintln!(
        "array-factor: m_max={} spacing={} wrote {}",
        exc.m_max(),
        exc.spacing_over_lambda(),
        path.display()
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// patch
// ---------------------------------------------------------------------------

#[derive(Args, Debug, Clone)]
pub struct PatchArgs {
    /// Geometry JSON file.
    #[arg(long)]
    pub geometry: PathBuf,

    /// Resonant mode to radiate: 1, 2, or a weighted mix of both.
    #[arg(long, value_enum)]
    pub mode: PatchMode,

    /// Operating frequency in Hz; defaults to the estimated resonance.
    #[arg(long)]
    pub frequency: Option<f64>,

    /// Mode-2 source separation in meters; defaults to w_p / 2.
    #[arg(long)]
    pub separation: Option<f64>,

    /// Complex mode-1 weight for `--mode mix`, as `RE` or `RE,IM`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub weight1: Option<Complex64>,

    /// Complex mode-2 weight for `--mode mix`, as `RE` or `RE,IM`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub weight2: Option<Complex64>,
}

pub fn run_patch(args: &PatchArgs, out: &OutputOpts) -> Result<u8> {
    out.prepare()?;
    let g = io::read_geometry_json(&args.geometry)?;
    let frequency = match args.frequency {
        Some(f) if f > 0.0 && f.is_finite() => f,
        Some(f) => {
            return Err(Error::InvalidCurrentSet(format!("invalid frequency {f}")));
        }
        None => estimate_resonance(&g)?,
    };
    let grid = AngularGrid::upper_hemisphere(
        samples_for_span(90.0, out.theta_step_deg),
        (360.0 / out.phi_step_deg).round() as usize,
    )?;

    let separation = args.separation.unwrap_or_else(|| mode2_default_separation(&g));
    let (pattern, currents) = match args.mode {
        PatchMode::One => {
            let set = mode1_currents(&g, frequency)?;
            (far_field(&set, &grid)?, set)
        }
        PatchMode::Two => {
            let set = mode2_currents(&g, frequency, separation)?;
            (far_field(&set, &grid)?, set)
        }
        PatchMode::Mix => {
            let (w1, w2) = match (args.weight1, args.weight2) {
                (Some(w1), Some(w2)) => (w1, w2),
                _ => {
                    return Err(Error::InvalidCurrentSet(
                        "--mode mix requires --weight1 and --weight2".into(),
                    ))
                }
            };
            let m1 = mode1_currents(&g, frequency)?;
            let m2 = mode2_currents(&g, frequency, separation)?;
            let p = superpose_modes(
                &far_field(&m1, &grid)?,
                w1,
                &far_field(&m2, &grid)?,
                w2,
            )?;
            (p, m1.scaled(w1).merged(&m2.scaled(w2))?)
        }
    };

    write_pattern_data(out, "pattern", &pattern)?;
    io::write_current_set_json(&out.report_path("currents.json"), &currents)?;
    write_cut_data(out, "cut_phi0", &pattern, 0.0)?;
    write_cut_data(out, "cut_phi90", &pattern, PI / 2.0)?;

    let (cut_theta, cut_power) = great_circle_power(&pattern, 0.0)?;
    let (peak_theta, peak_phi) = peak_direction(&pattern)?;
    let metrics = PatternMetrics::new(
        hpbw(&cut_theta, &cut_power)?,
        directivity(&pattern)?,
        peak_theta,
        peak_phi,
    )?;
    io::write_metrics_json(&out.report_path("metrics.json"), &metrics)?;

    eprintln!(
        "patch: frequency={:.4} GHz hpbw(phi=0)={:.2} deg directivity={:.3} dBi peak=({:.2}, {:.2}) deg",
        frequency / 1e9,
        metrics.hpbw_deg,
        metrics.directivity_dbi,
        metrics.peak_theta_deg,
        metrics.peak_phi_deg
    );
    Ok(0)
}

fn write_pattern_data(out: &OutputOpts, stem: &str, p: &FarFieldPattern) -> Result<PathBuf> {
    match out.format {
        DataFormat::Csv => {
            let path = out.data_path(stem);
            io::write_pattern_csv(&path, p)?;
            Ok(path)
        }
        DataFormat::Json => {
            let mut comments = vec![(
                "domain".to_string(),
                p.grid().domain().as_str().to_string(),
            )];
            if let Some(f) = p.frequency() {
                comments.push(("frequency_hz".to_string(), io::fmt12(f)));
            }
            let rows: Vec<Vec<f64>> = p
                .grid()
                .points()
                .map(|(idx, t, f)| {
                    vec![
                        t.to_degrees(),
                        f.to_degrees(),
                        p.e_theta()[idx].re,
                        p.e_theta()[idx].im,
                        p.e_phi()[idx].re,
                        p.e_phi()[idx].im,
                    ]
                })
                .collect();
            out.write_table(
                stem,
                &comments,
                &[
                    "theta_deg",
                    "phi_deg",
                    "re_etheta",
                    "im_etheta",
                    "re_ephi",
                    "im_ephi",
                ],
                &rows,
            )
        }
    }
}

fn write_cut_data(
    out: &OutputOpts,
    stem: &str,
    p: &FarFieldPattern,
    phi_plane: f64,
) -> Result<PathBuf> {
    let (cut, norm_db) = great_circle_cut(p, phi_plane)?;
    match out.format {
        DataFormat::Csv => {
            let path = out.data_path(stem);
            io::write_cut_csv(&path, &cut, norm_db)?;
            Ok(path)
        }
        DataFormat::Json => {
            let comments = vec![
                (
                    "phi_deg".to_string(),
                    io::fmt12(cut.phi_plane.to_degrees()),
                ),
                ("convention".to_string(), "ludwig3-y".to_string()),
                ("normalization_db".to_string(), io::fmt12(norm_db)),
            ];
            let rows: Vec<Vec<f64>> = (0..cut.theta_deg.len())
                .map(|i| vec![cut.theta_deg[i], cut.l3h_db[i], cut.l3v_db[i]])
                .collect();
            out.write_table(stem, &comments, &["theta_deg", "l3h_db", "l3v_db"], &rows)
        }
    }
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

#[derive(Args, Debug, Clone)]
pub struct CompareArgs {
    /// Reference cut CSV.
    #[arg(long)]
    pub cut_a: PathBuf,

    /// Cut CSV to compare, resampled onto the reference theta grid.
    #[arg(long)]
    pub cut_b: PathBuf,

    /// Samples below this normalized level in either cut are excluded.
    #[arg(long, default_value_t = -40.0, allow_hyphen_values = true)]
    pub floor_db: f64,

    /// Largest acceptable per-polarization RMS error; exit code 2 beyond it.
    #[arg(long, allow_hyphen_values = true)]
    pub tolerance_db: Option<f64>,
}

pub fn run_compare(args: &CompareArgs, out: &OutputOpts) -> Result<u8> {
    out.prepare()?;
    let a = io::read_cut_csv(&args.cut_a)?;
    let b = io::read_cut_csv(&args.cut_b)?;
    let comparison = compare_cuts(&a, &b, args.floor_db)?;
    let worst = comparison.worst_rms_db().ok_or(Error::NoComparableSamples)?;
    let pass = args.tolerance_db.is_none_or(|tol| worst <= tol);
    let doc = io::ComparisonFile {
        floor_db: args.floor_db,
        tolerance_db: args.tolerance_db,
        pass,
        comparison,
    };
    let path = out.report_path("comparison.json");
    io::write_comparison_json(&path, &doc)?;
    eprintln!(
        "compare: worst rms {:.4} dB over [{:.2}, {:.2}] deg -> {} ({})",
        worst,
        doc.comparison.theta_min_deg,
        doc.comparison.theta_max_deg,
        if pass { "pass" } else { "fail" },
        path.display()
    );
    Ok(if pass { 0 } else { 2 })
}

// ---------------------------------------------------------------------------
// resonance
// ---------------------------------------------------------------------------

#[derive(Args, Debug, Clone)]
pub struct ResonanceArgs {
    /// Geometry JSON file.
    #[arg(long)]
    pub geometry: PathBuf,

    /// Optional second geometry for the bandwidth ratio.
    #[arg(long)]
    pub geometry_b: Option<PathBuf>,
}

pub fn run_resonance(args: &ResonanceArgs, out: &OutputOpts) -> Result<u8> {
    out.prepare()?;
    let a = io::read_geometry_json(&args.geometry)?;
    let f_a = estimate_resonance(&a)?;
    let mut doc = io::ResonanceFile {
        entries: vec![io::ResonanceEntry {
            geometry: args.geometry.display().to_string(),
            resonance_hz: f_a,
        }],
        bandwidth_ratio: None,
    };
    eprintln!(
        "resonance: {} -> {:.4} GHz",
        args.geometry.display(),
        f_a / 1e9
    );
    if let Some(path_b) = &args.geometry_b {
        let b = io::read_geometry_json(path_b)?;
        let f_b = estimate_resonance(&b)?;
        // The ratio is evaluated at a common frequency, so the free-space
        // wavelength cancels; the estimate for `a` serves as that frequency.
        doc.bandwidth_ratio = Some(bandwidth_ratio(&a, &b, f_a));
        doc.entries.push(io::ResonanceEntry {
            geometry: path_b.display().to_string(),
            resonance_hz: f_b,
        });
        eprintln!(
            "resonance: {} -> {:.4} GHz, bandwidth ratio {:.6}",
            path_b.display(),
            f_b / 1e9,
            doc.bandwidth_ratio.unwrap()
        );
    }
    let path = out.report_path("resonance.json");
    io::write_resonance_json(&path, &doc)?;
    eprintln!("resonance: wrote {}", path.display());
    Ok(0)
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

#[derive(Args, Debug, Clone)]
pub struct MetricsArgs {
    /// Pattern CSV file.
    #[arg(long)]
    pub pattern: PathBuf,
}

pub fn run_metrics(args: &MetricsArgs, out: &OutputOpts) -> Result<u8> {
    out.prepare()?;
    let p = io::read_pattern_csv(&args.pattern)?;
    // Beamwidth from the phi = 0 great-circle cut for 2D grids, or from the
    // cut itself for single-phi patterns.
    let (cut_theta, cut_power) = if p.grid().n_phi() == 1 {
        let power = p.power_pattern();
        (p.grid().theta().to_vec(), power)
    } else {
        great_circle_power(&p, 0.0)?
    };
    let (peak_theta, peak_phi) = peak_direction(&p)?;
    let metrics = PatternMetrics::new(
        hpbw(&cut_theta, &cut_power)?,
        directivity(&p)?,
        peak_theta,
        peak_phi,
    )?;
    let path = out.report_path("metrics.json");
    io::write_metrics_json(&path, &metrics)?;
    eprintln!(
        "metrics: hpbw={:.2} deg directivity={:.3} dBi -> {}",
        metrics.hpbw_deg,
        metrics.directivity_dbi,
        path.display()
    );
    Ok(0)
}
