//! Pattern figures of merit: half-power beamwidth, directivity, peak
//! direction, and cut-to-cut comparison.

use crate::error::{Error, Result};
use crate::grid::Domain;
use crate::pattern::{FarFieldPattern, PatternCut};
use crate::quad::{trapezoid_periodic, trapezoid_uniform};
use serde::Serialize;
use std::f64::consts::PI;

/// Half-power beamwidth in degrees of a real 1D pattern over theta (radians).
///
/// Defined as the angular measure of the half-power superlevel set
/// `{theta : P(theta) >= P_max / 2}`, with level crossings located by linear
/// interpolation between samples. For a single-lobe pattern this reduces to
/// the classical HPBW; for a twin-lobe pattern it sums the widths in both
/// directions.
pub fn hpbw(theta: &[f64], power: &[f64]) -> Result<f64> {
    if theta.len() < 3 || theta.len() != power.len() {
        return Err(Error::InvalidPattern(format!(
            "hpbw needs at least 3 matched samples, got {}/{}",
            theta.len(),
            power.len()
        )));
    }
    for w in theta.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidPattern(
                "hpbw theta not strictly increasing".into(),
            ));
        }
    }
    let mut max = 0.0f64;
    for &p in power {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::InvalidPattern(
                "hpbw power must be finite and non-negative".into(),
            ));
        }
        max = max.max(p);
    }
    if max <= 0.0 {
        return Err(Error::DegeneratePattern);
    }
    let level = max / 2.0;

    let mut measure = 0.0;
    for i in 0..theta.len() - 1 {
        let (a, b) = (power[i], power[i + 1]);
        let dt = theta[i + 1] - theta[i];
        if a >= level && b >= level {
            measure += dt;
        } else if a >= level && b < level {
            let t = (a - level) / (a - b);
            measure += t * dt;
        } else if a < level && b >= level {
            let t = (level - a) / (b - a);
            measure += (1.0 - t) * dt;
        }
    }
    Ok(measure.to_degrees())
}

/// Directivity in dBi: `10*log10(4*pi*U_max / P_rad)`.
///
/// The radiated power integral uses the trapezoid rule in theta with a
/// sin(theta) weight. Grids with several azimuths must cover the full phi
/// circle uniformly; the phi integral then closes the period. A single-phi
/// grid is treated as rotationally symmetric and the phi integral is exactly
/// 2*pi. Upper-hemisphere patterns assume zero field below the ground plane.
pub fn directivity(p: &FarFieldPattern) -> Result<f64> {
    let grid = p.grid();
    check_domain_coverage(p)?;

    let u = p.power_pattern();
    let u_max = u.iter().cloned().fold(0.0f64, f64::max);
    if u_max <= 0.0 {
        return Err(Error::ZeroRadiatedPower);
    }

    let theta = grid.theta();
    let t_step = grid.theta_step();
    let p_rad = if grid.n_phi() == 1 {
        let integrand: Vec<f64> = (0..grid.n_theta())
            .map(|it| u[grid.index(it, 0)] * theta[it].sin())
            .collect();
        2.0 * PI * trapezoid_uniform(t_step, &integrand)
    } else {
        let p_step = grid.phi_step().ok_or_else(|| {
            Error::InvalidGrid("directivity needs uniformly spaced phi".into())
        })?;
        if (p_step * grid.n_phi() as f64 - 2.0 * PI).abs() > 1e-6 {
            return Err(Error::InvalidGrid(
                "directivity needs phi covering the full circle".into(),
            ));
        }
        let per_phi: Vec<f64> = (0..grid.n_phi())
            .map(|ip| {
                let integrand: Vec<f64> = (0..grid.n_theta())
                    .map(|it| u[grid.index(it, ip)] * theta[it].sin())
                    .collect();
                trapezoid_uniform(t_step, &integrand)
            })
            .collect();
        trapezoid_periodic(p_step, &per_phi)
    };

    if p_rad <= 0.0 {
        return Err(Error::ZeroRadiatedPower);
    }
    Ok(10.0 * (4.0 * PI * u_max / p_rad).log10())
}

fn check_domain_coverage(p: &FarFieldPattern) -> Result<()> {
    let grid = p.grid();
    let tol = grid.theta_step() / 2.0;
    let first = grid.theta()[0];
    let last = grid.theta()[grid.n_theta() - 1];
    let expected_last = match grid.domain() {
        Domain::FullSphere => PI,
        Domain::UpperHemisphere => PI / 2.0,
    };
    if first > tol || (last - expected_last).abs() > tol {
        return Err(Error::InvalidGrid(format!(
            "grid does not cover the declared {} domain",
            grid.domain().as_str()
        )));
    }
    Ok(())
}

/// Direction of maximum radiated power, degrees. Ties resolve to the first
/// grid point in theta-major order, which keeps the result deterministic.
pub fn peak_direction(p: &FarFieldPattern) -> Result<(f64, f64)> {
    let u = p.power_pattern();
    let mut best = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for (i, &v) in u.iter().enumerate() {
        if v > best_val {
            best_val = v;
            best = i;
        }
    }
    if best_val <= 0.0 {
        return Err(Error::DegeneratePattern);
    }
    let grid = p.grid();
    let it = best / grid.n_phi();
    let ip = best % grid.n_phi();
    Ok((grid.theta()[it].to_degrees(), grid.phi()[ip].to_degrees()))
}

/// Summary metrics of one pattern.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatternMetrics {
    pub hpbw_deg: f64,
    pub directivity_dbi: f64,
    pub peak_theta_deg: f64,
    pub peak_phi_deg: f64,
}

impl PatternMetrics {
    pub fn new(
        hpbw_deg: f64,
        directivity_dbi: f64,
        peak_theta_deg: f64,
        peak_phi_deg: f64,
    ) -> Result<Self> {
        if !(hpbw_deg > 0.0 && hpbw_deg < 360.0) {
            return Err(Error::InvalidPattern(format!(
                "hpbw {hpbw_deg} outside (0, 360)"
            )));
        }
        if !directivity_dbi.is_finite() {
            return Err(Error::InvalidPattern("non-finite directivity".into()));
        }
        Ok(Self {
            hpbw_deg,
            directivity_dbi,
            peak_theta_deg,
            peak_phi_deg,
        })
    }
}

/// Per-polarization comparison statistics, dB. `rms_db`/`max_abs_db` are
/// `None` when no sample of that polarization survives the floor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarizationStats {
    pub rms_db: Option<f64>,
    pub max_abs_db: Option<f64>,
    pub samples: usize,
}

/// Result of comparing two pattern cuts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutComparison {
    pub theta_min_deg: f64,
    pub theta_max_deg: f64,
    pub l3h: PolarizationStats,
    pub l3v: PolarizationStats,
}

impl CutComparison {
    /// Largest defined per-polarization RMS error.
    pub fn worst_rms_db(&self) -> Option<f64> {
        match (self.l3h.rms_db, self.l3v.rms_db) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }
}

/// Compare two cuts over their overlapping theta range.
///
/// Both cuts are first peak-normalized to 0 dB (peak over both
/// polarizations). Cut `b` is resampled onto `a`'s theta grid by linear
/// interpolation. Samples below `floor_db` in either cut are excluded from
/// that polarization's statistics.
pub fn compare_cuts(a: &PatternCut, b: &PatternCut, floor_db: f64) -> Result<CutComparison> {
    let lo = a.theta_deg[0].max(b.theta_deg[0]);
    let hi = a.theta_deg[a.theta_deg.len() - 1].min(b.theta_deg[b.theta_deg.len() - 1]);
    if lo > hi {
        return Err(Error::NoOverlap);
    }

    let peak = |cut: &PatternCut| -> f64 {
        cut.l3h_db
            .iter()
            .chain(&cut.l3v_db)
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let peak_a = peak(a);
    let peak_b = peak(b);

    let mut acc_h = DiffAccumulator::default();
    let mut acc_v = DiffAccumulator::default();
    for (i, &t) in a.theta_deg.iter().enumerate() {
        if t < lo || t > hi {
            continue;
        }
        let bh = interp_linear(&b.theta_deg, &b.l3h_db, t);
        let bv = interp_linear(&b.theta_deg, &b.l3v_db, t);
        acc_h.push(a.l3h_db[i] - peak_a, bh - peak_b, floor_db);
        acc_v.push(a.l3v_db[i] - peak_a, bv - peak_b, floor_db);
    }

    Ok(CutComparison {
        theta_min_deg: lo,
        theta_max_deg: hi,
        l3h: acc_h.finish(),
        l3v: acc_v.finish(),
    })
}

#[derive(Default)]
struct DiffAccumulator {
    sum_sq: f64,
    max_abs: f64,
    n: usize,
}

impl DiffAccumulator {
    fn push(&mut self, a_db: f64, b_db: f64, floor_db: f64) {
        if a_db < floor_db || b_db < floor_db {
            return;
        }
        let d = a_db - b_db;
        self.sum_sq += d * d;
        self.max_abs = self.max_abs.max(d.abs());
        self.n += 1;
    }

    fn finish(self) -> PolarizationStats {
        if self.n == 0 {
            PolarizationStats {
                rms_db: None,
                max_abs_db: None,
                samples: 0,
            }
        } else {
            PolarizationStats {
                rms_db: Some((self.sum_sq / self.n as f64).sqrt()),
                max_abs_db: Some(self.max_abs),
                samples: self.n,
            }
        }
    }
}

/// Linear interpolation of (xs, ys) at x; xs strictly increasing, x within
/// range.
pub(crate) fn interp_linear(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
        Ok(i) => ys[i],
        Err(i) => {
            let i = i.clamp(1, xs.len() - 1);
            let t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
            ys[i - 1] + t * (ys[i] - ys[i - 1])
        }
    }
}
