//! Far-field pattern containers and polarization decomposition.

use crate::error::{Error, Result};
use crate::grid::AngularGrid;
use num_complex::Complex64;

/// Identifier for the Ludwig-3 decomposition used throughout: the
/// co-polarization reference is the y axis, so L3V carries the co-polar field
/// of a y-polarized aperture at broadside. Written into every report.
pub const LUDWIG3_CONVENTION: &str = "ludwig3-y";

/// Floor applied when converting zero magnitudes to decibels.
pub const DB_FLOOR: f64 = -400.0;

/// 20*log10 of a linear field ratio, clamped at [`DB_FLOOR`].
pub fn field_db(amplitude: f64, reference: f64) -> f64 {
    if amplitude <= 0.0 || reference <= 0.0 {
        return DB_FLOOR;
    }
    (20.0 * (amplitude / reference).log10()).max(DB_FLOOR)
}

/// Complex far-field samples (spherical components) on an angular grid.
///
/// Amplitudes are relative; no absolute gain is modeled.
#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldPattern {
    grid: AngularGrid,
    e_theta: Vec<Complex64>,
    e_phi: Vec<Complex64>,
    frequency: Option<f64>,
}

impl FarFieldPattern {
    pub fn new(
        grid: AngularGrid,
        e_theta: Vec<Complex64>,
        e_phi: Vec<Complex64>,
        frequency: Option<f64>,
    ) -> Result<Self> {
        if e_theta.len() != grid.len() || e_phi.len() != grid.len() {
            return Err(Error::InvalidPattern(format!(
                "component length {}/{} does not match grid size {}",
                e_theta.len(),
                e_phi.len(),
                grid.len()
            )));
        }
        for z in e_theta.iter().chain(e_phi.iter()) {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::InvalidPattern("non-finite field sample".into()));
            }
        }
        if let Some(f) = frequency {
            if !f.is_finite() || f <= 0.0 {
                return Err(Error::InvalidPattern(format!("invalid frequency {f}")));
            }
        }
        Ok(Self {
            grid,
            e_theta,
            e_phi,
            frequency,
        })
    }

    /// Pattern with `e_theta` given by a real cut and `e_phi = 0`; convenient
    /// for wrapping scalar patterns (e.g. synthesized composites).
    pub fn from_scalar(grid: AngularGrid, values: &[f64]) -> Result<Self> {
        let e_theta: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let e_phi = vec![Complex64::new(0.0, 0.0); e_theta.len()];
        Self::new(grid, e_theta, e_phi, None)
    }

    pub fn grid(&self) -> &AngularGrid {
        &self.grid
    }

    pub fn e_theta(&self) -> &[Complex64] {
        &self.e_theta
    }

    pub fn e_phi(&self) -> &[Complex64] {
        &self.e_phi
    }

    pub fn frequency(&self) -> Option<f64> {
        self.frequency
    }

    /// |e_theta|^2 + |e_phi|^2 per grid point.
    pub fn power_pattern(&self) -> Vec<f64> {
        self.e_theta
            .iter()
            .zip(&self.e_phi)
            .map(|(t, p)| t.norm_sqr() + p.norm_sqr())
            .collect()
    }

    /// Ludwig-3 components per grid point, returned as (L3H, L3V) pairs.
    ///
    /// With a y-directed co-polarization reference:
    /// `L3V = e_theta sin(phi) + e_phi cos(phi)`,
    /// `L3H = e_theta cos(phi) - e_phi sin(phi)`.
    /// The transform is a pointwise rotation, so it preserves
    /// |e_theta|^2 + |e_phi|^2 and is invertible.
    pub fn to_ludwig3(&self) -> Vec<(Complex64, Complex64)> {
        self.grid
            .points()
            .map(|(idx, _theta, phi)| {
                let (s, c) = phi.sin_cos();
                let l3h = self.e_theta[idx] * c - self.e_phi[idx] * s;
                let l3v = self.e_theta[idx] * s + self.e_phi[idx] * c;
                (l3h, l3v)
            })
            .collect()
    }
}

/// One measured or computed pattern cut: Ludwig-3 magnitudes in dB over
/// theta, in a single phi plane. Theta is stored in degrees, matching the
/// on-disk format; negative theta is the phi + 180 degree half of the great
/// circle.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternCut {
    /// Cut plane azimuth, radians.
    pub phi_plane: f64,
    pub theta_deg: Vec<f64>,
    pub l3h_db: Vec<f64>,
    pub l3v_db: Vec<f64>,
}

impl PatternCut {
    pub fn new(
        phi_plane: f64,
        theta_deg: Vec<f64>,
        l3h_db: Vec<f64>,
        l3v_db: Vec<f64>,
    ) -> Result<Self> {
        if theta_deg.len() < 2 {
            return Err(Error::InvalidPattern(format!(
                "cut needs at least 2 samples, got {}",
                theta_deg.len()
            )));
        }
        if l3h_db.len() != theta_deg.len() || l3v_db.len() != theta_deg.len() {
            return Err(Error::InvalidPattern("cut column lengths differ".into()));
        }
        for w in theta_deg.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidPattern(
                    "cut theta not strictly increasing".into(),
                ));
            }
        }
        for v in theta_deg.iter().chain(&l3h_db).chain(&l3v_db) {
            if !v.is_finite() {
                return Err(Error::InvalidPattern("non-finite cut sample".into()));
            }
        }
        if !phi_plane.is_finite() {
            return Err(Error::InvalidPattern("non-finite cut plane".into()));
        }
        Ok(Self {
            phi_plane,
            theta_deg,
            l3h_db,
            l3v_db,
        })
    }

    /// Combined power per sample, linear scale, from both polarizations.
    pub fn power_linear(&self) -> Vec<f64> {
        self.l3h_db
            .iter()
            .zip(&self.l3v_db)
            .map(|(&h, &v)| 10f64.powf(h / 10.0) + 10f64.powf(v / 10.0))
            .collect()
    }
}

const PHI_MATCH_TOL: f64 = 1e-9;

fn find_phi_index(grid: &AngularGrid, phi: f64) -> Option<usize> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let wrapped = phi.rem_euclid(two_pi);
    grid.phi().iter().position(|&p| {
        let d = (p - wrapped).abs();
        d < PHI_MATCH_TOL || (two_pi - d) < PHI_MATCH_TOL
    })
}

/// Theta samples (radians, signed) and linear power along the great circle
/// through `phi_plane`. Negative theta comes from the phi + pi half when the
/// grid contains it; otherwise the cut is one-sided.
pub fn great_circle_power(p: &FarFieldPattern, phi_plane: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let grid = p.grid();
    let ip = find_phi_index(grid, phi_plane).ok_or_else(|| {
        Error::InvalidGrid(format!(
            "phi plane {:.6} rad not present in the grid",
            phi_plane
        ))
    })?;
    let ip_mirror = find_phi_index(grid, phi_plane + std::f64::consts::PI);
    let power = p.power_pattern();

    let mut theta = Vec::new();
    let mut values = Vec::new();
    if let Some(im) = ip_mirror {
        let skip_zero = grid.theta()[0].abs() < 1e-12;
        for it in (0..grid.n_theta()).rev() {
            if skip_zero && it == 0 {
                continue;
            }
            theta.push(-grid.theta()[it]);
            values.push(power[grid.index(it, im)]);
        }
    }
    for it in 0..grid.n_theta() {
        theta.push(grid.theta()[it]);
        values.push(power[grid.index(it, ip)]);
    }
    Ok((theta, values))
}

/// Ludwig-3 cut through `phi_plane`, peak-normalized to 0 dB.
///
/// Returns the cut and the applied normalization constant
/// (20*log10 of the peak linear magnitude, the value subtracted from every
/// dB sample).
pub fn great_circle_cut(p: &FarFieldPattern, phi_plane: f64) -> Result<(PatternCut, f64)> {
    let grid = p.grid();
    let ip = find_phi_index(grid, phi_plane).ok_or_else(|| {
        Error::InvalidGrid(format!(
            "phi plane {:.6} rad not present in the grid",
            phi_plane
        ))
    })?;
    let ip_mirror = find_phi_index(grid, phi_plane + std::f64::consts::PI);
    let l3 = p.to_ludwig3();

    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    if let Some(im) = ip_mirror {
        let skip_zero = grid.theta()[0].abs() < 1e-12;
        for it in (0..grid.n_theta()).rev() {
            if skip_zero && it == 0 {
                continue;
            }
            let (h, v) = l3[grid.index(it, im)];
            rows.push((-grid.theta()[it].to_degrees(), h.norm(), v.norm()));
        }
    }
    for it in 0..grid.n_theta() {
        let (h, v) = l3[grid.index(it, ip)];
        rows.push((grid.theta()[it].to_degrees(), h.norm(), v.norm()));
    }

    let peak = rows
        .iter()
        .map(|&(_, h, v)| h.max(v))
        .fold(0.0f64, f64::max);
    if peak <= 0.0 {
        return Err(Error::DegeneratePattern);
    }
    let norm_db = 20.0 * peak.log10();

    let theta_deg: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let l3h_db: Vec<f64> = rows.iter().map(|r| field_db(r.1, peak)).collect();
    let l3v_db: Vec<f64> = rows.iter().map(|r| field_db(r.2, peak)).collect();
    Ok((PatternCut::new(phi_plane, theta_deg, l3h_db, l3v_db)?, norm_db))
}
