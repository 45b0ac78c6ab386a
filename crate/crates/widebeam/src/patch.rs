//! Rectangular-patch geometry, a transmission-line resonance estimator, and
//! the equivalent-magnetic-current far-field model for the two resonant
//! modes.
//!
//! The radiating apertures are modeled as magnetic line currents on an
//! infinite ground plane at z = 0; image theory doubles the sources and the
//! factor is absorbed into the relative amplitude scale. Finite-ground
//! effects are outside this model.

use crate::error::{Error, Result};
use crate::grid::{AngularGrid, Domain};
use crate::pattern::FarFieldPattern;
use num_complex::Complex64;
use std::f64::consts::PI;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Driven patch, parasitic patch, and substrate dimensions (meters) with
/// material constants.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchGeometry {
    /// Resonant length of the driven patch.
    pub l_p: f64,
    /// Width of the driven patch (radiating-edge length).
    pub w_p: f64,
    /// Resonant length of a parasitic patch.
    pub l_par: f64,
    /// Width of a parasitic patch.
    pub w_par: f64,
    /// Gap between driven and parasitic patches.
    pub w_g: f64,
    /// Substrate height.
    pub h: f64,
    /// Substrate relative permittivity.
    pub eps_r: f64,
    /// Substrate loss tangent; informative only, the model is lossless.
    pub tan_delta: f64,
}

impl PatchGeometry {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        l_p: f64,
        w_p: f64,
        l_par: f64,
        w_par: f64,
        w_g: f64,
        h: f64,
        eps_r: f64,
        tan_delta: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("l_p", l_p),
            ("w_p", w_p),
            ("l_par", l_par),
            ("w_par", w_par),
            ("w_g", w_g),
            ("h", h),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidGeometry(format!("{name} must be positive, got {v}")));
            }
        }
        if !(eps_r.is_finite() && eps_r >= 1.0) {
            return Err(Error::InvalidGeometry(format!("eps_r must be >= 1, got {eps_r}")));
        }
        if !tan_delta.is_finite() || tan_delta < 0.0 {
            return Err(Error::InvalidGeometry(format!("invalid tan_delta {tan_delta}")));
        }
        if h >= l_p {
            return Err(Error::InvalidGeometry(format!(
                "thin-substrate model needs h < l_p, got h = {h}, l_p = {l_p}"
            )));
        }
        Ok(Self {
            l_p,
            w_p,
            l_par,
            w_par,
            w_g,
            h,
            eps_r,
            tan_delta,
        })
    }
}

/// Quasi-static effective permittivity of a microstrip of width `w_p` on a
/// substrate of height `h`:
/// `eps_eff = (eps_r + 1)/2 + (eps_r - 1)/2 * (1 + 12 h/w)^(-1/2)`.
pub fn effective_permittivity(g: &PatchGeometry) -> f64 {
    let ratio = g.h / g.w_p;
    (g.eps_r + 1.0) / 2.0 + (g.eps_r - 1.0) / 2.0 / (1.0 + 12.0 * ratio).sqrt()
}

/// Fringing length extension of one open patch edge:
/// `dL = 0.412 h (eps_eff + 0.3)(w/h + 0.264) / ((eps_eff - 0.258)(w/h + 0.8))`.
pub fn fringing_extension(g: &PatchGeometry) -> f64 {
    let eps_eff = effective_permittivity(g);
    let woh = g.w_p / g.h;
    0.412 * g.h * (eps_eff + 0.3) * (woh + 0.264) / ((eps_eff - 0.258) * (woh + 0.8))
}

/// Half-wave resonance of a line resonator of physical length `length` in an
/// effective permittivity `eps_eff`.
pub fn half_wave_resonance(length: f64, eps_eff: f64) -> f64 {
    SPEED_OF_LIGHT / (2.0 * length * eps_eff.sqrt())
}

/// Transmission-line estimate of the fundamental patch resonance:
/// `f = c / (2 (l_p + 2 dL) sqrt(eps_eff))`.
///
/// Valid for wide patches; rejects w_p/h < 1.
pub fn estimate_resonance(g: &PatchGeometry) -> Result<f64> {
    if g.w_p / g.h < 1.0 {
        return Err(Error::ModelValidity(format!(
            "wide-microstrip formulas need w_p/h >= 1, got {}",
            g.w_p / g.h
        )));
    }
    let eps_eff = effective_permittivity(g);
    let dl = fringing_extension(g);
    Ok(half_wave_resonance(g.l_p + 2.0 * dl, eps_eff))
}

/// Impedance-bandwidth figure `h * w_p / (eps_r * lambda0 * l_p)`.
pub fn bandwidth_figure(g: &PatchGeometry, f0: f64) -> f64 {
    let lambda0 = SPEED_OF_LIGHT / f0;
    g.h * g.w_p / (g.eps_r * lambda0 * g.l_p)
}

/// Bandwidth of `a` relative to `b` at a common design frequency; the free
/// space wavelength cancels in the ratio.
pub fn bandwidth_ratio(a: &PatchGeometry, b: &PatchGeometry, f0: f64) -> f64 {
    bandwidth_figure(a, f0) / bandwidth_figure(b, f0)
}

/// One magnetic line current on the ground plane z = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct MagneticCurrentElement {
    /// (x, y) position of the element center, meters.
    pub position: [f64; 2],
    /// Unit vector along the current, in the plane.
    pub orientation: [f64; 2],
    /// Complex amplitude, relative.
    pub amplitude: Complex64,
    /// Line length, meters.
    pub length: f64,
}

/// Equivalent magnetic line currents over a ground plane at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct MagneticCurrentSet {
    elements: Vec<MagneticCurrentElement>,
    frequency: f64,
}

impl MagneticCurrentSet {
    pub fn new(elements: Vec<MagneticCurrentElement>, frequency: f64) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidCurrentSet("no elements".into()));
        }
        if !(frequency.is_finite() && frequency > 0.0) {
            return Err(Error::InvalidCurrentSet(format!(
                "invalid frequency {frequency}"
            )));
        }
        for e in &elements {
            let norm = (e.orientation[0].powi(2) + e.orientation[1].powi(2)).sqrt();
            if (norm - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidCurrentSet(format!(
                    "orientation not unit length (|u| = {norm})"
                )));
            }
            if !(e.length.is_finite() && e.length > 0.0) {
                return Err(Error::InvalidCurrentSet(format!(
                    "invalid element length {}",
                    e.length
                )));
            }
            if !e.position.iter().all(|v| v.is_finite())
                || !e.amplitude.re.is_finite()
                || !e.amplitude.im.is_finite()
            {
                return Err(Error::InvalidCurrentSet("non-finite element field".into()));
            }
        }
        Ok(Self {
            elements,
            frequency,
        })
    }

    pub fn elements(&self) -> &[MagneticCurrentElement] {
        &self.elements
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    /// Concatenation of two sets at the same frequency.
    pub fn merged(&self, other: &MagneticCurrentSet) -> Result<MagneticCurrentSet> {
        if self.frequency != other.frequency {
            return Err(Error::InvalidCurrentSet(
                "cannot merge sets at different frequencies".into(),
            ));
        }
        let mut elements = self.elements.clone();
        elements.extend(other.elements.iter().cloned());
        MagneticCurrentSet::new(elements, self.frequency)
    }

    /// Same set with every amplitude scaled by `w`.
    pub fn scaled(&self, w: Complex64) -> MagneticCurrentSet {
        let elements = self
            .elements
            .iter()
            .map(|e| MagneticCurrentElement {
                amplitude: e.amplitude * w,
                ..e.clone()
            })
            .collect();
        MagneticCurrentSet {
            elements,
            frequency: self.frequency,
        }
    }
}

/// First-mode sources: the two radiating edges, oriented along x, in phase,
/// separated along y by the effective resonant length `l_p + 2 dL`.
pub fn mode1_currents(g: &PatchGeometry, frequency: f64) -> Result<MagneticCurrentSet> {
    let half = (g.l_p + 2.0 * fringing_extension(g)) / 2.0;
    let one = Complex64::new(1.0, 0.0);
    MagneticCurrentSet::new(
        vec![
            MagneticCurrentElement {
                position: [0.0, half],
                orientation: [1.0, 0.0],
                amplitude: one,
                length: g.w_p,
            },
            MagneticCurrentElement {
                position: [0.0, -half],
                orientation: [1.0, 0.0],
                amplitude: one,
                length: g.w_p,
            },
        ],
        frequency,
    )
}

/// Default second-mode source separation along x.
pub fn mode2_default_separation(g: &PatchGeometry) -> f64 {
    g.w_p / 2.0
}

/// Second-mode sources: two out-of-phase currents of length `l_p` oriented
/// along y, separated along x. They cancel exactly at zenith and leave two
/// equal lobes to the side along x.
pub fn mode2_currents(
    g: &PatchGeometry,
    frequency: f64,
    separation: f64,
) -> Result<MagneticCurrentSet> {
    if !(separation > 0.0 && separation <= g.w_p) {
        return Err(Error::InvalidCurrentSet(format!(
            "separation must lie in (0, w_p], got {separation}"
        )));
    }
    MagneticCurrentSet::new(
        vec![
            MagneticCurrentElement {
                position: [separation / 2.0, 0.0],
                orientation: [0.0, 1.0],
                amplitude: Complex64::new(1.0, 0.0),
                length: g.l_p,
            },
            MagneticCurrentElement {
                position: [-separation / 2.0, 0.0],
                orientation: [0.0, 1.0],
                amplitude: Complex64::new(-1.0, 0.0),
                length: g.l_p,
            },
        ],
        frequency,
    )
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Far field of a current set on an upper-hemisphere grid.
///
/// Per direction r:
/// `E = sum_n a_n (r x u_n) sinc(k L_n (r . u_n) / 2) exp(+j k r . p_n)`,
/// decomposed into spherical components. The uniform line-source taper
/// (sinc) models apertures that are not electrically short.
pub fn far_field(currents: &MagneticCurrentSet, grid: &AngularGrid) -> Result<FarFieldPattern> {
    if grid.domain() != Domain::UpperHemisphere {
        return Err(Error::InvalidGrid(
            "far field is defined on an upper-hemisphere grid".into(),
        ));
    }
    if grid.theta()[grid.n_theta() - 1] > PI / 2.0 + 1e-9 {
        return Err(Error::InvalidGrid(
            "far field needs theta within [0, pi/2]".into(),
        ));
    }
    let k = 2.0 * PI * currents.frequency() / SPEED_OF_LIGHT;
    let n = grid.len();
    let mut e_theta = vec![Complex64::new(0.0, 0.0); n];
    let mut e_phi = vec![Complex64::new(0.0, 0.0); n];

    for (idx, theta, phi) in grid.points() {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        // Spherical unit vectors at (theta, phi).
        let th_hat = [ct * cp, ct * sp, -st];
        let ph_hat = [-sp, cp, 0.0];
        let mut et = Complex64::new(0.0, 0.0);
        let mut ep = Complex64::new(0.0, 0.0);
        for e in currents.elements() {
            let [ux, uy] = e.orientation;
            let r_dot_u = st * (cp * ux + sp * uy);
            let taper = sinc(k * e.length * r_dot_u / 2.0);
            let phase = Complex64::from_polar(
                1.0,
                k * st * (cp * e.position[0] + sp * e.position[1]),
            );
            // r x u for u in the ground plane.
            let cross = [-ct * uy, ct * ux, st * cp * uy - st * sp * ux];
            let scale = e.amplitude * taper * phase;
            et += scale * (cross[0] * th_hat[0] + cross[1] * th_hat[1] + cross[2] * th_hat[2]);
            ep += scale * (cross[0] * ph_hat[0] + cross[1] * ph_hat[1]);
        }
        e_theta[idx] = et;
        e_phi[idx] = ep;
    }
    FarFieldPattern::new(grid.clone(), e_theta, e_phi, Some(currents.frequency()))
}

/// Weighted superposition `w1 * p1 + w2 * p2`; the grids must match.
pub fn superpose_modes(
    p1: &FarFieldPattern,
    w1: Complex64,
    p2: &FarFieldPattern,
    w2: Complex64,
) -> Result<FarFieldPattern> {
    if p1.grid() != p2.grid() {
        return Err(Error::GridMismatch(
            "superposition needs identical grids".into(),
        ));
    }
    let e_theta = p1
        .e_theta()
        .iter()
        .zip(p2.e_theta())
        .map(|(a, b)| w1 * a + w2 * b)
        .collect();
    let e_phi = p1
        .e_phi()
        .iter()
        .zip(p2.e_phi())
        .map(|(a, b)| w1 * a + w2 * b)
        .collect();
    let frequency = p1.frequency().or(p2.frequency());
    FarFieldPattern::new(p1.grid().clone(), e_theta, e_phi, frequency)
}
