//! Sampled angular domains for far-field evaluation.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Tolerance for angle range checks, radians.
const ANGLE_TOL: f64 = 1e-9;
/// Relative tolerance on theta spacing uniformity.
const UNIFORMITY_REL_TOL: f64 = 1e-6;

/// Which part of the sphere a grid claims to cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    FullSphere,
    UpperHemisphere,
}

impl Domain {
    pub fn as_str(self) -> &'static str {
        match self {
            Domain::FullSphere => "full-sphere",
            Domain::UpperHemisphere => "upper-hemisphere",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "full-sphere" => Some(Domain::FullSphere),
            "upper-hemisphere" => Some(Domain::UpperHemisphere),
            _ => None,
        }
    }
}

/// Rectangular grid of polar angles theta and azimuths phi, radians.
///
/// Theta must be uniformly spaced (the quadrature routines rely on it). A
/// grid with a single phi value represents a cut; in that case theta may run
/// over [0, pi] even for an upper-hemisphere pattern, parametrizing a great
/// circle.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularGrid {
    theta: Vec<f64>,
    phi: Vec<f64>,
    domain: Domain,
}

impl AngularGrid {
    pub fn new(theta: Vec<f64>, phi: Vec<f64>, domain: Domain) -> Result<Self> {
        if theta.len() < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 theta samples, got {}",
                theta.len()
            )));
        }
        if phi.is_empty() {
            return Err(Error::InvalidGrid("phi samples are empty".into()));
        }
        for &t in &theta {
            if !t.is_finite() || !(-ANGLE_TOL..=PI + ANGLE_TOL).contains(&t) {
                return Err(Error::InvalidGrid(format!("theta {t} outside [0, pi]")));
            }
        }
        if domain == Domain::UpperHemisphere && phi.len() > 1 {
            let last = *theta.last().unwrap();
            if last > PI / 2.0 + ANGLE_TOL {
                return Err(Error::InvalidGrid(format!(
                    "upper-hemisphere grid has theta {last} beyond pi/2"
                )));
            }
        }
        for w in theta.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidGrid(
                    "theta samples not strictly increasing".into(),
                ));
            }
        }
        let step = (theta[theta.len() - 1] - theta[0]) / (theta.len() - 1) as f64;
        for w in theta.windows(2) {
            if ((w[1] - w[0]) - step).abs() > UNIFORMITY_REL_TOL * step {
                return Err(Error::InvalidGrid("theta spacing not uniform".into()));
            }
        }
        for &p in &phi {
            if !p.is_finite() || !(-ANGLE_TOL..2.0 * PI).contains(&p) {
                return Err(Error::InvalidGrid(format!("phi {p} outside [0, 2*pi)")));
            }
        }
        for w in phi.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidGrid(
                    "phi samples not strictly increasing".into(),
                ));
            }
        }
        Ok(Self { theta, phi, domain })
    }

    /// Uniform theta cut at a single azimuth.
    pub fn theta_cut(
        theta_start: f64,
        theta_end: f64,
        n: usize,
        phi: f64,
        domain: Domain,
    ) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGrid(format!("need at least 3 samples, got {n}")));
        }
        let theta = linspace(theta_start, theta_end, n);
        Self::new(theta, vec![phi], domain)
    }

    /// Upper hemisphere: theta over [0, pi/2], phi over [0, 2*pi).
    pub fn upper_hemisphere(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_phi == 0 {
            return Err(Error::InvalidGrid("need at least 1 phi sample".into()));
        }
        let theta = linspace(0.0, PI / 2.0, n_theta.max(3));
        let phi = (0..n_phi)
            .map(|k| 2.0 * PI * k as f64 / n_phi as f64)
            .collect();
        Self::new(theta, phi, Domain::UpperHemisphere)
    }

    /// Full sphere: theta over [0, pi], phi over [0, 2*pi).
    pub fn full_sphere(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_phi == 0 {
            return Err(Error::InvalidGrid("need at least 1 phi sample".into()));
        }
        let theta = linspace(0.0, PI, n_theta.max(3));
        let phi = (0..n_phi)
            .map(|k| 2.0 * PI * k as f64 / n_phi as f64)
            .collect();
        Self::new(theta, phi, Domain::FullSphere)
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn n_theta(&self) -> usize {
        self.theta.len()
    }

    pub fn n_phi(&self) -> usize {
        self.phi.len()
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.theta.len() * self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Flat index of (theta index, phi index); theta-major ordering.
    pub fn index(&self, i_theta: usize, i_phi: usize) -> usize {
        i_theta * self.phi.len() + i_phi
    }

    pub fn theta_step(&self) -> f64 {
        (self.theta[self.theta.len() - 1] - self.theta[0]) / (self.theta.len() - 1) as f64
    }

    /// Uniform phi step, if phi is uniformly spaced (single-phi grids have none).
    pub fn phi_step(&self) -> Option<f64> {
        if self.phi.len() < 2 {
            return None;
        }
        let step = (self.phi[self.phi.len() - 1] - self.phi[0]) / (self.phi.len() - 1) as f64;
        for w in self.phi.windows(2) {
            if ((w[1] - w[0]) - step).abs() > UNIFORMITY_REL_TOL * step {
                return None;
            }
        }
        Some(step)
    }

    /// Iterate grid points in flat-index order as (flat, theta, phi).
    pub fn points(&self) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        let n_phi = self.phi.len();
        self.theta.iter().enumerate().flat_map(move |(it, &t)| {
            self.phi
                .iter()
                .enumerate()
                .map(move |(ip, &p)| (it * n_phi + ip, t, p))
        })
    }
}

/// n uniformly spaced values with exact endpoints.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    let d = (n - 1) as f64;
    (0..n)
        .map(|k| start + (end - start) * k as f64 / d)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_uniform_cut() {
        let g = AngularGrid::theta_cut(0.0, PI, 181, 0.0, Domain::FullSphere).unwrap();
        assert_eq!(g.n_theta(), 181);
        assert_eq!(g.n_phi(), 1);
        assert_eq!(g.len(), 181);
        assert!((g.theta_step() - PI / 180.0).abs() < 1e-12);
    }

    #[test]
    fn hemisphere_covers_the_azimuth_circle() {
        let g = AngularGrid::upper_hemisphere(91, 360).unwrap();
        assert_eq!(g.n_phi(), 360);
        let step = g.phi_step().unwrap();
        assert!((step * 360.0 - 2.0 * PI).abs() < 1e-9);
        assert!((g.theta()[90] - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_too_few_samples() {
        assert!(AngularGrid::new(vec![0.0, 1.0], vec![0.0], Domain::FullSphere).is_err());
    }

    #[test]
    fn rejects_non_uniform_theta() {
        let theta = vec![0.0, 0.1, 0.3, 0.4];
        assert!(AngularGrid::new(theta, vec![0.0], Domain::FullSphere).is_err());
    }

    #[test]
    fn rejects_decreasing_theta() {
        let theta = vec![0.0, 0.2, 0.1];
        assert!(AngularGrid::new(theta, vec![0.0], Domain::FullSphere).is_err());
    }

    #[test]
    fn rejects_theta_beyond_pi() {
        let theta = vec![0.0, 2.0, 4.0];
        assert!(AngularGrid::new(theta, vec![0.0], Domain::FullSphere).is_err());
    }

    #[test]
    fn hemisphere_cut_may_span_a_great_circle() {
        // Single-phi representation allows theta over [0, pi].
        let g = AngularGrid::theta_cut(0.0, PI, 19, 0.0, Domain::UpperHemisphere);
        assert!(g.is_ok());
        // Multi-phi upper hemisphere must stop at pi/2.
        let theta = linspace(0.0, PI, 19);
        let phi = vec![0.0, PI];
        assert!(AngularGrid::new(theta, phi, Domain::UpperHemisphere).is_err());
    }

    #[test]
    fn rejects_phi_outside_range() {
        let theta = linspace(0.0, PI, 5);
        assert!(AngularGrid::new(theta.clone(), vec![-0.1], Domain::FullSphere).is_err());
        assert!(AngularGrid::new(theta, vec![2.0 * PI], Domain::FullSphere).is_err());
    }

    #[test]
    fn flat_index_is_theta_major() {
        let g = AngularGrid::upper_hemisphere(3, 4).unwrap();
        assert_eq!(g.index(0, 0), 0);
        assert_eq!(g.index(0, 3), 3);
        assert_eq!(g.index(1, 0), 4);
        assert_eq!(g.index(2, 3), 11);
        let pts: Vec<_> = g.points().collect();
        assert_eq!(pts.len(), 12);
        assert_eq!(pts[4].0, 4);
        assert!((pts[4].1 - g.theta()[1]).abs() < 1e-15);
        assert!((pts[4].2 - g.phi()[0]).abs() < 1e-15);
    }
}
