//! Linear-array excitation synthesis over a Fourier basis.
//!
//! A uniformly spaced 2M+1 element array along z has the factor
//! `F(theta) = sum_m c_m exp(+j 2 pi m (d/lambda) cos(theta))`. Matching this
//! against a 1D Fourier series gives the coefficients as integrals of the
//! desired factor against the conjugate kernel with a sin(theta) weight.
//! Choosing the target as the inverse of the element pattern flattens the
//! composite; a Fejer taper suppresses the Gibbs ripple of the truncated
//! series.

use crate::bessel::bessel_j0;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default clip applied before inverting an element pattern.
pub const DEFAULT_CLIP_FLOOR: f64 = 1e-6;

/// Minimum number of uniform quadrature samples for coefficient synthesis.
pub const MIN_QUADRATURE_SAMPLES: usize = 4001;

/// Element spacing and complex excitations c_{-M}..c_{M} of a uniform linear
/// array.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayExcitation {
    m_max: usize,
    spacing_over_lambda: f64,
    coefficients: Vec<Complex64>,
}

impl ArrayExcitation {
    pub fn new(
        m_max: usize,
        spacing_over_lambda: f64,
        coefficients: Vec<Complex64>,
    ) -> Result<Self> {
        if coefficients.len() != 2 * m_max + 1 {
            return Err(Error::InvalidExcitation(format!(
                "expected {} coefficients for m_max {}, got {}",
                2 * m_max + 1,
                m_max,
                coefficients.len()
            )));
        }
        if !(spacing_over_lambda.is_finite() && spacing_over_lambda > 0.0) {
            return Err(Error::InvalidExcitation(format!(
                "invalid spacing {spacing_over_lambda}"
            )));
        }
        for c in &coefficients {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidExcitation("non-finite coefficient".into()));
            }
        }
        Ok(Self {
            m_max,
            spacing_over_lambda,
            coefficients,
        })
    }

    /// Single element with unit excitation.
    pub fn single_element(spacing_over_lambda: f64) -> Self {
        Self {
            m_max: 0,
            spacing_over_lambda,
            coefficients: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn spacing_over_lambda(&self) -> f64 {
        self.spacing_over_lambda
    }

    /// Coefficients in ascending m order, m = -M..=M.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Coefficient for a signed index m.
    pub fn coefficient(&self, m: i64) -> Complex64 {
        self.coefficients[(m + self.m_max as i64) as usize]
    }

    /// (m, c_m) pairs in ascending m order.
    pub fn indexed(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let m_max = self.m_max as i64;
        self.coefficients
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - m_max, c))
    }
}

/// `F(theta) = sum_m c_m exp(+j 2 pi m (d/lambda) cos(theta))` per sample.
pub fn array_factor(exc: &ArrayExcitation, theta: &[f64]) -> Vec<Complex64> {
    let alpha = 2.0 * PI * exc.spacing_over_lambda;
    theta
        .iter()
        .map(|&t| {
            let u = t.cos();
            exc.indexed()
                .map(|(m, c)| c * Complex64::from_polar(1.0, alpha * m as f64 * u))
                .sum()
        })
        .collect()
}

/// `|F(theta)| * C(theta)` per sample; the pattern-multiplication composite
/// of an element pattern with the array factor.
pub fn composite_pattern(element: &[f64], exc: &ArrayExcitation, theta: &[f64]) -> Vec<f64> {
    assert_eq!(
        element.len(),
        theta.len(),
        "element and theta sample counts differ"
    );
    array_factor(exc, theta)
        .iter()
        .zip(element)
        .map(|(f, &c)| f.norm() * c)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    /// Flatten the composite: F = 1 / max(C, clip_floor).
    InverseOfElement,
    /// Approximate the given factor samples directly.
    ExplicitSamples,
}

/// Desired array factor over theta in [0, pi], sampled uniformly.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisTarget {
    kind: TargetKind,
    samples: Vec<f64>,
    clip_floor: f64,
}

impl SynthesisTarget {
    /// Target is the inverse of an element pattern C sampled uniformly over
    /// [0, pi]. C is clipped at `clip_floor` before inversion.
    pub fn inverse_of_element(element: Vec<f64>, clip_floor: f64) -> Result<Self> {
        Self::build(TargetKind::InverseOfElement, element, clip_floor)
    }

    /// Explicit factor samples over a uniform [0, pi] grid.
    pub fn explicit(samples: Vec<f64>) -> Result<Self> {
        Self::build(TargetKind::ExplicitSamples, samples, DEFAULT_CLIP_FLOOR)
    }

    /// Inverse of the sin(theta) element, sampled at n points.
    pub fn sin_theta_element(n: usize, clip_floor: f64) -> Result<Self> {
        let n = n.max(3);
        let samples = (0..n)
            .map(|j| (PI * j as f64 / (n - 1) as f64).sin())
            .collect();
        Self::inverse_of_element(samples, clip_floor)
    }

    fn build(kind: TargetKind, samples: Vec<f64>, clip_floor: f64) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::UnusableTarget(format!(
                "need at least 3 samples, got {}",
                samples.len()
            )));
        }
        if !(clip_floor.is_finite() && clip_floor > 0.0) {
            return Err(Error::UnusableTarget(format!(
                "clip floor must be positive, got {clip_floor}"
            )));
        }
        let mut max = f64::NEG_INFINITY;
        for &s in &samples {
            if !s.is_finite() || s < 0.0 {
                return Err(Error::UnusableTarget(
                    "samples must be finite and non-negative".into(),
                ));
            }
            max = max.max(s);
        }
        if max < clip_floor {
            return Err(Error::UnusableTarget(
                "every sample is below the clip floor".into(),
            ));
        }
        Ok(Self {
            kind,
            samples,
            clip_floor,
        })
    }

    pub fn kind(&self) -> TargetKind {
        self.kind
    }

    pub fn clip_floor(&self) -> f64 {
        self.clip_floor
    }

    /// Stored sample at quadrature node j of n, by linear interpolation on
    /// the shared uniform [0, pi] parametrization. Exact when the stored
    /// resolution matches the quadrature resolution.
    fn sample_at_node(&self, j: usize, n: usize) -> f64 {
        let last = self.samples.len() - 1;
        let pos = (j * last) as f64 / (n - 1) as f64;
        let k = (pos.floor() as usize).min(last - 1);
        let frac = pos - k as f64;
        self.samples[k] * (1.0 - frac) + self.samples[k + 1] * frac
    }

    /// Weighted integrand value F(theta) * sin(theta) at a quadrature node.
    ///
    /// For inverse targets both the sin(theta) weight and the element are
    /// clipped at the same floor, so the quotient reproduces the finite
    /// analytic limit where the element and the weight vanish together
    /// (e.g. C = sin(theta) at theta = 0, pi).
    fn weighted_value(&self, sin_theta: f64, j: usize, n: usize) -> f64 {
        match self.kind {
            TargetKind::InverseOfElement => {
                let c = self.sample_at_node(j, n).max(self.clip_floor);
                sin_theta.max(self.clip_floor) / c
            }
            TargetKind::ExplicitSamples => self.sample_at_node(j, n) * sin_theta,
        }
    }
}

/// Raw Fourier-analysis integrals
/// `c_m = integral_0^pi F(theta) exp(-j 2 pi m (d/lambda) cos(theta))
/// sin(theta) d(theta)`
/// for m = -M..=M, by composite trapezoid quadrature on `n_samples` uniform
/// nodes (clamped to at least [`MIN_QUADRATURE_SAMPLES`]). No normalization
/// is applied.
pub fn fourier_coefficients(
    target: &SynthesisTarget,
    m_max: usize,
    spacing_over_lambda: f64,
    n_samples: usize,
) -> Result<Vec<Complex64>> {
    if !(spacing_over_lambda.is_finite() && spacing_over_lambda > 0.0) {
        return Err(Error::InvalidExcitation(format!(
            "invalid spacing {spacing_over_lambda}"
        )));
    }
    let n = n_samples.max(MIN_QUADRATURE_SAMPLES);
    let h = PI / (n - 1) as f64;
    let alpha = 2.0 * PI * spacing_over_lambda;

    // Weighted target samples and cos(theta) at the quadrature nodes.
    let mut weighted = Vec::with_capacity(n);
    let mut cos_theta = Vec::with_capacity(n);
    for j in 0..n {
        let theta = PI * j as f64 / (n - 1) as f64;
        weighted.push(target.weighted_value(theta.sin(), j, n));
        cos_theta.push(theta.cos());
    }

    // The target is real, so c_{-m} = conj(c_m).
    let mut positive = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let a = alpha * m as f64;
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
            sum += Complex64::from_polar(w * weighted[j], -a * cos_theta[j]);
        }
        positive.push(sum * h);
    }

    let mut out = Vec::with_capacity(2 * m_max + 1);
    for m in (1..=m_max).rev() {
        out.push(positive[m].conj());
    }
    out.extend(positive);
    Ok(out)
}

/// Synthesize excitation coefficients for `target`, normalized so c_0 = 1.
pub fn synthesize_coefficients(
    target: &SynthesisTarget,
    m_max: usize,
    spacing_over_lambda: f64,
) -> Result<ArrayExcitation> {
    synthesize_coefficients_with_samples(
        target,
        m_max,
        spacing_over_lambda,
        MIN_QUADRATURE_SAMPLES,
    )
}

/// As [`synthesize_coefficients`] with an explicit quadrature resolution.
pub fn synthesize_coefficients_with_samples(
    target: &SynthesisTarget,
    m_max: usize,
    spacing_over_lambda: f64,
    n_samples: usize,
) -> Result<ArrayExcitation> {
    let mut coefficients = fourier_coefficients(target, m_max, spacing_over_lambda, n_samples)?;
    let c0 = coefficients[m_max];
    if c0.norm() == 0.0 {
        return Err(Error::UnusableTarget("zero center coefficient".into()));
    }
    for c in &mut coefficients {
        *c /= c0;
    }
    ArrayExcitation::new(m_max, spacing_over_lambda, coefficients)
}

/// Triangular (Fejer) taper: c_m scaled by `1 - |m|/(M+1)`, then renormalized
/// so c_0 = 1. The c_0 weight is 1, so the renormalization is the identity
/// whenever c_0 was already 1.
pub fn fejer_taper(exc: &ArrayExcitation) -> ArrayExcitation {
    let m1 = (exc.m_max + 1) as f64;
    let mut coefficients: Vec<Complex64> = exc
        .indexed()
        .map(|(m, c)| c * (1.0 - m.unsigned_abs() as f64 / m1))
        .collect();
    let c0 = coefficients[exc.m_max];
    if c0.norm() > 0.0 {
        for c in &mut coefficients {
            *c /= c0;
        }
    }
    ArrayExcitation {
        m_max: exc.m_max,
        spacing_over_lambda: exc.spacing_over_lambda,
        coefficients,
    }
}

/// Closed-form Fejer-tapered coefficients for the inverse-sine target at
/// half-wavelength spacing: `c_m = (1 - |m|/(M+1)) J0(m pi)`, c_0 = 1.
pub fn fejer_bessel_coefficients(m_max: usize) -> Result<ArrayExcitation> {
    let m1 = (m_max + 1) as f64;
    let mut coefficients = Vec::with_capacity(2 * m_max + 1);
    for m in -(m_max as i64)..=(m_max as i64) {
        let am = m.unsigned_abs() as f64;
        let j0 = bessel_j0(am * PI)?;
        coefficients.push(Complex64::new((1.0 - am / m1) * j0, 0.0));
    }
    ArrayExcitation::new(m_max, 0.5, coefficients)
}
