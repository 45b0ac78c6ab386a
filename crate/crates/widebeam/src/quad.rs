//! Composite trapezoid rules on uniform grids.

use num_complex::Complex64;

/// Composite trapezoid over uniformly spaced samples.
pub fn trapezoid_uniform(step: f64, values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let sum: f64 = values.iter().sum();
    step * (sum - 0.5 * (values[0] + values[values.len() - 1]))
}

/// Composite trapezoid over uniformly spaced complex samples.
pub fn trapezoid_uniform_complex(step: f64, values: &[Complex64]) -> Complex64 {
    if values.len() < 2 {
        return Complex64::new(0.0, 0.0);
    }
    let sum: Complex64 = values.iter().sum();
    (sum - 0.5 * (values[0] + values[values.len() - 1])) * step
}

/// Trapezoid over one full period of a periodic function sampled without the
/// duplicated endpoint. Closing the period makes this `step * sum`.
pub fn trapezoid_periodic(step: f64, values: &[f64]) -> f64 {
    step * values.iter().sum::<f64>()
}
