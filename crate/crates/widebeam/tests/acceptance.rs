//! Acceptance suite: one test per release criterion, each printing a
//! `criterion N` line with the measured values (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use widebeam::grid::{linspace, AngularGrid, Domain};
use widebeam::io;
use widebeam::metrics::{directivity, hpbw};
use widebeam::patch::{
    bandwidth_ratio, estimate_resonance, far_field, mode2_currents, mode2_default_separation,
    PatchGeometry,
};
use widebeam::pattern::{great_circle_power, FarFieldPattern};
use widebeam::synthesis::{
    composite_pattern, fejer_taper, fourier_coefficients, synthesize_coefficients,
    SynthesisTarget, MIN_QUADRATURE_SAMPLES,
};

/// The reference dimension set used throughout: a 36 GHz patch on a 0.254 mm
/// eps_r = 3 substrate.
fn reference_geometry() -> PatchGeometry {
    PatchGeometry::new(
        2.29e-3, 4.42e-3, 2.21e-3, 3.29e-3, 1.16e-3, 0.254e-3, 3.0, 0.004,
    )
    .unwrap()
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_widebeam"))
}

fn run_synthesize_cli(dir: &Path, m_max: usize) -> io::MetricsFile {
    let status = binary()
        .args([
            "--output-dir",
            dir.to_str().unwrap(),
            "synthesize",
            "--element",
            "sin-theta",
            "--m-max",
            &m_max.to_string(),
            "--spacing",
            "0.5",
            "--taper",
            "fejer",
        ])
        .status()
        .expect("binary runs");
    assert!(status.success(), "synthesize m_max={m_max} failed");
    io::read_metrics_json(&dir.join("metrics.json")).unwrap()
}

/// Independent J0 oracle: power series with compensated summation.
fn j0_series_oracle(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut comp = 0.0f64;
    let mut k = 1.0f64;
    while term.abs() > 1e-24 && k < 500.0 {
        term *= -q / (k * k);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        k += 1.0;
    }
    sum
}

fn sine_composite_grid() -> AngularGrid {
    AngularGrid::theta_cut(0.0, PI, 721, 0.0, Domain::FullSphere).unwrap()
}

/// Library-side copy of the synthesize pipeline: inverse-sine target,
/// quadrature synthesis, Fejer taper, composite with the sine element.
fn composite_metrics(m_max: usize) -> (f64, f64) {
    let grid = sine_composite_grid();
    let element: Vec<f64> = grid.theta().iter().map(|t| t.sin()).collect();
    let target = SynthesisTarget::sin_theta_element(MIN_QUADRATURE_SAMPLES, 1e-6).unwrap();
    let exc = fejer_taper(&synthesize_coefficients(&target, m_max, 0.5).unwrap());
    let composite = composite_pattern(&element, &exc, grid.theta());
    let power: Vec<f64> = composite.iter().map(|c| c * c).collect();
    let width = hpbw(grid.theta(), &power).unwrap();
    let d = directivity(&FarFieldPattern::from_scalar(grid, &composite).unwrap()).unwrap();
    (width, d)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[test]
fn criterion_1_three_element_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let started = Instant::now();
    let status = binary()
        .args([
            "--output-dir",
            dir.path().to_str().unwrap(),
            "synthesize",
            "--element",
            "sin-theta",
            "--m-max",
            "1",
            "--spacing",
            "0.5",
            "--taper",
            "fejer",
        ])
        .status()
        .expect("binary runs");
    let elapsed = started.elapsed();
    assert!(status.success());

    let exc = io::read_excitation_json(&dir.path().join("excitation.json")).unwrap();
    let c0 = exc.coefficient(0);
    let c1 = exc.coefficient(1);
    let cm1 = exc.coefficient(-1);
    let ok = (c0 - Complex64::new(1.0, 0.0)).norm() <= 1e-12
        && [c1, cm1]
            .iter()
            .all(|c| (-0.155..=-0.145).contains(&c.re) && c.im.abs() <= 1e-12)
        && elapsed.as_secs_f64() < 1.0;
    println!(
        "criterion 1 (three-element coefficients): {} - c0={:.9} c+1={:.6} c-1={:.6} runtime={:.3}s",
        verdict(ok),
        c0.re,
        c1.re,
        cm1.re,
        elapsed.as_secs_f64()
    );
    assert!((c0 - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
    for c in [c1, cm1] {
        assert!(
            (-0.155..=-0.145).contains(&c.re),
            "coefficient {} outside [-0.155, -0.145]",
            c.re
        );
        assert!(c.im.abs() <= 1e-12);
    }
    assert!(elapsed.as_secs_f64() < 1.0, "runtime {elapsed:?} >= 1 s");
}

#[test]
fn criterion_2_beamwidth_ladder() {
    let started = Instant::now();
    let mut widths = Vec::new();
    for m_max in [0usize, 1, 4] {
        let dir = tempfile::tempdir().unwrap();
        let metrics = run_synthesize_cli(dir.path(), m_max);
        widths.push(metrics.hpbw_deg);
    }
    let elapsed = started.elapsed();
    let ok = (widths[0] - 90.0).abs() <= 1.0
        && (widths[1] - 120.0).abs() <= 3.0
        && (widths[2] - 150.0).abs() <= 5.0
        && elapsed.as_secs_f64() < 5.0;
    println!(
        "criterion 2 (beamwidth ladder): {} - M=0 -> {:.3} deg, M=1 -> {:.3} deg, M=4 -> {:.3} deg, runtime={:.3}s",
        verdict(ok),
        widths[0],
        widths[1],
        widths[2],
        elapsed.as_secs_f64()
    );
    assert!(elapsed.as_secs_f64() < 5.0, "runtime {elapsed:?} >= 5 s");
    assert!(
        (widths[0] - 90.0).abs() <= 1.0,
        "M=0 width {} outside 90 +/- 1",
        widths[0]
    );
    assert!(
        (widths[1] - 120.0).abs() <= 3.0,
        "M=1 width {} outside 120 +/- 3",
        widths[1]
    );
    assert!(
        (widths[2] - 150.0).abs() <= 5.0,
        "M=4 width {} outside 150 +/- 5",
        widths[2]
    );
}

#[test]
fn criterion_3_quadrature_matches_bessel_closed_form() {
    let target = SynthesisTarget::sin_theta_element(MIN_QUADRATURE_SAMPLES, 1e-6).unwrap();
    let raw = fourier_coefficients(&target, 4, 0.5, MIN_QUADRATURE_SAMPLES).unwrap();
    let mut worst = 0.0f64;
    for m in 0..=4usize {
        let reference = PI * j0_series_oracle(m as f64 * PI);
        let got = raw[4 + m];
        worst = worst.max((got.re - reference).abs()).max(got.im.abs());
    }
    println!(
        "criterion 3 (quadrature vs closed form): {} - worst |error| = {worst:.3e}",
        verdict(worst <= 1e-4)
    );
    assert!(worst <= 1e-4, "worst coefficient error {worst}");
}

#[test]
fn criterion_4_second_mode_null_and_twin_lobes() {
    let g = reference_geometry();
    let grid = AngularGrid::upper_hemisphere(361, 360).unwrap();
    let set = mode2_currents(&g, 36e9, mode2_default_separation(&g)).unwrap();
    let p = far_field(&set, &grid).unwrap();
    let (theta, power) = great_circle_power(&p, 0.0).unwrap();

    let peak = power.iter().cloned().fold(0.0f64, f64::max);
    let zenith_idx = theta
        .iter()
        .position(|t| t.abs() < 1e-12)
        .expect("cut contains zenith");
    let zenith_ratio = power[zenith_idx] / peak;

    let mut maxima = Vec::new();
    for i in 0..power.len() {
        let left = if i > 0 { power[i - 1] } else { f64::NEG_INFINITY };
        let right = if i + 1 < power.len() {
            power[i + 1]
        } else {
            f64::NEG_INFINITY
        };
        if power[i] > left && power[i] > right {
            maxima.push(i);
        }
    }
    let zenith_db = if zenith_ratio > 0.0 {
        10.0 * zenith_ratio.log10()
    } else {
        f64::NEG_INFINITY
    };
    let ok = zenith_ratio <= 1e-6
        && maxima.len() == 2
        && (theta[maxima[0]] + theta[maxima[1]]).abs() < 1e-9;
    println!(
        "criterion 4 (second-mode null): {} - zenith {zenith_db:.1} dB, {} maxima at {:?} deg",
        verdict(ok),
        maxima.len(),
        maxima
            .iter()
            .map(|&i| theta[i].to_degrees())
            .collect::<Vec<_>>()
    );
    assert!(
        zenith_ratio <= 1e-6,
        "zenith level {zenith_db} dB above -60 dB"
    );
    assert_eq!(maxima.len(), 2, "expected exactly two maxima");
    let (a, b) = (maxima[0], maxima[1]);
    assert!(
        (theta[a] + theta[b]).abs() < 1e-9,
        "maxima not symmetric about zenith"
    );
    let rel = (power[a] - power[b]).abs() / peak;
    assert!(rel < 1e-12, "maxima magnitudes differ by {rel}");
}

#[test]
fn criterion_5_directivity_oracles() {
    // Rotationally symmetric sine element on the full sphere: D = 1.5.
    let grid = sine_composite_grid();
    let sine: Vec<f64> = grid.theta().iter().map(|t| t.sin()).collect();
    let d_sine = directivity(&FarFieldPattern::from_scalar(grid, &sine).unwrap()).unwrap();

    // Isotropic pattern on a full 0.25 x 1 degree sphere.
    let grid = AngularGrid::full_sphere(721, 360).unwrap();
    let n = grid.len();
    let d_iso = directivity(&FarFieldPattern::from_scalar(grid, &vec![1.0; n]).unwrap()).unwrap();

    let ok = (d_sine - 1.76).abs() <= 0.02 && d_iso.abs() <= 0.01;
    println!(
        "criterion 5 (directivity oracles): {} - sine {:.4} dBi (want 1.76), isotropic {:.5} dBi (want 0)",
        verdict(ok),
        d_sine,
        d_iso
    );
    assert!((d_sine - 1.76).abs() <= 0.02, "sine directivity {d_sine}");
    assert!(d_iso.abs() <= 0.01, "isotropic directivity {d_iso}");
}

#[test]
fn criterion_6_directivity_reduction() {
    let (_, d0) = composite_metrics(0);
    let (_, d1) = composite_metrics(1);
    let reduction = d0 - d1;
    println!(
        "criterion 6 (directivity reduction): {} - M=0 {:.4} dBi, M=1 {:.4} dBi, reduction {:.4} dB",
        verdict((1.3..=2.7).contains(&reduction)),
        d0,
        d1,
        reduction
    );
    assert!(
        (1.3..=2.7).contains(&reduction),
        "reduction {reduction:.4} dB outside [1.3, 2.7]"
    );
}

#[test]
fn criterion_7_resonance_estimate_and_bandwidth_ratios() {
    let g = reference_geometry();
    let f = estimate_resonance(&g).unwrap();
    let ok = (f - 35.487e9).abs() <= 0.05e9 && (f - 35.5e9).abs() <= 1.0e9;
    println!(
        "criterion 7 (resonance): {} - {:.4} GHz (hand oracle 35.487, design 36)",
        verdict(ok),
        f / 1e9
    );
    // Hand-evaluated transmission-line oracle for this geometry.
    assert!((f - 35.487e9).abs() <= 0.05e9, "resonance {f} Hz off oracle");
    assert!((f - 35.5e9).abs() <= 1.0e9, "resonance {f} Hz outside band");

    // Relative-bandwidth proportionalities.
    assert!((bandwidth_ratio(&g, &g, f) - 1.0).abs() < 1e-12);
    let wider = PatchGeometry::new(
        g.l_p,
        2.0 * g.w_p,
        g.l_par,
        g.w_par,
        g.w_g,
        g.h,
        g.eps_r,
        g.tan_delta,
    )
    .unwrap();
    assert!((bandwidth_ratio(&g, &wider, f) - 0.5).abs() < 1e-12);
    let denser = PatchGeometry::new(
        g.l_p,
        g.w_p,
        g.l_par,
        g.w_par,
        g.w_g,
        g.h,
        2.0 * g.eps_r,
        g.tan_delta,
    )
    .unwrap();
    assert!((bandwidth_ratio(&g, &denser, f) - 2.0).abs() < 1e-12);
}

#[test]
fn criterion_8_property_suites() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);

    // Synthesis symmetry and realness on random symmetric targets.
    for _ in 0..4 {
        let n = MIN_QUADRATURE_SAMPLES;
        let (a, b): (f64, f64) = (rng.gen_range(0.1..2.0), rng.gen_range(0.0..1.0));
        let samples: Vec<f64> = (0..n)
            .map(|j| {
                let t = PI * j as f64 / (n - 1) as f64;
                a + b * t.sin().powi(2)
            })
            .collect();
        let target = SynthesisTarget::explicit(samples).unwrap();
        let exc = synthesize_coefficients(&target, 3, 0.5).unwrap();
        for m in 1..=3i64 {
            assert!((exc.coefficient(m) - exc.coefficient(-m)).norm() < 1e-9);
            assert!(exc.coefficient(m).im.abs() < 1e-9);
        }
    }

    // Array-factor linearity in the coefficients.
    let theta = linspace(0.0, PI, 181);
    for _ in 0..8 {
        let coeffs = |rng: &mut StdRng| -> Vec<Complex64> {
            (0..5)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        };
        let ca = coeffs(&mut rng);
        let cb = coeffs(&mut rng);
        let sum: Vec<Complex64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        let exc_a = widebeam::synthesis::ArrayExcitation::new(2, 0.5, ca).unwrap();
        let exc_b = widebeam::synthesis::ArrayExcitation::new(2, 0.5, cb).unwrap();
        let exc_sum = widebeam::synthesis::ArrayExcitation::new(2, 0.5, sum).unwrap();
        let fa = widebeam::synthesis::array_factor(&exc_a, &theta);
        let fb = widebeam::synthesis::array_factor(&exc_b, &theta);
        let fs = widebeam::synthesis::array_factor(&exc_sum, &theta);
        for i in 0..theta.len() {
            assert!((fs[i] - (fa[i] + fb[i])).norm() < 1e-12);
        }
    }

    // Far-field superposition linearity on random current sets.
    let grid = AngularGrid::upper_hemisphere(31, 60).unwrap();
    for _ in 0..6 {
        let random_set = |rng: &mut StdRng| {
            let elements = (0..3)
                .map(|_| {
                    let angle: f64 = rng.gen_range(0.0..2.0 * PI);
                    widebeam::patch::MagneticCurrentElement {
                        position: [rng.gen_range(-2e-3..2e-3), rng.gen_range(-2e-3..2e-3)],
                        orientation: [angle.cos(), angle.sin()],
                        amplitude: Complex64::new(
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                        ),
                        length: rng.gen_range(0.5e-3..5e-3),
                    }
                })
                .collect();
            widebeam::patch::MagneticCurrentSet::new(elements, 36e9).unwrap()
        };
        let s1 = random_set(&mut rng);
        let s2 = random_set(&mut rng);
        let merged = s1.merged(&s2).unwrap();
        let p1 = far_field(&s1, &grid).unwrap();
        let p2 = far_field(&s2, &grid).unwrap();
        let pm = far_field(&merged, &grid).unwrap();
        for i in 0..grid.len() {
            assert!((pm.e_theta()[i] - (p1.e_theta()[i] + p2.e_theta()[i])).norm() < 1e-12);
            assert!((pm.e_phi()[i] - (p1.e_phi()[i] + p2.e_phi()[i])).norm() < 1e-12);
        }
    }

    // Quadrature convergence on grid doubling.
    let coarse = fourier_coefficients(
        &SynthesisTarget::sin_theta_element(4001, 1e-6).unwrap(),
        4,
        0.5,
        4001,
    )
    .unwrap();
    let fine = fourier_coefficients(
        &SynthesisTarget::sin_theta_element(8001, 1e-6).unwrap(),
        4,
        0.5,
        8001,
    )
    .unwrap();
    let mut worst = 0.0f64;
    for (a, b) in coarse.iter().zip(&fine) {
        worst = worst.max((a - b).norm());
    }
    assert!(worst < 1e-6, "coefficient drift {worst} on grid doubling");

    // Ludwig-3 norm preservation on random fields.
    let grid = AngularGrid::upper_hemisphere(19, 36).unwrap();
    for _ in 0..6 {
        let n = grid.len();
        let field = |rng: &mut StdRng| -> Vec<Complex64> {
            (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        };
        let et = field(&mut rng);
        let ep = field(&mut rng);
        let p = FarFieldPattern::new(grid.clone(), et.clone(), ep.clone(), None).unwrap();
        for (i, (h, v)) in p.to_ludwig3().into_iter().enumerate() {
            let before = et[i].norm_sqr() + ep[i].norm_sqr();
            let after = h.norm_sqr() + v.norm_sqr();
            assert!((before - after).abs() <= 1e-12 * before.max(1.0));
        }
    }

    let elapsed = started.elapsed();
    println!(
        "criterion 8 (property suites): {} - quadrature drift {:.3e}, runtime={:.1}s",
        verdict(elapsed.as_secs_f64() < 60.0),
        worst,
        elapsed.as_secs_f64()
    );
    assert!(elapsed.as_secs_f64() < 60.0, "runtime {elapsed:?} >= 60 s");
}
