//! Discrete Fourier machinery on the grid of M-th roots of unity.
//!
//! Bin `k < M/2` holds the coefficient of `z^k`; bins `M/2..M` hold the
//! frequencies `k - M`, which an analytic function must leave empty.

use std::cell::RefCell;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// The grid points `exp(2 pi i k / M)`, `k = 0..M`.
pub fn unit_grid(sample_count: usize) -> Vec<Complex64> {
    let step = TAU / sample_count as f64;
    (0..sample_count)
        .map(|k| Complex64::from_polar(1.0, step * k as f64))
        .collect()
}

/// Fourier coefficients `c_k = (1/M) sum_j s_j exp(-2 pi i j k / M)`.
pub fn analyze(samples: &[Complex64]) -> Vec<Complex64> {
    let mut buf = samples.to_vec();
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()).process(&mut buf));
    let scale = 1.0 / samples.len() as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// Values `sum_k c_k exp(2 pi i j k / M)` at the grid, for `c` padded with
/// zeros up to `sample_count`.
pub fn synthesize(coeffs: &[Complex64], sample_count: usize) -> Vec<Complex64> {
    debug_assert!(coeffs.len() <= sample_count);
    let mut buf = vec![Complex64::new(0.0, 0.0); sample_count];
    buf[..coeffs.len()].copy_from_slice(coeffs);
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(sample_count).process(&mut buf));
    buf
}

/// Largest modulus among the negative-frequency bins of a coefficient vector.
pub fn negative_energy(coeffs: &[Complex64]) -> f64 {
    let half = coeffs.len() / 2;
    coeffs[half..].iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn max_modulus(values: &[Complex64]) -> f64 {
    values.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Trapezoid rule for `<f, g> = (1/2pi) int f conj(g) dt` on the grid.
pub fn pairing(f: &[Complex64], g: &[Complex64]) -> Complex64 {
    assert_eq!(f.len(), g.len(), "pairing needs equal sample counts");
    let sum: Complex64 = f.iter().zip(g).map(|(a, b)| a * b.conj()).sum();
    sum / f.len() as f64
}

pub fn is_valid_sample_count(m: usize) -> bool {
    m >= crate::fnspace::MIN_SAMPLES && m.is_power_of_two()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_inverts_synthesize() {
        let coeffs: Vec<Complex64> = (0..8).map(|k| Complex64::new(k as f64, -(k as f64) / 3.0)).collect();
        let samples = synthesize(&coeffs, 16);
        let back = analyze(&samples);
        for (k, b) in back.iter().enumerate() {
            let expect = coeffs.get(k).copied().unwrap_or_default();
            assert!((b - expect).norm() < 1e-13);
        }
    }

    #[test]
    fn conjugate_identity_is_negative_frequency() {
        let grid = unit_grid(32);
        let conj: Vec<_> = grid.iter().map(|z| z.conj()).collect();
        let c = analyze(&conj);
        assert!((c[31] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((negative_energy(&c) - 1.0).abs() < 1e-14);
    }
}
