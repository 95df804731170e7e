//! Toeplitz operators with conjugate-analytic symbols.
//!
//! `T_{conj(b_lambda)}` is applied through the zero-extraction identity
//! `f = f(lambda)(1 - conj(lambda) b_lambda) + b_lambda T f`: the numerator
//! vanishes at `lambda`, and on the circle `|b_lambda| = 1`, so the
//! division is exact and alias-free. The projection route
//! `P(conj(phi) f)` is kept as an independent cross-check.

use num_complex::Complex64;
use serde::Serialize;

use crate::blaschke::{blaschke_factor, kernel_value, pole_radius, FiniteBlaschkeProduct};
use crate::error::{Error, Result};
use crate::fnspace::{riesz_project, BoundaryFunction, DiskPoint, ANALYTICITY_TOLERANCE};
use crate::norms::hardy_norm;
use crate::spectral::{self, unit_grid};

/// `T_{conj(b_lambda)} f = (f - f(lambda)(1 - conj(lambda) b_lambda)) / b_lambda`.
pub fn toeplitz_factor_apply(f: &BoundaryFunction, lambda: DiskPoint) -> Result<BoundaryFunction> {
    let samples = extraction_numerator(f, lambda)
        .into_iter()
        .zip(unit_grid(f.sample_count()))
        .map(|(num, z)| num / blaschke_factor(lambda, z))
        .collect();
    let radius = f.analytic_radius().min(pole_radius(lambda));
    BoundaryFunction::from_samples_with_scale(samples, radius, f.max_modulus())
}

/// Grid values of `f - f(lambda)(1 - conj(lambda) b_lambda)`.
fn extraction_numerator(f: &BoundaryFunction, lambda: DiskPoint) -> Vec<Complex64> {
    let at_lambda = f.eval_inside(lambda);
    let lam_bar = lambda.conj();
    f.samples()
        .iter()
        .zip(unit_grid(f.sample_count()))
        .map(|(&s, z)| s - at_lambda * (1.0 - lam_bar * blaschke_factor(lambda, z)))
        .collect()
}

/// `T_{conj(B)} = T_{conj(b_1)} o ... o T_{conj(b_n)}`, folded over the zeros
/// in order.
pub fn toeplitz_product_apply(f: &BoundaryFunction, b: &FiniteBlaschkeProduct) -> Result<BoundaryFunction> {
    b.zeros()
        .iter()
        .try_fold(f.clone(), |acc, &lam| toeplitz_factor_apply(&acc, lam))
}

#[derive(Debug, Clone)]
pub struct ProjectedToeplitz {
    pub function: BoundaryFunction,
    /// Largest spectral modulus of `conj(phi) f` near the Nyquist bin,
    /// relative to its sup norm.
    pub alias_level: f64,
    pub aliased: bool,
}

/// `P(conj(phi) f)` on the grid, for symbol samples `phi`.
pub fn toeplitz_general_apply(f: &BoundaryFunction, symbol: &[Complex64]) -> Result<ProjectedToeplitz> {
    if symbol.len() != f.sample_count() {
        return Err(Error::SampleCountMismatch(f.sample_count(), symbol.len()));
    }
    let product: Vec<Complex64> = f.samples().iter().zip(symbol).map(|(s, p)| s * p.conj()).collect();
    let alias_level = alias_level(&product);
    Ok(ProjectedToeplitz {
        function: riesz_project(&product)?,
        alias_level,
        aliased: alias_level > ANALYTICITY_TOLERANCE,
    })
}

/// Spectral content in the middle quarter band around `M/2`, where neither
/// the analytic nor the anti-analytic part of a resolved function lives.
fn alias_level(samples: &[Complex64]) -> f64 {
    let m = samples.len();
    let coeffs = spectral::analyze(samples);
    let band = coeffs[m / 2 - m / 8..m / 2 + m / 8]
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    let scale = spectral::max_modulus(samples);
    if scale == 0.0 {
        0.0
    } else {
        band / scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `||T_{conj(phi)} f||_inf <= (R/(R-1)) ||phi||_inf ||f_R||_{H^1}` with
/// `||phi||_inf = 1` for a Blaschke product.
pub fn dilation_bound_check(f: &BoundaryFunction, phi: &FiniteBlaschkeProduct, r: f64) -> Result<BoundCheck> {
    if !(r > 1.0 && r < f.analytic_radius()) {
        return Err(Error::BoundRadius {
            r,
            radius: f.analytic_radius(),
        });
    }
    let lhs = toeplitz_product_apply(f, phi)?.max_modulus();
    let rhs = r / (r - 1.0) * hardy_norm(&f.dilate(r)?, 1.0);
    Ok(BoundCheck {
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemarkBoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// `| ||T f||_inf - ||f - f(lambda)(1 - conj(lambda) b_lambda)||_inf |`.
    pub equality_gap: f64,
}

/// `||T_{conj(b_lambda)} f||_inf = ||f - f(lambda)(1 - conj(lambda) b_lambda)||_inf <= 3 ||f||_inf`.
pub fn hinf_remark_bound_check(f: &BoundaryFunction, lambda: DiskPoint) -> Result<RemarkBoundCheck> {
    let lhs = toeplitz_factor_apply(f, lambda)?.max_modulus();
    let numerator = spectral::max_modulus(&extraction_numerator(f, lambda));
    let rhs = 3.0 * f.max_modulus();
    Ok(RemarkBoundCheck {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + f64::EPSILON),
        equality_gap: (lhs - numerator).abs(),
    })
}

/// Largest grid deviation in `f = (1-|lambda|^2) f(lambda) k_lambda + b_lambda T f`.
pub fn reconstruction_residual(f: &BoundaryFunction, lambda: DiskPoint) -> Result<f64> {
    let t = toeplitz_factor_apply(f, lambda)?;
    let scale = (1.0 - lambda.norm().powi(2)) * f.eval_inside(lambda);
    Ok(unit_grid(f.sample_count())
        .iter()
        .zip(f.samples())
        .zip(t.samples())
        .map(|((&z, &fs), &ts)| (fs - scale * kernel_value(lambda, z) - blaschke_factor(lambda, z) * ts).norm())
        .fold(0.0, f64::max))
}
