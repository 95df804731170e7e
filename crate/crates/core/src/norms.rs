//! Quadrature norms on the disk: sup, Hardy `H^p` and weighted Bergman
//! `A^p_alpha`.
//!
//! Both integral norms use probability measures (`dm` on the circle,
//! `(1+alpha)(1-|z|^2)^alpha dA/pi` on the disk), so each is dominated by
//! the sup norm with embedding constant `C_0 = 1`. Pointwise-evaluation
//! continuity into `Hol(D)` holds for every space here and is not checked
//! at runtime.
//!
//! Norm specs parse from `sup`, `hardy:p` and `bergman:p:alpha[:nodes]`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fnspace::BoundaryFunction;

pub const DEFAULT_RADIAL_NODES: usize = 64;

/// Embedding constant of every implemented norm into the sup norm.
pub const EMBEDDING_CONSTANT: f64 = 1.0;

/// Absolute slack allowed in `||f||_X <= C_0 ||f||_inf` comparisons.
pub const EMBEDDING_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormSpec {
    Sup,
    Hardy { p: f64 },
    Bergman { p: f64, alpha: f64, radial_nodes: usize },
}

impl NormSpec {
    pub fn hardy(p: f64) -> Result<Self> {
        check_p(p)?;
        Ok(NormSpec::Hardy { p })
    }

    pub fn bergman(p: f64, alpha: f64) -> Result<Self> {
        Self::bergman_with_nodes(p, alpha, DEFAULT_RADIAL_NODES)
    }

    pub fn bergman_with_nodes(p: f64, alpha: f64, radial_nodes: usize) -> Result<Self> {
        check_p(p)?;
        if !(alpha > -1.0 && alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "Bergman weight alpha = {alpha} must exceed -1"
            )));
        }
        if radial_nodes == 0 {
            return Err(Error::InvalidArgument(
                "Bergman quadrature needs at least one node".into(),
            ));
        }
        Ok(NormSpec::Bergman { p, alpha, radial_nodes })
    }

    pub fn evaluate(&self, f: &BoundaryFunction) -> f64 {
        match *self {
            NormSpec::Sup => sup_norm(f),
            NormSpec::Hardy { p } => hardy_norm(f, p),
            NormSpec::Bergman { p, alpha, radial_nodes } => bergman_norm(f, p, alpha, radial_nodes),
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "exponent p = {p} must be finite and at least 1"
        )))
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NormSpec::Sup => f.write_str("sup"),
            NormSpec::Hardy { p } => write!(f, "hardy:{p}"),
            NormSpec::Bergman { p, alpha, radial_nodes } if radial_nodes == DEFAULT_RADIAL_NODES => {
                write!(f, "bergman:{p}:{alpha}")
            }
            NormSpec::Bergman { p, alpha, radial_nodes } => write!(f, "bergman:{p}:{alpha}:{radial_nodes}"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownNorm(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| t.parse::<f64>().map_err(|_| unknown());
        match parts.as_slice() {
            ["sup"] => Ok(NormSpec::Sup),
            ["hardy", p] => NormSpec::hardy(num(p)?),
            ["bergman", p, a] => NormSpec::bergman(num(p)?, num(a)?),
            ["bergman", p, a, n] => NormSpec::bergman_with_nodes(num(p)?, num(a)?, n.parse().map_err(|_| unknown())?),
            _ => Err(unknown()),
        }
    }
}

/// Boundary maximum; equals the `H^inf` norm by the maximum principle.
pub fn sup_norm(f: &BoundaryFunction) -> f64 {
    f.max_modulus()
}

/// `(mean |f|^p)^(1/p)` over the grid. For analytic `f` the supremum over
/// circles of radius `r < 1` is reached at the boundary.
pub fn hardy_norm(f: &BoundaryFunction, p: f64) -> f64 {
    mean_power(f.samples(), p).powf(1.0 / p)
}

pub(crate) fn mean_power(values: &[Complex64], p: f64) -> f64 {
    let sum: f64 = if p == 2.0 {
        values.iter().map(|v| v.norm_sqr()).sum()
    } else {
        values.iter().map(|v| v.norm().powf(p)).sum()
    };
    sum / values.len() as f64
}

/// Radial part of the normalized weighted area measure, written in
/// `t = r^2` as `(1+alpha)(1-t)^alpha dt` on `[0, 1]` and integrated by
/// Gauss-Jacobi (Gauss-Legendre when `alpha = 0`).
#[derive(Debug, Clone)]
pub struct BergmanQuadrature {
    radii: Vec<f64>,
    weights: Vec<f64>,
}

impl BergmanQuadrature {
    pub fn new(alpha: f64, nodes: usize) -> Self {
        let (x, w) = gauss_jacobi(nodes, alpha, 0.0);
        // The probability normalization makes the mapped weights equal the
        // squared first eigenvector components exactly.
        let radii = x.iter().map(|&x| ((x + 1.0) / 2.0).sqrt()).collect();
        BergmanQuadrature { radii, weights: w }
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `sum_i w_i g(i)` where `g(i)` is the angular mean at radius `radii[i]`.
    pub fn integrate(&self, mut angular_mean: impl FnMut(usize) -> f64) -> f64 {
        self.weights.iter().enumerate().map(|(i, w)| w * angular_mean(i)).sum()
    }
}

/// Nodes on `[-1, 1]` and weights normalized to sum to one for the weight
/// `(1-x)^a (1+x)^b`, by Golub-Welsch.
pub(crate) fn gauss_jacobi(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        jacobi[(k, k)] = if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        if k + 1 < n {
            let m = kf + 1.0;
            let s = 2.0 * m + a + b;
            let beta = 4.0 * m * (m + a) * (m + b) * (m + a + b) / (s * s * (s + 1.0) * (s - 1.0));
            jacobi[(k, k + 1)] = beta.sqrt();
            jacobi[(k + 1, k)] = beta.sqrt();
        }
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    pairs.into_iter().unzip()
}

/// Normalized weighted Bergman norm
/// `(int_D |f|^p (1+alpha)(1-|z|^2)^alpha dA/pi)^(1/p)`.
pub fn bergman_norm(f: &BoundaryFunction, p: f64, alpha: f64, radial_nodes: usize) -> f64 {
    let rule = BergmanQuadrature::new(alpha, radial_nodes);
    rule.integrate(|i| mean_power(&f.dilated_samples(rule.radii()[i]), p))
        .powf(1.0 / p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmbeddingCheck {
    pub norm_x: f64,
    pub c0_times_sup: f64,
    pub holds: bool,
}

/// Compares `||f||_X` against `C_0 ||f||_inf`.
pub fn embedding_check(f: &BoundaryFunction, spec: &NormSpec) -> EmbeddingCheck {
    let norm_x = spec.evaluate(f);
    let c0_times_sup = EMBEDDING_CONSTANT * sup_norm(f);
    EmbeddingCheck {
        norm_x,
        c0_times_sup,
        holds: norm_x <= c0_times_sup + EMBEDDING_SLACK,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blaschke::{cauchy_kernel, make_sequence};
    use crate::fnspace::{DiskPoint, UNBOUNDED_RADIUS};

    fn poly(c: &[f64]) -> BoundaryFunction {
        BoundaryFunction::from_real_taylor(c, 256, UNBOUNDED_RADIUS).unwrap()
    }

    #[test]
    fn spec_strings() {
        assert_eq!("sup".parse::<NormSpec>().unwrap(), NormSpec::Sup);
        assert_eq!("hardy:2".parse::<NormSpec>().unwrap(), NormSpec::Hardy { p: 2.0 });
        assert_eq!(
            "bergman:2:0".parse::<NormSpec>().unwrap(),
            NormSpec::Bergman {
                p: 2.0,
                alpha: 0.0,
                radial_nodes: 64
            }
        );
        assert_eq!(
            "bergman:1.5:-0.5:32".parse::<NormSpec>().unwrap(),
            NormSpec::Bergman {
                p: 1.5,
                alpha: -0.5,
                radial_nodes: 32
            }
        );
        for s in ["sup", "hardy:1", "bergman:2:0.5", "bergman:2:0:16"] {
            assert_eq!(s.parse::<NormSpec>().unwrap().to_string(), s);
        }
        for bad in ["hardy", "hardy:0.5", "bergman:2:-1", "bmoa", "hardy:x", "bergman:2:0:0"] {
            assert!(bad.parse::<NormSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn sup_examples() {
        let cst = BoundaryFunction::constant(Complex64::new(-3.0, 4.0), 64).unwrap();
        assert!((sup_norm(&cst) - 5.0).abs() < 1e-14);

        let s = make_sequence("harmonic", 5).unwrap();
        let b5 = s.product(5).unwrap().as_function(1024).unwrap();
        assert!((sup_norm(&b5) - 1.0).abs() < 1e-12);

        // |1/(1 - 0.5 z)| peaks at z = 1, which is a grid point.
        let k = cauchy_kernel(DiskPoint::real(0.5).unwrap(), 256).unwrap();
        assert!((sup_norm(&k) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn hardy_examples() {
        let one = poly(&[1.0]);
        for p in [1.0, 1.5, 2.0, 7.0] {
            assert!((hardy_norm(&one, p) - 1.0).abs() < 1e-14);
        }
        let k = cauchy_kernel(DiskPoint::real(0.8).unwrap(), 2048).unwrap();
        assert!((hardy_norm(&k, 2.0) - 1.0 / 0.6).abs() < 1e-8);
        let mut c = vec![0.0; 6];
        c[5] = 1.0;
        assert!((hardy_norm(&poly(&c), 2.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_jacobi_oracles() {
        // Legendre: integrates x^k exactly for k < 2n.
        let (x, w) = gauss_jacobi(5, 0.0, 0.0);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        for k in 0..10 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 0 { 1.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((q - exact).abs() < 1e-14, "k = {k}");
        }
        // (1 + alpha) int_0^1 (1-t)^alpha t dt = 1/(alpha + 2).
        for alpha in [-0.5, 0.5, 2.0] {
            let rule = BergmanQuadrature::new(alpha, 8);
            let q = rule.integrate(|i| rule.radii()[i].powi(2));
            assert!((q - 1.0 / (alpha + 2.0)).abs() < 1e-13, "alpha = {alpha}");
        }
    }

    #[test]
    fn bergman_examples() {
        assert!((bergman_norm(&poly(&[1.0]), 2.0, 0.0, 64) - 1.0).abs() < 1e-14);
        assert!((bergman_norm(&poly(&[1.0]), 3.0, 1.5, 64) - 1.0).abs() < 1e-13);
        assert!((bergman_norm(&poly(&[0.0, 1.0]), 2.0, 0.0, 64) - 0.5f64.sqrt()).abs() < 1e-14);
        // ||z^k||^2 = (1+alpha) B(k+1, alpha+1) = 1/(k+1) for alpha = 0; for
        // alpha = 1: 2/((k+1)(k+2)).
        let mut c = vec![0.0; 4];
        c[3] = 1.0;
        let z3 = poly(&c);
        assert!((bergman_norm(&z3, 2.0, 1.0, 64).powi(2) - 2.0 / 20.0).abs() < 1e-14);

        let k = cauchy_kernel(DiskPoint::new(Complex64::new(0.5, 0.6)).unwrap(), 2048).unwrap();
        for spec in ["bergman:1:0", "bergman:2:0.5", "bergman:3:-0.5", "hardy:1", "hardy:4"] {
            let check = embedding_check(&k, &spec.parse().unwrap());
            assert!(check.holds, "{spec}: {check:?}");
        }
    }

    #[test]
    fn embedding_examples() {
        let zero = BoundaryFunction::zero(64).unwrap();
        let check = embedding_check(&zero, &NormSpec::Hardy { p: 1.0 });
        assert_eq!((check.norm_x, check.c0_times_sup, check.holds), (0.0, 0.0, true));

        let k = cauchy_kernel(DiskPoint::real(0.9).unwrap(), 2048).unwrap();
        assert!(embedding_check(&k, &NormSpec::Hardy { p: 1.0 }).holds);

        let s = make_sequence("harmonic-shifted", 4).unwrap();
        let b = s.product(4).unwrap().as_function(2048).unwrap();
        for spec in ["sup", "hardy:1", "hardy:3", "bergman:2:0", "bergman:1:2"] {
            let check = embedding_check(&b, &spec.parse().unwrap());
            assert!(check.norm_x <= 1.0 + 1e-12, "{spec}");
        }
    }

    #[test]
    fn bergman_radial_refinement_is_stable() {
        let coeffs: Vec<f64> = (0..=32)
            .map(|k| ((k * 7 % 5) as f64 - 2.0) / (k as f64 + 1.0))
            .collect();
        let f = poly(&coeffs);
        for (p, alpha) in [(2.0, 0.0), (2.0, 1.0), (1.0, 0.0), (3.0, 0.5)] {
            let coarse = bergman_norm(&f, p, alpha, 64);
            let fine = bergman_norm(&f, p, alpha, 128);
            assert!(
                (coarse - fine).abs() <= 1e-9,
                "p = {p}, alpha = {alpha}: {coarse} vs {fine}"
            );
        }
    }
}
