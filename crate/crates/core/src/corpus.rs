//! A fixed set of test functions and interior points shared by the self
//! test, the acceptance suite and the benchmarks.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::blaschke::{cauchy_kernel, golden_angle, FiniteBlaschkeProduct};
use crate::error::Result;
use crate::fnspace::{BoundaryFunction, DiskPoint, UNBOUNDED_RADIUS};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub function: BoundaryFunction,
}

const POLY_DEGREES: [usize; 7] = [1, 2, 4, 8, 16, 24, 32];
const BLASCHKE_DEGREES: [usize; 6] = [1, 2, 3, 5, 7, 8];

fn kernel_poles() -> [Complex64; 7] {
    [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, -0.7),
        Complex64::new(0.3, 0.4),
        Complex64::new(0.9, 0.0),
        Complex64::new(-0.6, 0.6),
        Complex64::from_polar(0.9, 2.0),
    ]
}

/// Deterministic interior points with `|lambda| <= radius`, spread by the
/// golden angle in argument and a Weyl sequence in squared modulus.
pub fn points(count: usize, radius: f64) -> Vec<DiskPoint> {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    (0..count)
        .map(|j| {
            let u = ((j as f64 + 0.5) * phi).fract();
            let z = Complex64::from_polar(radius * u.sqrt(), golden_angle() * j as f64);
            DiskPoint::new(z).expect("radius below one")
        })
        .collect()
}

/// Polynomial of the given degree with unimodular-ish coefficients.
pub fn polynomial(degree: usize, sample_count: usize) -> Result<BoundaryFunction> {
    let coeffs: Vec<Complex64> = (0..=degree)
        .map(|k| Complex64::from_polar(1.0 / (1.0 + 0.25 * k as f64), 1.3 * k as f64 + 0.2 * degree as f64))
        .collect();
    BoundaryFunction::from_taylor(&coeffs, sample_count, UNBOUNDED_RADIUS)
}

/// Zeros of the corpus Blaschke product of the given degree.
pub fn blaschke_zeros(degree: usize) -> Vec<DiskPoint> {
    (0..degree)
        .map(|j| {
            let r = 0.2 + 0.7 * (j as f64 + 1.0) / (degree as f64 + 1.0);
            DiskPoint::new(Complex64::from_polar(r, 2.0 * PI * j as f64 / degree as f64 + 0.4))
                .expect("radius below one")
        })
        .collect()
}

/// Twenty functions: polynomials up to degree 32, Cauchy kernels with
/// `|alpha| <= 0.9` and Blaschke products up to degree 8.
pub fn functions(sample_count: usize) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::with_capacity(20);
    for d in POLY_DEGREES {
        out.push(CorpusEntry {
            name: format!("poly{d}"),
            function: polynomial(d, sample_count)?,
        });
    }
    for alpha in kernel_poles() {
        out.push(CorpusEntry {
            name: format!("kernel({alpha})"),
            function: cauchy_kernel(DiskPoint::new(alpha)?, sample_count)?,
        });
    }
    for d in BLASCHKE_DEGREES {
        out.push(CorpusEntry {
            name: format!("blaschke{d}"),
            function: FiniteBlaschkeProduct::new(blaschke_zeros(d)).as_function(sample_count)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let f = functions(2048).unwrap();
        assert_eq!(f.len(), 20);
        let p = points(20, 0.9);
        assert!(p.iter().all(|z| z.norm() <= 0.9));
        assert!(p.iter().any(|z| z.norm() > 0.8));
    }
}
