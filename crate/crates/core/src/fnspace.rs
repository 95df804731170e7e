//! Analytic functions on the closed disk, stored as boundary samples at the
//! M-th roots of unity together with their Taylor coefficients.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral;

/// Minimum distance kept between a [`DiskPoint`] and the unit circle.
pub const BOUNDARY_GUARD: f64 = 1e-8;
/// Negative-frequency content allowed, relative to the sample scale.
pub const ANALYTICITY_TOLERANCE: f64 = 1e-8;
pub const MIN_SAMPLES: usize = 16;
pub const DEFAULT_SAMPLES: usize = 2048;
/// Radius recorded for entire functions (polynomials, `B_0`).
pub const UNBOUNDED_RADIUS: f64 = 1e6;

/// Smallest divisor modulus accepted by [`pointwise_combine`].
const MIN_DIVISOR: f64 = 1e-12;

/// A point of the open disk with `|z| <= 1 - BOUNDARY_GUARD`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint(Complex64::new(0.0, 0.0));

    pub fn new(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() && z.norm() <= 1.0 - BOUNDARY_GUARD {
            Ok(DiskPoint(z))
        } else {
            Err(Error::OutsideDisk(z))
        }
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.0.norm()
    }

    #[inline]
    pub fn conj(self) -> Complex64 {
        self.0.conj()
    }
}

impl TryFrom<Complex64> for DiskPoint {
    type Error = Error;

    fn try_from(z: Complex64) -> Result<Self> {
        DiskPoint::new(z)
    }
}

impl From<DiskPoint> for Complex64 {
    fn from(p: DiskPoint) -> Complex64 {
        p.0
    }
}

impl fmt::Display for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An analytic function sampled on the unit circle.
///
/// `taylor` holds `a_0..a_{M/2-1}`; the negative-frequency half of the
/// sample spectrum has been checked to vanish up to the analyticity
/// tolerance and then dropped, so synthesizing `taylor` reproduces
/// `samples`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFunction {
    samples: Vec<Complex64>,
    taylor: Vec<Complex64>,
    analytic_radius: f64,
}

impl BoundaryFunction {
    pub fn from_taylor(coeffs: &[Complex64], sample_count: usize, analytic_radius: f64) -> Result<Self> {
        check_sample_count(sample_count)?;
        check_radius(analytic_radius)?;
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        let limit = sample_count / 2;
        if coeffs.len() > limit {
            return Err(Error::TooManyCoefficients {
                len: coeffs.len(),
                limit,
                sample_count,
            });
        }
        let mut taylor = vec![Complex64::new(0.0, 0.0); limit];
        taylor[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Self::from_parts(taylor, sample_count, analytic_radius))
    }

    /// Real-coefficient convenience wrapper around [`Self::from_taylor`].
    pub fn from_real_taylor(coeffs: &[f64], sample_count: usize, analytic_radius: f64) -> Result<Self> {
        let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_taylor(&c, sample_count, analytic_radius)
    }

    pub fn constant(value: Complex64, sample_count: usize) -> Result<Self> {
        Self::from_taylor(&[value], sample_count, UNBOUNDED_RADIUS)
    }

    pub fn zero(sample_count: usize) -> Result<Self> {
        Self::constant(Complex64::new(0.0, 0.0), sample_count)
    }

    /// Builds a function from raw grid samples, rejecting them when their
    /// negative-frequency content exceeds the analyticity tolerance.
    pub fn from_samples(samples: Vec<Complex64>, analytic_radius: f64) -> Result<Self> {
        Self::from_samples_with_scale(samples, analytic_radius, 0.0)
    }

    /// As [`Self::from_samples`], measuring the tolerance against
    /// `max(scale, max |sample|)`. Results of cancellation (a Toeplitz
    /// image that is nearly zero, say) pass the scale of their inputs.
    pub fn from_samples_with_scale(samples: Vec<Complex64>, analytic_radius: f64, scale: f64) -> Result<Self> {
        let sample_count = samples.len();
        check_sample_count(sample_count)?;
        check_radius(analytic_radius)?;
        let coeffs = spectral::analyze(&samples);
        let energy = spectral::negative_energy(&coeffs);
        let tolerance = ANALYTICITY_TOLERANCE * scale.max(spectral::max_modulus(&samples));
        if energy.is_nan() || energy > tolerance {
            return Err(Error::NotAnalytic { energy, tolerance });
        }
        let mut taylor = coeffs;
        taylor.truncate(sample_count / 2);
        Ok(Self::from_parts(taylor, sample_count, analytic_radius))
    }

    fn from_parts(taylor: Vec<Complex64>, sample_count: usize, analytic_radius: f64) -> Self {
        let samples = spectral::synthesize(&taylor, sample_count);
        BoundaryFunction {
            samples,
            taylor,
            analytic_radius,
        }
    }

    #[inline]
    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    #[inline]
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    #[inline]
    pub fn taylor(&self) -> &[Complex64] {
        &self.taylor
    }

    #[inline]
    pub fn analytic_radius(&self) -> f64 {
        self.analytic_radius
    }

    /// Overrides the declared radius of analyticity (needed after division,
    /// where the caller knows more than the samples do).
    pub fn with_analytic_radius(mut self, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        self.analytic_radius = radius;
        Ok(self)
    }

    /// Largest sample modulus.
    pub fn max_modulus(&self) -> f64 {
        spectral::max_modulus(&self.samples)
    }

    /// Horner evaluation of the Taylor polynomial at an interior point.
    pub fn eval_inside(&self, z: DiskPoint) -> Complex64 {
        horner(&self.taylor, z.value())
    }

    /// `f_r(z) = f(rz)`.
    pub fn dilate(&self, r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= self.analytic_radius) {
            return Err(Error::DilationOutOfRange {
                r,
                radius: self.analytic_radius,
            });
        }
        let mut power = 1.0;
        let mut taylor = Vec::with_capacity(self.taylor.len());
        for &a in &self.taylor {
            let scaled = if a == Complex64::new(0.0, 0.0) { a } else { a * power };
            if !(scaled.re.is_finite() && scaled.im.is_finite()) {
                return Err(Error::DilationOverflow(r));
            }
            taylor.push(scaled);
            power *= r;
        }
        Ok(Self::from_parts(taylor, self.sample_count(), self.analytic_radius / r))
    }

    /// Taylor coefficients of `f_r`, without resynthesis. Used by the area
    /// quadratures, which only ever shrink.
    pub(crate) fn dilated_samples(&self, r: f64) -> Vec<Complex64> {
        debug_assert!(r > 0.0 && r <= 1.0);
        let mut power = 1.0;
        let taylor: Vec<Complex64> = self
            .taylor
            .iter()
            .map(|&a| {
                let v = a * power;
                power *= r;
                v
            })
            .collect();
        spectral::synthesize(&taylor, self.sample_count())
    }
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn check_sample_count(m: usize) -> Result<()> {
    if spectral::is_valid_sample_count(m) {
        Ok(())
    } else {
        Err(Error::BadSampleCount(m))
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r >= 1.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::BadRadius(r))
    }
}

/// Orthogonal projection onto the nonnegative frequencies.
pub fn riesz_project(samples: &[Complex64]) -> Result<BoundaryFunction> {
    check_sample_count(samples.len())?;
    let mut taylor = spectral::analyze(samples);
    taylor.truncate(samples.len() / 2);
    Ok(BoundaryFunction::from_parts(taylor, samples.len(), 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Sample-wise arithmetic. The result must itself be analytic; a quotient
/// gets analytic radius 1 unless the caller overrides it afterwards.
pub fn pointwise_combine(f: &BoundaryFunction, g: &BoundaryFunction, op: CombineOp) -> Result<BoundaryFunction> {
    if f.sample_count() != g.sample_count() {
        return Err(Error::SampleCountMismatch(f.sample_count(), g.sample_count()));
    }
    let (fs, gs) = (f.samples(), g.samples());
    let (fmax, gmax) = (f.max_modulus(), g.max_modulus());
    let radius = f.analytic_radius.min(g.analytic_radius);
    let (samples, scale, radius): (Vec<Complex64>, f64, f64) = match op {
        CombineOp::Add => (fs.iter().zip(gs).map(|(a, b)| a + b).collect(), fmax.max(gmax), radius),
        CombineOp::Sub => (fs.iter().zip(gs).map(|(a, b)| a - b).collect(), fmax.max(gmax), radius),
        CombineOp::Mul => (fs.iter().zip(gs).map(|(a, b)| a * b).collect(), fmax * gmax, radius),
        CombineOp::Div => {
            let mut min_div = f64::INFINITY;
            for (index, b) in gs.iter().enumerate() {
                let modulus = b.norm();
                if modulus < MIN_DIVISOR {
                    return Err(Error::NearZeroDivisor { index, modulus });
                }
                min_div = min_div.min(modulus);
            }
            (fs.iter().zip(gs).map(|(a, b)| a / b).collect(), fmax / min_div, 1.0)
        }
    };
    BoundaryFunction::from_samples_with_scale(samples, radius, scale)
}

/// Discrete pairing `<f, g>` of two functions on the same grid.
pub fn pairing(f: &BoundaryFunction, g: &BoundaryFunction) -> Complex64 {
    spectral::pairing(f.samples(), g.samples())
}

/// On-disk form: `{sample_count, analytic_radius, taylor: [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryFunctionRecord {
    pub sample_count: usize,
    pub analytic_radius: f64,
    pub taylor: Vec<Complex64>,
}

impl From<&BoundaryFunction> for BoundaryFunctionRecord {
    fn from(f: &BoundaryFunction) -> Self {
        BoundaryFunctionRecord {
            sample_count: f.sample_count(),
            analytic_radius: f.analytic_radius,
            taylor: f.taylor.clone(),
        }
    }
}

impl TryFrom<BoundaryFunctionRecord> for BoundaryFunction {
    type Error = Error;

    fn try_from(rec: BoundaryFunctionRecord) -> Result<Self> {
        BoundaryFunction::from_taylor(&rec.taylor, rec.sample_count, rec.analytic_radius)
    }
}

impl Serialize for BoundaryFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BoundaryFunctionRecord::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BoundaryFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = BoundaryFunctionRecord::deserialize(deserializer)?;
        BoundaryFunction::try_from(rec).map_err(serde::de::Error::custom)
    }
}
