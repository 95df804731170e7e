//! Blaschke factors, finite Blaschke products, Cauchy kernels and the point
//! sequences that generate them.
//!
//! Sequence specs accepted by [`make_sequence`]:
//!
//! * `harmonic[:step]`: `lambda_n = (1 - 1/(n+1)) exp(i n step)`, step
//!   defaulting to the golden angle. Non-Blaschke.
//! * `harmonic-shifted`: `lambda_n = 1 - 1/(n+2)`. Non-Blaschke.
//! * `geometric:q`, `0 < q < 1`: `lambda_n = 1 - q^n`. Blaschke.
//! * `explicit:[z1, z2, ...]`: the listed points, in order.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fnspace::{BoundaryFunction, DiskPoint, UNBOUNDED_RADIUS};
use crate::parse::parse_complex;
use crate::spectral::unit_grid;

/// Points closer than this count as duplicates.
pub const DISTINCTNESS_TOLERANCE: f64 = 1e-10;

const MIN_DENOMINATOR: f64 = 1e-14;

/// `b_lambda(z) = (lambda - z) / (1 - conj(lambda) z)` for `|z| <= 1`.
#[inline]
pub fn blaschke_factor(lambda: DiskPoint, z: Complex64) -> Complex64 {
    let lam = lambda.value();
    let den = 1.0 - lam.conj() * z;
    assert!(
        den.norm() >= MIN_DENOMINATOR,
        "degenerate Blaschke factor denominator at lambda = {lam}, z = {z}"
    );
    (lam - z) / den
}

/// `k_lambda(z) = 1 / (1 - conj(lambda) z)`.
#[inline]
pub fn kernel_value(lambda: DiskPoint, z: Complex64) -> Complex64 {
    1.0 / (1.0 - lambda.conj() * z)
}

/// Radius of analyticity of a rational function with a pole at `1/conj(lambda)`.
pub(crate) fn pole_radius(lambda: DiskPoint) -> f64 {
    let r = lambda.norm();
    if r == 0.0 {
        UNBOUNDED_RADIUS
    } else {
        (1.0 / r).min(UNBOUNDED_RADIUS)
    }
}

/// The Cauchy (Szego) kernel sampled on the grid; `taylor[k] = conj(lambda)^k`.
pub fn cauchy_kernel(lambda: DiskPoint, sample_count: usize) -> Result<BoundaryFunction> {
    let samples = unit_grid(sample_count)
        .iter()
        .map(|&z| kernel_value(lambda, z))
        .collect();
    BoundaryFunction::from_samples(samples, pole_radius(lambda))
}

/// `B(z) = prod_k b_{lambda_k}(z)`; the empty product is `B_0 = 1`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FiniteBlaschkeProduct {
    zeros: Vec<DiskPoint>,
}

impl FiniteBlaschkeProduct {
    pub fn new(zeros: Vec<DiskPoint>) -> Self {
        FiniteBlaschkeProduct { zeros }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn zeros(&self) -> &[DiskPoint] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &lam| acc * blaschke_factor(lam, z))
    }

    /// Raw values on the grid, without any analyticity bookkeeping.
    pub fn grid_values(&self, sample_count: usize) -> Vec<Complex64> {
        unit_grid(sample_count).iter().map(|&z| self.eval(z)).collect()
    }

    pub fn analytic_radius(&self) -> f64 {
        self.zeros
            .iter()
            .map(|&z| pole_radius(z))
            .fold(UNBOUNDED_RADIUS, f64::min)
    }

    pub fn as_function(&self, sample_count: usize) -> Result<BoundaryFunction> {
        if self.degree() > sample_count / 4 {
            return Err(Error::DegreeTooLarge {
                degree: self.degree(),
                sample_count,
            });
        }
        BoundaryFunction::from_samples(self.grid_values(sample_count), self.analytic_radius())
    }

    /// The product with one more factor appended.
    pub fn with_zero(&self, lambda: DiskPoint) -> Self {
        let mut zeros = self.zeros.clone();
        zeros.push(lambda);
        FiniteBlaschkeProduct { zeros }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    NonBlaschke,
    Blaschke,
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::NonBlaschke => f.write_str("non-Blaschke"),
            SequenceKind::Blaschke => f.write_str("Blaschke"),
        }
    }
}

/// A finite prefix `lambda_1..lambda_K` of a point sequence.
///
/// `kind` and `modulus_tends_to_one` describe the infinite sequence the
/// generator stands for; neither is inferred from the prefix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SequenceRecord")]
pub struct PointSequence {
    kind: SequenceKind,
    generator_tag: String,
    modulus_tends_to_one: bool,
    points: Vec<DiskPoint>,
}

#[derive(Deserialize)]
struct SequenceRecord {
    kind: SequenceKind,
    generator_tag: String,
    #[serde(default)]
    modulus_tends_to_one: bool,
    points: Vec<DiskPoint>,
}

impl TryFrom<SequenceRecord> for PointSequence {
    type Error = Error;

    fn try_from(rec: SequenceRecord) -> Result<Self> {
        check_distinct(&rec.points)?;
        Ok(PointSequence {
            kind: rec.kind,
            generator_tag: rec.generator_tag,
            modulus_tends_to_one: rec.modulus_tends_to_one,
            points: rec.points,
        })
    }
}

impl PointSequence {
    /// An explicit finite list. It is treated as the prefix of some
    /// non-Blaschke sequence, with no claim about `|lambda_n| -> 1`.
    pub fn explicit(points: Vec<DiskPoint>) -> Result<Self> {
        check_distinct(&points)?;
        Ok(PointSequence {
            kind: SequenceKind::NonBlaschke,
            generator_tag: "explicit".to_string(),
            modulus_tends_to_one: false,
            points,
        })
    }

    pub fn points(&self) -> &[DiskPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn generator_tag(&self) -> &str {
        &self.generator_tag
    }

    pub fn modulus_tends_to_one(&self) -> bool {
        self.modulus_tends_to_one
    }

    /// `lambda_n`, 1-based.
    pub fn point(&self, n: usize) -> DiskPoint {
        self.points[n - 1]
    }

    /// `B_n` built from the first `n` points.
    pub fn product(&self, n: usize) -> Result<FiniteBlaschkeProduct> {
        self.require(n)?;
        Ok(FiniteBlaschkeProduct::new(self.points[..n].to_vec()))
    }

    pub(crate) fn require(&self, n: usize) -> Result<()> {
        if n > self.len() {
            Err(Error::PrefixTooShort {
                requested: n,
                available: self.len(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_non_blaschke(&self) -> Result<()> {
        match self.kind {
            SequenceKind::NonBlaschke => Ok(()),
            SequenceKind::Blaschke => Err(Error::BlaschkeSequence(self.generator_tag.clone())),
        }
    }
}

fn check_distinct(points: &[DiskPoint]) -> Result<()> {
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate().skip(i + 1) {
            if (a.value() - b.value()).norm() < DISTINCTNESS_TOLERANCE {
                return Err(Error::DuplicatePoints {
                    first: i + 1,
                    second: j + 1,
                });
            }
        }
    }
    Ok(())
}

/// `2 pi (1 - 1/phi)`.
pub fn golden_angle() -> f64 {
    PI * (3.0 - 5f64.sqrt())
}

/// Generates the first `count` points of the sequence described by `spec`.
/// Explicit lists keep their own length unless `count` is shorter.
pub fn make_sequence(spec: &str, count: usize) -> Result<PointSequence> {
    let spec = spec.trim();
    let unknown = || Error::UnknownSequence(spec.to_string());
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (spec, None),
    };
    let (kind, tag, tends, points) = match (name, arg) {
        ("harmonic", arg) => {
            let step = match arg {
                None => golden_angle(),
                Some(a) => a.parse::<f64>().ok().filter(|s| s.is_finite()).ok_or_else(unknown)?,
            };
            let points = (1..=count)
                .map(|n| {
                    let r = 1.0 - 1.0 / (n as f64 + 1.0);
                    DiskPoint::new(Complex64::from_polar(r, step * n as f64))
                })
                .collect::<Result<Vec<_>>>()?;
            (SequenceKind::NonBlaschke, format!("harmonic:{step}"), true, points)
        }
        ("harmonic-shifted", None) => {
            let points = (1..=count)
                .map(|n| DiskPoint::real(1.0 - 1.0 / (n as f64 + 2.0)))
                .collect::<Result<Vec<_>>>()?;
            (SequenceKind::NonBlaschke, "harmonic-shifted".to_string(), true, points)
        }
        ("geometric", Some(a)) => {
            let q: f64 = a.parse().ok().filter(|q| *q > 0.0 && *q < 1.0).ok_or_else(unknown)?;
            let points = (1..=count)
                .map(|n| DiskPoint::real(1.0 - q.powi(n as i32)))
                .collect::<Result<Vec<_>>>()?;
            (SequenceKind::Blaschke, format!("geometric:{q}"), true, points)
        }
        ("explicit", Some(a)) => {
            let inner = a
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(unknown)?;
            let mut points = inner
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_complex(s).and_then(DiskPoint::new))
                .collect::<Result<Vec<_>>>()?;
            if points.is_empty() {
                return Err(unknown());
            }
            check_distinct(&points)?;
            points.truncate(count.max(1).min(points.len()));
            return PointSequence::explicit(points);
        }
        _ => return Err(unknown()),
    };
    check_distinct(&points)?;
    Ok(PointSequence {
        kind,
        generator_tag: tag,
        modulus_tends_to_one: tends,
        points,
    })
}

/// `sum_{k<=n} (1+|lambda_k|)/(1-|lambda_k|)`, the largest angular
/// derivative of `arg B_n` on the circle. Grid functions built from `B_n`
/// need `M/2` well above this.
pub fn phase_bandwidth(seq: &PointSequence, n: usize) -> Result<f64> {
    seq.require(n)?;
    Ok(seq.points()[..n]
        .iter()
        .map(|p| (1.0 + p.norm()) / (1.0 - p.norm()))
        .sum())
}

/// Smallest power of two, at least `floor`, with `M >= 8 * phase_bandwidth`.
pub fn recommended_sample_count(seq: &PointSequence, n: usize, floor: usize) -> Result<usize> {
    let needed = (8.0 * phase_bandwidth(seq, n)?).ceil() as usize;
    Ok(needed.max(floor).max(crate::fnspace::MIN_SAMPLES).next_power_of_two())
}

/// `|B_n(z)|` for `n = 0..=n_max`.
pub fn pointwise_decay_check(seq: &PointSequence, z: DiskPoint, n_max: usize) -> Result<Vec<f64>> {
    seq.require(n_max)?;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    out.push(1.0);
    for &lam in &seq.points()[..n_max] {
        acc *= blaschke_factor(lam, z.value());
        out.push(acc.norm());
    }
    Ok(out)
}
