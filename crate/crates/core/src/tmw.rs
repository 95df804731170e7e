//! The orthonormal system `e_n = sqrt(1-|lambda_n|^2) B_{n-1} k_{lambda_n}`,
//! the point-evaluation functional `Lambda_N f = (T_{conj(B_{N-1})} f)(lambda_N)`
//! and finite truncations of a lacunary function on which the `Lambda_N`
//! grow without bound.

use num_complex::Complex64;
use serde::Serialize;

use crate::blaschke::{blaschke_factor, kernel_value, pole_radius, PointSequence};
use crate::error::{Error, Result};
use crate::fnspace::{BoundaryFunction, DiskPoint, UNBOUNDED_RADIUS};
use crate::spectral::{self, unit_grid};
use crate::toeplitz::toeplitz_factor_apply;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TMWElement {
    pub index: usize,
    pub pole: DiskPoint,
    pub function: BoundaryFunction,
}

/// Raw grid samples of `e_n`.
fn element_samples(seq: &PointSequence, n: usize, grid: &[Complex64]) -> Vec<Complex64> {
    let lam = seq.point(n);
    let norm = (1.0 - lam.norm().powi(2)).sqrt();
    grid.iter()
        .map(|&z| {
            let b = seq.points()[..n - 1]
                .iter()
                .fold(Complex64::new(1.0, 0.0), |acc, &p| acc * blaschke_factor(p, z));
            norm * b * kernel_value(lam, z)
        })
        .collect()
}

fn prefix_radius(seq: &PointSequence, n: usize) -> f64 {
    seq.points()[..n]
        .iter()
        .map(|&p| pole_radius(p))
        .fold(UNBOUNDED_RADIUS, f64::min)
}

fn require_index(seq: &PointSequence, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("TMW indices start at 1".into()));
    }
    seq.require(n)
}

pub fn tmw_element(seq: &PointSequence, n: usize, sample_count: usize) -> Result<TMWElement> {
    require_index(seq, n)?;
    if !spectral::is_valid_sample_count(sample_count) {
        return Err(Error::BadSampleCount(sample_count));
    }
    let samples = element_samples(seq, n, &unit_grid(sample_count));
    let function = BoundaryFunction::from_samples(samples, prefix_radius(seq, n))?;
    Ok(TMWElement {
        index: n,
        pole: seq.point(n),
        function,
    })
}

/// `sum_n gamma_n e_n` for `n = 1..=gammas.len()`.
pub fn tmw_span(seq: &PointSequence, gammas: &[Complex64], sample_count: usize) -> Result<BoundaryFunction> {
    let terms: Vec<(usize, Complex64)> = gammas.iter().enumerate().map(|(i, &g)| (i + 1, g)).collect();
    combination(seq, &terms, sample_count)
}

fn combination(seq: &PointSequence, terms: &[(usize, Complex64)], sample_count: usize) -> Result<BoundaryFunction> {
    let top = terms.iter().map(|t| t.0).max().unwrap_or(0);
    seq.require(top)?;
    if !spectral::is_valid_sample_count(sample_count) {
        return Err(Error::BadSampleCount(sample_count));
    }
    let grid = unit_grid(sample_count);
    let mut sum = vec![Complex64::new(0.0, 0.0); sample_count];
    let mut scale = 0.0;
    for &(n, gamma) in terms {
        require_index(seq, n)?;
        let e = element_samples(seq, n, &grid);
        scale += gamma.norm() * spectral::max_modulus(&e);
        sum.iter_mut().zip(&e).for_each(|(s, v)| *s += gamma * v);
    }
    BoundaryFunction::from_samples_with_scale(sum, prefix_radius(seq, top.max(1).min(seq.len())), scale)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramMatrix {
    pub size: usize,
    pub sample_count: usize,
    pub entries: Vec<Vec<Complex64>>,
}

impl GramMatrix {
    pub fn max_identity_deviation(&self) -> f64 {
        self.deviation(true)
    }

    pub fn max_off_diagonal(&self) -> f64 {
        self.deviation(false)
    }

    fn deviation(&self, include_diagonal: bool) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                if i == j {
                    if include_diagonal {
                        worst = worst.max((g - 1.0).norm());
                    }
                } else {
                    worst = worst.max(g.norm());
                }
            }
        }
        worst
    }
}

/// Discrete `H^2` inner products `<e_i, e_j>` for `i, j = 1..=K`.
pub fn gram_matrix(seq: &PointSequence, k: usize, sample_count: usize) -> Result<GramMatrix> {
    seq.require(k)?;
    if !spectral::is_valid_sample_count(sample_count) {
        return Err(Error::BadSampleCount(sample_count));
    }
    let grid = unit_grid(sample_count);
    let elements: Vec<Vec<Complex64>> = (1..=k).map(|n| element_samples(seq, n, &grid)).collect();
    let entries = elements
        .iter()
        .map(|ei| elements.iter().map(|ej| spectral::pairing(ei, ej)).collect())
        .collect();
    Ok(GramMatrix {
        size: k,
        sample_count,
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctionalNorm {
    pub quadrature: f64,
    pub closed_form: f64,
}

/// `||Lambda_N|| = ||B_{N-1} k_{lambda_N}||_2`, by quadrature and by
/// `1/sqrt(1-|lambda_N|^2)`.
pub fn functional_norm(seq: &PointSequence, n: usize, sample_count: usize) -> Result<FunctionalNorm> {
    require_index(seq, n)?;
    if !spectral::is_valid_sample_count(sample_count) {
        return Err(Error::BadSampleCount(sample_count));
    }
    let scale = (1.0 - seq.point(n).norm().powi(2)).sqrt();
    let samples = element_samples(seq, n, &unit_grid(sample_count));
    let mean = samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / sample_count as f64;
    Ok(FunctionalNorm {
        quadrature: mean.sqrt() / scale,
        closed_form: 1.0 / scale,
    })
}

/// Index set carrying the lacunary coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSupport {
    /// `2, 4, 8, ...` up to `K`.
    PowersOfTwo,
    Explicit(Vec<usize>),
}

impl WitnessSupport {
    pub fn resolve(&self, k: usize) -> Result<Vec<usize>> {
        match self {
            WitnessSupport::PowersOfTwo => Ok(std::iter::successors(Some(2usize), |m| m.checked_mul(2))
                .take_while(|&m| m <= k)
                .collect()),
            WitnessSupport::Explicit(list) => {
                let mut out = list.clone();
                out.sort_unstable();
                out.dedup();
                if let Some(&bad) = out.iter().find(|&&n| n == 0 || n > k) {
                    return Err(Error::SupportOutOfRange { index: bad, max: k });
                }
                Ok(out)
            }
        }
    }
}

impl std::str::FromStr for WitnessSupport {
    type Err = Error;

    /// `pow2` or a comma-separated index list.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "pow2" {
            return Ok(WitnessSupport::PowersOfTwo);
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(WitnessSupport::Explicit)
            .map_err(|_| Error::InvalidArgument(format!("bad support `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub support: Vec<usize>,
    pub exponent: f64,
    /// `c_N = N^{-exponent}` on the support.
    pub coefficients: Vec<f64>,
    pub lambda_modulus: Vec<f64>,
    /// `|(T_{conj(B_{N-1})} f_K)(lambda_N)|` computed through the Toeplitz chain.
    pub values: Vec<f64>,
    /// `c_N / sqrt(1-|lambda_N|^2)`.
    pub closed_form: Vec<f64>,
    /// Running sums of `c_N^2`.
    pub l2_partial_sums: Vec<f64>,
    #[serde(skip)]
    pub function: BoundaryFunction,
}

impl WitnessReport {
    pub fn max_relative_deviation(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.closed_form)
            .map(|(v, c)| (v - c).abs() / c.abs())
            .fold(0.0, f64::max)
    }

    pub fn strictly_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] > w[0])
    }
}

/// `f_K = sum_{n in support} c_n e_n` with `c_n = n^{-exponent}`, and the
/// functional values `Lambda_N f_K` over the support.
pub fn lacunary_witness(
    seq: &PointSequence,
    k: usize,
    exponent: f64,
    support: &WitnessSupport,
    sample_count: usize,
) -> Result<WitnessReport> {
    seq.require_non_blaschke()?;
    if !seq.modulus_tends_to_one() {
        return Err(Error::ModulusNotTendingToOne(seq.generator_tag().to_string()));
    }
    if !exponent.is_finite() {
        return Err(Error::InvalidArgument(format!("bad exponent {exponent}")));
    }
    seq.require(k)?;
    let support = support.resolve(k)?;
    if support.is_empty() {
        return Err(Error::InvalidArgument(format!("empty support for K = {k}")));
    }
    let coefficients: Vec<f64> = support.iter().map(|&n| (n as f64).powf(-exponent)).collect();
    let terms: Vec<(usize, Complex64)> = support
        .iter()
        .zip(&coefficients)
        .map(|(&n, &c)| (n, Complex64::new(c, 0.0)))
        .collect();
    let function = combination(seq, &terms, sample_count)?;

    let lambda_modulus: Vec<f64> = support.iter().map(|&n| seq.point(n).norm()).collect();
    let closed_form = coefficients
        .iter()
        .zip(&lambda_modulus)
        .map(|(c, r)| c / (1.0 - r * r).sqrt())
        .collect();

    let mut values = Vec::with_capacity(support.len());
    let mut iterate = function.clone();
    let mut step = 1;
    for &n in &support {
        while step < n {
            iterate = toeplitz_factor_apply(&iterate, seq.point(step)).map_err(|e| Error::AnalyticityDegraded {
                step,
                source: Box::new(e),
            })?;
            step += 1;
        }
        values.push(iterate.eval_inside(seq.point(n)).norm());
    }

    let l2_partial_sums = coefficients
        .iter()
        .scan(0.0, |acc, c| {
            *acc += c * c;
            Some(*acc)
        })
        .collect();
    Ok(WitnessReport {
        support,
        exponent,
        coefficients,
        lambda_modulus,
        values,
        closed_form,
        l2_partial_sums,
        function,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blaschke::{cauchy_kernel, make_sequence};
    use crate::fnspace::pairing;
    use crate::norms::hardy_norm;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn explicit(points: &[f64]) -> PointSequence {
        PointSequence::explicit(points.iter().map(|&x| DiskPoint::real(x).unwrap()).collect()).unwrap()
    }

    #[test]
    fn element_examples() {
        let e = tmw_element(&explicit(&[0.0, 0.5]), 1, 256).unwrap();
        assert!(e.function.samples().iter().all(|s| (s - c(1.0, 0.0)).norm() < 1e-14));

        let e = tmw_element(&explicit(&[0.6]), 1, 1024).unwrap();
        let k = cauchy_kernel(DiskPoint::real(0.6).unwrap(), 1024).unwrap();
        for (a, b) in e.function.samples().iter().zip(k.samples()) {
            assert!((a - 0.8 * b).norm() < 1e-13);
        }
        assert!((hardy_norm(&e.function, 2.0) - 1.0).abs() < 1e-12);

        let seq = make_sequence("harmonic", 4).unwrap();
        let e2 = tmw_element(&seq, 2, 1024).unwrap();
        assert!(e2.function.eval_inside(seq.point(1)).norm() < 1e-12);
        assert!(tmw_element(&seq, 0, 1024).is_err());
        assert!(tmw_element(&seq, 5, 1024).is_err());
    }

    #[test]
    fn gram_examples() {
        let seq = make_sequence("harmonic", 12).unwrap();
        let g = gram_matrix(&seq, 1, 1024).unwrap();
        assert!((g.entries[0][0] - 1.0).norm() < 1e-8);
        let g = gram_matrix(&seq, 12, 8192).unwrap();
        assert!(g.max_identity_deviation() <= 1e-8, "{}", g.max_identity_deviation());
        assert!(g.entries[0][1].norm() <= 1e-8);
    }

    #[test]
    fn functional_norm_examples() {
        let f = functional_norm(&explicit(&[0.0]), 1, 256).unwrap();
        assert!((f.quadrature - 1.0).abs() < 1e-14 && (f.closed_form - 1.0).abs() < 1e-14);

        let f = functional_norm(&explicit(&[0.3, -0.2, 0.8]), 3, 2048).unwrap();
        assert!((f.closed_form - 1.0 / 0.6).abs() < 1e-12);
        assert!((f.quadrature - f.closed_form).abs() / f.closed_form < 1e-8);

        let seq = make_sequence("harmonic-shifted", 40).unwrap();
        let norms: Vec<f64> = (10..=40)
            .map(|n| functional_norm(&seq, n, 2048).unwrap().closed_form)
            .collect();
        assert!(norms.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn witness_examples() {
        let seq = make_sequence("harmonic-shifted", 32).unwrap();
        let single = lacunary_witness(&seq, 32, 0.0, &WitnessSupport::Explicit(vec![5]), 2048).unwrap();
        let lam = seq.point(5).norm();
        assert!((single.values[0] - 1.0 / (1.0 - lam * lam).sqrt()).abs() < 1e-9);

        let m = crate::blaschke::recommended_sample_count(&seq, 32, 2048).unwrap();
        assert_eq!(m, 16384);
        assert!(lacunary_witness(&seq, 32, 0.25, &WitnessSupport::PowersOfTwo, 2048).is_err());
        let w = lacunary_witness(&seq, 32, 0.25, &WitnessSupport::PowersOfTwo, m).unwrap();
        assert_eq!(w.support, vec![2, 4, 8, 16, 32]);
        assert!(w.strictly_increasing());
        assert!(w.max_relative_deviation() <= 1e-7, "{}", w.max_relative_deviation());
        for (&n, &v) in w.support.iter().zip(&w.closed_form) {
            let n = n as f64;
            let expect = n.powf(-0.25) * (n + 2.0) / (2.0 * n + 3.0).sqrt();
            assert!((v - expect).abs() < 1e-12 * expect);
        }
        let total: f64 = (1..=5).map(|k| 2f64.powf(-0.5 * k as f64)).sum();
        assert!((w.l2_partial_sums.last().unwrap() - total).abs() < 1e-14);
        assert!(total <= 2.0);
    }

    #[test]
    fn witness_errors() {
        let seq = make_sequence("harmonic-shifted", 16).unwrap();
        assert!(matches!(
            lacunary_witness(&seq, 16, 0.25, &WitnessSupport::Explicit(vec![3, 20]), 1024),
            Err(Error::SupportOutOfRange { index: 20, max: 16 })
        ));
        let fixed = explicit(&[0.1, 0.2, 0.3, 0.4]);
        assert!(matches!(
            lacunary_witness(&fixed, 4, 0.25, &WitnessSupport::PowersOfTwo, 1024),
            Err(Error::ModulusNotTendingToOne(_))
        ));
        assert_eq!("pow2".parse::<WitnessSupport>().unwrap(), WitnessSupport::PowersOfTwo);
        assert_eq!(
            "3, 9".parse::<WitnessSupport>().unwrap(),
            WitnessSupport::Explicit(vec![3, 9])
        );
        assert!("x".parse::<WitnessSupport>().is_err());
    }

    #[test]
    fn cross_terms_cancel() {
        // Lambda_N e_n = delta_{nN}.
        let seq = make_sequence("harmonic-shifted", 12).unwrap();
        for big_n in [3, 7, 12] {
            for n in 1..=12 {
                let e = tmw_element(&seq, n, 2048).unwrap().function;
                let mut h = e;
                for step in 1..big_n {
                    h = toeplitz_factor_apply(&h, seq.point(step)).unwrap();
                }
                let value = h.eval_inside(seq.point(big_n));
                let lam = seq.point(big_n).norm();
                let expect = if n == big_n {
                    1.0 / (1.0 - lam * lam).sqrt()
                } else {
                    0.0
                };
                assert!((value - expect).norm() < 1e-8, "N={big_n} n={n}: {value}");
            }
        }
    }

    #[test]
    fn parseval_on_span() {
        let seq = make_sequence("harmonic", 10).unwrap();
        let gammas: Vec<Complex64> = (0..10).map(|k| c((k as f64).cos(), 0.3 * k as f64 - 1.0)).collect();
        let f = tmw_span(&seq, &gammas, 8192).unwrap();
        let lhs = pairing(&f, &f).re;
        let rhs: f64 = gammas.iter().map(|g| g.norm_sqr()).sum();
        assert!((lhs - rhs).abs() / rhs < 1e-7);
    }
}
