//! Expansion of `f` in the finite Blaschke products `B_0, B_1, ...` of a
//! non-Blaschke sequence.
//!
//! With `h_0 = f` and `h_n = T_{conj(b_{lambda_n})} h_{n-1}` (so that
//! `h_n = T_{conj(B_n)} f`), the coefficients are
//!
//! ```text
//! c_n = h_n(lambda_{n+1}) - conj(lambda_n) h_{n-1}(lambda_n),   B_{-1} = 0,
//! ```
//!
//! and the remainder after `N` terms has the closed form
//! `R_N f = (h_N - conj(lambda_N) h_{N-1}(lambda_N)) B_N`.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::blaschke::{blaschke_factor, pole_radius, PointSequence};
use crate::error::{Error, Result};
use crate::fnspace::{BoundaryFunction, DiskPoint};
use crate::norms::{mean_power, BergmanQuadrature, NormSpec, EMBEDDING_CONSTANT, EMBEDDING_SLACK};
use crate::report::sig12;
use crate::spectral::{max_modulus, unit_grid};
use crate::toeplitz::toeplitz_factor_apply;

/// Allowed drift between `f - S_N f` and the closed-form remainder,
/// relative to `||f||_inf`.
pub const IDENTITY_GAP_LIMIT: f64 = 1e-8;

/// Smallest admissible diagonal entry `B_{k-1}(lambda_k)`.
pub const MIN_DIAGONAL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionMeta {
    pub sample_count: usize,
    pub function: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionResult {
    pub sequence: PointSequence,
    pub coefficients: Vec<Complex64>,
    /// `||R_n f||_inf` for `n = 1..=N`.
    pub residual_sup_norms: Vec<f64>,
    pub remainder_identity_gap: f64,
    pub meta: ExpansionMeta,
}

impl ExpansionResult {
    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.meta.function = description.into();
        self
    }
}

/// State handed to a visitor after the `n`-th Toeplitz step.
struct Step<'a> {
    n: usize,
    lambda: DiskPoint,
    /// `h_{n-1}(lambda_n)`.
    pivot: Complex64,
    /// `h_n`.
    iterate: &'a BoundaryFunction,
    /// `B_{n-1}` and `B_n` on the grid.
    prev_product: &'a [Complex64],
    product: &'a [Complex64],
}

impl Step<'_> {
    /// Grid values of `R_n f / B_n = h_n - conj(lambda_n) h_{n-1}(lambda_n)`.
    fn remainder_quotient(&self) -> Vec<Complex64> {
        let shift = self.lambda.conj() * self.pivot;
        self.iterate.samples().iter().map(|s| s - shift).collect()
    }

    fn remainder(&self) -> Vec<Complex64> {
        self.remainder_quotient()
            .into_iter()
            .zip(self.product)
            .map(|(g, b)| g * b)
            .collect()
    }
}

fn run_chain(
    f: &BoundaryFunction,
    seq: &PointSequence,
    steps: usize,
    mut visit: impl FnMut(&Step<'_>) -> Result<()>,
) -> Result<()> {
    seq.require(steps)?;
    let grid = unit_grid(f.sample_count());
    let mut iterate = f.clone();
    let mut product = vec![Complex64::new(1.0, 0.0); grid.len()];
    for n in 1..=steps {
        let lambda = seq.point(n);
        let pivot = iterate.eval_inside(lambda);
        let next = toeplitz_factor_apply(&iterate, lambda).map_err(|e| Error::AnalyticityDegraded {
            step: n,
            source: Box::new(e),
        })?;
        let prev_product = product.clone();
        product
            .iter_mut()
            .zip(&grid)
            .for_each(|(b, &z)| *b *= blaschke_factor(lambda, z));
        iterate = next;
        visit(&Step {
            n,
            lambda,
            pivot,
            iterate: &iterate,
            prev_product: &prev_product,
            product: &product,
        })?;
    }
    Ok(())
}

/// The first `terms` expansion coefficients of `f`, with sup norms of the
/// closed-form remainders and the drift between `f - S_n f` and `R_n f`.
pub fn expansion_coefficients(f: &BoundaryFunction, seq: &PointSequence, terms: usize) -> Result<ExpansionResult> {
    seq.require_non_blaschke()?;
    if terms == 0 {
        return Err(Error::InvalidArgument("expansion needs at least one term".into()));
    }
    let mut coefficients = Vec::with_capacity(terms);
    let mut residual_sup_norms = Vec::with_capacity(terms);
    let mut partial = vec![Complex64::new(0.0, 0.0); f.sample_count()];
    let mut gap: f64 = 0.0;
    let mut prev_pivot: Option<(DiskPoint, Complex64)> = None;

    run_chain(f, seq, terms, |step| {
        // c_{n-1} = h_{n-1}(lambda_n) - conj(lambda_{n-1}) h_{n-2}(lambda_{n-1})
        let c = match prev_pivot {
            None => step.pivot,
            Some((lam, p)) => step.pivot - lam.conj() * p,
        };
        prev_pivot = Some((step.lambda, step.pivot));
        coefficients.push(c);
        partial.iter_mut().zip(step.prev_product).for_each(|(s, b)| *s += c * b);

        let remainder = step.remainder();
        residual_sup_norms.push(max_modulus(&remainder));
        let drift = f
            .samples()
            .iter()
            .zip(&partial)
            .zip(&remainder)
            .map(|((fs, s), r)| (fs - s - r).norm())
            .fold(0.0, f64::max);
        gap = gap.max(drift);
        Ok(())
    })?;

    let limit = IDENTITY_GAP_LIMIT * f.max_modulus();
    if gap > limit {
        return Err(Error::IdentityGap { gap, limit });
    }
    Ok(ExpansionResult {
        sequence: seq.clone(),
        coefficients,
        residual_sup_norms,
        remainder_identity_gap: gap,
        meta: ExpansionMeta {
            sample_count: f.sample_count(),
            function: String::new(),
        },
    })
}

/// `S_n f = sum_{k<n} c_k B_k` on a grid of `sample_count` points.
pub fn partial_sum(result: &ExpansionResult, n: usize, sample_count: usize) -> Result<BoundaryFunction> {
    if n > result.coefficients.len() {
        return Err(Error::PrefixTooShort {
            requested: n,
            available: result.coefficients.len(),
        });
    }
    if n == 0 {
        return BoundaryFunction::zero(sample_count);
    }
    let grid = unit_grid(sample_count);
    let mut product = vec![Complex64::new(1.0, 0.0); sample_count];
    let mut sum = vec![Complex64::new(0.0, 0.0); sample_count];
    let mut radius = crate::fnspace::UNBOUNDED_RADIUS;
    for (k, &c) in result.coefficients[..n].iter().enumerate() {
        if k > 0 {
            let lam = result.sequence.point(k);
            radius = radius.min(pole_radius(lam));
            product
                .iter_mut()
                .zip(&grid)
                .for_each(|(b, &z)| *b *= blaschke_factor(lam, z));
        }
        sum.iter_mut().zip(&product).for_each(|(s, b)| *s += c * b);
    }
    let scale: f64 = result.coefficients[..n].iter().map(|c| c.norm()).sum();
    BoundaryFunction::from_samples_with_scale(sum, radius, scale)
}

/// `R_N f = (-conj(lambda_N) (T_{conj(B_{N-1})} f)(lambda_N) + T_{conj(B_N)} f) B_N`.
pub fn remainder_closed_form(f: &BoundaryFunction, seq: &PointSequence, n: usize) -> Result<BoundaryFunction> {
    if n == 0 {
        return Err(Error::InvalidArgument("closed-form remainder needs N >= 1".into()));
    }
    let mut samples = Vec::new();
    run_chain(f, seq, n, |step| {
        if step.n == n {
            samples = step.remainder();
        }
        Ok(())
    })?;
    let radius = seq.points()[..n]
        .iter()
        .map(|&p| pole_radius(p))
        .fold(f.analytic_radius(), f64::min);
    BoundaryFunction::from_samples_with_scale(samples, radius, f.max_modulus())
}

/// `|B_{k-1}(lambda_k)|` for `k = 1..=count`, the diagonal of the
/// interpolation system.
pub fn triangular_diagonal(seq: &PointSequence, count: usize) -> Result<Vec<f64>> {
    seq.require(count)?;
    Ok((1..=count)
        .map(|k| {
            let z = seq.point(k).value();
            seq.points()[..k - 1]
                .iter()
                .fold(Complex64::new(1.0, 0.0), |acc, &lam| acc * blaschke_factor(lam, z))
                .norm()
        })
        .collect())
}

/// Solves `sum_{n<k} a_n B_n(lambda_k) = f(lambda_k)` for `k = 1..=K` by
/// forward substitution.
pub fn triangular_reconstruct(values: &[Complex64], seq: &PointSequence) -> Result<Vec<Complex64>> {
    seq.require(values.len())?;
    let mut solution: Vec<Complex64> = Vec::with_capacity(values.len());
    let mut row = Vec::with_capacity(values.len());
    for (i, &v) in values.iter().enumerate() {
        let z = seq.point(i + 1).value();
        // row[j] = B_j(lambda_{i+1}), j = 0..=i
        row.clear();
        row.push(Complex64::new(1.0, 0.0));
        for j in 1..=i {
            let prev = row[j - 1];
            row.push(prev * blaschke_factor(seq.point(j), z));
        }
        let diagonal = row[i];
        if diagonal.norm() < MIN_DIAGONAL {
            return Err(Error::SingularDiagonal {
                index: i + 1,
                modulus: diagonal.norm(),
            });
        }
        let known: Complex64 = row[..i].iter().zip(&solution).map(|(a, x)| a * x).sum();
        solution.push((v - known) / diagonal);
    }
    Ok(solution)
}

/// `(|B_{n-1}(alpha)| + |B_n(alpha)|) / (1 - |alpha|)`, the sup-norm bound on
/// `R_n k_alpha`, with `B_{-1} = 0`.
pub fn kernel_remainder_bound(seq: &PointSequence, alpha: DiskPoint, n: usize) -> Result<f64> {
    seq.require(n)?;
    let decay = crate::blaschke::pointwise_decay_check(seq, alpha, n)?;
    let prev = if n == 0 { 0.0 } else { decay[n - 1] };
    Ok((prev + decay[n]) / (1.0 - alpha.norm()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub values: Vec<f64>,
}

/// Remainder norms `||R_n f||_X` for `n = 0..=N`, one column per norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub columns: Vec<String>,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.values[idx]).collect())
    }

    /// Appends the kernel bound column `bound` for `f = k_alpha`.
    pub fn with_kernel_bound(mut self, seq: &PointSequence, alpha: DiskPoint) -> Result<Self> {
        let n_max = self.rows.last().map_or(0, |r| r.n);
        let decay = crate::blaschke::pointwise_decay_check(seq, alpha, n_max)?;
        let denom = 1.0 - alpha.norm();
        for row in &mut self.rows {
            let prev = if row.n == 0 { 0.0 } else { decay[row.n - 1] };
            row.values.push((prev + decay[row.n]) / denom);
        }
        self.columns.push("bound".to_string());
        Ok(self)
    }

    /// CSV with header `n,<columns>`, 12 significant digits, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n");
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{}", row.n);
            for v in &row.values {
                out.push(',');
                out.push_str(&sig12(*v));
            }
            out.push('\n');
        }
        out
    }
}

enum Column {
    Sup,
    Hardy(f64),
    Bergman {
        p: f64,
        rule: BergmanQuadrature,
        /// `B_n(r_i zeta_j)` per radial node.
        interior: Vec<Vec<Complex64>>,
    },
}

impl Column {
    fn new(spec: &NormSpec, grid: &[Complex64]) -> Self {
        match *spec {
            NormSpec::Sup => Column::Sup,
            NormSpec::Hardy { p } => Column::Hardy(p),
            NormSpec::Bergman { p, alpha, radial_nodes } => {
                let rule = BergmanQuadrature::new(alpha, radial_nodes);
                let interior = rule
                    .radii()
                    .iter()
                    .map(|_| vec![Complex64::new(1.0, 0.0); grid.len()])
                    .collect();
                let _ = grid;
                Column::Bergman { p, rule, interior }
            }
        }
    }

    fn advance(&mut self, lambda: DiskPoint, grid: &[Complex64]) {
        if let Column::Bergman { rule, interior, .. } = self {
            for (values, &r) in interior.iter_mut().zip(rule.radii()) {
                values
                    .iter_mut()
                    .zip(grid)
                    .for_each(|(b, &z)| *b *= blaschke_factor(lambda, r * z));
            }
        }
    }

    /// Norm of `R = g B_n` where `g` is given by its Taylor-coefficient
    /// carrier `quotient` and `boundary` are the grid values of `R`.
    fn evaluate(&self, quotient: &BoundaryFunction, shift: Complex64, boundary: &[Complex64]) -> f64 {
        match self {
            Column::Sup => max_modulus(boundary),
            Column::Hardy(p) => mean_power(boundary, *p).powf(1.0 / p),
            Column::Bergman { p, rule, interior } => rule
                .integrate(|i| {
                    let inner: Vec<Complex64> = quotient
                        .dilated_samples(rule.radii()[i])
                        .into_iter()
                        .zip(&interior[i])
                        .map(|(g, b)| (g - shift) * b)
                        .collect();
                    mean_power(&inner, *p)
                })
                .powf(1.0 / p),
        }
    }
}

/// Tabulates `||R_n f||_X` for `n = 0..=n_max` (`R_0 f = f`) in the sup norm
/// followed by every other requested norm, and checks that each column is
/// dominated by `C_0` times the sup column.
pub fn convergence_study(
    f: &BoundaryFunction,
    seq: &PointSequence,
    n_max: usize,
    norms: &[NormSpec],
) -> Result<ConvergenceTable> {
    seq.require_non_blaschke()?;
    let grid = unit_grid(f.sample_count());
    let mut specs = vec![NormSpec::Sup];
    specs.extend(norms.iter().filter(|s| !matches!(s, NormSpec::Sup)).copied());
    let mut columns: Vec<Column> = specs.iter().map(|s| Column::new(s, &grid)).collect();
    let names: Vec<String> = specs.iter().map(|s| s.to_string()).collect();

    let zero = Complex64::new(0.0, 0.0);
    let first = columns.iter().map(|c| c.evaluate(f, zero, f.samples())).collect();
    let mut rows = vec![ConvergenceRow { n: 0, values: first }];

    run_chain(f, seq, n_max, |step| {
        columns.iter_mut().for_each(|c| c.advance(step.lambda, &grid));
        let boundary = step.remainder();
        let shift = step.lambda.conj() * step.pivot;
        let values = columns
            .iter()
            .map(|c| c.evaluate(step.iterate, shift, &boundary))
            .collect();
        rows.push(ConvergenceRow { n: step.n, values });
        Ok(())
    })?;

    for row in &rows {
        let bound = EMBEDDING_CONSTANT * row.values[0] + EMBEDDING_SLACK;
        for (name, &value) in names.iter().zip(&row.values).skip(1) {
            if value > bound {
                return Err(Error::EmbeddingViolated {
                    column: name.clone(),
                    n: row.n,
                    value,
                    bound,
                });
            }
        }
    }
    Ok(ConvergenceTable { columns: names, rows })
}
