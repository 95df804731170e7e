//! Invariant suite behind `fbp selftest`. Names are `<module>.<invariant>`.

use fbp_core::corpus;
use fbp_core::schauder::kernel_remainder_bound;
use fbp_core::spectral::{self, unit_grid};
use fbp_core::tmw::tmw_span;
use fbp_core::{
    bergman_norm, blaschke_factor, cauchy_kernel, embedding_check, expansion_coefficients, functional_norm,
    gram_matrix, hardy_norm, hinf_remark_bound_check, kernel_value, lacunary_witness, make_sequence, pairing,
    partial_sum, recommended_sample_count, reconstruction_residual, remainder_closed_form, riesz_project, tmw_element,
    toeplitz_factor_apply, toeplitz_general_apply, toeplitz_product_apply, triangular_reconstruct, BoundaryFunction,
    Complex64, DiskPoint, FiniteBlaschkeProduct, NormSpec, Result, WitnessSupport,
};

type Check = fn(usize) -> Result<(bool, String)>;

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Non-analytic test vector with no structure to speak of.
fn scramble(m: usize, seed: f64) -> Vec<Complex64> {
    (0..m)
        .map(|j| {
            let t = j as f64;
            Complex64::new((seed * t * t + 0.3).sin(), (1.7 * seed * t + 0.1 * t * t).cos())
        })
        .collect()
}

fn verdict(worst: f64, limit: f64, what: &str) -> Result<(bool, String)> {
    Ok((worst <= limit, format!("{what} {worst:.3e} (limit {limit:.0e})")))
}

fn round_trip(m: usize) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for d in [1, 8, 32] {
        let f = corpus::polynomial(d, m)?;
        let back = spectral::analyze(f.samples());
        worst =
            worst.max(max_diff(f.taylor(), &back[..m / 2]) / f.taylor().iter().map(|c| c.norm()).fold(0.0, f64::max));
    }
    verdict(worst, 1e-12, "relative coefficient error")
}

fn idempotent(m: usize) -> Result<(bool, String)> {
    let once = riesz_project(&scramble(m, 0.37))?;
    let twice = riesz_project(once.samples())?;
    verdict(max_diff(once.taylor(), twice.taylor()), 1e-14, "P(P s) - P s")
}

fn self_adjoint(m: usize) -> Result<(bool, String)> {
    let (f, g) = (scramble(m, 0.37), scramble(m, 1.91));
    let lhs = spectral::pairing(riesz_project(&f)?.samples(), &g);
    let rhs = spectral::pairing(&f, riesz_project(&g)?.samples());
    verdict((lhs - rhs).norm(), 1e-12, "<Pf,g> - <f,Pg>")
}

fn dilation_symmetry(m: usize) -> Result<(bool, String)> {
    let f = corpus::polynomial(16, m)?;
    let g = cauchy_kernel(DiskPoint::new(Complex64::new(0.3, -0.4))?, m)?;
    let mut worst: f64 = 0.0;
    for r in [0.3, 0.7, 0.95] {
        worst = worst.max((pairing(&f.dilate(r)?, &g) - pairing(&f, &g.dilate(r)?)).norm());
    }
    verdict(worst, 1e-10, "<f_r,g> - <f,g_r>")
}

fn eval_pairing(m: usize) -> Result<(bool, String)> {
    let f = corpus::polynomial(24, m)?;
    let mut worst: f64 = 0.0;
    for z in corpus::points(20, 0.95) {
        worst = worst.max((f.eval_inside(z) - pairing(&f, &cauchy_kernel(z, m)?)).norm());
    }
    verdict(worst, 1e-10, "f(z) - <f,k_z>")
}

fn unimodular(m: usize) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for d in 1..=8 {
        let b = FiniteBlaschkeProduct::new(corpus::blaschke_zeros(d));
        worst = b
            .grid_values(m)
            .iter()
            .map(|v| (v.norm() - 1.0).abs())
            .fold(worst, f64::max);
    }
    verdict(worst, 1e-12, "||B| - 1|")
}

fn kernel_factor(_m: usize) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for lam in corpus::points(20, 0.99) {
        for z in corpus::points(20, 1.0 - 1e-9) {
            let v = (1.0 - lam.norm().powi(2)) * kernel_value(lam, z.value())
                + lam.conj() * blaschke_factor(lam, z.value());
            worst = worst.max((v - 1.0).norm());
        }
    }
    verdict(worst, 1e-13, "(1-|l|^2)k_l + conj(l) b_l - 1")
}

fn multiplicative(_m: usize) -> Result<(bool, String)> {
    let a = corpus::blaschke_zeros(5);
    let b = corpus::blaschke_zeros(3);
    let joint = FiniteBlaschkeProduct::new(a.iter().chain(&b).copied().collect());
    let (pa, pb) = (FiniteBlaschkeProduct::new(a), FiniteBlaschkeProduct::new(b));
    let worst = corpus::points(50, 1.0 - 1e-9)
        .iter()
        .map(|z| (joint.eval(z.value()) - pa.eval(z.value()) * pb.eval(z.value())).norm())
        .fold(0.0, f64::max);
    verdict(worst, 1e-13, "B_{a+b} - B_a B_b")
}

fn product_function(m: usize) -> Result<(bool, String)> {
    let b = FiniteBlaschkeProduct::new(corpus::blaschke_zeros(8));
    let f = b.as_function(m)?;
    let worst = corpus::points(100, 0.98)
        .iter()
        .map(|z| (f.eval_inside(*z) - b.eval(z.value())).norm())
        .fold(0.0, f64::max);
    verdict(worst, 1e-9, "Taylor vs product evaluation")
}

fn reconstruction(m: usize) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for e in corpus::functions(m)? {
        for lam in corpus::points(20, 0.9) {
            worst = worst.max(reconstruction_residual(&e.function, lam)? / e.function.max_modulus());
        }
    }
    verdict(worst, 1e-10, "relative residual")
}

fn eigen(m: usize) -> Result<(bool, String)> {
    let b = FiniteBlaschkeProduct::new(corpus::blaschke_zeros(6));
    let mut worst: f64 = 0.0;
    for alpha in corpus::points(10, 0.95) {
        let k = cauchy_kernel(alpha, m)?;
        let t = toeplitz_product_apply(&k, &b)?;
        let c = b.eval(alpha.value()).conj();
        let expect: Vec<Complex64> = k.samples().iter().map(|s| c * s).collect();
        worst = worst.max(max_diff(t.samples(), &expect));
    }
    verdict(worst, 1e-9, "T k_a - conj(B(a)) k_a")
}

fn cross_algorithm(m: usize) -> Result<(bool, String)> {
    let grid = unit_grid(m);
    let mut worst: f64 = 0.0;
    for e in corpus::functions(m)? {
        for lam in corpus::points(5, 0.9) {
            let symbol: Vec<Complex64> = grid.iter().map(|&z| blaschke_factor(lam, z)).collect();
            let p = toeplitz_general_apply(&e.function, &symbol)?;
            if !p.aliased {
                worst = worst.max(max_diff(
                    toeplitz_factor_apply(&e.function, lam)?.samples(),
                    p.function.samples(),
                ));
            }
        }
    }
    verdict(worst, 1e-9, "recurrence - projection")
}

fn commutativity(m: usize) -> Result<(bool, String)> {
    let f = corpus::polynomial(16, m)?;
    let pts = corpus::points(6, 0.9);
    let mut worst: f64 = 0.0;
    for pair in pts.windows(2) {
        let ab = toeplitz_factor_apply(&toeplitz_factor_apply(&f, pair[0])?, pair[1])?;
        let ba = toeplitz_factor_apply(&toeplitz_factor_apply(&f, pair[1])?, pair[0])?;
        worst = worst.max(max_diff(ab.samples(), ba.samples()));
    }
    verdict(worst, 1e-10, "T_a T_b - T_b T_a")
}

fn remark_equality(m: usize) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut holds = true;
    for e in corpus::functions(m)? {
        for lam in corpus::points(5, 0.9) {
            let c = hinf_remark_bound_check(&e.function, lam)?;
            holds &= c.holds;
            worst = worst.max(c.equality_gap / e.function.max_modulus());
        }
    }
    let (ok, detail) = verdict(worst, 1e-14, "grid-norm equality gap")?;
    Ok((ok && holds, format!("{detail}, bound holds: {holds}")))
}

fn telescoping(m: usize) -> Result<(bool, String)> {
    let seq = make_sequence("harmonic", 16)?;
    let mut worst: f64 = 0.0;
    for e in corpus::functions(m)?.iter().step_by(3) {
        for n in [1, 5, 16] {
            let r = expansion_coefficients(&e.function, &seq, n)?;
            let s = partial_sum(&r, n, m)?;
            let rem = remainder_closed_form(&e.function, &seq, n)?;
            let sum: Vec<Complex64> = s.samples().iter().zip(rem.samples()).map(|(a, b)| a + b).collect();
            worst = worst.max(max_diff(&sum, e.function.samples()) / e.function.max_modulus());
        }
    }
    verdict(worst, 1e-9, "f - S_N f - R_N f")
}

fn exactness(m: usize) -> Result<(bool, String)> {
    let seq = make_sequence("harmonic-shifted", 12)?;
    let gammas: Vec<Complex64> = (0..6)
        .map(|k| Complex64::new((k as f64).cos(), 0.5 - k as f64 * 0.2))
        .collect();
    let mut samples = vec![Complex64::new(0.0, 0.0); m];
    for (k, g) in gammas.iter().enumerate() {
        for (s, b) in samples.iter_mut().zip(seq.product(k)?.grid_values(m)) {
            *s += g * b;
        }
    }
    let f = BoundaryFunction::from_samples(samples, 1.0)?;
    let r = expansion_coefficients(&f, &seq, 12)?;
    let mut worst = max_diff(&r.coefficients[..6], &gammas);
    worst = r.coefficients[6..].iter().map(|c| c.norm()).fold(worst, f64::max);
    worst = r.residual_sup_norms[6..].iter().copied().fold(worst, f64::max);
    verdict(worst, 1e-9, "coefficient and tail error")
}

fn uniqueness(m: usize) -> Result<(bool, String)> {
    let seq = make_sequence("harmonic", 12)?;
    let f = corpus::polynomial(8, m)?;
    let r = expansion_coefficients(&f, &seq, 12)?;
    let s = partial_sum(&r, 12, m)?;
    let values: Vec<Complex64> = seq.points().iter().map(|&p| s.eval_inside(p)).collect();
    let back = triangular_reconstruct(&values, &seq)?;
    verdict(
        max_diff(&back, &r.coefficients),
        1e-9,
        "triangular solve vs coefficients",
    )
}

fn domination(m: usize) -> Result<(bool, String)> {
    let seq = make_sequence("harmonic-shifted", 10)?;
    let norms: Vec<NormSpec> = ["hardy:1", "hardy:3", "bergman:2:0", "bergman:1:1"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_>>()?;
    let f = cauchy_kernel(DiskPoint::new(Complex64::new(0.2, 0.5))?, m)?;
    // convergence_study itself rejects any violation.
    let table = fbp_core::convergence_study(&f, &seq, 10, &norms)?;
    let worst = table
        .rows
        .iter()
        .flat_map(|r| r.values[1..].iter().map(move |v| v - r.values[0]))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((worst <= 1e-10, format!("max(||R||_X - ||R||_inf) {worst:.3e}")))
}

fn kernel_bound(m: usize) -> Result<(bool, String)> {
    let seq = make_sequence("harmonic-shifted", 40)?;
    let alpha = DiskPoint::real(0.3)?;
    let r = expansion_coefficients(&cauchy_kernel(alpha, m)?, &seq, 40)?;
    let mut worst = f64::NEG_INFINITY;
    for (i, &v) in r.residual_sup_norms.iter().enumerate() {
        worst = worst.max(v - kernel_remainder_bound(&seq, alpha, i + 1)?);
    }
    Ok((worst <= 1e-9, format!("max(||R_n||_inf - bound) {worst:.3e}")))
}

fn unit_norm(m: usize) -> Result<(bool, String)> {
    let seq = make_sequence("harmonic", 12)?;
    let mut worst: f64 = 0.0;
    for n in 1..=12 {
        worst = worst.max((hardy_norm(&tmw_element(&seq, n, m)?.function, 2.0) - 1.0).abs());
    }
    verdict(worst, 1e-8, "| ||e_n||_2 - 1 |")
}

fn gram(m: usize) -> Result<(bool, String)> {
    let seq = make_sequence("harmonic", 12)?;
    verdict(gram_matrix(&seq, 12, m)?.max_identity_deviation(), 1e-8, "max |G - I|")
}

fn parseval(m: usize) -> Result<(bool, String)> {
    let seq = make_sequence("harmonic", 10)?;
    let gammas: Vec<Complex64> = (0..10)
        .map(|k| Complex64::new((k as f64).sin(), 1.0 / (1.0 + k as f64)))
        .collect();
    let f = tmw_span(&seq, &gammas, m)?;
    let rhs: f64 = gammas.iter().map(|g| g.norm_sqr()).sum();
    verdict((pairing(&f, &f).re - rhs).abs() / rhs, 1e-7, "relative Parseval gap")
}

fn functional(m: usize) -> Result<(bool, String)> {
    let seq = make_sequence("harmonic-shifted", 98)?;
    let mut worst: f64 = 0.0;
    for n in [1, 10, 50, 98] {
        let f = functional_norm(&seq, n, m)?;
        worst = worst.max((f.quadrature - f.closed_form).abs() / f.closed_form);
    }
    verdict(worst, 1e-8, "quadrature vs closed form")
}

fn witness(m: usize) -> Result<(bool, String)> {
    let seq = make_sequence("harmonic-shifted", 16)?;
    let m = recommended_sample_count(&seq, 16, m)?;
    let w = lacunary_witness(&seq, 16, 0.25, &WitnessSupport::PowersOfTwo, m)?;
    let (ok, detail) = verdict(w.max_relative_deviation(), 1e-7, "values vs c_N/sqrt(1-|l_N|^2)")?;
    Ok((
        ok && w.strictly_increasing(),
        format!("{detail}, increasing: {}", w.strictly_increasing()),
    ))
}

fn p_monotone(m: usize) -> Result<(bool, String)> {
    let mut worst = f64::NEG_INFINITY;
    for e in corpus::functions(m)? {
        let norms: Vec<f64> = [1.0, 1.5, 2.0, 3.0, 6.0]
            .iter()
            .map(|&p| hardy_norm(&e.function, p))
            .collect();
        worst = norms.windows(2).map(|w| w[0] - w[1]).fold(worst, f64::max);
    }
    Ok((worst <= 1e-10, format!("max(||f||_p1 - ||f||_p2) {worst:.3e}")))
}

fn embedding(m: usize) -> Result<(bool, String)> {
    let specs: Vec<NormSpec> = ["hardy:1", "hardy:4", "bergman:2:0", "bergman:3:1.5"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_>>()?;
    let mut all = true;
    for e in corpus::functions(m)? {
        for s in &specs {
            all &= embedding_check(&e.function, s).holds;
        }
    }
    Ok((all, format!("all corpus norms dominated by sup: {all}")))
}

fn kernel_hardy(m: usize) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for lam in corpus::points(20, 0.95) {
        let expect = 1.0 / (1.0 - lam.norm().powi(2)).sqrt();
        worst = worst.max((hardy_norm(&cauchy_kernel(lam, m)?, 2.0) - expect).abs());
    }
    verdict(worst, 1e-8, "||k_l||_2 - 1/sqrt(1-|l|^2)")
}

fn radial_convergence(m: usize) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for d in [4, 16, 32] {
        let f = corpus::polynomial(d, m)?;
        for alpha in [0.0, 1.0] {
            worst = worst.max((bergman_norm(&f, 2.0, alpha, 32) - bergman_norm(&f, 2.0, alpha, 64)).abs());
        }
    }
    verdict(worst, 1e-9, "node doubling change")
}

const INVARIANTS: [(&str, Check); 28] = [
    ("fnspace.round_trip", round_trip),
    ("fnspace.projection_idempotent", idempotent),
    ("fnspace.projection_self_adjoint", self_adjoint),
    ("fnspace.dilation_pairing_symmetry", dilation_symmetry),
    ("fnspace.eval_is_cauchy_pairing", eval_pairing),
    ("blaschke.unimodular", unimodular),
    ("blaschke.kernel_factor_identity", kernel_factor),
    ("blaschke.multiplicative", multiplicative),
    ("blaschke.function_matches_product", product_function),
    ("toeplitz.reconstruction_identity", reconstruction),
    ("toeplitz.eigen_relation", eigen),
    ("toeplitz.cross_algorithm", cross_algorithm),
    ("toeplitz.commutativity", commutativity),
    ("toeplitz.grid_norm_equality", remark_equality),
    ("schauder.telescoping", telescoping),
    ("schauder.exact_on_span", exactness),
    ("schauder.uniqueness", uniqueness),
    ("schauder.norm_domination", domination),
    ("schauder.kernel_bound", kernel_bound),
    ("tmw.unit_norm", unit_norm),
    ("tmw.gram_identity", gram),
    ("tmw.parseval", parseval),
    ("tmw.functional_norm", functional),
    ("tmw.witness_cross_terms", witness),
    ("norms.monotone_in_p", p_monotone),
    ("norms.embedding", embedding),
    ("norms.kernel_hardy_norm", kernel_hardy),
    ("norms.radial_convergence", radial_convergence),
];

/// Runs the matching invariants, printing one line each. Returns the name
/// of the first failure.
pub fn run(sample_count: usize, filter: Option<&str>) -> std::result::Result<(), String> {
    let mut first_failure = None;
    let mut ran = 0;
    for (name, check) in INVARIANTS.iter() {
        if filter.is_some_and(|f| !name.contains(f)) {
            continue;
        }
        ran += 1;
        let (ok, detail) = match check(sample_count) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok && first_failure.is_none() {
            first_failure = Some(name.to_string());
        }
    }
    if ran == 0 {
        println!("no invariant matches the filter");
    }
    match first_failure {
        None => Ok(()),
        Some(name) => Err(name),
    }
}
