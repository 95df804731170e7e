//! Regression anchors and cross-module checks for the expansion.

use fbp_core::fnspace::UNBOUNDED_RADIUS;
use fbp_core::{
    cauchy_kernel, convergence_study, expansion_coefficients, make_sequence, partial_sum, BoundaryFunction, Complex64,
    DiskPoint, Error, NormSpec,
};

fn exp_truncation() -> BoundaryFunction {
    let mut coeffs = vec![1.0];
    for k in 1..=20 {
        coeffs.push(coeffs[k - 1] / k as f64);
    }
    BoundaryFunction::from_real_taylor(&coeffs, 2048, UNBOUNDED_RADIUS).unwrap()
}

#[test]
fn exp_residual_anchor() {
    // Residuals converge, but slowly: roughly like n^-1.2 over 30..60.
    let seq = make_sequence("harmonic-shifted", 60).unwrap();
    let r = expansion_coefficients(&exp_truncation(), &seq, 60).unwrap();
    let res = &r.residual_sup_norms;
    assert!((res[59] - 1.646757691e-2).abs() < 1e-10, "{:.12e}", res[59]);
    let rate = (res[29] / res[59]).ln() / 2f64.ln();
    assert!(rate > 1.1 && rate < 1.4, "{rate}");
    assert!(res.windows(2).skip(10).all(|w| w[1] < w[0]));
    assert!(r.remainder_identity_gap < 1e-12);
}

#[test]
fn kernel_residual_anchor() {
    let seq = make_sequence("harmonic-shifted", 60).unwrap();
    let k = cauchy_kernel(DiskPoint::real(0.3).unwrap(), 2048).unwrap();
    let r = expansion_coefficients(&k, &seq, 60).unwrap();
    assert!(
        (r.residual_sup_norms[59] - 1.0838e-3).abs() < 1e-6,
        "{:.12e}",
        r.residual_sup_norms[59]
    );
}

#[test]
fn quadratic_expansion_decreases() {
    let seq = make_sequence("harmonic-shifted", 32).unwrap();
    let f = BoundaryFunction::from_real_taylor(&[0.0, 0.0, 1.0], 2048, UNBOUNDED_RADIUS).unwrap();
    let r = expansion_coefficients(&f, &seq, 32).unwrap();
    assert_eq!(r.coefficients.len(), 32);
    let res = &r.residual_sup_norms;
    assert!(res[31] < res[0]);
    assert!(res[31] < 0.5 * res[3]);
}

#[test]
fn partial_sum_interpolates() {
    let seq = make_sequence("harmonic", 12).unwrap();
    let f = BoundaryFunction::from_taylor(
        &[
            Complex64::new(0.2, 1.0),
            Complex64::new(-0.5, 0.1),
            Complex64::new(0.0, 0.7),
        ],
        1024,
        UNBOUNDED_RADIUS,
    )
    .unwrap();
    let r = expansion_coefficients(&f, &seq, 12).unwrap();
    let s = partial_sum(&r, 12, 1024).unwrap();
    for &p in seq.points() {
        assert!((s.eval_inside(p) - f.eval_inside(p)).norm() < 1e-10);
    }
}

#[test]
fn convergence_matches_expansion() {
    let seq = make_sequence("harmonic-shifted", 25).unwrap();
    let f = exp_truncation();
    let r = expansion_coefficients(&f, &seq, 25).unwrap();
    let t = convergence_study(&f, &seq, 25, &[NormSpec::hardy(2.0).unwrap()]).unwrap();
    let sup = t.column("sup").unwrap();
    assert_eq!(sup.len(), 26);
    assert!((sup[0] - std::f64::consts::E).abs() < 1e-7);
    for (a, b) in sup[1..].iter().zip(&r.residual_sup_norms) {
        assert_eq!(a, b);
    }
}

#[test]
fn json_shape() {
    let seq = make_sequence("explicit:[0.5,0.7]", 2).unwrap();
    let b1 = fbp_core::FiniteBlaschkeProduct::new(vec![DiskPoint::real(0.5).unwrap()])
        .as_function(256)
        .unwrap();
    let r = expansion_coefficients(&b1, &seq, 2)
        .unwrap()
        .with_description("blaschke:0.5");
    let v = serde_json::to_value(&r).unwrap();
    for key in [
        "sequence",
        "coefficients",
        "residual_sup_norms",
        "remainder_identity_gap",
        "meta",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["meta"]["function"], "blaschke:0.5");
    assert_eq!(v["sequence"]["kind"], "non_blaschke");
}

#[test]
fn precondition_errors() {
    let k = cauchy_kernel(DiskPoint::real(0.3).unwrap(), 256).unwrap();
    let geometric = make_sequence("geometric:0.5", 8).unwrap();
    let e = expansion_coefficients(&k, &geometric, 8).unwrap_err();
    assert!(!e.is_numerical());
    let harmonic = make_sequence("harmonic", 4).unwrap();
    assert!(matches!(
        expansion_coefficients(&k, &harmonic, 5),
        Err(Error::PrefixTooShort {
            requested: 5,
            available: 4
        })
    ));
}
