//! Special-function kernels against independent oracles and identities.

use std::f64::consts::PI;

use coulomb::specfun::{
    airy, airy_pair, airy_scaled, bessel_i1_k1, bessel_scaled, gamma_one_plus_iy, kummer_laplace_split,
    kummer_m_series, log_gamma, theta_phase, theta_phase_stirling, SplitOptions,
};
use num_complex::Complex64;
use proptest::prelude::*;

/// Frozen high-precision Airy values: (x, Ai·e^ζ, Bi·e^{−ζ}, Ai′·e^ζ, Bi′·e^{−ζ}).
const AIRY_REF: &[(f64, f64, f64, f64, f64)] = &[
    (-100.0, 0.1767533932395529, 0.02427388768016013, -0.2422970316605838, 1.7675948932340608),
    (-50.0, -0.1618814236123209, -0.13715015212882006, 0.968989837276749, -1.1453617002654777),
    (-20.0, -0.1764061270779847, -0.20013930932265134, 0.8928628567364713, -0.7914290338395364),
    (-9.5, 0.3191032477191282, 0.0377854324894665, -0.10809531881187123, 0.9847140700021197),
    (-7.9, 0.041701883617386706, -0.33387856300304697, 0.9400429980262802, 0.10670215481213721),
    (-6.0, -0.3291451736298231, -0.14669837667055705, 0.3459354872813429, -0.812898785105067),
    (-4.0, -0.07026553294928951, 0.3922347057069993, -0.7906285753685813, -0.1166705674383409),
    (-3.2, -0.4174434205641514, -0.05390575563053915, 0.06503114699526291, -0.7541245533108414),
    (-2.9, -0.341905095672983, -0.26258499816469705, 0.42118281160364845, -0.6075182879710967),
    (-1.3, 0.512272006041031, -0.07576964415034072, 0.17199180675377407, 0.5959297494090112),
    (0.7, 0.27951256676812114, 0.6587080754582292, -0.2953066751809787, 0.4428745223754216),
    (2.9, 0.2121888473975894, 0.44386268289896985, -0.37781597372085507, 0.7097992014809177),
    (3.1, 0.20901333935083727, 0.43514565602632704, -0.38331474186536507, 0.7248922094675736),
    (4.4, 0.1927413942931902, 0.3944165564988058, -0.4146050282520338, 0.803059452802776),
    (6.5, 0.17561043019266195, 0.35568337591227883, -0.4542403578106181, 0.8925673837832114),
    (7.9, 0.1675002301770016, 0.3381659071114658, -0.4759524675951977, 0.9394553552030047),
    (8.1, 0.1664835743987419, 0.33599652536886926, -0.47882789534700976, 0.9455910450388341),
    (12.0, 0.15119256068463707, 0.3039054138807329, -0.5268505009124518, 1.046329038508012),
    (25.0, 0.12605216203160696, 0.2525248792945538, -0.631515103441848, 1.2600863670598752),
    (30.0, 0.12045939663973669, 0.24122445526882688, -0.6607833325212036, 1.3192228350679096),
];

/// Frozen scaled Bessel values: (x, e^{−x}I₁, e^{x}K₁, e^{−x}I₀, e^{x}K₀).
const BESSEL_REF: &[(f64, f64, f64, f64, f64)] = &[
    (1e-05, 4.999950000312499e-06, 100000.99994435512, 0.9999900000749996, 11.628973270095617),
    (0.3, 0.1123775606398388, 4.12515776224447, 0.7575806251825479, 1.8526273007720142),
    (0.99, 0.20740348795792476, 1.6477055552521314, 0.4683535654951166, 1.1494128703415314),
    (1.01, 0.2084023606566035, 1.6248142221175983, 0.4631964291133192, 1.1395785704889894),
    (2.0, 0.21526928924893765, 1.0334768470686886, 0.30850832255367105, 0.8415682150707714),
    (5.5, 0.15770100901675652, 0.5690479743890509, 0.17448325638192988, 0.5233247315524157),
    (19.5, 0.08857608609431485, 0.28919403285359757, 0.09093943209515648, 0.2820502832156702),
    (20.5, 0.08647411349408725, 0.2818002960624662, 0.08866442901574524, 0.27516703550431326),
    (40.0, 0.062482229074442064, 0.20000996725443349, 0.06327827987523534, 0.19755558495729816),
    (150.0, 0.032491896388848945, 0.10258797256926121, 0.03260074788391805, 0.10224771116019105),
];

/// Frozen log Γ(z) values on the continuous branch: (Re z, Im z, Re, Im).
const LOG_GAMMA_REF: &[(f64, f64, f64, f64)] = &[
    (1.0, 1.0, -0.6509231993018564, -0.3016403204675332),
    (0.3, -2.0, -2.359449355937571, 0.9169076135186698),
    (2.5, 40.0, -54.534374880387965, 110.64783073708783),
    (1.0, 1000.0, -1566.4235106222009, 5908.5405938121985),
    (0.01, 0.02, 3.7944367207828296, -1.1183633070517474),
    (7.0, -3.0, 5.910758224213458, -5.718156648176319),
];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Independent log-gamma oracle: Stirling series at z + 10 followed by
/// downward recurrence log Γ(z) = log Γ(z+10) − Σ log(z+k).
fn stirling_log_gamma(z: Complex64) -> Complex64 {
    let w = z + 10.0;
    // Bernoulli coefficients B_{2k}/(2k(2k−1)).
    let c = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let mut s = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln();
    let w2 = w * w;
    let mut pw = w;
    for ck in c {
        s += ck / pw;
        pw *= w2;
    }
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..10 {
        shift += (z + k as f64).ln();
    }
    s - shift
}

#[test]
fn log_gamma_matches_frozen_high_precision_values() {
    for &(re, im, vr, vi) in LOG_GAMMA_REF {
        let v = log_gamma(Complex64::new(re, im)).unwrap();
        let tol = 1e-13 * (1.0 + vr.abs().max(vi.abs()));
        assert!((v.re - vr).abs() < tol && (v.im - vi).abs() < tol, "z = {re}+{im}i: {v}");
    }
}

#[test]
fn log_gamma_one_plus_i_against_stirling_recurrence_oracle() {
    let z = Complex64::new(1.0, 1.0);
    let d = log_gamma(z).unwrap() - stirling_log_gamma(z);
    assert!(d.norm() < 1e-13, "difference {d}");
}

#[test]
fn log_gamma_imaginary_part_is_continuous() {
    let mut prev = log_gamma(Complex64::new(0.6, -300.0)).unwrap().im;
    let mut y = -300.0;
    while y < 300.0 {
        y += 0.05;
        let v = log_gamma(Complex64::new(0.6, y)).unwrap().im;
        // |d/dy Im log Γ| = |Re ψ| ≲ log|z| + 1, so steps of 0.05 move < 1.
        assert!((v - prev).abs() < 1.0, "jump at y = {y}: {prev} -> {v}");
        prev = v;
    }
}

#[test]
fn gamma_polar_argument_matches_log_gamma_at_ten() {
    let g = gamma_one_plus_iy(10.0).unwrap();
    let lg = stirling_log_gamma(Complex64::new(1.0, 10.0));
    assert!((g.argument - lg.im).abs() < 1e-10);
    assert!((g.log_modulus - lg.re).abs() < 1e-10);
}

#[test]
fn theta_phase_small_sigma_expansion() {
    let s = 0.02;
    let direct = theta_phase(s).unwrap();
    let expected = -(0.04f64).ln() / 0.04 - 25.0 + PI / 4.0 - 0.02 / 6.0;
    assert!((direct - expected).abs() <= 10.0 * s * s * s);
    assert!((theta_phase_stirling(s) - expected).abs() < 1e-12);
    let t1 = theta_phase(1.0).unwrap();
    assert!((t1 - stirling_log_gamma(Complex64::new(1.0, 0.5)).im).abs() < 1e-13);
}

#[test]
fn theta_phase_remainder_order_at_least_three() {
    // Fit log|θ − Stirling form| against log σ on [0.005, 0.05].
    let sig: Vec<f64> = (0..12).map(|i| 0.005 * 10f64.powf(i as f64 / 11.0)).collect();
    let pts: Vec<(f64, f64)> = sig
        .iter()
        .map(|&s| (s.ln(), (theta_phase(s).unwrap() - theta_phase_stirling(s)).abs().ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!(slope >= 3.0 - 0.05, "remainder order {slope}");
}

#[test]
fn airy_matches_frozen_values_across_all_branches() {
    for &(x, ai, bi, dai, dbi) in AIRY_REF {
        let s = airy_scaled(x).unwrap();
        // Absolute accuracy relative to the local modulus on the oscillatory side.
        let scale_a = (ai * ai + bi * bi).sqrt();
        let scale_d = (dai * dai + dbi * dbi).sqrt();
        for (got, want, sc) in [(s.ai, ai, scale_a), (s.bi, bi, scale_a), (s.dai, dai, scale_d), (s.dbi, dbi, scale_d)] {
            assert!((got - want).abs() <= 1e-10 * sc, "x = {x}: {got} vs {want}");
        }
    }
}

#[test]
fn airy_at_zero_and_product_asymptotics() {
    let p = airy_pair(0.0).unwrap();
    // Maclaurin oracle at 0: Ai(0) = 3^{-2/3}/Γ(2/3).
    let g23 = log_gamma(Complex64::new(2.0 / 3.0, 0.0)).unwrap().re.exp();
    assert!(rel(p.ai, 3f64.powf(-2.0 / 3.0) / g23) < 1e-14);
    let q = airy_pair(10.0).unwrap();
    let lead = 1.0 / (2.0 * PI * 10f64.sqrt());
    assert!(rel(q.ai * q.bi, lead) < 0.05);
}

#[test]
fn airy_branches_agree_in_overlap_bands() {
    for x in [-8.0, -7.99, -3.0, -2.99, 2.99, 3.0, 7.99, 8.0] {
        let s = airy_scaled(x).unwrap();
        let m = airy::maclaurin(x);
        if x.abs() <= 3.0 {
            let z = if x > 0.0 { 2.0 / 3.0 * x.powf(1.5) } else { 0.0 };
            assert!((s.ai - m.ai * z.exp()).abs() < 1e-12);
        }
        // Wronskian holds on both sides of each seam.
        assert!((s.ai * s.dbi - s.dai * s.bi - 1.0 / PI).abs() < 1e-11, "x = {x}");
    }
}

#[test]
fn bessel_matches_frozen_values() {
    for &(x, i1, k1, i0, k0) in BESSEL_REF {
        let s = bessel_scaled(x).unwrap();
        for (got, want) in [(s.i1, i1), (s.k1, k1), (s.i0, i0), (s.k0, k0)] {
            assert!(rel(got, want) < 1e-12, "x = {x}: {got} vs {want}");
        }
    }
}

#[test]
fn bessel_limits_and_asymptotic_product() {
    let b = bessel_i1_k1(1e-6).unwrap();
    assert!((b.i1 / 1e-6 - 0.5).abs() < 1e-12);
    let b = bessel_i1_k1(1.0).unwrap();
    assert!((b.i1 * b.dk1 - b.di1 * b.k1 + 1.0).abs() < 1e-13);
    let b = bessel_i1_k1(20.0).unwrap();
    assert!(rel(b.i1 * b.k1, 1.0 / 40.0) < 0.03);
}

#[test]
fn kummer_series_against_exponential_identity_guarded_region() {
    let a = Complex64::new(0.5, 0.25);
    for z in [Complex64::new(1.0, 2.0), Complex64::new(-3.0, 0.5), Complex64::new(0.0, -4.0)] {
        let m = kummer_m_series(a, a, z, 1e-15).unwrap();
        assert!((m / z.exp() - 1.0).norm() < 1e-12);
    }
}

#[test]
fn laplace_split_reconstructs_direct_quadrature() {
    // Direct Gauss–Legendre quadrature of ∫₀¹ e^{2iσrs}s^{-iη}(1−s)^{iη}ds after
    // the endpoint-smoothing substitution s = (1 − cos πv)/2.
    let (sigma, r) = (1.0, 30.0);
    let eta = 0.5 / sigma;
    let rule = coulomb::quad::gl32();
    let panels = 400;
    let mut direct = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let a = p as f64 / panels as f64;
        let b = (p + 1) as f64 / panels as f64;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let v = 0.5 * (a + b) + 0.5 * (b - a) * x;
            let s = 0.5 * (1.0 - (PI * v).cos());
            let ds = 0.5 * PI * (PI * v).sin();
            let f = Complex64::from_polar(1.0, 2.0 * sigma * r * s - eta * s.ln() + eta * (1.0 - s).ln());
            direct += f * ds * (0.5 * (b - a) * w);
        }
    }
    let split = kummer_laplace_split(sigma, r, SplitOptions::default()).unwrap();
    let total = split.total(sigma, r);
    assert!((total - direct).norm() < 1e-8, "{total} vs {direct}");
}

#[test]
fn laplace_split_remainder_is_order_one_over_sigma_r() {
    let sigma = 2.0;
    let mut worst = 0.0f64;
    for i in 0..12 {
        let r = 5.0 * 10f64.powf(i as f64 / 11.0 * 2.0); // 5 … 500
        let s = kummer_laplace_split(sigma, r, SplitOptions::default()).unwrap();
        worst = worst.max(s.tb_plus.norm() * sigma * r);
    }
    assert!(worst <= 10.0, "C = {worst}");
    let s = kummer_laplace_split(sigma, 50.0, SplitOptions::default()).unwrap();
    assert!(s.tb_plus.norm() * sigma * 50.0 <= 10.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn airy_wronskian_is_one_over_pi(x in -100.0f64..30.0) {
        let s = airy_scaled(x).unwrap();
        prop_assert!((s.ai * s.dbi - s.dai * s.bi - 1.0 / PI).abs() < 1e-10);
    }

    #[test]
    fn bessel_wronskian_is_minus_one_over_x(x in 1e-3f64..200.0) {
        let s = bessel_scaled(x).unwrap();
        // Scalings cancel in the product I·K.
        let di1 = s.i0 - s.i1 / x;
        let dk1 = -s.k0 - s.k1 / x;
        prop_assert!(((s.i1 * dk1 - di1 * s.k1) * x + 1.0).abs() < 1e-10);
    }

    #[test]
    fn gamma_modulus_reflection(y in 1e-6f64..50.0) {
        let g = gamma_one_plus_iy(y).unwrap();
        let lhs = (2.0 * g.log_modulus + (PI * y).sinh().ln() - (PI * y).ln()).exp();
        prop_assert!((lhs - 1.0).abs() < 1e-10);
    }

    #[test]
    fn kummer_confluent_identity(ar in -2.0f64..2.0, ai in -2.0f64..2.0, zr in -4.0f64..4.0, zi in -4.0f64..4.0) {
        let a = Complex64::new(ar, ai);
        prop_assume!((a + 0.0).norm() > 0.05 && (0..5).all(|k| (a + k as f64).norm() > 0.05));
        let z = Complex64::new(zr, zi);
        let m = kummer_m_series(a, a, z, 1e-15).unwrap();
        prop_assert!((m / z.exp() - 1.0).norm() < 1e-10);
    }
}
