use coulomb::transform::io::{read_complex_csv, read_profile, read_real_csv, write_complex_csv, write_profile, write_real_csv};
use coulomb::transform::*;
use coulomb::{Charge, CoulombError};
use num_complex::Complex64;
use proptest::prelude::*;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn bump_profile() -> RadialProfile {
    CorpusProfile::Bump12.sample(1.0 / 32.0).unwrap()
}

/// −u″ + (q/r)u by a 6th-order stencil on the analytic corpus function.
fn apply_h(p: CorpusProfile, q: f64, r: f64) -> f64 {
    let h = 2e-3;
    let u = |x: f64| p.eval(x);
    let d2 = (2.0 * u(r - 3.0 * h) - 27.0 * u(r - 2.0 * h) + 270.0 * u(r - h) - 490.0 * u(r) + 270.0 * u(r + h)
        - 27.0 * u(r + 2.0 * h)
        + 2.0 * u(r + 3.0 * h))
        / (180.0 * h * h);
    -d2 + q / r * u(r)
}

#[test]
fn forward_transform_is_linear() {
    let grid = SigmaGrid::new(30.0, 3.0).unwrap();
    let f = CorpusProfile::WaveletCos.sample(1.0 / 32.0).unwrap();
    let g = CorpusProfile::Dipole.sample(1.0 / 32.0).unwrap();
    let (a, b) = (0.7, -2.5);
    let h = f.combine(a, &g, b).unwrap();
    let (tf, tg, th) = (
        forward_transform(Charge::UNIT, &f, &grid).unwrap(),
        forward_transform(Charge::UNIT, &g, &grid).unwrap(),
        forward_transform(Charge::UNIT, &h, &grid).unwrap(),
    );
    let scale = tf.values.iter().chain(&tg.values).fold(0.0f64, |m, v| m.max(v.abs()));
    for i in 0..th.values.len() {
        assert!((th.values[i] - (a * tf.values[i] + b * tg.values[i])).abs() <= 1e-12 * scale);
    }
}

#[test]
fn transform_of_smooth_bump_decays_fast() {
    // Local maxima of |ĝ| over unit windows, fitted against log σ on [5, 50].
    let f = bump_profile();
    let grid = SigmaGrid::range(5.0, 50.0, 2.0).unwrap();
    let t = forward_transform(Charge::UNIT, &f, &grid).unwrap();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for k in 5..50 {
        let m = t
            .sigma_nodes
            .iter()
            .zip(&t.values)
            .filter(|(s, _)| **s >= k as f64 && **s < (k + 1) as f64)
            .fold(0.0f64, |m, (_, v)| m.max(v.abs()));
        xs.push((k as f64 + 0.5).ln());
        ys.push(m.ln());
    }
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
    assert!(slope <= -4.0, "decay exponent {slope}");
}

#[test]
fn round_trip_bump() {
    let f = bump_profile();
    let grid = SigmaGrid::new(DEFAULT_SIGMA_MAX, 2.0).unwrap();
    let t = forward_transform(Charge::UNIT, &f, &grid).unwrap();
    let back = inverse_transform(Charge::UNIT, &t, &f.nodes).unwrap();
    let diff = back.combine(1.0, &f, -1.0).unwrap();
    let rel = (diff.norm_sq() / f.norm_sq()).sqrt();
    assert!(rel <= 1e-6, "round trip L² error {rel}");
}

#[test]
fn zero_maps_to_zero() {
    let f = bump_profile();
    let z = f.combine(0.0, &f, 0.0).unwrap();
    let grid = SigmaGrid::new(20.0, 2.0).unwrap();
    let t = forward_transform(Charge::UNIT, &z, &grid).unwrap();
    assert!(t.values.iter().all(|v| *v == 0.0));
    let back = inverse_transform(Charge::UNIT, &t, &[0.5, 1.0, 1.5]).unwrap();
    assert!(back.values.iter().all(|v| *v == 0.0));
}

#[test]
fn charge_rescaling_of_the_transform() {
    // ĝ_q(σ) = q^{−1/2}·ĝ₁[u_{1/q}](σ/q), u_{1/q} the unitary dilation of u.
    let q = 2.0;
    let f = CorpusProfile::ShiftedNear.sample(1.0 / 32.0).unwrap();
    let sig = [0.4, 1.3, 2.8, 7.5];
    let direct = forward_transform(
        Charge::new(q).unwrap(),
        &f,
        &SigmaGrid { nodes: sig.to_vec(), weights: vec![1.0; 4], panel_width: 1.0 },
    )
    .unwrap();
    let scaled = forward_transform(
        Charge::UNIT,
        &f.dilate(1.0 / q),
        &SigmaGrid { nodes: sig.iter().map(|s| s / q).collect(), weights: vec![1.0; 4], panel_width: 1.0 },
    )
    .unwrap();
    for (a, b) in direct.values.iter().zip(&scaled.values) {
        assert!((a - b / q.sqrt()).abs() < 1e-12 * a.abs().max(1e-3), "{a} vs {}", b / q.sqrt());
    }
}

#[test]
fn round_trip_at_charge_two_matches_rescaled_unit_charge() {
    let q = 2.0;
    let f = bump_profile();
    let rt = |q: f64, f: &RadialProfile| {
        let c = Charge::new(q).unwrap();
        let grid = SigmaGrid::new(DEFAULT_SIGMA_MAX * q.max(1.0), f.support.1).unwrap();
        let t = forward_transform(c, f, &grid).unwrap();
        inverse_transform(c, &t, &f.nodes).unwrap()
    };
    let a = rt(q, &f);
    let b = rt(1.0, &f.dilate(1.0 / q)).dilate(q);
    for (x, y) in a.values.iter().zip(&b.values) {
        assert!((x - y).abs() < 1e-7);
    }
}

#[test]
fn plancherel_for_bump_and_disjoint_cross_term() {
    let f = bump_profile();
    let rep = plancherel_check(Charge::UNIT, &f, &PlancherelConfig::default()).unwrap();
    assert!(rep.rel_err <= 1e-6, "{rep:?}");
    assert!(rep.tail <= 1e-10);

    let support = (1.0, 3.0);
    let f1 = RadialProfile::from_fn(|r| bump(r, 1.0, 1.8, 3.0), support, 64).unwrap();
    let f2 = RadialProfile::from_fn(|r| bump(r, 2.2, 3.0, 3.0), support, 64).unwrap();
    let grid = SigmaGrid::new(200.0, 3.0).unwrap();
    let (t1, t2) = (
        forward_transform(Charge::UNIT, &f1, &grid).unwrap(),
        forward_transform(Charge::UNIT, &f2, &grid).unwrap(),
    );
    let cross = t1.dot(&t2).unwrap() / (t1.norm_sq() * t2.norm_sq()).sqrt();
    assert!(cross.abs() <= 1e-6, "cross term {cross}");
}

#[test]
fn plancherel_reports_unconverged_tail() {
    let f = bump_profile();
    let cfg = PlancherelConfig { sigma_start: 5.0, block: 5.0, sigma_cap: 10.0, ..Default::default() };
    match plancherel_check(Charge::UNIT, &f, &cfg) {
        Err(CoulombError::Convergence { achieved, .. }) => assert!(achieved > 1e-10),
        other => panic!("expected a convergence error, got {other:?}"),
    }
}

#[test]
fn resolution_guards() {
    let coarse = CorpusProfile::Bump12.sample(0.5).unwrap();
    let grid = SigmaGrid::new(60.0, 2.0).unwrap();
    assert!(matches!(forward_transform(Charge::UNIT, &coarse, &grid), Err(CoulombError::Resolution(_))));
    let f = bump_profile();
    let t = forward_transform(Charge::UNIT, &f, &grid).unwrap();
    let far: Vec<f64> = (1..=10).map(|i| 10.0 * i as f64).collect();
    assert!(matches!(inverse_transform(Charge::UNIT, &t, &far), Err(CoulombError::Resolution(_))));
    assert!(RadialProfile::from_fn(|r| r, (0.0, 1.0), 4).is_err());
}

#[test]
fn identity_calculus_and_energy_weight() {
    let p = CorpusProfile::WaveletCos;
    let f = p.sample(1.0 / 32.0).unwrap();
    let grid = SigmaGrid::new(120.0, 3.0).unwrap();
    let r_grid: Vec<f64> = (0..200).map(|i| 1.05 + 1.9 * i as f64 / 199.0).collect();

    let id = functional_calculus(Charge::UNIT, |_| ONE, &f, &grid, &r_grid).unwrap();
    let exact: Vec<Complex64> = r_grid.iter().map(|&r| Complex64::new(p.eval(r), 0.0)).collect();
    assert!(id.rel_l2_error(&exact).unwrap() <= 1e-6);

    let hf = functional_calculus(Charge::UNIT, |l| Complex64::new(l, 0.0), &f, &grid, &r_grid).unwrap();
    let oracle: Vec<Complex64> = r_grid.iter().map(|&r| Complex64::new(apply_h(p, 1.0, r), 0.0)).collect();
    let err = hf.rel_l2_error(&oracle).unwrap();
    assert!(err <= 1e-4, "F(λ) = λ error {err}");
}

#[test]
fn transform_diagonalizes_h_weakly() {
    let p = CorpusProfile::Dipole;
    let f = p.sample(1.0 / 32.0).unwrap();
    let hf = RadialProfile { values: f.nodes.iter().map(|&r| apply_h(p, 1.0, r)).collect(), ..f.clone() };
    let g = CorpusProfile::WaveletCos.sample(1.0 / 32.0).unwrap();
    let grid = SigmaGrid::new(150.0, 3.0).unwrap();
    let (th, tf, tg) = (
        forward_transform(Charge::UNIT, &hf, &grid).unwrap(),
        forward_transform(Charge::UNIT, &f, &grid).unwrap(),
        forward_transform(Charge::UNIT, &g, &grid).unwrap(),
    );
    let lhs = th.dot(&tg).unwrap();
    let weighted = TransformedProfile {
        values: tf.values.iter().zip(&tf.sigma_nodes).map(|(v, s)| v * s * s).collect(),
        ..tf.clone()
    };
    let rhs = weighted.dot(&tg).unwrap();
    assert!(((lhs - rhs) / rhs).abs() <= 1e-4, "{lhs} vs {rhs}");
    assert!(tf.density_at_nodes.iter().all(|d| *d >= 0.0));
    assert!(tf.sigma_nodes.iter().zip(&tf.density_at_nodes).filter(|(s, _)| **s > 0.1).all(|(_, d)| *d > 0.0));
}

fn g_at(z: Complex64, r: f64, s: f64) -> Complex64 {
    green_kernel(Charge::UNIT, z, r, s).unwrap().value
}

#[test]
fn green_kernel_solves_the_equation_off_diagonal() {
    let h = 1e-3;
    for z in [Complex64::new(1.0, 0.0), Complex64::new(0.7, 1.5)] {
        let s = 2.0;
        for r in [0.5, 1.2, 3.0, 5.0] {
            let g = |x: f64| g_at(z, x, s);
            let d2 = (-g(r - 2.0 * h) + 16.0 * g(r - h) - 30.0 * g(r) + 16.0 * g(r + h) - g(r + 2.0 * h)) / (12.0 * h * h);
            let res = -d2 + (1.0 / r + z * z) * g(r);
            let scale = d2.norm() + ((1.0 / r + z * z) * g(r)).norm();
            assert!(res.norm() <= 1e-5 * scale, "z = {z}, r = {r}: residual {}", res.norm() / scale);
        }
    }
}

#[test]
fn green_kernel_derivative_jump() {
    // One-sided 4th-order differences on each side of the diagonal.
    let h = 1e-3;
    for z in [Complex64::new(1.0, 0.0), Complex64::new(0.5, 2.0)] {
        for s in [0.7, 2.0] {
            let g = |x: f64| g_at(z, x, s);
            let right = (-25.0 * g(s) + 48.0 * g(s + h) - 36.0 * g(s + 2.0 * h) + 16.0 * g(s + 3.0 * h) - 3.0 * g(s + 4.0 * h)) / (12.0 * h);
            let left = (25.0 * g(s) - 48.0 * g(s - h) + 36.0 * g(s - 2.0 * h) - 16.0 * g(s - 3.0 * h) + 3.0 * g(s - 4.0 * h)) / (12.0 * h);
            let jump = left - right;
            assert!((jump - 1.0).norm() <= 1e-5, "z = {z}, s = {s}: jump {jump}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn green_kernel_is_symmetric(r in 0.05f64..8.0, s in 0.05f64..8.0, zr in 0.3f64..3.0, zi in -3.0f64..3.0) {
        let z = Complex64::new(zr, zi);
        let (a, b) = (g_at(z, r, s), g_at(z, s, r));
        prop_assert!((a - b).norm() <= 1e-8 * a.norm().max(1e-12));
    }
}

#[test]
fn resolvent_matches_functional_calculus() {
    let f = bump_profile();
    let r_grid: Vec<f64> = (1..=120).map(|i| 0.05 * i as f64).collect();
    let grid = SigmaGrid::new(DEFAULT_SIGMA_MAX, 6.0).unwrap();
    for z in [Complex64::new(1.0, 0.0), Complex64::new(0.8, 1.2)] {
        let direct = green_apply(Charge::UNIT, z, &f, &r_grid).unwrap();
        let fc = functional_calculus(Charge::UNIT, |l| 1.0 / (l + z * z), &f, &grid, &r_grid).unwrap();
        let err = fc.rel_l2_error(&direct).unwrap();
        assert!(err <= 1e-4, "z = {z}: {err}");
    }
    let q = Charge::new(2.0).unwrap();
    let z = Complex64::new(1.5, 0.5);
    let direct = green_apply(q, z, &f, &r_grid).unwrap();
    let grid2 = SigmaGrid::new(2.0 * DEFAULT_SIGMA_MAX, 6.0).unwrap();
    let fc = functional_calculus(q, |l| 1.0 / (l + z * z), &f, &grid2, &r_grid).unwrap();
    assert!(fc.rel_l2_error(&direct).unwrap() <= 1e-4);
    assert!(green_kernel(Charge::UNIT, Complex64::new(0.0, 1.0), 1.0, 1.0).is_err());
}

#[test]
fn csv_and_json_round_trips_are_lossless() {
    let dir = tempfile::tempdir().unwrap();
    let f = CorpusProfile::Chirp.sample(0.25).unwrap();
    let csv = dir.path().join("p.csv");
    write_profile(&csv, &f).unwrap();
    let back = read_profile(&csv).unwrap();
    assert_eq!(back.nodes, f.nodes);
    assert_eq!(back.values, f.values);
    let json = dir.path().join("p.json");
    write_profile(&json, &f).unwrap();
    assert_eq!(read_profile(&json).unwrap(), f);

    let xs = vec![1e-300, 0.1, 1.0 / 3.0, 12345.678901234567, 6.02e23];
    let ys = vec![-2.0f64.sqrt(), 1e-320, 0.0, -0.0, f64::MAX];
    let t = dir.path().join("s.csv");
    write_real_csv(&t, "sigma", &xs, &ys).unwrap();
    let rt = read_real_csv(&t).unwrap();
    assert_eq!((rt.x_name.as_str(), rt.xs, rt.ys), ("sigma", xs.clone(), ys.clone()));
    let vals: Vec<Complex64> = xs.iter().zip(&ys).map(|(a, b)| Complex64::new(*a, *b)).collect();
    let c = dir.path().join("c.csv");
    write_complex_csv(&c, &xs, &vals).unwrap();
    assert_eq!(read_complex_csv(&c).unwrap(), (xs, vals));
    let head = std::fs::read_to_string(&c).unwrap();
    assert!(head.starts_with("r,re,im\n"));
}
