use std::f64::consts::PI;

use approx::assert_relative_eq;
use gpp_energy::*;
use gpp_radial::*;
use gpp_riesz::{build_kernel, reduced_kernel, RieszConstants};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn zero_field_reports_zeros() {
    let g = build_grid(64, 5.0).unwrap();
    let k = build_kernel(2.0, g.clone()).unwrap();
    let r = evaluate(&RadialField::zeros(g), &k).unwrap();
    assert_eq!((r.a, r.b, r.c, r.rho2, r.f, r.e_choquard, r.e_tf), (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0));
}

#[test]
fn derived_fields_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let (a, b, c, m) =
            (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0), rng.gen_range(0.1..5.0));
        let r = EnergyReport::from_parts(a, b, c, m);
        assert!((r.f - (r.e_choquard + 0.25 * r.b)).abs() <= 1e-14 * (a + b + c));
        assert!((r.f - (0.5 * r.a + r.e_tf)).abs() <= 1e-14 * (a + b + c));
        assert!((r.lambda_nehari * m - (c - a - b)).abs() <= 1e-14 * (a + b + c));
    }
}

#[test]
fn gaussian_energies_match_closed_forms() {
    let g = build_grid(2048, 14.0).unwrap();
    let k = build_kernel(2.0, g.clone()).unwrap();
    let u = RadialField::from_fn(g.clone(), |r| (-r * r / 2.0).exp()).unwrap();
    let rep = evaluate(&u, &k).unwrap();
    assert_relative_eq!(rep.a, 1.5 * PI.powf(1.5), max_relative = 1e-4);
    assert_relative_eq!(rep.b, (PI / 2.0).powf(1.5), max_relative = 1e-4);
    // ∫(I₂∗e^{−r²})e^{−r²} = π^{3/2}/(2√2)
    assert_relative_eq!(rep.c, PI.powf(1.5) / (2.0 * 2f64.sqrt()), max_relative = 1e-6);
    // independent double quadrature of 4π∫∫ u²(r)u²(s) K(r,s) r²s² dr ds (kernel is 1/max)
    let m = 3000;
    let h = 10.0 / m as f64;
    let rs: Vec<f64> = (0..m).map(|i| (i as f64 + 0.5) * h).collect();
    let mut oracle = 0.0;
    for &r in &rs {
        for &s in &rs {
            oracle += (-r * r - s * s).exp() * reduced_kernel(2.0, r, s) * r * r * s * s * h * h;
        }
    }
    oracle *= 4.0 * PI;
    assert_relative_eq!(rep.c, oracle, max_relative = 1e-3);
}

#[test]
fn residual_is_affine_in_the_multiplier() {
    let g = build_grid(256, 8.0).unwrap();
    let k = build_kernel(0.5, g.clone()).unwrap();
    let zero = euler_lagrange_residual(&RadialField::zeros(g.clone()), 3.0, &k).unwrap();
    assert!(zero.values().iter().all(|v| *v == 0.0));
    let u = RadialField::from_fn(g, |r| (-r * r).exp()).unwrap();
    let r0 = euler_lagrange_residual(&u, 0.0, &k).unwrap();
    let r1 = euler_lagrange_residual(&u, 2.5, &k).unwrap();
    for ((a, b), v) in r1.values().iter().zip(r0.values()).zip(u.values()) {
        assert!((a - b - 2.5 * v).abs() <= 1e-12 * (a.abs() + b.abs() + 1e-300));
    }
}

#[test]
fn enp_examples() {
    let s = solve_enp_system(1.0, 1.0, 1.0, 2.0).unwrap();
    assert_relative_eq!(s.mu, -1.0, max_relative = 1e-15);
    assert_relative_eq!(s.lambda, 5.0, max_relative = 1e-15);
    assert_relative_eq!(s.c, 7.0, max_relative = 1e-15);
    let z = solve_enp_system(0.0, 0.0, 2.0, 0.5).unwrap();
    assert_eq!((z.mu, z.lambda, z.c), (0.0, 0.0, 0.0));
    assert!(solve_enp_system(1.0, 1.0, 1.0, 3.0).is_err());
    assert_relative_eq!(fiber_curvature_from_enp(5.0, -1.0, 1.0, 2.0), 2.5, max_relative = 1e-15);
}

#[test]
fn enp_solutions_satisfy_every_row() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let (a, b, rho, alpha) =
            (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0), rng.gen_range(0.1..10.0), rng.gen_range(0.01..2.99));
        let s = solve_enp_system(a, b, rho, alpha).unwrap();
        let scale = a.max(b).max(s.c).max((s.lambda * rho * rho).abs());
        for row in enp_rows(a, b, s.c, s.lambda, s.mu, rho, alpha) {
            assert!(row.abs() <= 1e-13 * scale);
        }
        assert!((s.lambda * rho * rho - (a - 4.0 * s.mu)).abs() <= 1e-13 * scale);
        let direct = fiber_from_parts(a.max(1e-12), b, s.c, alpha).unwrap().d2phi_at(1.0);
        let via = fiber_curvature_from_enp(s.lambda, s.mu, rho, alpha);
        assert!((direct - via).abs() <= 1e-12 * scale.max(1.0), "{direct} {via}");
    }
}

#[test]
fn fiber_without_interaction_has_no_critical_point() {
    let p = fiber_from_parts(1.0, 0.0, 0.0, 0.5).unwrap();
    assert_eq!((p.t_max, p.t_min), (None, None));
    assert!((1..100).all(|k| p.dphi_at(k as f64 * 0.1) > 0.0));
    assert!(fiber_from_parts(0.0, 1.0, 1.0, 0.5).is_err());
}

#[test]
fn fiber_critical_points_are_accurate() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut both = 0;
    for _ in 0..2000 {
        let alpha = rng.gen_range(0.05..0.95);
        let (a, b, c) = (rng.gen_range(0.01..1.0), rng.gen_range(0.01..10.0), rng.gen_range(0.01..50.0));
        let p = fiber_from_parts(a, b, c, alpha).unwrap();
        let tol = 1e-10 * a.max(b).max(c);
        if let (Some(tm), Some(tn)) = (p.t_max, p.t_min) {
            both += 1;
            assert!(tm < tn);
            // absolute tolerance for moderate times; the terms of φ' grow like t² otherwise
            for t in [tm, tn] {
                let terms = t * (a + 0.75 * b * t + 0.25 * (3.0 - alpha) * c * t.powf(1.0 - alpha));
                let bound = if t <= 1e3 { tol } else { 1e-13 * terms };
                assert!(p.dphi_at(t).abs() <= bound, "{a} {b} {c} {alpha} {t}");
            }
            assert!(p.d2phi_at(tm) < 0.0 && p.d2phi_at(tn) > 0.0);
        }
    }
    assert!(both > 100);
    // α > 1 and α = 1 only have a minimum
    let p = fiber_from_parts(1.0, 1.0, 7.0, 2.0).unwrap();
    assert!(p.t_max.is_none() && p.dphi_at(p.t_min.unwrap()).abs() < 1e-10 * 7.0);
    let p = fiber_from_parts(1.0, 1.0, 7.0, 1.0).unwrap();
    assert!(p.t_max.is_none() && p.dphi_at(p.t_min.unwrap()).abs() < 1e-12);
}

#[test]
fn k_half_and_its_brute_force_law() {
    assert!((k_alpha(0.5) - 25.0 / 192.0).abs() < 1e-12);
    // the minimiser of ¾t − (5/8)√t is 25/144
    let f = |t: f64| 0.75 * t - 0.625 * t.sqrt();
    assert!((f(25.0 / 144.0) + 25.0 / 192.0).abs() < 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let alpha = rng.gen_range(0.1..0.9);
        let (b, c) = (rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0));
        let g = |t: f64| 0.75 * b * t - 0.25 * (3.0 - alpha) * c * t.powf(1.0 - alpha);
        let t_star = ((3.0 - alpha) * (1.0 - alpha) * c / (3.0 * b)).powf(1.0 / alpha);
        // coarse scan then nested refinement: no use of the closed form
        let (mut lo, mut hi) = (0.0, 10.0 * t_star);
        for _ in 0..40 {
            let m = 200;
            let step = (hi - lo) / m as f64;
            let best = (0..=m).map(|k| lo + k as f64 * step).min_by(|x, y| g(*x).total_cmp(&g(*y))).unwrap();
            lo = (best - step).max(0.0);
            hi = best + step;
        }
        let brute = g(0.5 * (lo + hi));
        assert!((brute - fiber_min_law(b, c, alpha)).abs() <= 1e-8 * brute.abs());
    }
}

#[test]
fn threshold_constants_at_one_half() {
    let t = threshold_constants(0.5).unwrap();
    assert!((t.bar_k_alpha - 10.8).abs() < 0.05, "{}", t.bar_k_alpha);
    assert!(t.h_bound > 0.0 && t.k_alpha > 0.0);
    assert!(threshold_constants(1.0).is_err());
    assert!(threshold_constants(2.0).is_err());
}

#[test]
fn barrier_scaling() {
    let k = RieszConstants::new(0.5);
    let b1 = barrier(3.0, 0.5, &k).unwrap();
    let b2 = barrier(6.0, 0.5, &k).unwrap();
    assert!((b2.r_rho / b1.r_rho - 0.125).abs() < 1e-12);
    for rho in [0.1, 1.0, 10.0, 100.0] {
        let b = barrier(rho, 0.5, &k).unwrap();
        assert!(b.g2_at_r > 0.0);
        assert_relative_eq!(b.g2_at_r, g2(b.r_rho, rho, 0.5, &k), max_relative = 1e-12);
        let eps = 1e-6 * b.r_rho;
        let d = (g2(b.r_rho + eps, rho, 0.5, &k) - g2(b.r_rho - eps, rho, 0.5, &k)) / (2.0 * eps);
        assert!(d.abs() < 1e-10 * b.r_rho.max(1.0));
    }
    assert!(barrier(1.0, 1.5, &k).is_err());
}

#[test]
fn report_json_keys() {
    let r = EnergyReport::from_parts(1.0, 2.0, 3.0, 4.0);
    let v: serde_json::Value = serde_json::to_value(r).unwrap();
    let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    keys.sort();
    assert_eq!(keys, ["A", "B", "C", "E_choquard", "E_tf", "F", "lambda_nehari", "rho2"]);
}
