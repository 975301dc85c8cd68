use std::f64::consts::PI;

use approx::assert_relative_eq;
use gpp_radial::*;
use gpp_riesz::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

/// `2πA_α ∫_{-1}^{1} (r² + s² − 2rsμ)^{(α−3)/2} dμ` by a fine midpoint rule.
fn angular_oracle(alpha: f64, r: f64, s: f64) -> f64 {
    let m = 400_000;
    let h = 2.0 / m as f64;
    let sum: f64 = (0..m)
        .map(|k| -1.0 + (k as f64 + 0.5) * h)
        .map(|mu| (r * r + s * s - 2.0 * r * s * mu).powf((alpha - 3.0) / 2.0) * h)
        .sum();
    2.0 * PI * riesz_normalization(alpha) * sum
}

/// Confluent hypergeometric series, adequate for moderate arguments.
fn kummer(a: f64, b: f64, z: f64) -> f64 {
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 0..500 {
        let k = k as f64;
        term *= (a + k) / (b + k) * z / (k + 1.0);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `(I_α ∗ e^{−|x|²})(r)` from the Fourier representation.
fn gaussian_potential(alpha: f64, r: f64) -> f64 {
    let phi0 = 2f64.powf(1.0 - alpha) * gamma((3.0 - alpha) / 2.0) / PI.sqrt();
    phi0 * kummer((3.0 - alpha) / 2.0, 1.5, -r * r)
}

fn random_smooth_field(rng: &mut ChaCha8Rng, grid: &std::sync::Arc<RadialGrid>) -> RadialField {
    let bumps: Vec<(f64, f64, f64)> =
        (0..3).map(|_| (rng.gen_range(0.1..1.0), rng.gen_range(0.0..2.0), rng.gen_range(0.3..1.2))).collect();
    RadialField::from_fn(grid.clone(), |r| {
        bumps.iter().map(|(a, c, s)| a * (-((r - c) / s).powi(2)).exp()).sum::<f64>()
            + bumps.iter().map(|(a, c, s)| a * (-((r + c) / s).powi(2)).exp()).sum::<f64>()
    })
    .unwrap()
}

#[test]
fn newtonian_kernel_is_one_over_max() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let (r, s) = (rng.gen_range(1e-3..50.0), rng.gen_range(1e-3..50.0));
        assert_relative_eq!(reduced_kernel(2.0, r, s), 1.0 / r.max(s), max_relative = 1e-12);
    }
    assert_relative_eq!(riesz_normalization(2.0), 1.0 / (4.0 * PI), max_relative = 1e-14);
}

#[test]
fn logarithmic_kernel_value() {
    let want = riesz_normalization(1.0) * PI * 3f64.ln();
    assert_relative_eq!(reduced_kernel(1.0, 1.0, 2.0), want, max_relative = 1e-14);
}

#[test]
fn kernel_matches_angular_quadrature() {
    for alpha in [0.5, 1.0, 1.5, 2.0, 2.5] {
        for (r, s) in [(1.0, 2.0), (0.7, 0.3), (3.0, 3.5)] {
            assert_relative_eq!(reduced_kernel(alpha, r, s), angular_oracle(alpha, r, s), max_relative = 1e-6);
        }
    }
}

#[test]
fn kernel_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let alpha = rng.gen_range(0.01..2.99);
        let (r, s) = (rng.gen_range(1e-2..20.0), rng.gen_range(1e-2..20.0));
        assert_relative_eq!(reduced_kernel(alpha, r, s), reduced_kernel(alpha, s, r), max_relative = 1e-12);
    }
}

#[test]
fn uniform_ball_potential_and_self_energy() {
    let g = build_grid(2048, 4.0).unwrap();
    let k = build_kernel(2.0, g.clone()).unwrap();
    let ball = RadialField::from_fn(g.clone(), |r| if r < 1.0 { 1.0 } else { 0.0 }).unwrap();
    let phi = k.apply_potential(&ball).unwrap();
    let at = |r: f64| phi.values()[g.cell_of(r)];
    let node = |r: f64| g.nodes()[g.cell_of(r)];
    // Φ(r) = 1/2 − r²/6 inside, 1/(3r) outside
    assert!((at(0.25) - (0.5 - node(0.25).powi(2) / 6.0)).abs() < 1e-4);
    assert!((at(2.0) - 1.0 / (3.0 * node(2.0))).abs() < 1e-4);
    assert!((phi.values()[0] - 0.5).abs() < 1e-4);
    // ∫∫ 1_B(x)1_B(y)/(4π|x−y|) = 8π/15
    let d = k.interaction_energy(&ball).unwrap();
    assert_relative_eq!(d, 8.0 * PI / 15.0, max_relative = 1e-4);
}

#[test]
fn gaussian_potentials_match_the_fourier_oracle() {
    for alpha in [0.5, 1.0, 2.0, 2.5] {
        let g = build_grid(512, 8.0).unwrap();
        let k = build_kernel(alpha, g.clone()).unwrap();
        let f = RadialField::from_fn(g.clone(), |r| (-r * r).exp()).unwrap();
        let phi = k.apply_potential(&f).unwrap();
        for (r, v) in g.nodes().iter().zip(phi.values()).filter(|(r, _)| **r < 2.5) {
            assert!((v - gaussian_potential(alpha, *r)).abs() < 1e-6, "α={alpha} r={r}");
        }
    }
}

#[test]
fn potential_is_linear_and_vanishes_on_zero() {
    let g = build_grid(128, 6.0).unwrap();
    let k = build_kernel(0.5, g.clone()).unwrap();
    let zero = k.apply_potential(&RadialField::zeros(g.clone())).unwrap();
    assert!(zero.values().iter().all(|v| *v == 0.0));
    let f = RadialField::from_fn(g.clone(), |r| (-r).exp()).unwrap();
    let a = k.apply_potential(&f).unwrap();
    let b = k.apply_potential(&f.scaled(3.5)).unwrap();
    for (x, y) in a.values().iter().zip(b.values()) {
        assert_relative_eq!(3.5 * x, *y, max_relative = 1e-14);
    }
    assert_eq!(k.interaction_energy(&RadialField::zeros(g)).unwrap(), 0.0);
}

#[test]
fn matrix_entries_are_finite_and_nonnegative() {
    for alpha in [0.3, 1.0, 2.0, 2.9] {
        let g = build_grid(96, 5.0).unwrap();
        let k = build_kernel(alpha, g).unwrap();
        for i in 0..96 {
            for j in 0..96 {
                let m = k.entry(i, j);
                assert!(m.is_finite() && m >= 0.0, "α={alpha} ({i},{j}) = {m}");
            }
        }
    }
}

#[test]
fn bilinear_form_is_symmetric_and_positive() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for alpha in [0.5, 1.0, 2.0] {
        let g = build_grid(256, 8.0).unwrap();
        let k = build_kernel(alpha, g.clone()).unwrap();
        for _ in 0..20 {
            let f = RadialField::new(g.clone(), (0..256).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
            let h = RadialField::new(g.clone(), (0..256).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
            let a = k.bilinear(&f, &h).unwrap();
            let b = k.bilinear(&h, &f).unwrap();
            assert!((a - b).abs() <= 1e-10 * (a.abs() + b.abs()));
            assert!(k.interaction_energy(&f).unwrap() > 0.0);
        }
    }
}

#[test]
fn hls_bound_holds_for_random_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for alpha in [0.5, 1.0, 2.0] {
        let g = build_grid(512, 10.0).unwrap();
        let k = build_kernel(alpha, g.clone()).unwrap();
        let c = constants(alpha).c_alpha_hls;
        for _ in 0..50 {
            let u = random_smooth_field(&mut rng, &g);
            let d = k.interaction_energy(&u).unwrap();
            assert!(d <= c * u.lp_norm(12.0 / (3.0 + alpha)).powi(4));
        }
    }
}

#[test]
fn closed_form_constants() {
    assert_relative_eq!(constants(2.0).a_alpha, 1.0 / (4.0 * PI), max_relative = 1e-14);
    assert!((sobolev_bound() - 0.42725).abs() < 5e-5);
    assert!((constants(1e-3).c_alpha_hls - 1.0).abs() < 0.05);
    for alpha in [0.1, 0.5, 1.0, 2.0, 2.9] {
        let c = constants(alpha);
        assert!(c.a_alpha > 0.0 && c.c_alpha_hls > 0.0 && c.c_bar_gn > 0.0 && c.c_barbar_alpha > 0.0);
    }
}

#[test]
fn rejects_bad_orders_and_foreign_grids() {
    let g = build_grid(16, 1.0).unwrap();
    assert_eq!(build_kernel(3.0, g.clone()).unwrap_err(), RieszError::InvalidOrder(3.0));
    assert!(build_kernel(0.0, g.clone()).is_err());
    let k = build_kernel(2.0, g).unwrap();
    let other = RadialField::zeros(build_grid(16, 2.0).unwrap());
    assert_eq!(k.apply_potential(&other).unwrap_err(), RieszError::GridMismatch);
}

#[test]
fn rescaled_grids_share_the_matrix() {
    let g = build_grid(128, 4.0).unwrap();
    let k = build_kernel(0.5, g).unwrap();
    let wide = build_grid(128, 40.0).unwrap();
    let direct = build_kernel(0.5, wide.clone()).unwrap();
    let moved = k.on_grid(wide);
    assert_relative_eq!(moved.entry(5, 9), direct.entry(5, 9), max_relative = 1e-15);
}
