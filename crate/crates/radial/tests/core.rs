use std::f64::consts::PI;
use std::sync::Arc;

use approx::assert_relative_eq;
use gpp_radial::*;
use proptest::prelude::*;

fn gaussian(n: usize, r_max: f64, s: f64) -> RadialField {
    RadialField::from_fn(build_grid(n, r_max).unwrap(), move |r| (-r * r / (2.0 * s * s)).exp()).unwrap()
}

#[test]
fn cell_centres_of_a_small_grid() {
    let g = RadialGrid::new(8, 8.0).unwrap();
    assert_eq!(&g.nodes()[..4], &[0.5, 1.5, 2.5, 3.5]);
    assert_eq!(g.h(), 1.0);
    assert_eq!(g.h() * g.n() as f64, g.r_max());
}

#[test]
fn rejects_degenerate_grids() {
    assert!(matches!(RadialGrid::new(4, 4.0), Err(RadialError::InvalidArgument(_))));
    assert!(matches!(RadialGrid::new(16, 0.0), Err(RadialError::InvalidArgument(_))));
    assert!(matches!(RadialGrid::new(16, -1.0), Err(RadialError::InvalidArgument(_))));
}

#[test]
fn weights_integrate_the_constant_exactly() {
    for (n, r) in [(2048, 8.0), (8, 1.0), (1000, 3.7)] {
        let g = RadialGrid::new(n, r).unwrap();
        let exact = 4.0 / 3.0 * PI * r * r * r;
        assert_relative_eq!(g.integrate_fn(|_| 1.0), exact, max_relative = 1e-12);
    }
}

#[test]
fn gaussian_moments() {
    let g = RadialGrid::new(2048, 12.0).unwrap();
    assert_relative_eq!(g.integrate_fn(|r| (-r * r).exp()), PI.powf(1.5), max_relative = 1e-6);
    let u = gaussian(2048, 12.0, 1.0);
    assert!((u.l2_norm() - PI.powf(0.75)).abs() < 1e-5);
    assert!((u.l4_norm4() - (PI / 2.0).powf(1.5)).abs() < 1e-5);
    assert_relative_eq!(u.dirichlet_energy(), 1.5 * PI.powf(1.5), max_relative = 1e-4);
}

#[test]
fn zero_field_has_zero_norms() {
    let u = RadialField::zeros(build_grid(64, 4.0).unwrap());
    assert_eq!(u.l2_norm(), 0.0);
    assert_eq!(u.l4_norm4(), 0.0);
    assert_eq!(u.dirichlet_energy(), 0.0);
    assert_eq!(u.project_mass(1.0), Err(RadialError::DegenerateField));
}

#[test]
fn mass_projection_examples() {
    let u = gaussian(512, 10.0, 1.0);
    let two = u.project_mass(2.0).unwrap();
    assert_relative_eq!(two.l2_norm(), 2.0, max_relative = 1e-12);
    let again = two.project_mass(2.0).unwrap();
    for (a, b) in two.values().iter().zip(again.values()) {
        assert_relative_eq!(*a, *b, max_relative = 1e-14);
    }
    let one = u.project_mass(1.0).unwrap();
    let tripled = one.project_mass(3.0).unwrap();
    for (a, b) in one.values().iter().zip(tripled.values()) {
        assert_relative_eq!(3.0 * a, *b, max_relative = 1e-14);
    }
    assert_relative_eq!(one.l4_norm4(), u.l4_norm4() / u.l2_norm().powi(4), max_relative = 1e-13);
}

#[test]
fn dilation_scaling_laws() {
    let u = gaussian(2048, 16.0, 1.0);
    assert_eq!(dilate(&u, 1.0).unwrap(), u);
    for t in [0.5, 2.0] {
        let v = dilate(&u, t).unwrap();
        assert_relative_eq!(v.l2_norm(), u.l2_norm(), max_relative = 1e-6);
        assert_relative_eq!(v.l4_norm4(), t.powi(3) * u.l4_norm4(), max_relative = 1e-6);
        assert_relative_eq!(v.dirichlet_energy(), t * t * u.dirichlet_energy(), max_relative = 1e-6);
    }
}

#[test]
fn dilation_refuses_to_drop_mass() {
    let u = gaussian(256, 8.0, 2.0);
    assert!(matches!(dilate(&u, 0.25), Err(RadialError::TruncatedSupport { .. })));
    assert!(dilate(&u, 4.0).is_ok());
}

#[test]
fn rescalings() {
    let u = gaussian(1024, 12.0, 1.0).project_mass(2.0).unwrap();
    let p = GppParams::new(2.0, 2.0).unwrap();
    let z = rescale_family(&u, p, RescaleKind::ThomasFermi).unwrap();
    assert_relative_eq!(z.l2_norm(), 1.0, max_relative = 1e-12);

    let p1 = GppParams::new(2.0, 1.0).unwrap();
    let w = rescale_family(&u, p1, RescaleKind::ChoquardSmallMass).unwrap();
    assert_eq!(w.values(), u.values());
    assert_eq!(w.grid().r_max(), u.grid().r_max());

    let v = rescale_family(&u, p, RescaleKind::Frequency { lambda: 1.0 }).unwrap();
    assert_eq!(v.values(), u.values());

    // unit mass after either Choquard rescaling
    for (alpha, kind) in [(2.0, RescaleKind::ChoquardSmallMass), (0.5, RescaleKind::ChoquardLargeMass)] {
        let p = GppParams::new(alpha, 2.0).unwrap();
        let w = rescale_family(&u, p, kind).unwrap();
        assert_relative_eq!(w.l2_norm(), 1.0, max_relative = 1e-12);
    }
    let v = rescale_family(&u, p, RescaleKind::Frequency { lambda: 3.0 }).unwrap();
    assert_relative_eq!(v.l2_norm(), 2.0, max_relative = 1e-12);

    let critical = GppParams::new(1.0, 2.0).unwrap();
    assert!(rescale_family(&u, critical, RescaleKind::ChoquardSmallMass).is_err());
    assert!(rescale_family(&u, p, RescaleKind::Frequency { lambda: -1.0 }).is_err());
}

#[test]
fn scale_map_round_trip_is_exact() {
    let u = gaussian(256, 6.0, 1.0);
    let m = ScaleMap::for_kind(GppParams::new(0.5, 3.0).unwrap(), RescaleKind::ChoquardLargeMass).unwrap();
    let back = m.inverse().apply(&m.apply(&u).unwrap()).unwrap();
    assert_relative_eq!(back.grid().r_max(), 6.0, max_relative = 1e-14);
    for (a, b) in back.values().iter().zip(u.values()) {
        assert_relative_eq!(*a, *b, max_relative = 1e-14);
    }
}

#[test]
fn mass_radius_is_monotone_in_the_fraction() {
    let u = gaussian(512, 10.0, 1.0);
    assert!(u.mass_radius(0.5) <= u.mass_radius(0.9));
    assert!(u.mass_radius(1.0) <= 10.0);
}

#[test]
fn dump_round_trip() {
    let u = gaussian(64, 5.0, 1.0);
    let meta = DumpMeta { alpha: 2.0, rho: 1.5, extra: vec![("config_hash".into(), "abc".into())] };
    let mut buf = Vec::new();
    write_dump(&mut buf, &u, &meta).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("# n = 64\n"));
    let (v, m) = read_dump(buf.as_slice()).unwrap();
    assert_eq!(m, meta);
    assert_eq!(v, u);
}

#[test]
fn fields_reject_bad_input() {
    let g = build_grid(16, 1.0).unwrap();
    assert!(RadialField::new(g.clone(), vec![0.0; 15]).is_err());
    let mut vals = vec![0.0; 16];
    vals[3] = f64::NAN;
    assert_eq!(RadialField::new(g.clone(), vals), Err(RadialError::NonFinite(3)));
    let other = build_grid(16, 2.0).unwrap();
    assert_eq!(RadialField::zeros(g).inner(&RadialField::zeros(other)), Err(RadialError::GridMismatch));
}

proptest! {
    #[test]
    fn projection_ignores_positive_prefactors(c in 1e-3f64..1e3, rho in 0.1f64..10.0, s in 0.5f64..2.0) {
        let u = gaussian(128, 12.0, s);
        let a = u.project_mass(rho).unwrap();
        let b = u.scaled(c).project_mass(rho).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() <= 1e-13 * x.abs().max(1e-300));
        }
    }

    #[test]
    fn dirichlet_form_is_nonnegative(seed in proptest::collection::vec(-1.0f64..1.0, 32)) {
        let g = Arc::new(RadialGrid::new(32, 3.0).unwrap());
        let u = RadialField::new(g, seed).unwrap();
        prop_assert!(u.dirichlet_energy() >= 0.0);
    }
}
