use approx::assert_relative_eq;
use gpp_branch::*;
use gpp_radial::{build_grid, GppParams, RescaleKind};
use gpp_riesz::build_kernel;
use gpp_solvers::{solve_tf, SolveKind, SolverConfig, Termination};

fn row(rho: f64, m: f64, lambda: f64) -> BranchRow {
    BranchRow {
        rho,
        m,
        lambda,
        lambda_enp: lambda,
        a: 1.0,
        b: 1.0,
        c: 1.0,
        kind: SolveKind::GlobalMin,
        converged: true,
        termination: Termination::Converged,
        r_max: 10.0,
    }
}

fn synthetic(f: impl Fn(f64) -> f64) -> BranchCurve {
    let mut curve = BranchCurve::new(2.0, "test");
    curve.rows = (1..=10).map(|i| row(i as f64, f(i as f64), 0.3 * (i as f64).powi(2))).collect();
    curve
}

fn policy(n: usize) -> DomainPolicy {
    DomainPolicy { n, ..Default::default() }
}

#[test]
fn exact_power_law_is_recovered() {
    let curve = synthetic(|r| -0.25 * r.powi(4));
    let fit = fit_power_law(&curve, Column::Energy, (2.0, 9.0)).unwrap();
    assert_relative_eq!(fit.exponent, 4.0, epsilon = 1e-12);
    assert_relative_eq!(fit.prefactor, -0.25, epsilon = 1e-12);
    assert_relative_eq!(fit.r_squared, 1.0, epsilon = 1e-12);
    assert_eq!(fit.window, (2.0, 9.0));
    let lam = fit_power_law(&curve, Column::Lambda, (1.0, 10.0)).unwrap();
    assert_relative_eq!(lam.exponent, 2.0, epsilon = 1e-12);
    assert_relative_eq!(lam.prefactor, 0.3, epsilon = 1e-12);
}

#[test]
fn onset_law_is_measured_from_the_threshold() {
    let curve = synthetic(|r| if r > 2.5 { -0.5 * (r - 2.5).powi(3) } else { 0.1 });
    let fit = fit_onset(&curve, Column::Energy, 2.5, (1.0, 10.0)).unwrap();
    assert_relative_eq!(fit.exponent, 3.0, epsilon = 1e-12);
    assert_relative_eq!(fit.prefactor, -0.5, epsilon = 1e-12);
    assert_eq!(fit.window, (3.0, 10.0));
    assert!(fit_onset(&curve, Column::Energy, f64::NAN, (1.0, 10.0)).is_err());
}

#[test]
fn fit_rejects_thin_or_sign_changing_windows() {
    let curve = synthetic(|r| 5.0 - r);
    assert!(matches!(
        fit_power_law(&curve, Column::Energy, (1.0, 3.0)),
        Err(BranchError::InsufficientData { needed: 4, found: 3 })
    ));
    assert!(matches!(fit_power_law(&curve, Column::Energy, (1.0, 8.0)), Err(BranchError::SignChangeInWindow)));
    // only mountain-pass rows enter the mountain-pass column
    assert!(matches!(
        fit_power_law(&curve, Column::MountainPass, (1.0, 10.0)),
        Err(BranchError::InsufficientData { found: 0, .. })
    ));
}

#[test]
fn automatic_windows_span_one_decade() {
    let mut curve = BranchCurve::new(2.0, "");
    curve.rows = [1.0, 2.0, 5.0, 10.0, 20.0, 50.0].iter().map(|&r| row(r, -r, r)).collect();
    assert_eq!(auto_window(&curve, CurveEnd::Small), Some((1.0, 10.0)));
    assert_eq!(auto_window(&curve, CurveEnd::Large), Some((5.0, 50.0)));
}

#[test]
fn shape_gate_accepts_concave_decrease_and_flags_violations() {
    assert!(check_shape(&synthetic(|r| -r.powi(4))).ok());
    let bumpy = check_shape(&synthetic(|r| -r * r - if r == 5.0 { 5.0 } else { 0.0 }));
    assert_eq!(bumpy.monotone_violations, Vec::<f64>::new());
    assert_eq!(bumpy.concavity_violations, vec![5.0]);
    let rising = check_shape(&synthetic(|r| -1.0 / r));
    assert_eq!(rising.monotone_violations.len(), 9);
    // positive energies are outside the gate
    assert_eq!(check_shape(&synthetic(|r| r)).rows, 0);
}

#[test]
fn csv_has_fixed_header_and_provenance() {
    let curve = synthetic(|r| -r);
    let csv = curve.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# config_hash = test"));
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 9);
    assert_eq!(first[7], "global-min");
    let json = serde_json::to_string(&curve).unwrap();
    let back: BranchCurve = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_csv(), csv);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    curve.write_csv(&path).unwrap();
    assert_eq!(std::fs::read_to_string(path).unwrap(), csv);
}

#[test]
fn sweep_rejects_bad_masses_and_families() {
    let cfg = SolverConfig::default();
    let opts = SweepOptions::default();
    assert!(matches!(sweep(2.0, &[2.0, 1.0], &cfg, Family::Minimizer, &opts), Err(BranchError::InvalidArgument(_))));
    assert!(matches!(sweep(2.0, &[], &cfg, Family::Minimizer, &opts), Err(BranchError::InvalidArgument(_))));
    assert!(matches!(sweep(2.0, &[1.0], &cfg, Family::MountainPass, &opts), Err(BranchError::InvalidArgument(_))));
    assert!(matches!(sweep(0.5, &[1.0], &cfg, Family::Choquard, &opts), Err(BranchError::InvalidArgument(_))));
}

#[test]
fn alpha_two_branch_is_decreasing_concave_and_consistent() {
    let rhos: Vec<f64> = (1..=8).map(f64::from).collect();
    let opts = SweepOptions { domain: policy(1024), ..Default::default() };
    let out = sweep(2.0, &rhos, &SolverConfig::default(), Family::Minimizer, &opts).unwrap();
    let curve = &out.curve;
    assert!(curve.rows.iter().all(|r| r.converged), "{curve:?}");
    assert!(check_shape(curve).ok());
    for r in &curve.rows {
        assert!(r.m < 0.0 && r.lambda > 0.0);
        assert!((r.lambda - r.lambda_enp).abs() <= 1e-5 * r.lambda, "{r:?}");
    }
    assert_eq!(curve.spot_checks.len(), 3);
    assert!(curve.spot_checks.iter().all(|c| c.agrees(1e-6)), "{:?}", curve.spot_checks);
    // boxes follow the shrinking states
    assert!(curve.rows[0].r_max > 10.0 * curve.rows[7].r_max);
}

#[test]
fn mass_radius_follows_small_mass_law() {
    let cfg = SolverConfig::default();
    let solve = |rho| solve_minimizer(Functional::Full, GppParams::new(2.0, rho).unwrap(), &cfg, &policy(1024), None);
    let (big, small) = (solve(1.0).unwrap(), solve(0.5).unwrap());
    assert!(big.converged && small.converged);
    let ratio = mass_radius(&small, 0.9) / mass_radius(&big, 0.9);
    assert!((ratio / 4.0 - 1.0).abs() < 0.15, "ratio {ratio}");
    assert!(mass_radius(&big, 0.5) <= mass_radius(&big, 0.9));
}

#[test]
fn thomas_fermi_support_is_exhausted_and_has_no_tail() {
    let kernel = build_kernel(2.0, build_grid(1024, 4.0).unwrap()).unwrap();
    let tf = solve_tf(2.0, &kernel, &SolverConfig::default()).unwrap();
    let h = kernel.grid().h();
    let edge = mass_radius(&tf.result, 1.0 - 1e-15);
    assert!((edge - tf.diagnostics.support_radius).abs() <= h, "{edge} vs {}", tf.diagnostics.support_radius);
    assert!(matches!(decay_diagnostic(&tf.result), Err(BranchError::TailUnderresolved(_))));
    assert_eq!(limit_profile_error(&tf.result, &tf.result, RescaleKind::ThomasFermi, Metric::L2).unwrap(), 0.0);
}

#[test]
fn limit_profile_error_vanishes_on_identical_input_and_checks_coverage() {
    let cfg = SolverConfig::default();
    let p = GppParams::new(2.0, 5.0).unwrap();
    let u = solve_minimizer(Functional::Full, p, &cfg, &policy(512), None).unwrap();
    let same = RescaleKind::Frequency { lambda: 1.0 };
    for metric in [Metric::L2, Metric::L4, Metric::H1] {
        assert_eq!(limit_profile_error(&u, &u, same, metric).unwrap(), 0.0);
    }
    // shrinking lengths by λ^{1/2} = 10 leaves the reference bulk uncovered
    let shrink = RescaleKind::Frequency { lambda: 1e-2 };
    assert!(matches!(limit_profile_error(&u, &u, shrink, Metric::L2), Err(BranchError::GridMismatch(_))));
}

#[test]
fn decay_rate_matches_multiplier_for_critical_order() {
    let cfg = SolverConfig::default();
    let u = solve_minimizer(Functional::Full, GppParams::new(1.0, 12.0).unwrap(), &cfg, &policy(1024), None).unwrap();
    assert!(u.converged);
    let d = decay_diagnostic(&u).unwrap();
    assert!(d.window_ok, "{d:?}");
    assert!(d.window.0 < d.window.1);
}

#[test]
fn thresholds_reject_orders_above_one() {
    let err = detect_thresholds(2.0, &SolverConfig::default(), &ThresholdOptions::default());
    assert!(matches!(err, Err(BranchError::InvalidArgument(_))));
}

#[test]
fn critical_seed_sits_at_the_requested_mass() {
    let kernel = build_kernel(1.0, build_grid(512, 30.0).unwrap()).unwrap();
    let w = gpp_solvers::solve_choquard_frequency(1.0, &kernel, &SolverConfig::default(), None).unwrap();
    let rho_crit = w.rho();
    for s in [0.9, 1.1] {
        let seed = critical_seed(&w.state, &kernel, s * rho_crit).unwrap();
        assert_relative_eq!(seed.l2_norm(), s * rho_crit, max_relative = 1e-12);
        // the seed spreads out as the mass approaches the critical one
        assert!(seed.grid().r_max() > 30.0);
    }
}
