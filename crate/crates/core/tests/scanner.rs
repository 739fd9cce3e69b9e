use corrgauss::protocols::{direct_eps_asymptotic, swap_eps_asymptotic};
use corrgauss::scanner::{distillability_threshold, evaluate_cell, SUMMARY_KEYS};
use corrgauss::{
    boundary_curves, classify_environment, eb_threshold, scan, separable_activation_exists,
    Activation, EnvironmentParams, OmegaMode, Protocol, ScanGrid, ScanSpec, Separability,
};

const TAUS: [f64; 4] = [0.3, 0.5, 0.75, 0.9];

fn check_invariants(grid: &ScanGrid) {
    let n = grid.spec.resolution();
    assert_eq!(grid.cells.len(), n * n);
    assert_eq!(grid.summary.total, n * n);
    let counted: usize = grid.summary.entries.iter().map(|e| e.count).sum();
    assert_eq!(counted, n * n);
    for (_, _, c) in grid.iter() {
        match c.activation {
            Activation::None => {}
            Activation::Entangling => {
                assert_ne!(c.env_class, Separability::Forbidden);
                let eps = c.eps_value.unwrap();
                assert!(eps >= distillability_threshold() && eps < 1.0);
            }
            Activation::Distillable => {
                assert_ne!(c.env_class, Separability::Forbidden);
                assert!(c.eps_value.unwrap() < distillability_threshold());
            }
        }
        if c.env_class == Separability::Forbidden {
            assert!(c.eps_value.is_none());
        }
    }
}

#[test]
fn memoryless_point_never_activates() {
    for tau in TAUS {
        let omega = eb_threshold(tau).unwrap().omega;
        let direct = evaluate_cell(tau, omega, 0.0, 0.0, Protocol::Direct).unwrap();
        let swap = evaluate_cell(tau, omega, 0.0, 0.0, Protocol::Swap).unwrap();
        assert_eq!(direct.activation, Activation::None);
        assert_eq!(swap.activation, Activation::None);
        assert!((direct.eps_value.unwrap() - (1.0 + tau)).abs() < 1e-12);
        assert!((swap.eps_value.unwrap() - (1.0 + tau) / tau).abs() < 1e-12);
    }
}

#[test]
fn cell_invariants_all_protocols() {
    for tau in TAUS {
        for protocol in [Protocol::Direct, Protocol::Swap, Protocol::EnvironmentOnly] {
            check_invariants(&scan(&ScanSpec::standard(tau, protocol, 61).unwrap()));
        }
    }
}

#[test]
fn environment_only_reports_env_pts() {
    let grid = scan(&ScanSpec::standard(0.5, Protocol::EnvironmentOnly, 41).unwrap());
    for (g, gp, c) in grid.iter() {
        assert_eq!(c.activation, Activation::None);
        let class = classify_environment(3.0, g, gp).unwrap();
        assert_eq!(c.env_class, class.separability);
        assert_eq!(c.eps_value, class.env_pts);
    }
}

#[test]
fn swap_activation_inside_direct_activation() {
    for tau in TAUS {
        let direct = scan(&ScanSpec::standard(tau, Protocol::Direct, 121).unwrap());
        let swap = scan(&ScanSpec::standard(tau, Protocol::Swap, 121).unwrap());
        for (d, s) in direct.cells.iter().zip(&swap.cells) {
            assert_eq!(d.env_class, s.env_class);
            assert!(s.activation <= d.activation);
        }
    }
}

#[test]
fn low_transmissivity_swap_needs_entangled_environment() {
    for tau in [0.1, 0.25, 0.3, 0.4, 0.5] {
        for res in [2, 51, 200] {
            let grid = scan(&ScanSpec::standard(tau, Protocol::Swap, res).unwrap());
            assert_eq!(
                grid.summary.activated(Separability::Separable),
                0,
                "tau={tau} res={res}"
            );
        }
    }
}

#[test]
fn high_transmissivity_direct_has_separable_distillable_cells() {
    let grid = scan(&ScanSpec::standard(0.9, Protocol::Direct, 201).unwrap());
    assert!(
        grid.summary
            .count(Separability::Separable, Activation::Distillable)
            > 0
    );
}

#[test]
fn refinement_stability() {
    for tau in TAUS {
        for protocol in [Protocol::Direct, Protocol::Swap] {
            let coarse = scan(&ScanSpec::standard(tau, protocol, 101).unwrap());
            let fine = scan(&ScanSpec::standard(tau, protocol, 202).unwrap());
            for (class, act) in SUMMARY_KEYS {
                let d =
                    (coarse.summary.fraction(class, act) - fine.summary.fraction(class, act)).abs();
                assert!(d < 0.02, "tau={tau} {protocol} {class}/{act}: {d}");
            }
        }
    }
}

#[test]
fn direct_unit_contour_follows_analytic_curve() {
    let spec = ScanSpec::standard(0.75, Protocol::Direct, 201).unwrap();
    let contours = boundary_curves(&spec).unwrap();
    let unit: Vec<_> = contours.iter().filter(|c| c.level == 1.0).collect();
    assert!(!unit.is_empty());
    let mut n = 0;
    for c in unit {
        for &(g, gp) in &c.points {
            let lhs = ((1.75 - 0.25 * g) * (1.75 + 0.25 * gp)).sqrt();
            assert!((lhs - 1.0).abs() < 1e-6, "({g}, {gp}) -> {lhs}");
            n += 1;
        }
    }
    assert!(n > 50);
    let dist: Vec<_> = contours.iter().filter(|c| c.level < 1.0).collect();
    assert!(!dist.is_empty());
    for c in dist {
        for &(g, gp) in &c.points {
            let env = EnvironmentParams::new(0.75, 7.0, g, gp).unwrap();
            let eps = direct_eps_asymptotic(&env).unwrap();
            assert!((eps - distillability_threshold()).abs() < 1e-9);
        }
    }
}

#[test]
fn half_transmissivity_swap_contour_avoids_separable_interior() {
    let spec = ScanSpec::standard(0.5, Protocol::Swap, 201).unwrap();
    let contours = boundary_curves(&spec).unwrap();
    assert!(contours.iter().any(|c| c.level == 1.0));
    for c in &contours {
        for &(g, gp) in &c.points {
            let env = EnvironmentParams::new(0.5, 3.0, g, gp).unwrap();
            assert!((swap_eps_asymptotic(&env).unwrap() - c.level).abs() < 1e-9);
            // the unit contour may touch the separability boundary, never cross it
            let pts = classify_environment(3.0, g, gp).unwrap().env_pts.unwrap();
            assert!(pts <= 1.0 + 1e-9, "({g}, {gp}) has env pts {pts}");
        }
    }
}

#[test]
fn contours_empty_without_activation() {
    // window restricted to the anti-diagonal-free corner g, g' > 0, where eps >= 1
    let spec = ScanSpec::new(
        0.5,
        OmegaMode::AtEbThreshold,
        Protocol::Swap,
        (0.0, 2.5),
        (0.0, 2.5),
        31,
    )
    .unwrap();
    assert!(boundary_curves(&spec).unwrap().is_empty());
}

#[test]
fn activation_witnesses() {
    let w = separable_activation_exists(0.75, Protocol::Swap)
        .unwrap()
        .unwrap();
    assert!(w.eps < 1.0);
    let class = classify_environment(7.0, w.g, w.gp).unwrap();
    assert_eq!(class.separability, Separability::Separable);
    assert!(w.g > 0.0 && w.gp < 0.0);

    assert!(separable_activation_exists(0.4, Protocol::Swap)
        .unwrap()
        .is_none());

    let w = separable_activation_exists(0.3, Protocol::Direct)
        .unwrap()
        .unwrap();
    assert!(w.eps < 1.0);
    let omega = eb_threshold(0.3).unwrap().omega;
    assert_eq!(
        classify_environment(omega, w.g, w.gp).unwrap().separability,
        Separability::Separable
    );
}

#[test]
fn scan_is_deterministic_across_pools() {
    let spec = ScanSpec::standard(0.75, Protocol::Swap, 80).unwrap();
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = one.install(|| scan(&spec));
    let b = four.install(|| scan(&spec));
    assert_eq!(a, b);
}
