mod common;

use common::{arc_by_quadrature, grid_root, residual, Membrane};
use proptest::prelude::*;
use sucker_core::mechanics::*;

fn params_of(m: &Membrane) -> MembraneParams {
    MembraneParams::new(m.r, m.t, m.c, m.p_atm, m.h).unwrap()
}

#[test]
fn closed_form_arc_matches_quadrature() {
    for r in [0.01, 0.02, 0.035] {
        for i in 0..=40 {
            let w = 0.004 * i as f64 / 40.0;
            let exact = arc_by_quadrature(w, r);
            let got = arc_length(w, r);
            assert!(((got - exact) / exact).abs() < 1e-10, "r {r} w {w}: {got} vs {exact}");
        }
    }
}

#[test]
fn oracle_residual_agrees_with_library() {
    let m = Membrane::table();
    let p = params_of(&m);
    for gauge in [-1.0, -7.0, -14.0] {
        let cav = p.cavity_from_gauge_kpa(gauge);
        for i in 0..20 {
            let w = 0.004 * i as f64 / 19.0;
            let a = force_balance_residual(w, &p, cav);
            let b = residual(&m, w, cav);
            assert!((a - b).abs() < 1e-6 * (1.0 + b.abs()), "w {w}: {a} vs {b}");
        }
    }
}

#[test]
fn table_sweep_matches_grid_scan() {
    let m = Membrane::table();
    let p = MembraneParams::reference();
    for gauge in uniform_sweep(-14.0, 20) {
        let cav = p.cavity_from_gauge_kpa(gauge);
        let sol = solve_deflection(&p, cav).unwrap();
        assert!(sol.residual_mpa().abs() <= 1e-9, "{gauge}: residual {}", sol.residual);
        let oracle = grid_root(&m, cav, 10_000, 1e-10).unwrap();
        assert!(
            (sol.deflection - oracle).abs() * 1e3 <= 1e-6,
            "{gauge}: {} vs {}",
            sol.deflection_mm(),
            oracle * 1e3
        );
    }
}

#[test]
fn atmospheric_cavity_is_exactly_at_rest() {
    let p = MembraneParams::reference();
    let sol = solve_deflection(&p, p.atmospheric()).unwrap();
    assert_eq!(sol.deflection, 0.0);
    assert_eq!(sol.force, 0.0);
    assert_eq!(attachment_force(&p, p.atmospheric()).unwrap(), 0.0);
}

#[test]
fn out_of_model_pressures_rejected() {
    let p = MembraneParams::reference();
    assert!(matches!(
        solve_deflection(&p, p.cavity_from_gauge_kpa(1.0)),
        Err(MechanicsError::PositiveGauge { .. })
    ));
    assert!(matches!(
        solve_deflection(&p, p.cavity_from_gauge_kpa(-16.0)),
        Err(MechanicsError::BeyondValidity { .. })
    ));
    assert!(MembraneParams::from_table_units(0.0, 2.0, 0.098, 0.101, 2.0).is_err());
    assert!(MembraneParams::from_table_units(20.0, 5.0, 0.098, 0.101, 2.0).is_err());
}

#[test]
fn linearized_agrees_at_small_suction() {
    let p = MembraneParams::reference();
    for i in 1..=10 {
        let gauge = -0.1 * i as f64;
        let cav = p.cavity_from_gauge_kpa(gauge);
        let full = solve_deflection(&p, cav).unwrap().deflection;
        let lin = linearized_deflection(&p, cav).unwrap();
        assert!(((lin - full) / full).abs() <= 0.05, "{gauge}: {lin} vs {full}");
    }
}

#[test]
fn force_curve_csv_round_trip() {
    let curve = force_curve(&MembraneParams::reference(), &uniform_sweep(-14.0, 20));
    assert_eq!(curve.samples.len(), 20);
    let text = curve.to_csv();
    let back = ForceCurve::from_csv(&text).unwrap();
    assert_eq!(back.to_csv(), text);
    for (a, b) in curve.samples.iter().zip(&back.samples) {
        assert!((a.force_n - b.force_n).abs() <= 5e-7);
    }
    let empty = force_curve(&MembraneParams::reference(), &[]);
    assert_eq!(empty.to_csv(), format!("{FORCE_CURVE_HEADER}\n"));
}

fn perturbed() -> impl Strategy<Value = (Membrane, f64)> {
    let base = Membrane::table();
    (
        0.8..1.2f64,
        0.8..1.2f64,
        0.8..1.2f64,
        0.8..1.2f64,
        0.8..1.2f64,
        -14.0..-0.05f64,
    )
        .prop_map(move |(a, b, c, d, e, g)| {
            (
                Membrane {
                    r: base.r * a,
                    t: base.t * b,
                    c: base.c * c,
                    p_atm: base.p_atm * d,
                    h: base.h * e,
                },
                g,
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn perturbed_parameters_match_grid_scan((m, gauge) in perturbed()) {
        let p = params_of(&m);
        let cav = p.cavity_from_gauge_kpa(gauge);
        let sol = solve_deflection(&p, cav).unwrap();
        prop_assert!(sol.residual.abs() <= RESIDUAL_TOL_PA);
        let oracle = grid_root(&m, cav, 10_000, 1e-10).unwrap();
        prop_assert!((sol.deflection - oracle).abs() * 1e3 <= 1e-6);
    }

    #[test]
    fn force_monotone_and_bounded((m, gauge) in perturbed(), step in 0.05..1.0f64) {
        let p = params_of(&m);
        let deeper = (gauge - step).max(-15.0);
        let f1 = attachment_force(&p, p.cavity_from_gauge_kpa(gauge)).unwrap();
        let f2 = attachment_force(&p, p.cavity_from_gauge_kpa(deeper)).unwrap();
        prop_assert!(f2 > f1);
        let area = std::f64::consts::PI * m.r * m.r;
        prop_assert!(f1 <= area * (-gauge * 1e3));
        prop_assert!(f1 > 0.0);
    }
}
