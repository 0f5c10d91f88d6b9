//! Property bodies shared by the proptest suite and the acceptance runner.

#![allow(dead_code)]

use ising_otto::cycle::{finite_cycle, first_order_heats, infinitesimal_cycle, CycleSpec, Regime, ZeroTolerance};
use ising_otto::dispersion::ModelParams;
use ising_otto::equilibrium::{free_energy, magnetization, EquilibriumModel, ThermalState};
use ising_otto::quad::Quadrature;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// `(g, h_hot, h_cold, t_hot, t_cold)` with `T_H ≥ T_C`.
pub fn cycle_specs() -> impl Strategy<Value = CycleSpec> {
    (0.1f64..4.0, -4.0f64..4.0, -4.0f64..4.0, 0.02f64..5.0, 0.0f64..1.0).prop_map(|(g, hh, hc, th, frac)| {
        let tc = (th * frac).max(0.01);
        CycleSpec::new(g, hh * g, hc * g, th.max(tc), tc).expect("valid by construction")
    })
}

pub fn check_first_law(spec: CycleSpec) -> Result<(), TestCaseError> {
    let r = finite_cycle(&spec, ZeroTolerance::default_for(spec.g), &Quadrature::default())
        .map_err(|e| TestCaseError::fail(format!("{spec:?}: {e}")))?;
    prop_assert!(
        r.first_law_residual().abs() < 1e-9 * spec.g,
        "{spec:?}: W + Q_H + Q_C = {:e}",
        r.first_law_residual()
    );
    Ok(())
}

/// `(g, h, T)` away from `h = 0`, where the relative comparison is empty.
pub fn field_points() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.1f64..4.0, 0.02f64..3.0, prop::bool::ANY, 0.05f64..5.0).prop_map(|(g, r, neg, t)| {
        let h = if neg { -r * g } else { r * g };
        (g, h, t * g)
    })
}

/// `m = -∂f/∂h` by a five-point stencil.
pub fn check_magnetization_is_free_energy_slope((g, h, t): (f64, f64, f64)) -> Result<(), TestCaseError> {
    let quad = Quadrature::default().with_rel_tol(1e-13);
    let f = |h: f64| -> Result<f64, TestCaseError> {
        let state = ThermalState::new(ModelParams::infinite(g, h).unwrap(), t).unwrap();
        free_energy(&state, &quad).map_err(|e| TestCaseError::fail(e.to_string()))
    };
    let d = 2e-3 * g.max(h.abs());
    let slope = (f(h - 2.0 * d)? - 8.0 * f(h - d)? + 8.0 * f(h + d)? - f(h + 2.0 * d)?) / (12.0 * d);
    let state = ThermalState::new(ModelParams::infinite(g, h).unwrap(), t).unwrap();
    let m = magnetization(&state, EquilibriumModel::Exact, &quad).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let rel = ((-slope - m) / m).abs();
    prop_assert!(rel < 1e-6, "g = {g}, h = {h}, T = {t}: m = {m}, -df/dh = {}, rel {rel:e}", -slope);
    Ok(())
}

/// `(g, h, T_H, T_C)` for the stroke-size convergence check.
pub fn stroke_points() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (0.1f64..3.0, 0.1f64..1.0, 0.05f64..1.0).prop_filter_map("too close to the critical field", |(h, tc, dt)| {
        ((h - 1.0).abs() > 0.2).then_some((1.0, h, tc + dt, tc))
    })
}

/// Finite stroke minus first-order prediction is `O(Δh²)`.
pub fn check_stroke_convergence((g, h, th, tc): (f64, f64, f64, f64)) -> Result<(), TestCaseError> {
    let quad = Quadrature::default().with_rel_tol(1e-12);
    let err = |dh: f64| -> Result<[f64; 3], TestCaseError> {
        let fail = |e: ising_otto::error::Error| TestCaseError::fail(e.to_string());
        let spec = CycleSpec::new(g, h + dh, h, th, tc).map_err(fail)?;
        let r = finite_cycle(&spec, ZeroTolerance::default_for(g), &quad).map_err(fail)?;
        let (qh, qc) = first_order_heats(g, h, th, tc, dh, &quad).map_err(fail)?;
        Ok([r.work + qh + qc, r.q_hot - qh, r.q_cold - qc])
    };
    // err/Δh² must stay bounded as Δh shrinks; a surviving first-order term
    // would grow it like 1/Δh. Comparing against the largest of the coarser
    // steps tolerates a Δh² coefficient that happens to cancel at one of them.
    let steps = [0.04, 0.02, 0.01, 0.005];
    let scaled: Vec<[f64; 3]> = steps
        .iter()
        .map(|&dh| err(dh).map(|e| e.map(|x| x.abs() / (dh * dh))))
        .collect::<Result<_, _>>()?;
    for (q, name) in ["W", "Q_H", "Q_C"].iter().enumerate() {
        let coarse = scaled[..3].iter().map(|s| s[q]).fold(0.0, f64::max);
        let fine = scaled[3][q];
        prop_assert!(
            fine <= 2.0 * coarse + 1e-8,
            "h = {h}, T_H = {th}, T_C = {tc}: {name} error / dh^2 grows from {coarse:e} to {fine:e}"
        );
    }
    Ok(())
}

/// `(h, δh, T_H, T_C)` for nearly free spins, `h > 0`, `T_H > T_C`.
///
/// The stroke stays well below `h(1 - T_C/T_H)`, past which a positive stroke
/// crosses the Carnot point `h_C/h_H = T_C/T_H`, and below `T_H`, past which
/// the hot contact of a strongly polarized chain stops absorbing heat.
/// `h/T_H` is capped so that `1 - tanh(h/T_H)` is still resolved in double
/// precision.
pub fn free_spin_points() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (0.05f64..8.0, 1e-4f64..1e-1, prop::bool::ANY, 0.1f64..3.0, 0.05f64..0.95).prop_map(|(x, r, neg, th, frac)| {
        let h = x * th;
        let dh = r * (h * (1.0 - frac)).min(th);
        (h, if neg { -dh } else { dh }, th, th * frac)
    })
}

/// With the coupling switched off the machine is an engine for `δh > 0`
/// and an accelerator for `δh < 0`.
pub fn check_free_spin_regime((h, dh, th, tc): (f64, f64, f64, f64)) -> Result<(), TestCaseError> {
    let g = 1e-9;
    let r = infinitesimal_cycle(g, h, th, tc, dh, ZeroTolerance::Relative(1e-6), &Quadrature::default())
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let want = if dh > 0.0 { Regime::Engine } else { Regime::Accelerator };
    prop_assert_eq!(r.regime, want, "h = {}, dh = {}, T_H = {}, T_C = {}: {:?}", h, dh, th, tc, r);
    Ok(())
}
