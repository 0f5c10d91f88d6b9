use ising_otto::cycle::{finite_cycle, CycleSpec, ZeroTolerance};
use ising_otto::dispersion::ModelParams;
use ising_otto::equilibrium::{self, EquilibriumModel, ThermalState};
use ising_otto::oracle::{
    brute_force_cycle, cache, dense_spectrum, diagonalize, ed_first_order_heats, level_crossings,
    power_iteration_ground_energy, thermal_expectations, Pairing,
};
use ising_otto::quad::Quadrature;

#[test]
fn ground_energy_matches_antiperiodic_modes() {
    let quad = Quadrature::default();
    for (n, h) in [(6, 0.4), (8, 1.0), (10, 1.7), (12, 0.5)] {
        let p = ModelParams::finite(1.0, h, n).unwrap();
        let ed = diagonalize(&p).unwrap().ground_energy();
        let modes = p.ground_state_energy(&quad).unwrap().total.unwrap();
        assert!((ed - modes).abs() < 1e-10, "N = {n}, h = {h}: {ed} vs {modes}");
    }
}

#[test]
fn blocked_spectrum_equals_dense_at_ten_sites() {
    let p = ModelParams::finite(0.8, 1.1, 10).unwrap();
    let blocked = diagonalize(&p).unwrap();
    let dense = dense_spectrum(&p).unwrap();
    let worst = blocked
        .energies
        .iter()
        .zip(&dense)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1e-10, "{worst}");
}

#[test]
fn power_iteration_confirms_twelve_site_ground_state() {
    let p = ModelParams::finite(1.0, 1.3, 12).unwrap();
    let e = power_iteration_ground_energy(&p).unwrap();
    assert!((e - diagonalize(&p).unwrap().ground_energy()).abs() < 1e-8);
}

#[test]
fn thermal_state_approaches_thermodynamic_limit() {
    let quad = Quadrature::default();
    let (g, h, t) = (1.0, 1.5, 0.8);
    let ed = thermal_expectations(&diagonalize(&ModelParams::finite(g, h, 12).unwrap()).unwrap(), t).unwrap();
    let state = ThermalState::new(ModelParams::infinite(g, h).unwrap(), t).unwrap();
    let f = equilibrium::free_energy(&state, &quad).unwrap();
    let m = equilibrium::magnetization(&state, EquilibriumModel::Exact, &quad).unwrap();
    let cov = equilibrium::energy_slope_covariance(&state, &quad).unwrap();
    assert!(((ed.free_energy - f) / f).abs() < 1e-4, "{} vs {f}", ed.free_energy);
    assert!(((ed.magnetization - m) / m).abs() < 1e-3, "{} vs {m}", ed.magnetization);
    // fluctuations carry the largest finite-size correction
    assert!(((ed.energy_slope_covariance - cov) / cov).abs() < 2e-2, "{} vs {cov}", ed.energy_slope_covariance);
}

#[test]
fn magnetization_error_shrinks_with_chain_length() {
    let quad = Quadrature::default();
    let (g, h, t) = (1.0, 0.2, 0.25);
    let state = ThermalState::new(ModelParams::infinite(g, h).unwrap(), t).unwrap();
    let exact = equilibrium::magnetization(&state, EquilibriumModel::Exact, &quad).unwrap();
    let err: Vec<f64> = [8, 10, 12]
        .iter()
        .map(|&n| {
            let d = diagonalize(&ModelParams::finite(g, h, n).unwrap()).unwrap();
            (thermal_expectations(&d, t).unwrap().magnetization - exact).abs()
        })
        .collect();
    assert!(err[0] > err[1] && err[1] > err[2], "{err:?}");
}

#[test]
fn hellmann_feynman_heats_match_small_strokes() {
    let (n, g, h, th, tc) = (8, 1.0, 0.7, 0.9, 0.3);
    let tol = ZeroTolerance::default_for(g);
    let d = |dh: f64| {
        let spec = CycleSpec::new(g, h + dh, h, th, tc).unwrap();
        let bf = brute_force_cycle(n, &spec, Pairing::Sector, tol).unwrap();
        let (qh, qc) = ed_first_order_heats(n, g, h, th, tc, dh).unwrap();
        (bf.q_hot - qh).abs().max((bf.q_cold - qc).abs())
    };
    let (a, b) = (d(0.02), d(0.01));
    assert!(a / b > 3.0, "{a:e} / {b:e}");
}

#[test]
fn pairing_choice_is_measured() {
    let spec = CycleSpec::new(1.0, 2.0, 1.5, 0.75, 0.1).unwrap();
    let tol = ZeroTolerance::default_for(1.0);
    let limit = finite_cycle(&spec, tol, &Quadrature::default()).unwrap();
    let sector = brute_force_cycle(10, &spec, Pairing::Sector, tol).unwrap();
    let global = brute_force_cycle(10, &spec, Pairing::Global, tol).unwrap();
    let rel = |x: f64| ((x - limit.work) / limit.work).abs();
    assert!(rel(sector.work) < 0.01);
    // the global ordering mixes sectors across level crossings
    assert!(rel(global.work) > rel(sector.work));
    assert!(level_crossings(10, 1.0, 1.5, 2.0, 5).unwrap().total() > 0);
}

#[test]
fn cache_files_reload_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let p = ModelParams::finite(1.0, 0.3, 10).unwrap();
    let fresh = cache::diagonalize_cached(&p, dir.path()).unwrap();
    let path = cache::entry_path(dir.path(), 10, 1.0, 0.3);
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(&bytes[..8], b"TFIMSPEC");
    assert_eq!(u64::from_le_bytes(bytes[8..16].try_into().unwrap()), 1);
    assert_eq!(u64::from_le_bytes(bytes[16..24].try_into().unwrap()), 10);
    assert_eq!(bytes.len(), 40 + 1024 * 18);
    assert_eq!(cache::load(&path).unwrap(), fresh);
}
