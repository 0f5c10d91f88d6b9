//! Finite strokes at low temperature: the refrigerator band around the
//! critical field, compared with its closed-form edges.
//!
//! Deep in the gapped phase every energy is exponentially small, so the
//! labels use a tolerance relative to the largest of |W|, |Q_H|, |Q_C|.

use ising_otto::cycle::{refrigerator_window, Regime};
use ising_otto::quad::Quadrature;
use ising_otto::sweep::{run_sweep, SweepGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, t_hot, t_cold) = (1.0, 0.06, 0.05);
    for delta_h in [0.1, 0.5] {
        let grid = SweepGrid::from_json(&format!(
            r#"{{
                "x_axis": {{"name": "h_av", "min": 0.0, "max": 4.0, "steps": 400}},
                "y_axis": {{"name": "t_cold", "min": {t_cold}, "max": {t_cold}, "steps": 1}},
                "fixed": {{"g": {g}, "t_hot": {t_hot}, "delta_h": {delta_h}}},
                "mode": "finite",
                "zero_tolerance": {{"relative": 1e-9}}
            }}"#
        ))?;
        let records = run_sweep(&grid, 4, &Quadrature::default())?;
        let fridge: Vec<f64> = records
            .iter()
            .filter(|r| r.regime() == Some(Regime::Refrigerator))
            .map(|r| r.x + 0.5 * delta_h)
            .collect();
        let window = refrigerator_window(g, delta_h, t_hot, t_cold)?;
        println!("delta_h = {delta_h}");
        println!("  predicted h_H window: [{:.5}, {:.5}]", window.h_hot_low, window.h_hot_high);
        match (fridge.first(), fridge.last()) {
            (Some(lo), Some(hi)) => println!("  refrigerator cells:   [{lo:.5}, {hi:.5}] ({} cells)", fridge.len()),
            _ => println!("  no refrigerator cells"),
        }
    }
    Ok(())
}
