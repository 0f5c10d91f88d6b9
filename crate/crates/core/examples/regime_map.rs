//! Regime map in the (h, T_C) plane for an infinitesimal stroke, rendered
//! as characters: E engine, A accelerator, R refrigerator, H heater,
//! `.` boundary.
//!
//! Pass a hot-bath temperature as the first argument (default 0.5) and an
//! output path as the second to also write the CSV table.

use std::path::PathBuf;

use ising_otto::cycle::Regime;
use ising_otto::pool::resolve_threads;
use ising_otto::quad::Quadrature;
use ising_otto::sweep::{emit, run_sweep, Format, SweepGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t_hot: f64 = args.next().map_or(Ok(0.5), |s| s.parse())?;
    let grid = SweepGrid::from_json(&format!(
        r#"{{
            "x_axis": {{"name": "h", "min": 0.0, "max": 2.0, "steps": 60}},
            "y_axis": {{"name": "t_cold", "min": {lo}, "max": {t_hot}, "steps": 24}},
            "fixed": {{"g": 1.0, "t_hot": {t_hot}, "delta_h": 0.001}},
            "mode": "infinitesimal"
        }}"#,
        lo = t_hot / 24.0
    ))?;
    let records = run_sweep(&grid, resolve_threads(None), &Quadrature::default())?;

    // highest T_C on top
    for row in records.chunks(grid.x_axis.steps).rev() {
        let line: String = row
            .iter()
            .map(|r| match r.regime() {
                Some(Regime::Engine) => 'E',
                Some(Regime::Accelerator) => 'A',
                Some(Regime::Refrigerator) => 'R',
                Some(Regime::Heater) => 'H',
                Some(Regime::Boundary) => '.',
                None => '?',
            })
            .collect();
        println!("{:>6.3} {line}", row[0].y);
    }
    println!("{:>6} h from 0 to 2g, T_H = {t_hot}", "");

    if let Some(path) = args.next() {
        emit(&records, Format::Csv, &PathBuf::from(path))?;
    }
    Ok(())
}
