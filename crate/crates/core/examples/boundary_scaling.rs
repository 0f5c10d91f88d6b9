//! Zero-work curve T_C(h) for an infinitesimal stroke and its behaviour as h
//! approaches the critical field from below, where the gap closes.

use ising_otto::boundaries::{near_critical_scaling_check, w_zero_curve, StrokeMode};
use ising_otto::pool::resolve_threads;
use ising_otto::quad::Quadrature;
use ising_otto::roots::linspace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let quad = Quadrature::default();
    let threads = resolve_threads(None);
    for t_hot in [0.5, 1.0, 1.4] {
        let curve = w_zero_curve(1.0, t_hot, StrokeMode::Infinitesimal, &linspace(0.05, 0.99, 48), threads, &quad)?;
        println!("T_H = {t_hot}: {} boundary points, {} omitted", curve.points.len(), curve.omitted.len());
        for p in curve.points.iter().step_by(8) {
            println!("  h = {:.3}  T_C = {:.5}", p.h, p.t_cold);
        }
    }

    let samples = linspace(0.7, 0.99, 12);
    for t_hot in [0.5, 1.4] {
        let report = near_critical_scaling_check(1.0, t_hot, &samples, threads, &quad)?;
        println!(
            "\nT_H = {t_hot}: T_C against sqrt(g^2 - h^2) over h in [0.7, 0.99], {} rows, {} omitted",
            report.rows.len(),
            report.omitted.len()
        );
        println!("  spearman = {:.4}, T_C / gap ~ {:.4}", report.spearman, report.constant);
    }
    Ok(())
}
