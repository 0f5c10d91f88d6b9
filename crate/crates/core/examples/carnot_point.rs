//! Field pairs where the cycle does nothing at all, and how the energetics
//! leave zero as the cold field moves away from it.

use ising_otto::cycle::{carnot_point, finite_cycle, CycleSpec, ZeroTolerance};
use ising_otto::quad::Quadrature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let quad = Quadrature::default();
    let g = 1.0;
    println!("{:>6} {:>6} {:>10} {:>10} {:>10}", "T_H", "T_C", "h_C", "h_H", "max|E|");
    for (t_hot, t_cold) in [(0.75, 0.6), (1.0, 0.5), (0.4, 0.1), (2.0, 1.9)] {
        let cp = carnot_point(g, t_hot, t_cold)?;
        let spec = CycleSpec::new(g, cp.h_hot, cp.h_cold, t_hot, t_cold)?;
        let r = finite_cycle(&spec, ZeroTolerance::default_for(g), &quad)?;
        let worst = r.work.abs().max(r.q_hot.abs()).max(r.q_cold.abs());
        println!("{t_hot:>6} {t_cold:>6} {:>10.6} {:>10.6} {worst:>10.2e}", cp.h_cold, cp.h_hot);
    }

    let cp = carnot_point(g, 0.75, 0.6)?;
    println!("\nmoving h_C at fixed h_H = {}", cp.h_hot);
    for shift in [-0.2, -0.05, 0.0, 0.05, 0.2] {
        let spec = CycleSpec::new(g, cp.h_hot, cp.h_cold + shift, 0.75, 0.6)?;
        let r = finite_cycle(&spec, ZeroTolerance::default_for(g), &quad)?;
        println!(
            "  h_C = {:.3}: W = {:>12.4e}  Q_H = {:>12.4e}  Q_C = {:>12.4e}  {}",
            spec.h_cold, r.work, r.q_hot, r.q_cold, r.regime
        );
    }
    Ok(())
}
