//! Transverse magnetization per site against temperature for every
//! equilibrium model, at a field inside the ferromagnetic phase.
//!
//! ```text
//! cargo run --example magnetization_curves -- 0.3
//! ```

use ising_otto::dispersion::ModelParams;
use ising_otto::equilibrium::{magnetization, EquilibriumModel, ThermalState};
use ising_otto::quad::Quadrature;
use ising_otto::roots::linspace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h: f64 = std::env::args().nth(1).map_or(Ok(0.3), |s| s.parse())?;
    let params = ModelParams::infinite(1.0, h)?;
    let quad = Quadrature::default();

    print!("{:>6}", "T");
    for model in EquilibriumModel::ALL {
        print!(" {:>16}", model.name());
    }
    println!();
    for t in linspace(0.1, 3.0, 30) {
        let state = ThermalState::new(params, t)?;
        print!("{t:>6.2}");
        for model in EquilibriumModel::ALL {
            match magnetization(&state, model, &quad) {
                Ok(m) => print!(" {m:>16.8}"),
                Err(_) => print!(" {:>16}", "-"),
            }
        }
        println!();
    }
    Ok(())
}
