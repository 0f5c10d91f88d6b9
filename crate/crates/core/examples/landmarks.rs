//! Magnetization peak and equal-magnetization temperatures for every model
//! that has them.

use ising_otto::boundaries::{equal_magnetization_temperature, magnetization_peak_temperature};
use ising_otto::equilibrium::EquilibriumModel;
use ising_otto::quad::Quadrature;

fn main() {
    let quad = Quadrature::default();
    let g = 1.0;
    for h in [0.0, 0.1, 0.3, 0.6] {
        println!("h = {h}");
        for model in EquilibriumModel::ALL {
            let peak = magnetization_peak_temperature(g, h, model, &quad);
            let equal = equal_magnetization_temperature(g, h, model, &quad);
            let show = |r: Result<ising_otto::boundaries::Landmark, _>| match r {
                Ok(l) => format!("{:.6}", l.temperature),
                Err(e) => format!("({e})"),
            };
            println!("  {:<17} T< = {:<12} T> = {}", model.name(), show(peak), show(equal));
        }
    }
}
