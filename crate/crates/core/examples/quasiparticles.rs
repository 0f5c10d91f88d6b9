//! Domain-wall quasiparticles of the ferromagnetic chain: the magnetization
//! of a single wall state and the temperature at which the dilute-wall
//! picture stops describing the thermal slope.

use ising_otto::dispersion::{ModeAngle, ModelParams};
use ising_otto::quad::Quadrature;
use ising_otto::quasiparticle::{crossover_temperature, mu, qp_magnetization};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 64;
    println!("single wall on N = {n} sites");
    for k in [1, 8, 16, 32, 48] {
        let q = qp_magnetization(n, k)?;
        println!(
            "  k = {k:>2}: sum = {:>10.6}  (N-1)cos/2 = {:>10.6}  <sigma^z> = {:>9.6}",
            q.raw_sum, q.approximation, q.expectation
        );
    }

    let quad = Quadrature::default();
    println!("\ndispersion at g = 1, h = 0.1");
    let p = ModelParams::infinite(1.0, 0.1)?;
    for theta in [0.0, 0.5, 1.0, 2.0, std::f64::consts::PI] {
        let a = ModeAngle::continuum(theta)?;
        println!("  theta = {theta:.3}: mu = {:.5}  omega = {:.5}", mu(&p, a), p.omega(a));
    }

    println!("\nsign changes of dm/dT");
    for h in [0.05, 0.1, 0.2] {
        let c = crossover_temperature(&ModelParams::infinite(1.0, h)?, &quad)?;
        let show = |t: Option<f64>| t.map_or("none".to_string(), |t| format!("{t:.4}"));
        println!(
            "  h = {h}: exact {}, quasiparticle {}",
            show(c.exact_sign_change),
            show(c.qp_sign_change)
        );
    }
    Ok(())
}
