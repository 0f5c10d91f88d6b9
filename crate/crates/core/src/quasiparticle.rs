//! Single domain walls in the ferromagnetic phase (`h < g`).
//!
//! On an open chain of `N` spins the `N - 1` states `|n⟩` with one wall
//! between sites `n` and `n + 1` are degenerate at `h = 0`. The transverse
//! field hops the wall by one bond, giving the band
//!
//! ```text
//! |ψ_k⟩ = N_k^{-1/2} Σ_n sin(n θ_k) |n⟩,   θ_k = kπ/N,   μ(θ) = 2(g - h cos θ)
//! ```
//!
//! above the ferromagnetic ground state. A wall at `θ < π/2` raises `⟨Σσᶻ⟩`,
//! so thermally exciting the bottom of the band increases `m` with `T`.

use std::f64::consts::PI;

use crate::dispersion::{ModeAngle, ModelParams};
use crate::equilibrium::{self, ThermalState};
use crate::error::{Error, Result};
use crate::quad::Quadrature;
use crate::roots::{geomspace, scan, Brent};

/// Domain-wall energy above the ferromagnetic ground state.
pub fn mu(params: &ModelParams, theta: ModeAngle) -> f64 {
    mu_raw(params.g, params.h, theta.radians())
}

#[inline]
fn mu_raw(g: f64, h: f64, theta: f64) -> f64 {
    2.0 * (g - h * theta.cos())
}

/// One delocalized wall on an open chain.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainWallState {
    pub n_sites: usize,
    pub k: usize,
    pub theta_k: f64,
    /// Amplitudes on `|1⟩ … |N-1⟩`, unit norm.
    pub coefficients: Vec<f64>,
    /// `Σ_n sin²(n θ_k)`, which is `N/2` for every allowed `k`.
    pub norm_sq: f64,
}

impl DomainWallState {
    pub fn new(n_sites: usize, k: usize) -> Result<Self> {
        if n_sites < 3 || k == 0 || k >= n_sites {
            return Err(Error::invalid(format!(
                "domain wall needs N >= 3 and 1 <= k <= N-1, got N = {n_sites}, k = {k}"
            )));
        }
        let theta_k = k as f64 * PI / n_sites as f64;
        let raw: Vec<f64> = (1..n_sites).map(|n| (n as f64 * theta_k).sin()).collect();
        let norm_sq: f64 = raw.iter().map(|c| c * c).sum();
        let scale = norm_sq.sqrt().recip();
        Ok(Self {
            n_sites,
            k,
            theta_k,
            coefficients: raw.into_iter().map(|c| c * scale).collect(),
            norm_sq,
        })
    }
}

/// Transverse magnetization of one wall state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QpMagnetization {
    /// `Σ_{n=1}^{N-1} sin(nθ_k) sin((n+1)θ_k)`, which equals `(N/2) cos θ_k`.
    pub raw_sum: f64,
    /// `½(N-1) cos θ_k`, the large-N form of `raw_sum`.
    pub approximation: f64,
    /// `⟨ψ_k|Σσᶻ|ψ_k⟩ = (2/N_k) raw_sum = 2 cos θ_k`, measured from the
    /// ferromagnetic ground state.
    pub expectation: f64,
}

pub fn qp_magnetization(n_sites: usize, k: usize) -> Result<QpMagnetization> {
    let state = DomainWallState::new(n_sites, k)?;
    let t = state.theta_k;
    let raw_sum: f64 = (1..n_sites).map(|n| (n as f64 * t).sin() * ((n + 1) as f64 * t).sin()).sum();
    Ok(QpMagnetization {
        raw_sum,
        approximation: 0.5 * (n_sites - 1) as f64 * t.cos(),
        expectation: 2.0 * raw_sum / state.norm_sq,
    })
}

/// `f_qp = -(T/π)∫₀^π e^{-μ/T} dθ` per site: a dilute gas of walls.
///
/// Always evaluated as the continuum integral; the finite open-chain band
/// only enters through [`qp_magnetization`].
pub fn qp_free_energy(state: &ThermalState, quad: &Quadrature) -> Result<f64> {
    let t = state.positive_t()?;
    let (g, h) = (state.params.g, state.params.h);
    let z = quad.integrate(|th| (-mu_raw(g, h, th) / t).exp(), 0.0, PI)?;
    Ok(-t * z / PI)
}

/// `-∂f_qp/∂h = (2/π)∫ e^{-μ/T} cos θ dθ`: the walls' share of `m`.
pub fn qp_thermal_magnetization(params: &ModelParams, t: f64, quad: &Quadrature) -> Result<f64> {
    let (g, h) = (params.g, params.h);
    let v = quad.integrate(|th| (-mu_raw(g, h, th) / t).exp() * th.cos(), 0.0, PI)?;
    Ok(2.0 * v / PI)
}

/// `dm/dT = (2/πT²)∫₀^π μ e^{-μ/T} cos θ dθ` per site.
pub fn qp_dm_dt(state: &ThermalState, quad: &Quadrature) -> Result<f64> {
    let t = state.positive_t()?;
    let (g, h) = (state.params.g, state.params.h);
    let v = quad.integrate(
        |th| {
            let m = mu_raw(g, h, th);
            m * (-m / t).exp() * th.cos()
        },
        0.0,
        PI,
    )?;
    Ok(2.0 * v / (PI * t * t))
}

/// Where the wall picture stops predicting the sign of `dm/dT`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossover {
    /// Temperature at which `qp_dm_dt` changes sign.
    pub qp_sign_change: Option<f64>,
    /// Temperature at which the exact `dm/dT` changes sign (the peak of `m`).
    pub exact_sign_change: Option<f64>,
    /// Lowest temperature at which the two signs disagree.
    pub disagreement_from: Option<f64>,
}

/// Locates both sign changes on `[10⁻³g, 10g]`. Nothing is assumed about
/// where they are.
pub fn crossover_temperature(params: &ModelParams, quad: &Quadrature) -> Result<Crossover> {
    let p = *params;
    let grid = geomspace(1e-3 * p.g, 10.0 * p.g, 64);
    let brent = Brent::default().with_xtol(1e-10 * p.g);
    let first_root = |f: &dyn Fn(f64) -> Result<f64>| -> Result<Option<f64>> {
        match scan(f, &grid)? {
            Some(b) => Ok(Some(brent.solve_bracket(f, b)?)),
            None => Ok(None),
        }
    };
    let qp = first_root(&|t| qp_dm_dt(&ThermalState::new(p, t)?, quad))?;
    let exact = first_root(&|t| equilibrium::dm_dt(&ThermalState::new(p, t)?, quad))?;
    let disagreement_from = match (qp, exact) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    Ok(Crossover {
        qp_sign_change: qp,
        exact_sign_change: exact,
        disagreement_from,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(g: f64, h: f64, t: f64) -> ThermalState {
        ThermalState::new(ModelParams::infinite(g, h).unwrap(), t).unwrap()
    }

    #[test]
    fn mu_examples() {
        let p = ModelParams::infinite(1.0, 0.0).unwrap();
        assert_eq!(mu(&p, ModeAngle::continuum(1.1).unwrap()), 2.0);
        let p = ModelParams::infinite(1.0, 0.5).unwrap();
        assert_eq!(mu(&p, ModeAngle::continuum(0.0).unwrap()), 1.0);
        assert_eq!(mu(&p, ModeAngle::continuum(PI).unwrap()), 3.0);
    }

    #[test]
    fn wall_states_are_normalized() {
        for (n, k) in [(3, 1), (8, 5), (100, 10)] {
            let s = DomainWallState::new(n, k).unwrap();
            let norm: f64 = s.coefficients.iter().map(|c| c * c).sum();
            assert!((norm - 1.0).abs() < 1e-14);
            assert!((s.norm_sq - n as f64 / 2.0).abs() < 1e-10);
        }
        assert!(DomainWallState::new(2, 1).is_err());
        assert!(DomainWallState::new(8, 8).is_err());
    }

    #[test]
    fn magnetization_sum_examples() {
        let mid = qp_magnetization(10, 5).unwrap();
        assert!(mid.approximation.abs() < 1e-14);
        assert!(mid.raw_sum.abs() < 1.0);
        let low = qp_magnetization(100, 10).unwrap();
        assert!(((low.raw_sum - low.approximation) / low.approximation).abs() < 0.02);
        assert!((low.expectation - 2.0 * (PI / 10.0).cos()).abs() < 1e-12);
        assert!(qp_magnetization(100, 90).unwrap().raw_sum < 0.0);
    }

    #[test]
    fn expectation_matches_spin_basis() {
        // Build the wall state in the σˣ product basis of an open chain
        // (bit set = spin pointing along -x) and apply Σσᶻ, which flips one
        // spin at a time.
        let (n, g, h) = (7usize, 1.0, 0.35);
        for k in 1..n {
            let s = DomainWallState::new(n, k).unwrap();
            let mut psi = vec![0.0; 1 << n];
            for (i, c) in s.coefficients.iter().enumerate() {
                // wall after site i+1: sites 0..=i flipped
                psi[(1usize << (i + 1)) - 1] = *c;
            }
            let mut sz = 0.0;
            let mut hx = 0.0;
            for (b, &a) in psi.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    sz += a * psi[b ^ (1 << j)];
                }
                let walls = (0..n - 1).filter(|&j| ((b >> j) ^ (b >> (j + 1))) & 1 == 1).count();
                hx += a * a * (-g * (n - 1 - 2 * walls) as f64);
            }
            let e_fm = -g * (n - 1) as f64;
            let energy = hx - h * sz - e_fm;
            assert!((sz - qp_magnetization(n, k).unwrap().expectation).abs() < 1e-12);
            assert!((energy - 2.0 * (g - h * s.theta_k.cos())).abs() < 1e-12);
        }
    }

    #[test]
    fn free_energy_examples() {
        let t = 0.4;
        let f = qp_free_energy(&st(1.0, 0.0, t), &Quadrature::default()).unwrap();
        assert!((f + t * (-2.0 / t).exp()).abs() < 1e-15);
        // midpoint sum with 10⁶ cells
        let (g, h, t) = (1.0, 0.3, 0.2);
        let n = 1_000_000;
        let riemann: f64 =
            (0..n).map(|i| (-mu_raw(g, h, (i as f64 + 0.5) * PI / n as f64) / t).exp()).sum::<f64>() / n as f64;
        let f = qp_free_energy(&st(g, h, t), &Quadrature::default()).unwrap();
        assert!(((f + t * riemann) / f).abs() < 1e-9);
        assert!(qp_free_energy(&st(1.0, 0.3, 0.01), &Quadrature::default()).unwrap() > -1e-20);
    }

    #[test]
    fn slope_matches_finite_difference_of_free_energy() {
        let q = Quadrature::default();
        let (g, h, t, e) = (1.0, 0.3, 0.1, 1e-5);
        let m_of = |t: f64| {
            let fp = qp_free_energy(&st(g, h + e, t), &q).unwrap();
            let fm = qp_free_energy(&st(g, h - e, t), &q).unwrap();
            -(fp - fm) / (2.0 * e)
        };
        let (dt, te) = (1e-5, t);
        let fd = (m_of(te + dt) - m_of(te - dt)) / (2.0 * dt);
        let an = qp_dm_dt(&st(g, h, t), &q).unwrap();
        assert!(an > 0.0);
        assert!(((an - fd) / an).abs() < 1e-5, "{an} vs {fd}");
        assert!(qp_dm_dt(&st(1.0, 0.0, 0.3), &q).unwrap().abs() < 1e-15);
    }

    #[test]
    fn sign_agrees_with_exact_at_low_temperature() {
        let q = Quadrature::default();
        for t in [0.05, 0.1, 0.2, 0.3] {
            let s = st(1.0, 0.1, t);
            assert!(qp_dm_dt(&s, &q).unwrap() > 0.0);
            assert!(equilibrium::dm_dt(&s, &q).unwrap() > 0.0);
        }
        let c = crossover_temperature(&ModelParams::infinite(1.0, 0.1).unwrap(), &q).unwrap();
        assert!(c.disagreement_from.unwrap() > 0.3);
    }

    #[test]
    fn leading_term_of_exact_free_energy() {
        let q = Quadrature::default();
        let s = st(1.0, 0.05, 0.1);
        let p = s.params;
        let e0 = p.ground_state_energy(&q).unwrap().per_site;
        let thermal = equilibrium::free_energy(&s, &q).unwrap() - e0;
        let qp = qp_free_energy(&s, &q).unwrap();
        assert!(((qp - thermal) / thermal).abs() < 0.05, "{qp} vs {thermal}");
    }
}
