//! Equilibrium thermodynamics of the chain and the ladder of closed-form
//! approximations to the transverse magnetization.
//!
//! All values are per site. With `x = ω/T` the mode sums are
//!
//! ```text
//! f = e₀ - T ⟨ln(1 + e^-x)⟩
//! u = e₀ + ⟨ω n_F⟩,          n_F = 1/(e^x + 1)
//! s = ⟨x n_F + ln(1 + e^-x)⟩ = (u - f)/T
//! m = ⟨(dω/dh) · ½ tanh(x/2)⟩ = -df/dh
//! ```
//!
//! where `⟨·⟩` is the mode average of [`crate::dispersion`]. The first line is
//! the familiar `-T[ln 2 + ⟨ln cosh(ω/2T)⟩]` rearranged so that neither the
//! vacuum part nor the exponentially small thermal part loses precision.

use std::fmt;
use std::str::FromStr;

use crate::dispersion::{domega_dh_or_zero, field_projection, mode_average, omega, ModelParams};
use crate::error::{Error, Result};
use crate::quad::Quadrature;
use crate::quasiparticle;

/// `k_B T`, either strictly positive or the tagged zero-temperature case.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Temperature {
    Zero,
    Positive(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalState {
    pub params: ModelParams,
    pub temperature: Temperature,
}

impl ThermalState {
    pub fn new(params: ModelParams, t: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::invalid(format!(
                "temperature must be finite and > 0, got {t} (use ThermalState::ground for T = 0)"
            )));
        }
        Ok(Self {
            params,
            temperature: Temperature::Positive(t),
        })
    }

    pub fn ground(params: ModelParams) -> Self {
        Self {
            params,
            temperature: Temperature::Zero,
        }
    }

    /// The positive temperature, or an error for the ground state.
    pub fn positive_t(&self) -> Result<f64> {
        match self.temperature {
            Temperature::Positive(t) => Ok(t),
            Temperature::Zero => Err(Error::invalid("this evaluator needs T > 0")),
        }
    }
}

/// Which evaluator of `m(T)` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquilibriumModel {
    /// Full free-fermion mode integral.
    Exact,
    /// `m = (h/T)[1 - (2g² + h²)/(3T²)]`, the `1/T` expansion.
    HighT,
    /// Leading order in `h/g`.
    LinearH,
    /// Through `(h/g)³`.
    ThirdOrder,
    /// Mode occupations replaced by Boltzmann factors `e^{-ω/T}`.
    BoltzmannModes,
    /// Ground state plus a dilute gas of single domain walls.
    QuasiparticleDw,
    /// `m = tanh(h/T)`, exact at `g = 0`.
    NonInteracting,
}

impl EquilibriumModel {
    pub const ALL: [EquilibriumModel; 7] = [
        Self::Exact,
        Self::HighT,
        Self::LinearH,
        Self::ThirdOrder,
        Self::BoltzmannModes,
        Self::QuasiparticleDw,
        Self::NonInteracting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::HighT => "high-t",
            Self::LinearH => "linear-h",
            Self::ThirdOrder => "third-order",
            Self::BoltzmannModes => "boltzmann-modes",
            Self::QuasiparticleDw => "quasiparticle-dw",
            Self::NonInteracting => "non-interacting",
        }
    }
}

impl fmt::Display for EquilibriumModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EquilibriumModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|m| m.name()).collect();
                Error::invalid(format!("unknown model {s:?}, expected one of {}", names.join(", ")))
            })
    }
}

/// `e^-x / (1 + e^-x)`, overflow free for `x >= 0`.
#[inline]
pub(crate) fn fermi(x: f64) -> f64 {
    let e = (-x).exp();
    e / (1.0 + e)
}

/// `n_F (1 - n_F) = e^-x / (1 + e^-x)²`.
#[inline]
pub(crate) fn fermi_variance(x: f64) -> f64 {
    let e = (-x).exp();
    e / ((1.0 + e) * (1.0 + e))
}

/// `sech² x` for `x >= 0`.
#[inline]
fn sech2(x: f64) -> f64 {
    4.0 * fermi_variance(2.0 * x)
}

fn vacuum_energy(p: &ModelParams, quad: &Quadrature) -> Result<f64> {
    Ok(p.ground_state_energy(quad)?.per_site)
}

pub fn free_energy(state: &ThermalState, quad: &Quadrature) -> Result<f64> {
    let p = state.params;
    let e0 = vacuum_energy(&p, quad)?;
    let Temperature::Positive(t) = state.temperature else {
        return Ok(e0);
    };
    let [thermal] = mode_average(&p, quad, |th| [(-omega(p.g, p.h, th) / t).exp().ln_1p()])?;
    Ok(e0 - t * thermal)
}

pub fn internal_energy(state: &ThermalState, quad: &Quadrature) -> Result<f64> {
    let p = state.params;
    let e0 = vacuum_energy(&p, quad)?;
    let Temperature::Positive(t) = state.temperature else {
        return Ok(e0);
    };
    let [thermal] = mode_average(&p, quad, |th| {
        let w = omega(p.g, p.h, th);
        [w * fermi(w / t)]
    })?;
    Ok(e0 + thermal)
}

/// Entropy per site in units of `k_B`.
pub fn entropy(state: &ThermalState, quad: &Quadrature) -> Result<f64> {
    let p = state.params;
    let Temperature::Positive(t) = state.temperature else {
        return Ok(0.0);
    };
    let [s] = mode_average(&p, quad, |th| {
        let x = omega(p.g, p.h, th) / t;
        // x n_F vanishes at x = 0 and underflows cleanly for large x
        [x * fermi(x) + (-x).exp().ln_1p()]
    })?;
    Ok(s)
}

/// `m(T → 0) = ⟨dω/dh⟩ / 2`.
pub fn zero_temperature_magnetization(params: &ModelParams, quad: &Quadrature) -> Result<f64> {
    let p = *params;
    let [m] = mode_average(&p, quad, |th| [0.5 * domega_dh_or_zero(p.g, p.h, th)])?;
    Ok(m)
}

/// Per-site transverse magnetization `⟨Σσᶻ⟩/N`.
///
/// Closed-form approximations are evaluated as written, including outside
/// their range of validity; `HighT` for instance diverges as `T → 0`.
pub fn magnetization(state: &ThermalState, model: EquilibriumModel, quad: &Quadrature) -> Result<f64> {
    let p = state.params;
    let (g, h) = (p.g, p.h);
    match (model, state.temperature) {
        (EquilibriumModel::Exact | EquilibriumModel::BoltzmannModes | EquilibriumModel::QuasiparticleDw, Temperature::Zero) => {
            zero_temperature_magnetization(&p, quad)
        }
        (EquilibriumModel::LinearH, Temperature::Zero) => Ok(h / (2.0 * g)),
        (EquilibriumModel::ThirdOrder, Temperature::Zero) => Ok(h / (2.0 * g) + (h / g).powi(3) / 16.0),
        (EquilibriumModel::NonInteracting, Temperature::Zero) => Ok(if h == 0.0 { 0.0 } else { h.signum() }),
        (EquilibriumModel::HighT, Temperature::Zero) => Err(Error::invalid("the high-temperature expansion has no T = 0 limit")),
        (EquilibriumModel::Exact, Temperature::Positive(t)) => {
            let [m] = mode_average(&p, quad, |th| {
                let w = omega(g, h, th);
                [domega_dh_or_zero(g, h, th) * 0.5 * (0.5 * w / t).tanh()]
            })?;
            Ok(m)
        }
        (EquilibriumModel::HighT, Temperature::Positive(t)) => {
            Ok(h / t * (1.0 - (2.0 * g * g + h * h) / (3.0 * t * t)))
        }
        (EquilibriumModel::LinearH, Temperature::Positive(t)) => Ok(linear_h(g, h, t)),
        (EquilibriumModel::ThirdOrder, Temperature::Positive(t)) => Ok(linear_h(g, h, t) + cubic_h(g, h, t)),
        (EquilibriumModel::BoltzmannModes, Temperature::Positive(t)) => {
            // tanh(x/2) = 1 - 2 n_F ≈ 1 - 2 e^-x, i.e. the vacuum value minus a
            // Boltzmann-weighted correction; dω/dh = 4(h - g cos θ)/ω
            let m0 = zero_temperature_magnetization(&p, quad)?;
            let [corr] = mode_average(&p, quad, |th| {
                let w = omega(g, h, th);
                [domega_dh_or_zero(g, h, th) * (-w / t).exp()]
            })?;
            Ok(m0 - corr)
        }
        (EquilibriumModel::QuasiparticleDw, Temperature::Positive(t)) => {
            let m0 = zero_temperature_magnetization(&p, quad)?;
            Ok(m0 + quasiparticle::qp_thermal_magnetization(&p, t, quad)?)
        }
        (EquilibriumModel::NonInteracting, Temperature::Positive(t)) => Ok((h / t).tanh()),
    }
}

/// `(h/2g)[tanh x + x sech² x]` with `x = g/T`.
fn linear_h(g: f64, h: f64, t: f64) -> f64 {
    let x = g / t;
    h / (2.0 * g) * (x.tanh() + x * sech2(x))
}

/// The `(h/g)³` correction.
fn cubic_h(g: f64, h: f64, t: f64) -> f64 {
    let x = g / t;
    let (th, s2) = (x.tanh(), sech2(x));
    let bracket = 6.0 * x.powi(3) * s2 * s2 - th + x * s2 * (1.0 - 4.0 * x * x + 4.0 * x * th);
    -(h / g).powi(3) / 16.0 * bracket
}

/// `dm/dT = -(1/πT²)∫₀^π (h - g cos θ) sech²(ω/2T) dθ` per site.
pub fn dm_dt(state: &ThermalState, quad: &Quadrature) -> Result<f64> {
    let p = state.params;
    let t = state.positive_t()?;
    let [v] = mode_average(&p, quad, |th| {
        let w = omega(p.g, p.h, th);
        [field_projection(p.g, p.h, th) * sech2(0.5 * w / t)]
    })?;
    Ok(-v / (t * t))
}

/// Connected correlator `⟨E E'⟩ - ⟨E⟩⟨E'⟩` of the level energy `E` and its
/// field derivative `E' = dE/dh`, per site. Modes are independent, so this is
/// `⟨ω (dω/dh) n_F (1 - n_F)⟩`; it also equals `-∂⟨E'⟩/∂β`.
pub fn energy_slope_covariance(state: &ThermalState, quad: &Quadrature) -> Result<f64> {
    let p = state.params;
    let Temperature::Positive(t) = state.temperature else {
        return Ok(0.0);
    };
    let [c] = mode_average(&p, quad, |th| {
        let w = omega(p.g, p.h, th);
        [w * domega_dh_or_zero(p.g, p.h, th) * fermi_variance(w / t)]
    })?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::Sites;

    fn st(g: f64, h: f64, t: f64) -> ThermalState {
        ThermalState::new(ModelParams::infinite(g, h).unwrap(), t).unwrap()
    }

    fn q() -> Quadrature {
        Quadrature::default()
    }

    fn m(g: f64, h: f64, t: f64) -> f64 {
        magnetization(&st(g, h, t), EquilibriumModel::Exact, &q()).unwrap()
    }

    #[test]
    fn non_interacting_limits() {
        let s = st(1e-12, 1.0, 1.0);
        let two_cosh = (2.0 * 1f64.cosh()).ln();
        assert!((free_energy(&s, &q()).unwrap() + two_cosh).abs() < 1e-9);
        assert!((internal_energy(&s, &q()).unwrap() + 1f64.tanh()).abs() < 1e-9);
        for (h, t) in [(0.3, 0.2), (1.0, 1.0), (2.0, 5.0)] {
            assert!((m(1e-12, h, t) - (h / t).tanh()).abs() < 1e-9);
        }
    }

    #[test]
    fn frozen_reference_values() {
        // independent adaptive quadrature of the same integrals
        let cases = [
            (0.5, 1.0, -1.200427359313, -0.849230118556, 0.351197240757),
            (1.0, 1.0, -1.415207639846, -1.117941837340, 0.297265802506),
            (0.3, 0.2, -1.022668162492, -1.022335337866, 0.001664123130),
        ];
        for (h, t, f, u, s) in cases {
            let state = st(1.0, h, t);
            assert!((free_energy(&state, &q()).unwrap() - f).abs() < 1e-10);
            assert!((internal_energy(&state, &q()).unwrap() - u).abs() < 1e-10);
            assert!((entropy(&state, &q()).unwrap() - s).abs() < 1e-10);
        }
        for (h, t, want) in [
            (0.5, 1.0, 0.29245108100),
            (0.5, 0.3, 0.26730511083),
            (0.2, 0.3, 0.10220892702),
            (1.0, 0.5, 0.61905612500),
            (1.5, 0.5, 0.84680580554),
        ] {
            assert!((m(1.0, h, t) - want).abs() < 1e-10, "h={h} T={t}");
        }
    }

    #[test]
    fn low_temperature_limits() {
        let p = ModelParams::infinite(1.0, 0.5).unwrap();
        let e0 = p.ground_state_energy(&q()).unwrap().per_site;
        let cold = ThermalState::new(p, 0.01).unwrap();
        assert!((free_energy(&cold, &q()).unwrap() - e0).abs() < 1e-6);
        assert!((internal_energy(&cold, &q()).unwrap() - e0).abs() < 1e-6);
        assert!(entropy(&cold, &q()).unwrap() < 1e-6);
        let ground = ThermalState::ground(p);
        assert_eq!(free_energy(&ground, &q()).unwrap(), e0);
        let m0 = magnetization(&ground, EquilibriumModel::Exact, &q()).unwrap();
        assert!((m0 - m(1.0, 0.5, 0.01)).abs() < 1e-10);
        assert!(magnetization(&ground, EquilibriumModel::HighT, &q()).is_err());
        for model in [EquilibriumModel::LinearH, EquilibriumModel::ThirdOrder] {
            let at_zero = magnetization(&ground, model, &q()).unwrap();
            let cold = magnetization(&ThermalState::new(p, 1e-3).unwrap(), model, &q()).unwrap();
            assert!((at_zero - cold).abs() < 1e-14, "{model}");
        }
        assert!(dm_dt(&ground, &q()).is_err());
    }

    #[test]
    fn high_temperature_entropy() {
        let s = entropy(&st(1.0, 0.5, 1e4), &q()).unwrap();
        assert!((s - 2f64.ln()).abs() < 1e-6);
        assert!(m(1.0, 0.5, 1e4).abs() < 1e-4);
    }

    #[test]
    fn magnetization_symmetry_and_sign() {
        assert!(m(1.0, 0.0, 0.7).abs() < 1e-15);
        assert!((m(1.0, -0.4, 0.7) + m(1.0, 0.4, 0.7)).abs() < 1e-13);
        assert!(m(1.0, 0.2, 0.5) > m(1.0, 0.2, 0.1));
    }

    #[test]
    fn dm_dt_prefactor_matches_finite_difference() {
        let eps = 1e-5;
        let fd = (m(1.0, 0.3, 1.0 + eps) - m(1.0, 0.3, 1.0 - eps)) / (2.0 * eps);
        let an = dm_dt(&st(1.0, 0.3, 1.0), &q()).unwrap();
        assert!(((an - fd) / fd).abs() < 1e-6, "{an} vs {fd}");
        assert!((an + 0.032986870349).abs() < 1e-9);
        assert!(dm_dt(&st(1.0, 2.0, 0.5), &q()).unwrap() < 0.0);
        assert!(dm_dt(&st(1.0, 0.1, 0.2), &q()).unwrap() > 0.0);
    }

    #[test]
    fn covariance_is_minus_beta_derivative() {
        // Cov(E, E') = -∂⟨E'⟩/∂β = ∂m/∂β since ⟨E'⟩ = -m
        let (t, eps) = (0.7, 1e-5);
        let b = 1.0 / t;
        let dm_db = (m(1.0, 0.6, 1.0 / (b + eps)) - m(1.0, 0.6, 1.0 / (b - eps))) / (2.0 * eps);
        let c = energy_slope_covariance(&st(1.0, 0.6, t), &q()).unwrap();
        assert!(((c - dm_db) / c).abs() < 1e-6, "{c} vs {dm_db}");
    }

    #[test]
    fn linear_h_is_the_first_order_part_of_third_order() {
        for t in [0.2, 0.8, 3.0] {
            let h = 1e-4;
            let lin = magnetization(&st(1.0, h, t), EquilibriumModel::LinearH, &q()).unwrap();
            let cub = magnetization(&st(1.0, h, t), EquilibriumModel::ThirdOrder, &q()).unwrap();
            assert!(((cub - lin) / lin).abs() < 1e-7);
        }
    }

    #[test]
    fn approximations_agree_with_exact_in_their_windows() {
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        let mm = |h, t, model| magnetization(&st(1.0, h, t), model, &q()).unwrap();
        assert!(rel(mm(0.5, 4.0, EquilibriumModel::HighT), m(1.0, 0.5, 4.0)) < 0.02);
        assert!(rel(mm(0.3, 0.5, EquilibriumModel::ThirdOrder), m(1.0, 0.3, 0.5)) < 0.02);
        assert!(rel(mm(0.3, 0.1, EquilibriumModel::BoltzmannModes), m(1.0, 0.3, 0.1)) < 1e-3);
        assert!(rel(mm(0.3, 0.1, EquilibriumModel::QuasiparticleDw), m(1.0, 0.3, 0.1)) < 1e-2);
    }

    #[test]
    fn finite_chain_uses_mode_sums() {
        let p = ModelParams::new(1.0, 0.5, Sites::Finite(4096)).unwrap();
        let s = ThermalState::new(p, 1.0).unwrap();
        let mf = magnetization(&s, EquilibriumModel::Exact, &q()).unwrap();
        assert!((mf - 0.29245108100).abs() < 1e-9);
    }

    #[test]
    fn model_names_round_trip() {
        for model in EquilibriumModel::ALL {
            assert_eq!(model.name().parse::<EquilibriumModel>().unwrap(), model);
        }
        assert!("linear".parse::<EquilibriumModel>().is_err());
    }

    #[test]
    fn temperature_validation() {
        let p = ModelParams::infinite(1.0, 0.5).unwrap();
        assert!(ThermalState::new(p, 0.0).is_err());
        assert!(ThermalState::new(p, -1.0).is_err());
        assert!(ThermalState::new(p, f64::INFINITY).is_err());
    }
}
