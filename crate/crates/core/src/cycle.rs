//! The adiabatic quantum Otto cycle.
//!
//! Strokes: thermalize at `(h_H, T_H)`, sweep the field to `h_C` in
//! isolation, thermalize at `(h_C, T_C)`, sweep back to `h_H`. Each stroke is
//! quasistatic, so every fermion mode keeps its occupation while its energy
//! moves from `ω_H(θ)` to `ω_C(θ)`. Per site,
//!
//! ```text
//! W   = ⟨(ω_C - ω_H)(n_H - n_C)⟩
//! Q_H = ⟨ω_H (n_H - n_C)⟩
//! Q_C = ⟨ω_C (n_C - n_H)⟩
//! ```
//!
//! with Fermi–Dirac occupations `n_H = n_F(ω_H, T_H)`, `n_C = n_F(ω_C, T_C)`.
//! Reading the occupations as independent two-level weights per mode is the
//! only choice compatible with the free energy and with `W = δh Δm` for an
//! infinitesimal stroke. Negative values are outputs of the working medium.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::dispersion::{omega, paired_mode_average, ModelParams, Sites};
use crate::equilibrium::{self, fermi, EquilibriumModel, ThermalState};
use crate::error::{Error, Result};
use crate::quad::Quadrature;

/// One Otto cycle: fields at the two bath contacts and the bath temperatures.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleSpec {
    pub g: f64,
    pub h_hot: f64,
    pub h_cold: f64,
    pub t_hot: f64,
    pub t_cold: f64,
}

impl CycleSpec {
    pub fn new(g: f64, h_hot: f64, h_cold: f64, t_hot: f64, t_cold: f64) -> Result<Self> {
        validate_baths(g, t_hot, t_cold)?;
        if !(h_hot.is_finite() && h_cold.is_finite()) {
            return Err(Error::invalid(format!("fields must be finite, got h_hot = {h_hot}, h_cold = {h_cold}")));
        }
        Ok(Self {
            g,
            h_hot,
            h_cold,
            t_hot,
            t_cold,
        })
    }

    /// `h_H = h_av + Δh/2`, `h_C = h_av - Δh/2`.
    pub fn centered(g: f64, h_av: f64, delta_h: f64, t_hot: f64, t_cold: f64) -> Result<Self> {
        Self::new(g, h_av + 0.5 * delta_h, h_av - 0.5 * delta_h, t_hot, t_cold)
    }

    pub fn delta_h(&self) -> f64 {
        self.h_hot - self.h_cold
    }

    pub fn h_av(&self) -> f64 {
        0.5 * (self.h_hot + self.h_cold)
    }
}

fn validate_baths(g: f64, t_hot: f64, t_cold: f64) -> Result<()> {
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::invalid(format!("coupling g must be finite and > 0, got {g}")));
    }
    if !(t_cold.is_finite() && t_hot.is_finite() && t_cold > 0.0 && t_hot >= t_cold) {
        return Err(Error::invalid(format!(
            "need t_hot >= t_cold > 0, got t_hot = {t_hot}, t_cold = {t_cold}"
        )));
    }
    Ok(())
}

/// Operating mode, from the signs of `(W, Q_H, Q_C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `W < 0, Q_H > 0, Q_C < 0`
    Engine,
    /// `W > 0, Q_H > 0, Q_C < 0`
    Accelerator,
    /// `W > 0, Q_H < 0, Q_C > 0`
    Refrigerator,
    /// `W > 0, Q_H < 0, Q_C < 0`
    Heater,
    /// Some energy is within tolerance of zero, or the signs fit no machine.
    Boundary,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Engine => "engine",
            Regime::Accelerator => "accelerator",
            Regime::Refrigerator => "refrigerator",
            Regime::Heater => "heater",
            Regime::Boundary => "boundary",
        }
    }

    pub fn classify(work: f64, q_hot: f64, q_cold: f64, zero: f64) -> Regime {
        if [work, q_hot, q_cold].iter().any(|v| v.is_nan() || v.abs() <= zero) {
            return Regime::Boundary;
        }
        match (work > 0.0, q_hot > 0.0, q_cold > 0.0) {
            (false, true, false) => Regime::Engine,
            (true, true, false) => Regime::Accelerator,
            (true, false, true) => Regime::Refrigerator,
            (true, false, false) => Regime::Heater,
            // forbidden by the first or second law; only reachable through noise
            _ => Regime::Boundary,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Regime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// How small an energy must be to count as zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZeroTolerance {
    /// Fixed per-site energy.
    Absolute(f64),
    /// Fraction of `max(|W|, |Q_H|, |Q_C|)`. Useful deep in the gapped regime,
    /// where every energy is exponentially small but the signs are still
    /// resolved.
    Relative(f64),
}

impl ZeroTolerance {
    /// `10⁻¹⁰ g` per site.
    pub fn default_for(g: f64) -> Self {
        ZeroTolerance::Absolute(1e-10 * g)
    }

    pub fn threshold(self, work: f64, q_hot: f64, q_cold: f64) -> f64 {
        match self {
            ZeroTolerance::Absolute(a) => a,
            ZeroTolerance::Relative(r) => r * work.abs().max(q_hot.abs()).max(q_cold.abs()),
        }
    }
}

/// Per-site energetics of one cycle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CycleResult {
    pub work: f64,
    pub q_hot: f64,
    pub q_cold: f64,
    pub regime: Regime,
    /// The threshold actually used by the classification.
    pub zero_tolerance: f64,
}

impl CycleResult {
    pub fn classified(work: f64, q_hot: f64, q_cold: f64, tol: ZeroTolerance) -> Self {
        let zero = tol.threshold(work, q_hot, q_cold);
        Self {
            work,
            q_hot,
            q_cold,
            regime: Regime::classify(work, q_hot, q_cold, zero),
            zero_tolerance: zero,
        }
    }

    /// `W + Q_H + Q_C`.
    pub fn first_law_residual(&self) -> f64 {
        self.work + self.q_hot + self.q_cold
    }
}

fn exact_m(g: f64, h: f64, t: f64, quad: &Quadrature) -> Result<f64> {
    let state = ThermalState::new(ModelParams::infinite(g, h)?, t)?;
    equilibrium::magnetization(&state, EquilibriumModel::Exact, quad)
}

/// `W = δh (m(T_H) - m(T_C))` per site, the first-order work of a stroke
/// between `h` and `h + δh`.
pub fn infinitesimal_work(g: f64, h: f64, t_hot: f64, t_cold: f64, delta_h: f64, quad: &Quadrature) -> Result<f64> {
    validate_baths(g, t_hot, t_cold)?;
    if t_hot == t_cold {
        return Ok(0.0);
    }
    Ok(delta_h * (exact_m(g, h, t_hot, quad)? - exact_m(g, h, t_cold, quad)?))
}

/// Heats to first order in `δh`, with the cold contact at `h` and the hot
/// contact at `h + δh`:
///
/// ```text
/// Q_H =  ΔU + δh(⟨E'⟩_H - ⟨E'⟩_C) - (δh/T_H) Cov_H(E, E')
/// Q_C = -ΔU + (δh/T_H) Cov_H(E, E')
/// ```
///
/// `ΔU = U(T_H) - U(T_C)` at field `h`, `⟨E'⟩ = -m` and `Cov_H` is the
/// connected hot-bath correlator of a level energy and its slope. The
/// covariance enters only through the hot populations carried to the cold
/// contact, hence the asymmetry.
pub fn first_order_heats(
    g: f64,
    h: f64,
    t_hot: f64,
    t_cold: f64,
    delta_h: f64,
    quad: &Quadrature,
) -> Result<(f64, f64)> {
    validate_baths(g, t_hot, t_cold)?;
    let p = ModelParams::infinite(g, h)?;
    let hot = ThermalState::new(p, t_hot)?;
    let cold = ThermalState::new(p, t_cold)?;
    let du = equilibrium::internal_energy(&hot, quad)? - equilibrium::internal_energy(&cold, quad)?;
    if delta_h == 0.0 {
        return Ok((du, -du));
    }
    let m_hot = equilibrium::magnetization(&hot, EquilibriumModel::Exact, quad)?;
    let m_cold = equilibrium::magnetization(&cold, EquilibriumModel::Exact, quad)?;
    let cov = equilibrium::energy_slope_covariance(&hot, quad)?;
    let transfer = delta_h * cov / t_hot;
    Ok((du - delta_h * (m_hot - m_cold) - transfer, -du + transfer))
}

/// Infinitesimal stroke as a classified cycle (work and first-order heats).
pub fn infinitesimal_cycle(
    g: f64,
    h: f64,
    t_hot: f64,
    t_cold: f64,
    delta_h: f64,
    tol: ZeroTolerance,
    quad: &Quadrature,
) -> Result<CycleResult> {
    let (q_hot, q_cold) = first_order_heats(g, h, t_hot, t_cold, delta_h, quad)?;
    // W from the heats keeps the first law exact; it equals δh Δm identically
    Ok(CycleResult::classified(-(q_hot + q_cold), q_hot, q_cold, tol))
}

/// Finite stroke in the thermodynamic limit.
pub fn finite_cycle(spec: &CycleSpec, tol: ZeroTolerance, quad: &Quadrature) -> Result<CycleResult> {
    mode_cycle(spec, Sites::ThermodynamicLimit, tol, quad)
}

/// Finite stroke with per-mode occupations, either integrated over θ or
/// summed over the `N` antiperiodic modes of a finite ring.
pub fn mode_cycle(spec: &CycleSpec, sites: Sites, tol: ZeroTolerance, quad: &Quadrature) -> Result<CycleResult> {
    let hot = ModelParams::new(spec.g, spec.h_hot, sites)?;
    let cold = ModelParams::new(spec.g, spec.h_cold, sites)?;
    let CycleSpec {
        g,
        h_hot,
        h_cold,
        t_hot,
        t_cold,
    } = *spec;
    let occupation = |th: f64| {
        let (w_h, w_c) = (omega(g, h_hot, th), omega(g, h_cold, th));
        (w_h, w_c, fermi(w_h / t_hot), fermi(w_c / t_cold))
    };
    // Near the Carnot point the net energies cancel to rounding noise; the
    // gross energy moved through the cycle sets the absolute scale instead.
    let [gross] = paired_mode_average(&hot, &cold, quad, |th| {
        let (w_h, w_c, n_h, n_c) = occupation(th);
        [(w_h + w_c) * (n_h + n_c)]
    })?;
    let quad = quad.with_abs_floor(quad.abs_floor.max(1e-13 * gross));
    // the three components share nodes, so the first law survives integration
    let [work, q_hot, q_cold] = paired_mode_average(&hot, &cold, &quad, |th| {
        let (w_h, w_c) = (omega(g, h_hot, th), omega(g, h_cold, th));
        let dn = fermi(w_h / t_hot) - fermi(w_c / t_cold);
        [(w_c - w_h) * dn, w_h * dn, -w_c * dn]
    })?;
    Ok(CycleResult::classified(work, q_hot, q_cold, tol))
}

/// Two-level estimate of the heats at low temperature: only the gap
/// `2|h - g|` at `θ = 0` is thermally active.
pub fn low_temperature_heats(spec: &CycleSpec) -> (f64, f64) {
    let a = (spec.h_hot - spec.g).abs();
    let c = (spec.h_cold - spec.g).abs();
    let (bh, bc) = ((-a / spec.t_hot).exp(), (-c / spec.t_cold).exp());
    (2.0 * a * (bh - bc), 2.0 * c * (bc - bh))
}

/// Range of `h_H` over which the low-temperature cycle refrigerates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RefrigeratorWindow {
    pub h_hot_low: f64,
    pub h_hot_high: f64,
}

impl RefrigeratorWindow {
    pub fn contains(&self, h_hot: f64) -> bool {
        self.h_hot_low < h_hot && h_hot < self.h_hot_high
    }
}

/// Refrigeration needs `|h_H - g| > (T_H/T_C)|h_C - g|`. With `h_C = h_H - Δh`
/// this holds for `h_H - g` strictly between `ΔhT_H/(T_H+T_C)` and
/// `ΔhT_H/(T_H-T_C)`, for either sign of `Δh`. The far edge is infinite
/// when the baths have equal temperature.
pub fn refrigerator_window(g: f64, delta_h: f64, t_hot: f64, t_cold: f64) -> Result<RefrigeratorWindow> {
    validate_baths(g, t_hot, t_cold)?;
    if !delta_h.is_finite() || delta_h == 0.0 {
        return Err(Error::invalid(format!("refrigerator window needs a finite, nonzero Δh, got {delta_h}")));
    }
    let near = g + delta_h * t_hot / (t_hot + t_cold);
    let far = if t_hot == t_cold {
        f64::INFINITY.copysign(delta_h)
    } else {
        g + delta_h * t_hot / (t_hot - t_cold)
    };
    Ok(RefrigeratorWindow {
        h_hot_low: near.min(far),
        h_hot_high: near.max(far),
    })
}

/// Fields where `W = Q_H = Q_C = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CarnotPoint {
    pub h_cold: f64,
    pub h_hot: f64,
}

/// With `h_H h_C = g²` the ratio `ω_H(θ)/ω_C(θ)` is the same for every mode,
/// and equals `h_H/g`. Setting it to `T_H/T_C` makes `ω_H/T_H = ω_C/T_C`, so
/// every mode has the same occupation at both contacts.
pub fn carnot_point(g: f64, t_hot: f64, t_cold: f64) -> Result<CarnotPoint> {
    validate_baths(g, t_hot, t_cold)?;
    let ratio = t_hot / t_cold;
    Ok(CarnotPoint {
        h_cold: g / ratio,
        h_hot: g * ratio,
    })
}
