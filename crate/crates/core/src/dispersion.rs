//! Free-fermion spectrum of the periodic transverse-field Ising chain
//!
//! ```text
//! H = -g Σ_j σˣ_j σˣ_{j+1} - h Σ_j σᶻ_j
//! ```
//!
//! After the Jordan–Wigner mapping each mode carries energy
//! `ω(θ) = 2 sqrt(h² + g² - 2gh cos θ)`. Units are `k_B = ħ = 1`, so fields and
//! temperatures are both energies.
//!
//! Thermodynamic-limit quantities are mode averages `(1/π)∫₀^π dθ`; a finite
//! chain replaces them by `(1/N) Σ_j` over the antiperiodic angles
//! `θ_j = π(2j-1)/N`. Everything returned is per site.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::Quadrature;

/// Number of spins, or the `N → ∞` limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sites {
    Finite(usize),
    ThermodynamicLimit,
}

/// Couplings and system size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub g: f64,
    pub h: f64,
    pub sites: Sites,
}

impl ModelParams {
    pub fn new(g: f64, h: f64, sites: Sites) -> Result<Self> {
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::invalid(format!("coupling g must be finite and > 0, got {g}")));
        }
        if !h.is_finite() {
            return Err(Error::invalid(format!("field h must be finite, got {h}")));
        }
        if let Sites::Finite(n) = sites {
            if n < 2 || n % 2 != 0 {
                return Err(Error::invalid(format!("finite chains need an even N >= 2, got {n}")));
            }
        }
        Ok(Self { g, h, sites })
    }

    pub fn infinite(g: f64, h: f64) -> Result<Self> {
        Self::new(g, h, Sites::ThermodynamicLimit)
    }

    pub fn finite(g: f64, h: f64, n: usize) -> Result<Self> {
        Self::new(g, h, Sites::Finite(n))
    }

    /// Same chain at a different field.
    pub fn with_field(&self, h: f64) -> Result<Self> {
        Self::new(self.g, h, self.sites)
    }

    pub fn n_sites(&self) -> Option<usize> {
        match self.sites {
            Sites::Finite(n) => Some(n),
            Sites::ThermodynamicLimit => None,
        }
    }

    pub fn omega(&self, theta: ModeAngle) -> f64 {
        omega(self.g, self.h, theta.0)
    }

    pub fn domega_dh(&self, theta: ModeAngle) -> Result<f64> {
        let s2 = gap_sq(self.g, self.h, theta.0);
        if s2 == 0.0 {
            return Err(Error::SingularPoint {
                g: self.g,
                h: self.h,
                theta: theta.0,
            });
        }
        Ok(2.0 * field_projection(self.g, self.h, theta.0) / s2.sqrt())
    }

    pub fn ground_state_energy(&self, quad: &Quadrature) -> Result<GroundState> {
        let [mean] = mode_average(self, quad, |t| [omega(self.g, self.h, t)])?;
        let per_site = -0.5 * mean;
        Ok(GroundState {
            per_site,
            total: self.n_sites().map(|n| per_site * n as f64),
        })
    }
}

/// `E₀` of the fermionic vacuum. `total` is only defined for finite chains.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundState {
    pub per_site: f64,
    pub total: Option<f64>,
}

/// A mode angle. Continuum angles live in `[0, π]`; the discrete
/// antiperiodic set spans `(0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ModeAngle(f64);

impl ModeAngle {
    pub fn continuum(theta: f64) -> Result<Self> {
        if (0.0..=PI).contains(&theta) {
            Ok(Self(theta))
        } else {
            Err(Error::invalid(format!("mode angle {theta} outside [0, π]")))
        }
    }

    /// `θ_j = π(2j-1)/N` for `j = 1..=N`.
    pub fn discrete(j: usize, n: usize) -> Result<Self> {
        if n == 0 || j == 0 || j > n {
            return Err(Error::invalid(format!("mode index {j} outside 1..={n}")));
        }
        Ok(Self(discrete_angle(j, n)))
    }

    pub fn all_discrete(n: usize) -> Vec<Self> {
        (1..=n).map(|j| Self(discrete_angle(j, n))).collect()
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

fn discrete_angle(j: usize, n: usize) -> f64 {
    PI * (2 * j - 1) as f64 / n as f64
}

/// `h² + g² - 2gh cos θ`, written to avoid cancellation near `h = g`, `θ = 0`.
#[inline]
pub(crate) fn gap_sq(g: f64, h: f64, theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    let d = h - g;
    d * d + 4.0 * g * h * s * s
}

/// `h - g cos θ`, the sign of `dω/dh`.
#[inline]
pub(crate) fn field_projection(g: f64, h: f64, theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    (h - g) + 2.0 * g * s * s
}

#[inline]
pub(crate) fn omega(g: f64, h: f64, theta: f64) -> f64 {
    2.0 * gap_sq(g, h, theta).max(0.0).sqrt()
}

/// `dω/dh`, with the removable value 0·(bounded) used at `ω = 0`: callers only
/// ever multiply it by a factor that vanishes with `ω`.
#[inline]
pub(crate) fn domega_dh_or_zero(g: f64, h: f64, theta: f64) -> f64 {
    let s2 = gap_sq(g, h, theta);
    if s2 > 0.0 {
        2.0 * field_projection(g, h, theta) / s2.sqrt()
    } else {
        0.0
    }
}

/// Breakpoints for `[0, π]`. Near the critical line the dispersion has a kink
/// of width `|h - g|/g` at `θ = 0`.
pub(crate) fn breakpoints(g: f64, h: f64) -> Vec<f64> {
    let rel = (h - g).abs() / g;
    let mut pts = vec![0.0];
    if rel < 1e-3 {
        let mut t = rel.max(1e-9);
        while t < 0.5 {
            pts.push(t);
            t *= 10.0;
        }
    }
    pts.push(PI);
    pts
}

/// Mode average of a (vector-valued) function of θ: `(1/π)∫₀^π` in the
/// thermodynamic limit, `(1/N)Σ_j` over the antiperiodic angles otherwise.
pub(crate) fn mode_average<const K: usize, F>(params: &ModelParams, quad: &Quadrature, f: F) -> Result<[f64; K]>
where
    F: Fn(f64) -> [f64; K],
{
    match params.sites {
        Sites::ThermodynamicLimit => {
            let v = quad.integrate_vec(&f, &breakpoints(params.g, params.h))?;
            Ok(v.map(|x| x / PI))
        }
        Sites::Finite(n) => {
            let mut acc = [0.0; K];
            for j in 1..=n {
                let v = f(discrete_angle(j, n));
                for k in 0..K {
                    acc[k] += v[k];
                }
            }
            Ok(acc.map(|x| x / n as f64))
        }
    }
}

/// Mode average for two chains that share the mode set (same `g` and size),
/// used by the cycle where each mode is followed from `h_H` to `h_C`.
pub(crate) fn paired_mode_average<const K: usize, F>(
    a: &ModelParams,
    b: &ModelParams,
    quad: &Quadrature,
    f: F,
) -> Result<[f64; K]>
where
    F: Fn(f64) -> [f64; K],
{
    debug_assert_eq!(a.sites, b.sites);
    match a.sites {
        Sites::ThermodynamicLimit => {
            let mut pts = breakpoints(a.g, a.h);
            pts.extend(breakpoints(b.g, b.h));
            pts.sort_by(f64::total_cmp);
            pts.dedup();
            let v = quad.integrate_vec(&f, &pts)?;
            Ok(v.map(|x| x / PI))
        }
        Sites::Finite(_) => mode_average(a, quad, f),
    }
}
