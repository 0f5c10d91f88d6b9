//! Landmark temperatures and the engine/accelerator boundary.
//!
//! For `h < g` the magnetization rises from `m(0)`, peaks at `T_H^<` and then
//! falls through `m(0)` again at `T_H^>`. An infinitesimal stroke has `W = 0`
//! where `m(T_C) = m(T_H)`, which needs `T_H^< < T_H ≤ T_H^>` for small `h/g`.
//!
//! Every root is bracketed by a sign scan on a geometric temperature grid
//! (64 points over `[10⁻³g, 10g]`) and then polished with Brent's method to
//! `10⁻¹⁰g`. Returned roots carry their re-evaluated residual.

use serde::Serialize;

use crate::cycle::{finite_cycle, CycleSpec, ZeroTolerance};
use crate::dispersion::ModelParams;
use crate::equilibrium::{self, EquilibriumModel, ThermalState};
use crate::error::{Error, Result};
use crate::pool::map_ordered;
use crate::quad::Quadrature;
use crate::quasiparticle;
use crate::roots::{geomspace, scan, Brent};

const SCAN_POINTS: usize = 64;

/// A root temperature and its defining residual evaluated there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Landmark {
    pub temperature: f64,
    pub residual: f64,
}

fn brent(g: f64) -> Brent {
    Brent::default().with_xtol(1e-10 * g)
}

fn model_m(g: f64, h: f64, t: f64, model: EquilibriumModel, quad: &Quadrature) -> Result<f64> {
    let state = ThermalState::new(ModelParams::infinite(g, h)?, t)?;
    equilibrium::magnetization(&state, model, quad)
}

fn model_m0(g: f64, h: f64, model: EquilibriumModel, quad: &Quadrature) -> Result<f64> {
    let state = ThermalState::ground(ModelParams::infinite(g, h)?);
    equilibrium::magnetization(&state, model, quad)
}

/// `dm/dT` for any model. Analytic where a closed form exists, a central
/// difference otherwise.
pub fn model_dm_dt(g: f64, h: f64, t: f64, model: EquilibriumModel, quad: &Quadrature) -> Result<f64> {
    let state = ThermalState::new(ModelParams::infinite(g, h)?, t)?;
    match model {
        EquilibriumModel::Exact => equilibrium::dm_dt(&state, quad),
        EquilibriumModel::QuasiparticleDw => quasiparticle::qp_dm_dt(&state, quad),
        EquilibriumModel::LinearH => {
            // d/dx[tanh x + x sech² x] = 2 sech² x (1 - x tanh x), x = g/T
            let x = g / t;
            let s2 = 1.0 / x.cosh().powi(2);
            Ok(-(h / (2.0 * g)) * 2.0 * s2 * (1.0 - x * x.tanh()) * g / (t * t))
        }
        _ => {
            let dt = 1e-4 * t;
            Ok((model_m(g, h, t + dt, model, quad)? - model_m(g, h, t - dt, model, quad)?) / (2.0 * dt))
        }
    }
}

fn check_g(g: f64) -> Result<()> {
    if g.is_finite() && g > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("coupling g must be finite and > 0, got {g}")))
    }
}

/// Temperature of the magnetization maximum, where `dm/dT = 0`.
///
/// For the linear-in-h model the peak is independent of `h` (`x tanh x = 1`
/// with `x = g/T`); a zero field is evaluated as `h → 0⁺`.
pub fn magnetization_peak_temperature(
    g: f64,
    h: f64,
    model: EquilibriumModel,
    quad: &Quadrature,
) -> Result<Landmark> {
    check_g(g)?;
    // m vanishes identically at h = 0 except as the linear model's h → 0⁺ limit
    if (model == EquilibriumModel::Exact && h.abs() >= g) || (h == 0.0 && model != EquilibriumModel::LinearH) {
        return Err(Error::NoPeak { g, h });
    }
    let h_eff = if h == 0.0 && model == EquilibriumModel::LinearH { g } else { h };
    let residual = |t: f64| model_dm_dt(g, h_eff, t, model, quad);
    let grid = geomspace(1e-3 * g, 10.0 * g, SCAN_POINTS);
    let bracket = scan(residual, &grid)?.ok_or(Error::NoPeak { g, h })?;
    let t = brent(g).solve_bracket(residual, bracket)?;
    Ok(Landmark {
        temperature: t,
        residual: model_dm_dt(g, h, t, model, quad)?,
    })
}

/// Temperature above the peak at which `m(T) = m(0)` again. The residual is
/// relative, `m(T)/m(0) - 1`.
pub fn equal_magnetization_temperature(
    g: f64,
    h: f64,
    model: EquilibriumModel,
    quad: &Quadrature,
) -> Result<Landmark> {
    let peak = magnetization_peak_temperature(g, h, model, quad)?.temperature;
    let h_eff = if h == 0.0 && model == EquilibriumModel::LinearH { g } else { h };
    let m0 = model_m0(g, h_eff, model, quad)?;
    let residual = |t: f64| Ok(model_m(g, h_eff, t, model, quad)? / m0 - 1.0);
    let hi = 10.0 * g;
    if peak >= hi {
        return Err(Error::NoBracket { lo: peak, hi });
    }
    let grid = geomspace(peak, hi, SCAN_POINTS);
    let bracket = scan(residual, &grid)?.ok_or(Error::NoBracket { lo: peak, hi })?;
    let t = brent(g).solve_bracket(residual, bracket)?;
    Ok(Landmark {
        temperature: t,
        residual: residual(t)?,
    })
}

/// How long the work strokes are.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StrokeMode {
    /// `δh → 0`: `W ∝ m(T_H) - m(T_C)`.
    Infinitesimal,
    /// Centred finite stroke of size `Δh` about the abscissa.
    Finite(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WZeroPoint {
    pub h: f64,
    pub t_cold: f64,
    /// `m(T_C) - m(T_H)` (infinitesimal) or the per-site `W` (finite).
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmittedPoint {
    pub h: f64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WZeroCurve {
    /// Ascending in `h`.
    pub points: Vec<WZeroPoint>,
    /// Grid fields without a root in `(0, T_H)`, with the reason.
    pub omitted: Vec<OmittedPoint>,
}

/// Residual whose zero in `T_C` is the `W = 0` boundary at field `h`.
pub fn w_zero_residual(
    g: f64,
    h: f64,
    t_hot: f64,
    t_cold: f64,
    mode: StrokeMode,
    quad: &Quadrature,
) -> Result<f64> {
    match mode {
        StrokeMode::Infinitesimal => {
            let m = |t| model_m(g, h, t, EquilibriumModel::Exact, quad);
            Ok(m(t_cold)? - m(t_hot)?)
        }
        StrokeMode::Finite(dh) => {
            let spec = CycleSpec::centered(g, h, dh, t_hot, t_cold)?;
            Ok(finite_cycle(&spec, ZeroTolerance::Absolute(0.0), quad)?.work)
        }
    }
}

fn solve_w_zero(g: f64, h: f64, t_hot: f64, mode: StrokeMode, quad: &Quadrature) -> Result<Option<WZeroPoint>> {
    let lo = 1e-3 * g;
    if t_hot <= lo {
        return Ok(None);
    }
    // T_C = T_H is a trivial root; stop the scan just short of it
    let mut grid = geomspace(lo, t_hot, SCAN_POINTS + 1);
    grid.pop();
    let residual = |t: f64| w_zero_residual(g, h, t_hot, t, mode, quad);
    let Some(bracket) = scan(residual, &grid)? else {
        return Ok(None);
    };
    let t = brent(g).solve_bracket(residual, bracket)?;
    Ok(Some(WZeroPoint {
        h,
        t_cold: t,
        residual: residual(t)?,
    }))
}

/// The engine/accelerator boundary `T_C(h)` at fixed `T_H`, one root per grid
/// field, solved in parallel. The curve is sorted by `h`.
pub fn w_zero_curve(
    g: f64,
    t_hot: f64,
    mode: StrokeMode,
    h_grid: &[f64],
    threads: usize,
    quad: &Quadrature,
) -> Result<WZeroCurve> {
    check_g(g)?;
    if !(t_hot.is_finite() && t_hot > 0.0) {
        return Err(Error::invalid(format!("t_hot must be finite and > 0, got {t_hot}")));
    }
    let mut hs: Vec<f64> = h_grid.to_vec();
    if hs.iter().any(|h| !h.is_finite()) {
        return Err(Error::invalid("field grid contains a non-finite value"));
    }
    hs.sort_by(f64::total_cmp);
    let solved = map_ordered(&hs, threads, |&h| solve_w_zero(g, h, t_hot, mode, quad));
    let mut curve = WZeroCurve {
        points: Vec::new(),
        omitted: Vec::new(),
    };
    for (h, r) in hs.into_iter().zip(solved) {
        match r {
            Ok(Some(p)) => curve.points.push(p),
            Ok(None) => curve.omitted.push(OmittedPoint {
                h,
                reason: format!("no sign change of W for T_C in (0, {t_hot})"),
            }),
            Err(e) => curve.omitted.push(OmittedPoint { h, reason: e.to_string() }),
        }
    }
    Ok(curve)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingRow {
    pub h: f64,
    pub t_cold: f64,
    /// `sqrt(g² - h²)`.
    pub gap_scale: f64,
    /// `t_cold - constant * gap_scale`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    /// Least-squares `c` in `T_C ≈ c sqrt(g² - h²)`; NaN with no rows.
    pub constant: f64,
    /// Rank correlation of `T_C` with `sqrt(g² - h²)`; NaN with fewer than two
    /// rows.
    pub spearman: f64,
    pub omitted: Vec<OmittedPoint>,
}

/// Checks `T_C ~ sqrt(g² - h²)` along the infinitesimal-stroke boundary near
/// the critical field (intended for `h` in `[0.7g, 0.99g]`). Only the
/// co-variation is meaningful; the fitted constant is descriptive.
pub fn near_critical_scaling_check(
    g: f64,
    t_hot: f64,
    h_samples: &[f64],
    threads: usize,
    quad: &Quadrature,
) -> Result<ScalingReport> {
    if let Some(h) = h_samples.iter().find(|&&h| !(h > 0.0 && h < g)) {
        return Err(Error::invalid(format!("scaling samples must lie in (0, g), got {h}")));
    }
    let curve = w_zero_curve(g, t_hot, StrokeMode::Infinitesimal, h_samples, threads, quad)?;
    let gap = |h: f64| (g * g - h * h).sqrt();
    let (sxy, sxx) = curve.points.iter().fold((0.0, 0.0), |(sxy, sxx), p| {
        let x = gap(p.h);
        (sxy + x * p.t_cold, sxx + x * x)
    });
    let constant = if curve.points.is_empty() { f64::NAN } else { sxy / sxx };
    let rows: Vec<ScalingRow> = curve
        .points
        .iter()
        .map(|p| ScalingRow {
            h: p.h,
            t_cold: p.t_cold,
            gap_scale: gap(p.h),
            residual: p.t_cold - constant * gap(p.h),
        })
        .collect();
    let xs: Vec<f64> = rows.iter().map(|r| r.gap_scale).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.t_cold).collect();
    Ok(ScalingReport {
        spearman: spearman(&xs, &ys),
        rows,
        constant,
        omitted: curve.omitted,
    })
}

/// Ranks from 1, ties sharing their mean rank.
fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let mean = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = mean;
        }
        i = j + 1;
    }
    r
}

/// Spearman rank correlation (Pearson on ranks).
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    if n < 2 {
        return f64::NAN;
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let mean = (n as f64 + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (a, b) = (rx[i] - mean, ry[i] - mean);
        sxy += a * b;
        sxx += a * a;
        syy += b * b;
    }
    sxy / (sxx * syy).sqrt()
}
