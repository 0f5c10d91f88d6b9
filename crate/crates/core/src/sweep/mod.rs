//! Parameter sweeps over a rectangular `(field, T_C)` grid.
//!
//! A grid is normally read from JSON:
//!
//! ```json
//! {
//!   "x_axis": {"name": "h", "min": 0.0, "max": 2.0, "steps": 100},
//!   "y_axis": {"name": "t_cold", "min": 0.005, "max": 0.5, "steps": 100},
//!   "fixed": {"g": 1.0, "t_hot": 0.5, "delta_h": 0.001},
//!   "mode": "infinitesimal"
//! }
//! ```
//!
//! Unknown fields are rejected. Optional keys are `zero_tolerance`
//! (`{"absolute": a}` or `{"relative": r}`) and `output`
//! (`{"path": "...", "format": "csv" | "json-lines"}`).

mod emit;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cycle::{finite_cycle, infinitesimal_cycle, CycleResult, CycleSpec, Regime, ZeroTolerance};
use crate::error::{Error, Result};
use crate::pool::map_ordered;
use crate::quad::Quadrature;
use crate::roots::linspace;

pub use emit::{emit, write_csv, write_json_lines, Format};

/// Field coordinate of the x axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldAxis {
    /// Cold-contact field; the hot contact sits at `h + delta_h`.
    H,
    /// Midpoint of the stroke, `(h_H + h_C) / 2`.
    HAv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TemperatureAxis {
    TCold,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis<N> {
    pub name: N,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl<N> Axis<N> {
    fn validate(&self, label: &str) -> Result<()> {
        let bad = |m: String| Err(Error::Config(format!("{label}: {m}")));
        if !(self.min.is_finite() && self.max.is_finite()) {
            return bad("bounds must be finite".into());
        }
        match self.steps {
            0 => bad("steps must be at least 1".into()),
            // a single point is only meaningful as a degenerate axis
            1 if self.min != self.max => bad("a one-step axis needs min == max".into()),
            1 => Ok(()),
            _ if self.min >= self.max => bad(format!("min {} must be below max {}", self.min, self.max)),
            _ => Ok(()),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            vec![self.min]
        } else {
            linspace(self.min, self.max, self.steps)
        }
    }
}

/// Cycle parameters held fixed over the grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixed {
    pub g: f64,
    pub t_hot: f64,
    /// Stroke size `h_H - h_C`; the first-order step in infinitesimal mode.
    pub delta_h: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// First order in `delta_h`.
    #[default]
    Infinitesimal,
    /// Full stroke with per-mode occupations in the thermodynamic limit.
    Finite,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToleranceConfig {
    Absolute(f64),
    Relative(f64),
}

impl From<ToleranceConfig> for ZeroTolerance {
    fn from(t: ToleranceConfig) -> Self {
        match t {
            ToleranceConfig::Absolute(a) => ZeroTolerance::Absolute(a),
            ToleranceConfig::Relative(r) => ZeroTolerance::Relative(r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: PathBuf,
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub x_axis: Axis<FieldAxis>,
    pub y_axis: Axis<TemperatureAxis>,
    pub fixed: Fixed,
    #[serde(default)]
    pub mode: SweepMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_tolerance: Option<ToleranceConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
}

impl SweepGrid {
    pub fn from_json(text: &str) -> Result<Self> {
        let grid: SweepGrid = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        grid.validate()?;
        Ok(grid)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.x_axis.validate("x_axis")?;
        self.y_axis.validate("y_axis")?;
        let f = &self.fixed;
        if !(f.g.is_finite() && f.g > 0.0) {
            return Err(Error::Config(format!("fixed.g must be finite and > 0, got {}", f.g)));
        }
        if !(f.t_hot.is_finite() && f.t_hot > 0.0) {
            return Err(Error::Config(format!("fixed.t_hot must be finite and > 0, got {}", f.t_hot)));
        }
        if !f.delta_h.is_finite() {
            return Err(Error::Config("fixed.delta_h must be finite".into()));
        }
        Ok(())
    }

    pub fn zero_tolerance(&self) -> ZeroTolerance {
        self.zero_tolerance
            .map_or_else(|| ZeroTolerance::default_for(self.fixed.g), Into::into)
    }

    pub fn len(&self) -> usize {
        self.x_axis.steps * self.y_axis.steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points, row-major in `(y, x)`.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let xs = self.x_axis.values();
        self.y_axis
            .values()
            .into_iter()
            .flat_map(|y| xs.iter().map(move |&x| (x, y)))
            .collect()
    }

    /// Evaluates one grid point.
    pub fn evaluate(&self, x: f64, t_cold: f64, quad: &Quadrature) -> Result<CycleResult> {
        let f = &self.fixed;
        let tol = self.zero_tolerance();
        let h_cold = match self.x_axis.name {
            FieldAxis::H => x,
            FieldAxis::HAv => x - 0.5 * f.delta_h,
        };
        match self.mode {
            SweepMode::Infinitesimal => infinitesimal_cycle(f.g, h_cold, f.t_hot, t_cold, f.delta_h, tol, quad),
            SweepMode::Finite => {
                let spec = CycleSpec::new(f.g, h_cold + f.delta_h, h_cold, f.t_hot, t_cold)?;
                finite_cycle(&spec, tol, quad)
            }
        }
    }
}

/// One grid point. A failed evaluation has no energies and no regime.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub x: f64,
    pub y: f64,
    pub outcome: std::result::Result<CycleResult, String>,
}

impl SweepRecord {
    pub fn regime(&self) -> Option<Regime> {
        self.outcome.as_ref().ok().map(|r| r.regime)
    }

    pub fn energies(&self) -> Option<[f64; 3]> {
        self.outcome.as_ref().ok().map(|r| [r.work, r.q_hot, r.q_cold])
    }
}

/// Evaluates every grid point on `threads` workers. Records come back in
/// row-major `(y, x)` order whatever the worker count; a point that fails is
/// recorded as such and the sweep goes on.
pub fn run_sweep(grid: &SweepGrid, threads: usize, quad: &Quadrature) -> Result<Vec<SweepRecord>> {
    grid.validate()?;
    let points = grid.points();
    Ok(map_ordered(&points, threads, |&(x, y)| SweepRecord {
        x,
        y,
        outcome: grid.evaluate(x, y, quad).map_err(|e| e.to_string()),
    }))
}
