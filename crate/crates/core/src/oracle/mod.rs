//! Exact diagonalization of small periodic chains, used as ground truth for
//! the free-fermion results.
//!
//! The full `2^N` spectrum (`N ≤ 12`) is obtained block by block in the
//! `(parity, momentum)` sectors, each eigenstate tagged with `⟨Σσᶻ⟩` and its
//! sector. From it follow Gibbs expectations and a brute-force Otto cycle in
//! which each stroke carries level populations from one field to the other.

mod basis;
pub mod cache;
mod dense;

use std::path::Path;

use nalgebra::{DVector, SymmetricEigen};
use serde::Serialize;

use crate::cycle::{finite_cycle, mode_cycle, CycleResult, CycleSpec, ZeroTolerance};
use crate::dispersion::{ModelParams, Sites};
use crate::error::{Error, Result};
use crate::pool::{map_ordered, resolve_threads};
use crate::quad::Quadrature;

use basis::{expand, sectors, solve_block, Orbits, C64};

pub const MAX_SITES: usize = 12;

/// Full spectrum of one chain.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    pub n_sites: usize,
    pub g: f64,
    pub h: f64,
    /// All `2^N` eigenvalues, ascending.
    pub energies: Vec<f64>,
    /// `⟨Σσᶻ⟩` of each eigenstate, in `[-N, N]`.
    pub transverse_moments: Vec<f64>,
    /// Symmetry sector of each eigenstate, `parity * N + m` for momentum
    /// `2πm/N`.
    pub sectors: Vec<u16>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }
}

fn check_size(params: &ModelParams) -> Result<usize> {
    match params.sites {
        Sites::Finite(n) if n <= MAX_SITES => Ok(n),
        Sites::Finite(n) => Err(Error::DimensionCap { n, max: MAX_SITES }),
        Sites::ThermodynamicLimit => Err(Error::invalid("exact diagonalization needs a finite chain")),
    }
}

/// Diagonalizes `H = -g Σ σˣσˣ - h Σ σᶻ` on a ring of `N ≤ 12` sites.
pub fn diagonalize(params: &ModelParams) -> Result<SpectralDecomposition> {
    diagonalize_on(params, resolve_threads(None))
}

/// [`diagonalize`] with the sector blocks spread over `threads` workers.
pub fn diagonalize_on(params: &ModelParams, threads: usize) -> Result<SpectralDecomposition> {
    let n = check_size(params)?;
    let orbits = Orbits::new(n);
    let secs = sectors(&orbits);
    let blocks = map_ordered(&secs, threads, |s| {
        solve_block(&orbits, s, params.g, params.h, false)
    });
    let mut levels: Vec<(f64, f64, u16)> = Vec::with_capacity(1 << n);
    for (s, b) in secs.iter().zip(blocks) {
        let label = s.label(n);
        levels.extend(b.energies.into_iter().zip(b.moments).map(|(e, m)| (e, m, label)));
    }
    // stable: ties keep sector order
    levels.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(SpectralDecomposition {
        n_sites: n,
        g: params.g,
        h: params.h,
        energies: levels.iter().map(|l| l.0).collect(),
        transverse_moments: levels.iter().map(|l| l.1).collect(),
        sectors: levels.iter().map(|l| l.2).collect(),
    })
}

/// Largest `‖Hv - Ev‖ / ‖H‖` over `per_sector` eigenpairs from every sector,
/// with `H` applied through bit operations in the unreduced basis.
pub fn eigen_residual(params: &ModelParams, per_sector: usize) -> Result<f64> {
    let n = check_size(params)?;
    let orbits = Orbits::new(n);
    let norm = dense::norm_bound(n, params.g, params.h);
    let mut worst: f64 = 0.0;
    for s in sectors(&orbits) {
        let b = solve_block(&orbits, &s, params.g, params.h, true);
        let vecs = b.vectors.expect("requested");
        let count = b.energies.len();
        for i in (0..count).step_by((count / per_sector.max(1)).max(1)) {
            let coeffs: Vec<C64> = vecs.column(i).iter().copied().collect();
            let v = expand(&orbits, &s, &coeffs);
            let hv = dense::apply_h(n, params.g, params.h, &v);
            let r = (hv - v.scale(b.energies[i])).norm() / v.norm();
            worst = worst.max(r / norm);
        }
    }
    Ok(worst)
}

/// Full-matrix eigenvalues, ascending. Only sensible for small chains.
pub fn dense_spectrum(params: &ModelParams) -> Result<Vec<f64>> {
    let n = check_size(params)?;
    let eig = SymmetricEigen::new(dense::dense_h(n, params.g, params.h));
    let mut e: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    Ok(e)
}

/// Ground energy by power iteration on the sparse product, independent of
/// any eigensolver.
pub fn power_iteration_ground_energy(params: &ModelParams) -> Result<f64> {
    let n = check_size(params)?;
    dense::power_ground_energy(n, params.g, params.h, 1e-15, 100_000)
        .ok_or_else(|| Error::invalid("power iteration did not converge"))
}

/// `H` applied to a real vector in the product basis.
pub fn apply_hamiltonian(params: &ModelParams, v: &[f64]) -> Result<Vec<f64>> {
    let n = check_size(params)?;
    if v.len() != 1 << n {
        return Err(Error::invalid(format!("vector length {} != 2^{n}", v.len())));
    }
    let out = dense::apply_h(n, params.g, params.h, &DVector::from_column_slice(v));
    Ok(out.iter().copied().collect())
}

/// Gibbs expectations, per site.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThermalExpectations {
    pub energy: f64,
    pub free_energy: f64,
    pub entropy: f64,
    pub magnetization: f64,
    /// Connected `⟨E E'⟩ - ⟨E⟩⟨E'⟩` with `E' = dE/dh = -⟨Σσᶻ⟩`.
    pub energy_slope_covariance: f64,
}

/// Weights are shifted by the ground energy, so no temperature overflows.
pub fn thermal_expectations(spec: &SpectralDecomposition, t: f64) -> Result<ThermalExpectations> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::invalid(format!("temperature must be finite and > 0, got {t}")));
    }
    let e0 = spec.ground_energy();
    let w: Vec<f64> = spec.energies.iter().map(|e| (-(e - e0) / t).exp()).collect();
    let z: f64 = w.iter().sum();
    let ln_z = z.ln();
    let (mut u, mut s, mut m, mut em) = (0.0, 0.0, 0.0, 0.0);
    for ((&wi, &e), &mi) in w.iter().zip(&spec.energies).zip(&spec.transverse_moments) {
        let p = wi / z;
        u += p * e;
        m += p * mi;
        em += p * e * mi;
        if p > 0.0 {
            s += p * ((e - e0) / t + ln_z);
        }
    }
    let n = spec.n_sites as f64;
    Ok(ThermalExpectations {
        energy: u / n,
        free_energy: (e0 - t * ln_z) / n,
        entropy: s / n,
        magnetization: m / n,
        energy_slope_covariance: -(em - u * m) / n,
    })
}

/// How levels at the two fields are matched by an adiabatic stroke.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pairing {
    /// Ascending order within each `(parity, momentum)` sector, which the
    /// stroke conserves.
    #[default]
    Sector,
    /// Ascending order over the whole spectrum.
    Global,
}

/// Index pairs `(i_hot, i_cold)` realising the pairing.
fn pair_levels(hot: &SpectralDecomposition, cold: &SpectralDecomposition, pairing: Pairing) -> Vec<(usize, usize)> {
    match pairing {
        Pairing::Global => (0..hot.dim()).map(|i| (i, i)).collect(),
        Pairing::Sector => {
            let labels = 2 * hot.n_sites;
            let bucket = |d: &SpectralDecomposition| {
                let mut b: Vec<Vec<usize>> = vec![Vec::new(); labels];
                for (i, &s) in d.sectors.iter().enumerate() {
                    b[s as usize].push(i);
                }
                b
            };
            let (bh, bc) = (bucket(hot), bucket(cold));
            bh.into_iter()
                .zip(bc)
                .flat_map(|(a, b)| {
                    debug_assert_eq!(a.len(), b.len());
                    a.into_iter().zip(b)
                })
                .collect()
        }
    }
}

fn populations(d: &SpectralDecomposition, t: f64) -> Vec<f64> {
    let e0 = d.ground_energy();
    let w: Vec<f64> = d.energies.iter().map(|e| (-(e - e0) / t).exp()).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|x| x / z).collect()
}

/// Otto cycle on the exact spectrum. Populations thermalized at one contact
/// are carried level by level to the other field; the heats are the energy
/// changes on contact. Populations of exactly degenerate levels are equal, so
/// the energetics do not depend on how ties inside a multiplet are ordered.
pub fn brute_force_cycle(
    n_sites: usize,
    spec: &CycleSpec,
    pairing: Pairing,
    tol: ZeroTolerance,
) -> Result<CycleResult> {
    let hot = diagonalize(&ModelParams::finite(spec.g, spec.h_hot, n_sites)?)?;
    let cold = diagonalize(&ModelParams::finite(spec.g, spec.h_cold, n_sites)?)?;
    Ok(cycle_on_spectra(&hot, &cold, spec, pairing, tol))
}

pub fn cycle_on_spectra(
    hot: &SpectralDecomposition,
    cold: &SpectralDecomposition,
    spec: &CycleSpec,
    pairing: Pairing,
    tol: ZeroTolerance,
) -> CycleResult {
    let (p_hot, p_cold) = (populations(hot, spec.t_hot), populations(cold, spec.t_cold));
    let (mut w, mut qh, mut qc) = (0.0, 0.0, 0.0);
    for (i, j) in pair_levels(hot, cold, pairing) {
        let dp = p_hot[i] - p_cold[j];
        let (eh, ec) = (hot.energies[i], cold.energies[j]);
        w += (ec - eh) * dp;
        qh += eh * dp;
        qc -= ec * dp;
    }
    let n = hot.n_sites as f64;
    CycleResult::classified(w / n, qh / n, qc / n, tol)
}

/// Per-mode cycle on the `N` antiperiodic modes of a ring.
pub fn discrete_mode_cycle(n_sites: usize, spec: &CycleSpec, tol: ZeroTolerance, quad: &Quadrature) -> Result<CycleResult> {
    mode_cycle(spec, Sites::Finite(n_sites), tol, quad)
}

/// First-order heats of an infinitesimal stroke from the exact spectrum at
/// field `h` (cold contact at `h`, hot at `h + δh`).
pub fn ed_first_order_heats(n_sites: usize, g: f64, h: f64, t_hot: f64, t_cold: f64, delta_h: f64) -> Result<(f64, f64)> {
    let d = diagonalize(&ModelParams::finite(g, h, n_sites)?)?;
    let hot = thermal_expectations(&d, t_hot)?;
    let cold = thermal_expectations(&d, t_cold)?;
    let du = hot.energy - cold.energy;
    let transfer = delta_h * hot.energy_slope_covariance / t_hot;
    Ok((du - delta_h * (hot.magnetization - cold.magnetization) - transfer, -du + transfer))
}

/// Level reorderings between symmetry sectors along a field sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingReport {
    pub fields: Vec<f64>,
    /// Pairs of levels from different sectors whose order flips between
    /// consecutive fields, one entry per interval.
    pub swaps: Vec<usize>,
}

impl CrossingReport {
    pub fn total(&self) -> usize {
        self.swaps.iter().sum()
    }
}

/// Counts inter-sector crossings on a coarse field grid from `h_from` to
/// `h_to`. Within a sector, sorted pairing is unaffected by such crossings;
/// a global pairing is not. Crossings are reported, not resolved.
pub fn level_crossings(n_sites: usize, g: f64, h_from: f64, h_to: f64, steps: usize) -> Result<CrossingReport> {
    if steps < 2 {
        return Err(Error::invalid("a crossing sweep needs at least 2 fields"));
    }
    let fields = crate::roots::linspace(h_from, h_to, steps);
    let spectra: Vec<Vec<(u16, f64)>> = fields
        .iter()
        .map(|&h| {
            let d = diagonalize(&ModelParams::finite(g, h, n_sites)?)?;
            // identity of a level: (sector, rank inside the sector)
            let mut rank = vec![0usize; 2 * n_sites];
            let mut keyed: Vec<(u16, usize, f64)> = d
                .sectors
                .iter()
                .zip(&d.energies)
                .map(|(&s, &e)| {
                    let r = rank[s as usize];
                    rank[s as usize] += 1;
                    (s, r, e)
                })
                .collect();
            keyed.sort_by_key(|k| (k.0, k.1));
            Ok(keyed.into_iter().map(|k| (k.0, k.2)).collect())
        })
        .collect::<Result<_>>()?;
    let tie = 1e-9 * dense::norm_bound(n_sites, g, h_from.abs().max(h_to.abs()));
    let swaps = spectra
        .windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            let mut count = 0;
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    if a[i].0 == a[j].0 {
                        continue;
                    }
                    let before = a[i].1 - a[j].1;
                    let after = b[i].1 - b[j].1;
                    if (before > tie && after < -tie) || (before < -tie && after > tie) {
                        count += 1;
                    }
                }
            }
            count
        })
        .collect();
    Ok(CrossingReport { fields, swaps })
}

/// The three per-site cycle evaluations side by side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleComparison {
    pub n_sites: usize,
    pub thermodynamic_limit: CycleResult,
    pub discrete_modes: CycleResult,
    pub exact_diagonalization: CycleResult,
}

impl OracleComparison {
    /// `(ED - limit) / limit` for `(W, Q_H, Q_C)`.
    pub fn relative_errors(&self) -> [f64; 3] {
        let (a, b) = (&self.exact_diagonalization, &self.thermodynamic_limit);
        [
            (a.work - b.work) / b.work,
            (a.q_hot - b.q_hot) / b.q_hot,
            (a.q_cold - b.q_cold) / b.q_cold,
        ]
    }
}

pub fn compare(n_sites: usize, spec: &CycleSpec, tol: ZeroTolerance, quad: &Quadrature) -> Result<OracleComparison> {
    compare_cached(n_sites, spec, tol, quad, None)
}

/// [`compare`], reading and filling a spectrum cache directory if given.
pub fn compare_cached(
    n_sites: usize,
    spec: &CycleSpec,
    tol: ZeroTolerance,
    quad: &Quadrature,
    cache_dir: Option<&Path>,
) -> Result<OracleComparison> {
    let spectrum = |h: f64| {
        let p = ModelParams::finite(spec.g, h, n_sites)?;
        match cache_dir {
            Some(dir) => cache::diagonalize_cached(&p, dir),
            None => diagonalize(&p),
        }
    };
    let (hot, cold) = (spectrum(spec.h_hot)?, spectrum(spec.h_cold)?);
    Ok(OracleComparison {
        n_sites,
        thermodynamic_limit: finite_cycle(spec, tol, quad)?,
        discrete_modes: discrete_mode_cycle(n_sites, spec, tol, quad)?,
        exact_diagonalization: cycle_on_spectra(&hot, &cold, spec, Pairing::Sector, tol),
    })
}
