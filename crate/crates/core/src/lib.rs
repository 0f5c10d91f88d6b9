//! Quantum Otto cycles with a transverse-field Ising chain as the working
//! substance.
//!
//! The chain `H = -g Σ σˣσˣ - h Σ σᶻ` maps to free fermions with dispersion
//! `ω(θ) = 2 sqrt((h - g)² + 4gh sin²(θ/2))`, so equilibrium thermodynamics
//! and the energetics of a four-stroke cycle reduce to mode integrals. Units
//! are `k_B = ħ = 1` and every energy is per site.
//!
//! - [`dispersion`]: the mode spectrum and mode averages.
//! - [`equilibrium`]: free energy, entropy and the transverse magnetization,
//!   exact and in several approximations.
//! - [`quasiparticle`]: the dilute domain-wall picture of the ordered phase.
//! - [`cycle`]: work and heats of infinitesimal and finite strokes, regime
//!   labels, the Carnot point and the refrigerator window.
//! - [`boundaries`]: landmark temperatures and zero-work curves.
//! - [`oracle`]: exact diagonalization of rings up to 12 sites.
//! - [`sweep`]: regime maps over a parameter grid, written as CSV or
//!   JSON lines.
//!
//! ```
//! use ising_otto::cycle::{finite_cycle, CycleSpec, Regime, ZeroTolerance};
//! use ising_otto::quad::Quadrature;
//!
//! let spec = CycleSpec::new(1.0, 2.0, 1.5, 0.75, 0.1)?;
//! let r = finite_cycle(&spec, ZeroTolerance::default_for(1.0), &Quadrature::default())?;
//! assert_eq!(r.regime, Regime::Engine);
//! assert!(r.first_law_residual().abs() < 1e-12);
//! # Ok::<(), ising_otto::Error>(())
//! ```

pub mod boundaries;
pub mod cli;
pub mod cycle;
pub mod dispersion;
pub mod equilibrium;
pub mod error;
pub mod oracle;
pub mod pool;
pub mod quad;
pub mod quasiparticle;
pub mod roots;
pub mod sweep;

pub use error::{Error, Result};
