//! Unreduced representations of the spin Hamiltonian: a bit-operation
//! matrix-vector product and, for small chains, the dense `2^N` matrix.

use nalgebra::{ComplexField, DMatrix, DVector};

use super::basis::{bond_mask, sz_total};

/// `out = H v` without storing `H`.
pub(crate) fn apply_h<T>(n: usize, g: f64, h: f64, v: &DVector<T>) -> DVector<T>
where
    T: ComplexField<RealField = f64> + Copy,
{
    let masks: Vec<usize> = (0..n).map(|j| bond_mask(n, j)).collect();
    DVector::from_fn(v.len(), |x, _| {
        let mut acc = v[x].scale(-h * sz_total(n, x));
        for &m in &masks {
            acc += v[x ^ m].scale(-g);
        }
        acc
    })
}

/// Dense real matrix, for cross-checks on small chains.
pub(crate) fn dense_h(n: usize, g: f64, h: f64) -> DMatrix<f64> {
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    for x in 0..dim {
        m[(x, x)] = -h * sz_total(n, x);
        for j in 0..n {
            m[(x ^ bond_mask(n, j), x)] += -g;
        }
    }
    m
}

/// Upper bound on `‖H‖`.
pub(crate) fn norm_bound(n: usize, g: f64, h: f64) -> f64 {
    n as f64 * (g.abs() + h.abs())
}

/// Lowest eigenvalue reached from `|0…0⟩` by power iteration on `c - H`.
///
/// The start vector lies in the even-parity, zero-momentum sector, which holds
/// the ground state for `h > 0`.
pub(crate) fn power_ground_energy(n: usize, g: f64, h: f64, tol: f64, max_iter: usize) -> Option<f64> {
    let c = norm_bound(n, g, h);
    let mut v = DVector::<f64>::zeros(1 << n);
    v[0] = 1.0;
    let mut last = f64::INFINITY;
    for _ in 0..max_iter {
        let hv = apply_h(n, g, h, &v);
        let e = v.dot(&hv);
        if (e - last).abs() < tol * c {
            return Some(e);
        }
        last = e;
        let w = v.scale(c) - hv;
        v = w.normalize();
    }
    None
}
