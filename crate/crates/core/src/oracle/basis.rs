//! Symmetry-adapted basis for the periodic chain in the σᶻ product basis.
//!
//! A set bit means `σᶻ = -1`. The Hamiltonian conserves the number of down
//! spins modulo 2 (each `σˣσˣ` flips two spins) and commutes with the
//! translation `T`, which rotates the bit string by one site. Each
//! `(parity, momentum)` sector is spanned by momentum states built on orbit
//! representatives,
//!
//! ```text
//! |a(k)⟩ ∝ Σ_{l=0}^{N-1} e^{-ikl} Tˡ|a⟩,   k = 2πm/N,
//! ```
//!
//! which exist when `m R_a ≡ 0 (mod N)` for the orbit period `R_a`.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

pub(crate) type C64 = Complex<f64>;

/// Bit `j` and bit `j+1 mod N`.
pub(crate) fn bond_mask(n: usize, j: usize) -> usize {
    (1 << j) | (1 << ((j + 1) % n))
}

/// `⟨Σσᶻ⟩` of a product state.
pub(crate) fn sz_total(n: usize, state: usize) -> f64 {
    n as f64 - 2.0 * state.count_ones() as f64
}

/// Orbit bookkeeping for every basis state.
pub(crate) struct Orbits {
    pub n: usize,
    /// For each state: index into `reps` and the shift `l` with `state = Tˡ rep`.
    pub owner: Vec<(u32, u8)>,
    /// Representative (smallest member) and period of each orbit.
    pub reps: Vec<(usize, usize)>,
}

impl Orbits {
    pub fn new(n: usize) -> Self {
        let dim = 1usize << n;
        let mask = dim - 1;
        let rotate = |x: usize| ((x << 1) | (x >> (n - 1))) & mask;
        let mut owner = vec![(u32::MAX, 0u8); dim];
        let mut reps = Vec::new();
        for s in 0..dim {
            if owner[s].0 != u32::MAX {
                continue;
            }
            // s is the smallest unvisited state, hence its orbit's minimum
            let id = reps.len() as u32;
            let mut cur = s;
            let mut period = 0;
            loop {
                owner[cur] = (id, period as u8);
                cur = rotate(cur);
                period += 1;
                if cur == s {
                    break;
                }
            }
            reps.push((s, period));
        }
        Self { n, owner, reps }
    }
}

/// One `(parity, momentum)` block.
pub(crate) struct Sector {
    pub parity: usize,
    pub momentum: usize,
    /// Orbit indices spanning the block.
    pub members: Vec<u32>,
}

impl Sector {
    /// Compact label `parity * N + m`.
    pub fn label(&self, n: usize) -> u16 {
        (self.parity * n + self.momentum) as u16
    }
}

pub(crate) fn sectors(orbits: &Orbits) -> Vec<Sector> {
    let n = orbits.n;
    let mut out = Vec::with_capacity(2 * n);
    for parity in 0..2 {
        for momentum in 0..n {
            let members = orbits
                .reps
                .iter()
                .enumerate()
                .filter(|(_, &(r, period))| r.count_ones() as usize % 2 == parity && (momentum * period) % n == 0)
                .map(|(i, _)| i as u32)
                .collect();
            out.push(Sector {
                parity,
                momentum,
                members,
            });
        }
    }
    out
}

/// Hermitian block matrix of `H = -g Σ σˣσˣ - h Σ σᶻ`.
pub(crate) fn block_matrix(orbits: &Orbits, sector: &Sector, g: f64, h: f64) -> DMatrix<C64> {
    let n = orbits.n;
    let k = 2.0 * PI * sector.momentum as f64 / n as f64;
    let dim = sector.members.len();
    let mut index = vec![usize::MAX; orbits.reps.len()];
    for (i, &m) in sector.members.iter().enumerate() {
        index[m as usize] = i;
    }
    let mut mat = DMatrix::<C64>::zeros(dim, dim);
    for (a, &orb) in sector.members.iter().enumerate() {
        let (rep, period_a) = orbits.reps[orb as usize];
        mat[(a, a)] += C64::new(-h * sz_total(n, rep), 0.0);
        for j in 0..n {
            let flipped = rep ^ bond_mask(n, j);
            let (orb_b, shift) = orbits.owner[flipped];
            let b = index[orb_b as usize];
            if b == usize::MAX {
                // orbit not allowed at this momentum; its amplitude cancels
                continue;
            }
            let period_b = orbits.reps[orb_b as usize].1;
            let phase = C64::from_polar(1.0, k * shift as f64);
            mat[(b, a)] += phase * (-g * (period_a as f64 / period_b as f64).sqrt());
        }
    }
    mat
}

/// Eigenpairs of one block: energies ascending, `⟨Σσᶻ⟩` per eigenvector and,
/// optionally, the eigenvectors themselves.
pub(crate) struct BlockSpectrum {
    pub energies: Vec<f64>,
    pub moments: Vec<f64>,
    pub vectors: Option<DMatrix<C64>>,
}

pub(crate) fn solve_block(orbits: &Orbits, sector: &Sector, g: f64, h: f64, keep_vectors: bool) -> BlockSpectrum {
    let n = orbits.n;
    if sector.members.is_empty() {
        return BlockSpectrum {
            energies: vec![],
            moments: vec![],
            vectors: keep_vectors.then(|| DMatrix::zeros(0, 0)),
        };
    }
    let mat = block_matrix(orbits, sector, g, h);
    let eig = SymmetricEigen::new(mat);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let sz: Vec<f64> = sector
        .members
        .iter()
        .map(|&o| sz_total(n, orbits.reps[o as usize].0))
        .collect();
    let energies = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let moments = order
        .iter()
        .map(|&i| {
            let v = eig.eigenvectors.column(i);
            v.iter().zip(&sz).map(|(c, s)| c.norm_sqr() * s).sum()
        })
        .collect();
    let vectors = keep_vectors.then(|| DMatrix::from_fn(sz.len(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]));
    BlockSpectrum {
        energies,
        moments,
        vectors,
    }
}

/// Expands a block eigenvector into the full `2^N` product basis.
pub(crate) fn expand(orbits: &Orbits, sector: &Sector, coeffs: &[C64]) -> DVector<C64> {
    let n = orbits.n;
    let mask = (1usize << n) - 1;
    let rotate = |x: usize| ((x << 1) | (x >> (n - 1))) & mask;
    let k = 2.0 * PI * sector.momentum as f64 / n as f64;
    let mut out = DVector::<C64>::zeros(1 << n);
    for (&orb, &c) in sector.members.iter().zip(coeffs) {
        let (rep, period) = orbits.reps[orb as usize];
        // Σ over one period of distinct states, normalized
        let norm = (period as f64).sqrt().recip();
        let mut cur = rep;
        for l in 0..period {
            out[cur] += c * C64::from_polar(norm, -k * l as f64);
            cur = rotate(cur);
        }
    }
    out
}
