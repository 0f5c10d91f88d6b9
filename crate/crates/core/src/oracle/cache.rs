//! Binary cache of spectral decompositions.
//!
//! Little-endian layout:
//!
//! ```text
//! magic     8 bytes  "TFIMSPEC"
//! version   u64      1
//! n         u64
//! g, h      f64
//! energies  2^n f64
//! moments   2^n f64
//! sectors   2^n u16  (trailer)
//! ```
//!
//! Readers that only know the header and the two arrays can ignore the
//! trailer.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{diagonalize, SpectralDecomposition, MAX_SITES};
use crate::dispersion::ModelParams;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"TFIMSPEC";
pub const VERSION: u64 = 1;
const HEADER: usize = 8 + 8 + 8 + 8 + 8;

pub fn encode(d: &SpectralDecomposition) -> Vec<u8> {
    let dim = d.dim();
    let mut out = Vec::with_capacity(HEADER + dim * 18);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(d.n_sites as u64).to_le_bytes());
    out.extend_from_slice(&d.g.to_le_bytes());
    out.extend_from_slice(&d.h.to_le_bytes());
    for x in d.energies.iter().chain(&d.transverse_moments) {
        out.extend_from_slice(&x.to_le_bytes());
    }
    for s in &d.sectors {
        out.extend_from_slice(&s.to_le_bytes());
    }
    out
}

pub fn decode(bytes: &[u8], path: &Path) -> Result<SpectralDecomposition> {
    let bad = |reason: String| Error::Cache {
        path: path.to_path_buf(),
        reason,
    };
    if bytes.len() < HEADER || &bytes[..8] != MAGIC {
        return Err(bad("not a spectrum cache file".into()));
    }
    let word = |i: usize| -> [u8; 8] { bytes[i..i + 8].try_into().expect("8 bytes") };
    let version = u64::from_le_bytes(word(8));
    if version != VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }
    let n = u64::from_le_bytes(word(16)) as usize;
    if n == 0 || n > MAX_SITES {
        return Err(bad(format!("chain length {n} out of range")));
    }
    let (g, h) = (f64::from_le_bytes(word(24)), f64::from_le_bytes(word(32)));
    let dim = 1usize << n;
    let want = HEADER + dim * (8 + 8 + 2);
    if bytes.len() != want {
        return Err(bad(format!("expected {want} bytes for N = {n}, found {}", bytes.len())));
    }
    let floats = |start: usize| -> Vec<f64> { (0..dim).map(|i| f64::from_le_bytes(word(start + 8 * i))).collect() };
    let energies = floats(HEADER);
    let transverse_moments = floats(HEADER + 8 * dim);
    let base = HEADER + 16 * dim;
    let sectors = (0..dim)
        .map(|i| u16::from_le_bytes([bytes[base + 2 * i], bytes[base + 2 * i + 1]]))
        .collect();
    if energies.iter().any(|e| e.is_nan()) || energies.windows(2).any(|w| w[0] > w[1]) {
        return Err(bad("energies are not ascending".into()));
    }
    Ok(SpectralDecomposition {
        n_sites: n,
        g,
        h,
        energies,
        transverse_moments,
        sectors,
    })
}

pub fn save(d: &SpectralDecomposition, path: &Path) -> Result<()> {
    // write-then-rename so a crash never leaves a truncated cache entry
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    f.write_all(&encode(d)).map_err(|e| Error::io(&tmp, e))?;
    f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

pub fn load(path: &Path) -> Result<SpectralDecomposition> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes, path)
}

/// File name keyed by the exact bit patterns of `g` and `h`.
pub fn entry_path(dir: &Path, n: usize, g: f64, h: f64) -> PathBuf {
    dir.join(format!("tfim-n{n:02}-g{:016x}-h{:016x}.bin", g.to_bits(), h.to_bits()))
}

/// [`diagonalize`] through a cache directory.
pub fn diagonalize_cached(params: &ModelParams, dir: &Path) -> Result<SpectralDecomposition> {
    let n = params
        .n_sites()
        .ok_or_else(|| Error::invalid("exact diagonalization needs a finite chain"))?;
    let path = entry_path(dir, n, params.g, params.h);
    if path.exists() {
        let d = load(&path)?;
        if d.n_sites != n || d.g.to_bits() != params.g.to_bits() || d.h.to_bits() != params.h.to_bits() {
            return Err(Error::Cache {
                path,
                reason: "header does not match the requested chain".into(),
            });
        }
        return Ok(d);
    }
    let d = diagonalize(params)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    save(&d, &path)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_layout() {
        let d = diagonalize(&ModelParams::finite(1.0, 0.5, 4).unwrap()).unwrap();
        let bytes = encode(&d);
        assert_eq!(&bytes[..8], MAGIC);
        assert_eq!(bytes.len(), 40 + 16 * 18);
        assert_eq!(f64::from_le_bytes(bytes[40..48].try_into().unwrap()), d.energies[0]);
        let back = decode(&bytes, Path::new("mem")).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn corrupt_files_are_rejected() {
        let d = diagonalize(&ModelParams::finite(1.0, 0.5, 4).unwrap()).unwrap();
        let mut bytes = encode(&d);
        assert!(decode(&bytes[..100], Path::new("x")).is_err());
        bytes[0] = b'X';
        assert!(matches!(decode(&bytes, Path::new("x")), Err(Error::Cache { .. })));
    }

    #[test]
    fn cache_directory() {
        let dir = tempfile::tempdir().unwrap();
        let p = ModelParams::finite(1.0, 0.25, 6).unwrap();
        let first = diagonalize_cached(&p, dir.path()).unwrap();
        assert!(entry_path(dir.path(), 6, 1.0, 0.25).exists());
        let second = diagonalize_cached(&p, dir.path()).unwrap();
        assert_eq!(first, second);
    }
}
