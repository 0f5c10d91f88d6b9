//! Bracketed scalar root finding.
//!
//! Brent's method: bisection safeguarded inverse quadratic / secant steps.
//! Residuals are fallible because they are usually quadratures.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Brent {
    /// Absolute tolerance on the abscissa.
    pub xtol: f64,
    pub max_iter: usize,
}

impl Default for Brent {
    fn default() -> Self {
        Self {
            xtol: 1e-10,
            max_iter: 200,
        }
    }
}

/// `n` points spaced geometrically over `[lo, hi]`, endpoints included.
pub fn geomspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let ratio = (hi / lo).ln() / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo * (ratio * i as f64).exp() })
        .collect()
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
            .collect(),
    }
}

/// A sign change `f(lo) * f(hi) <= 0` located by a scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// First sign change of `f` along `grid`. Exact zeros (typically underflow of
/// Boltzmann-suppressed residuals) carry no sign and are skipped, so the
/// bracket spans the nearest nonzero values on either side.
pub fn scan<F>(mut f: F, grid: &[f64]) -> Result<Option<Bracket>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut prev: Option<(f64, f64)> = None;
    for &x in grid {
        let fx = f(x)?;
        if fx == 0.0 {
            continue;
        }
        if let Some((xp, fp)) = prev {
            if fp.signum() != fx.signum() {
                return Ok(Some(Bracket {
                    lo: xp,
                    hi: x,
                    f_lo: fp,
                    f_hi: fx,
                }));
            }
        }
        prev = Some((x, fx));
    }
    Ok(None)
}

impl Brent {
    pub fn with_xtol(mut self, xtol: f64) -> Self {
        self.xtol = xtol;
        self
    }

    pub fn solve<F>(&self, f: F, lo: f64, hi: f64) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let mut f = f;
        let f_lo = f(lo)?;
        let f_hi = f(hi)?;
        self.solve_bracket(
            f,
            Bracket {
                lo,
                hi,
                f_lo,
                f_hi,
            },
        )
    }

    pub fn solve_bracket<F>(&self, mut f: F, bracket: Bracket) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let (mut a, mut b) = (bracket.lo, bracket.hi);
        let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
        if fa == 0.0 {
            return Ok(a);
        }
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.signum() == fb.signum() {
            return Err(Error::NoBracket { lo: a, hi: b });
        }

        let (mut c, mut fc) = (b, fb);
        let mut d = b - a;
        let mut e = d;
        for _ in 0..self.max_iter {
            if fb.signum() == fc.signum() {
                c = a;
                fc = fa;
                d = b - a;
                e = d;
            }
            if fc.abs() < fb.abs() {
                a = b;
                b = c;
                c = a;
                fa = fb;
                fb = fc;
                fc = fa;
            }
            let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * self.xtol;
            let m = 0.5 * (c - b);
            if m.abs() <= tol || fb == 0.0 {
                return Ok(b);
            }
            if e.abs() >= tol && fa.abs() > fb.abs() {
                let s = fb / fa;
                let (mut p, mut q);
                if a == c {
                    p = 2.0 * m * s;
                    q = 1.0 - s;
                } else {
                    let qa = fa / fc;
                    let r = fb / fc;
                    p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                    q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
                }
                if p > 0.0 {
                    q = -q;
                } else {
                    p = -p;
                }
                if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                    e = d;
                    d = p / q;
                } else {
                    d = m;
                    e = m;
                }
            } else {
                d = m;
                e = m;
            }
            a = b;
            fa = fb;
            b += if d.abs() > tol { d } else { tol.copysign(m) };
            fb = f(b)?;
        }
        Err(Error::RootNotConverged {
            iterations: self.max_iter,
            width: (c - b).abs(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cubic_root() {
        let r = Brent::default().with_xtol(1e-14).solve(|x| Ok(x * x * x - 2.0), 0.0, 2.0).unwrap();
        assert!((r - 2f64.powf(1.0 / 3.0)).abs() < 1e-13);
    }

    #[test]
    fn transcendental_root() {
        // x tanh x = 1, the stationary point of tanh x + x sech^2 x
        let r = Brent::default()
            .with_xtol(1e-14)
            .solve(|x| Ok(x * x.tanh() - 1.0), 0.5, 3.0)
            .unwrap();
        assert!((r * r.tanh() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn same_sign_is_rejected() {
        assert!(matches!(
            Brent::default().solve(|x| Ok(x * x + 1.0), -1.0, 1.0),
            Err(Error::NoBracket { .. })
        ));
    }

    #[test]
    fn scan_finds_first_sign_change() {
        let grid = linspace(0.0, 10.0, 101);
        let b = scan(|x| Ok((x - 2.05) * (x - 7.05)), &grid).unwrap().unwrap();
        assert!(b.lo <= 2.05 && b.hi >= 2.05);
        assert!(scan(|x| Ok(x + 1.0), &grid).unwrap().is_none());
        // underflowed zeros at the start are not roots
        let b = scan(|x| Ok(if x < 1.0 { 0.0 } else { x - 5.01 }), &grid).unwrap().unwrap();
        assert!(b.lo <= 5.01 && b.hi >= 5.01);
    }

    #[test]
    fn residual_errors_propagate() {
        let r = Brent::default().solve(|_| Err(Error::invalid("boom")), 0.0, 1.0);
        assert!(matches!(r, Err(Error::InvalidParams(_))));
    }

    #[test]
    fn geometric_grid_endpoints() {
        let g = geomspace(1e-3, 10.0, 64);
        assert_eq!(g.len(), 64);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[63], 10.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }
}
