//! Adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Integrands may be vector valued (`[f64; K]`): every component shares the
//! same nodes and subdivision, so linear identities between components (the
//! first law for the cycle energies, for instance) survive integration up to
//! rounding. Refinement bisects the interval that contributes most to the
//! weighted error until each component satisfies
//!
//! ```text
//! err_k <= max(rel_tol * |I_k|, abs_tol * ∫|f_k|)
//! ```
//!
//! The absolute floor is measured against `∫|f_k|` so that Boltzmann-suppressed
//! integrands (values near `e^-100`) are resolved to the same relative quality
//! as O(1) integrands.

use crate::error::{Error, Result};

const ROUNDOFF: f64 = 100.0 * f64::EPSILON;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances for the adaptive integrator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub rel_tol: f64,
    /// Floor on the error, in units of `∫|f|`.
    pub abs_tol: f64,
    /// Plain absolute error floor, zero unless the caller knows the scale of
    /// the answer (integrands that cancel to rounding noise never converge
    /// relative to themselves).
    pub abs_floor: f64,
    pub max_intervals: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            abs_floor: 0.0,
            max_intervals: 4000,
        }
    }
}

#[derive(Clone, Copy)]
struct Segment<const K: usize> {
    a: f64,
    b: f64,
    value: [f64; K],
    error: [f64; K],
    l1: [f64; K],
}

fn kronrod<const K: usize, F>(f: &F, a: f64, b: f64) -> Segment<K>
where
    F: Fn(f64) -> [f64; K],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut kron = [0.0; K];
    let mut gauss = [0.0; K];
    let mut abs_k = [0.0; K];
    for k in 0..K {
        kron[k] = WGK[7] * fc[k];
        gauss[k] = WG[3] * fc[k];
        abs_k[k] = WGK[7] * fc[k].abs();
    }

    let mut samples = [[0.0; K]; 14];
    for j in 0..7 {
        let dx = half * XGK[j];
        let lo = f(center - dx);
        let hi = f(center + dx);
        samples[2 * j] = lo;
        samples[2 * j + 1] = hi;
        for k in 0..K {
            kron[k] += WGK[j] * (lo[k] + hi[k]);
            abs_k[k] += WGK[j] * (lo[k].abs() + hi[k].abs());
            if j % 2 == 1 {
                gauss[k] += WG[j / 2] * (lo[k] + hi[k]);
            }
        }
    }

    let mut value = [0.0; K];
    let mut error = [0.0; K];
    let mut l1 = [0.0; K];
    for k in 0..K {
        let mean = 0.5 * kron[k];
        let mut asc = WGK[7] * (fc[k] - mean).abs();
        for j in 0..7 {
            asc += WGK[j] * ((samples[2 * j][k] - mean).abs() + (samples[2 * j + 1][k] - mean).abs());
        }
        let asc = asc * half.abs();
        let abs_int = abs_k[k] * half.abs();
        let mut err = ((kron[k] - gauss[k]) * half).abs();
        if asc != 0.0 && err != 0.0 {
            err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
        }
        if abs_int > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            err = err.max(50.0 * f64::EPSILON * abs_int);
        }
        value[k] = kron[k] * half;
        error[k] = err;
        l1[k] = abs_int;
    }

    Segment {
        a,
        b,
        value,
        error,
        l1,
    }
}

impl Quadrature {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_floor(mut self, abs_floor: f64) -> Self {
        self.abs_floor = abs_floor;
        self
    }

    pub fn integrate<F>(&self, f: F, a: f64, b: f64) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        self.integrate_split(f, &[a, b])
    }

    /// Integrates over `[points[0], points[last]]` with the given interior
    /// breakpoints as initial subdivision.
    pub fn integrate_split<F>(&self, f: F, points: &[f64]) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        let [v] = self.integrate_vec(|x| [f(x)], points)?;
        Ok(v)
    }

    pub fn integrate_vec<const K: usize, F>(&self, f: F, points: &[f64]) -> Result<[f64; K]>
    where
        F: Fn(f64) -> [f64; K],
    {
        assert!(points.len() >= 2, "need at least one interval");
        let mut segments: Vec<Segment<K>> = points
            .windows(2)
            .filter(|w| w[1] > w[0])
            .map(|w| kronrod(&f, w[0], w[1]))
            .collect();
        if segments.is_empty() {
            return Ok([0.0; K]);
        }

        loop {
            let mut total = [0.0; K];
            let mut error = [0.0; K];
            let mut l1 = [0.0; K];
            for s in &segments {
                for k in 0..K {
                    total[k] += s.value[k];
                    error[k] += s.error[k];
                    l1[k] += s.l1[k];
                }
            }
            if let Some(k) = (0..K).find(|&k| !(total[k].is_finite() && error[k].is_finite())) {
                return Err(Error::Quadrature {
                    estimate: total[k],
                    error: error[k],
                    intervals: segments.len(),
                });
            }
            // the Kronrod error estimate never drops below ~50 ulp of ∫|f|
            let floor = self.abs_tol.max(ROUNDOFF);
            let tol: [f64; K] = std::array::from_fn(|k| (self.rel_tol * total[k].abs()).max(floor * l1[k]).max(self.abs_floor));
            if (0..K).all(|k| error[k] <= tol[k]) {
                return Ok(total);
            }

            let weight = |s: &Segment<K>| -> f64 {
                (0..K)
                    .map(|k| if tol[k] > 0.0 { s.error[k] / tol[k] } else { s.error[k] * 1e300 })
                    .sum()
            };
            let (worst, _) = segments
                .iter()
                .enumerate()
                .map(|(i, s)| (i, weight(s)))
                .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });

            let s = segments[worst];
            let mid = 0.5 * (s.a + s.b);
            let too_narrow = mid <= s.a || mid >= s.b || (s.b - s.a) < 1e-15 * s.a.abs().max(s.b.abs());
            if segments.len() >= self.max_intervals || too_narrow {
                let worst_k = (0..K)
                    .max_by(|&i, &j| (error[i] - tol[i]).total_cmp(&(error[j] - tol[j])))
                    .unwrap_or(0);
                return Err(Error::Quadrature {
                    estimate: total[worst_k],
                    error: error[worst_k],
                    intervals: segments.len(),
                });
            }
            segments[worst] = kronrod(&f, s.a, mid);
            segments.push(kronrod(&f, mid, s.b));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn kronrod_rule_is_exact_for_low_degree_polynomials() {
        let q = Quadrature::default();
        for deg in 0..=20 {
            let v = q.integrate(|x| x.powi(deg), 0.0, 1.0).unwrap();
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((v - exact).abs() < 1e-14, "degree {deg}: {v} vs {exact}");
        }
    }

    #[test]
    fn smooth_periodic_integrals() {
        let q = Quadrature::default();
        let v = q.integrate(|x| x.sin(), 0.0, PI).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
        let v = q.integrate(|x| (-x * x).exp(), -10.0, 10.0).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn kink_at_endpoint_converges() {
        // |sin(θ/2)| style kink, like the critical dispersion at θ = 0
        let q = Quadrature::default();
        let v = q.integrate(|x| (x - 0.3).abs().sqrt(), 0.0, 1.0).unwrap();
        let exact = 2.0 / 3.0 * (0.3f64.powf(1.5) + 0.7f64.powf(1.5));
        assert!((v - exact).abs() < 1e-9, "{v} vs {exact}");
    }

    #[test]
    fn tiny_integrands_keep_relative_accuracy() {
        let q = Quadrature::default();
        let scale = (-100.0f64).exp();
        let v = q.integrate(|x| scale * (-50.0 * x * x).exp(), 0.0, PI).unwrap();
        let exact = scale * 0.5 * (PI / 50.0).sqrt();
        assert!(((v - exact) / exact).abs() < 1e-10);
    }

    #[test]
    fn vector_components_share_nodes() {
        let q = Quadrature::default();
        let [a, b, c] = q
            .integrate_vec(|x| [x.cos().exp(), -2.0 * x.sin(), x.sin() * 2.0 - x.cos().exp()], &[0.0, 1.0, PI])
            .unwrap();
        assert!((a + b + c).abs() < 1e-14);
    }

    #[test]
    fn cancelling_integral_terminates() {
        let q = Quadrature::default();
        let v = q.integrate(|x| x.cos(), 0.0, PI).unwrap();
        assert!(v.abs() < 1e-13);
    }

    #[test]
    fn absolute_floor_accepts_noise() {
        let noisy = |x: f64| (((x * 1e6).sin() * 1e17).fract() - 0.5) * 1e-17;
        let v = Quadrature::default().with_abs_floor(1e-12).integrate(noisy, 0.0, 1.0).unwrap();
        assert!(v.abs() < 1e-16);
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        let q = Quadrature::default();
        assert!(matches!(
            q.integrate(|x| 1.0 / x, 0.0, 1.0),
            Err(Error::Quadrature { .. })
        ));
    }
}
