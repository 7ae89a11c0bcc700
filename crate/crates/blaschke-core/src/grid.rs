//! Equispaced boundary grids, their spectral representation, harmonic
//! extension with conjugate, and continuous argument lifting.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::{atan2, cos, fabs, round, sin};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::{fft, ifft, is_power_of_two};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Complex samples at the `n`-th roots of unity `e^{i 2π j/n}`, `j = 0..n-1`;
/// `n` is a power of two, at least 8.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryGrid {
    values: Vec<Complex64>,
}

impl BoundaryGrid {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        let n = values.len();
        if n < 8 || !is_power_of_two(n) {
            return Err(Error::precondition("grid size must be a power of two >= 8"));
        }
        Ok(BoundaryGrid { values })
    }

    /// Sample `f(e^{i 2π j/n})` for `j = 0..n-1`.
    pub fn from_fn(n: usize, mut f: impl FnMut(f64) -> Complex64) -> Result<Self> {
        if n < 8 || !is_power_of_two(n) {
            return Err(Error::precondition("grid size must be a power of two >= 8"));
        }
        let values = (0..n).map(|j| f(2.0 * PI * j as f64 / n as f64)).collect();
        Ok(BoundaryGrid { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn angle(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n() as f64
    }

    /// The grid point `e^{i 2π j/n}` itself.
    pub fn point(&self, j: usize) -> Complex64 {
        let t = self.angle(j);
        Complex64::new(cos(t), sin(t))
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest samplewise deviation from another grid of the same size.
    pub fn sup_distance(&self, other: &BoundaryGrid) -> f64 {
        debug_assert_eq!(self.n(), other.n());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Finite-support Fourier data: a map from integer frequency to coefficient.
/// Frequencies absent from the map are exactly zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FourierCoefficients {
    coeffs: BTreeMap<i64, Complex64>,
}

impl FourierCoefficients {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, v) in pairs {
            if v != ZERO {
                coeffs.insert(k, v);
            }
        }
        FourierCoefficients { coeffs }
    }

    pub fn get(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or(ZERO)
    }

    pub fn insert(&mut self, k: i64, v: Complex64) {
        if v == ZERO {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    pub fn support_min(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn support_max(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drop coefficients below `tol` in modulus.
    pub fn truncated(&self, tol: f64) -> Self {
        FourierCoefficients {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, v)| v.norm() > tol)
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    /// Evaluate the trigonometric polynomial at angle `theta`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        let mut acc = ZERO;
        for (&k, &v) in &self.coeffs {
            let t = k as f64 * theta;
            acc += v * Complex64::new(cos(t), sin(t));
        }
        acc
    }
}

/// Discrete Fourier coefficients of a grid: coefficient `k` equals
/// `(1/n) Σ_j values_j e^{-i 2π jk/n}` with `k` in `[-n/2, n/2)`.
pub fn fourier(grid: &BoundaryGrid) -> FourierCoefficients {
    let n = grid.n();
    let mut buf = grid.values().to_vec();
    fft(&mut buf);
    let inv = 1.0 / n as f64;
    let mut coeffs = BTreeMap::new();
    for (j, v) in buf.into_iter().enumerate() {
        let k = if j < n / 2 { j as i64 } else { j as i64 - n as i64 };
        let c = v * inv;
        if c != ZERO {
            coeffs.insert(k, c);
        }
    }
    FourierCoefficients { coeffs }
}

/// Inverse of [`fourier`] onto an `n`-point grid. The support must fit:
/// every frequency needs `-n/2 <= k < n/2`.
pub fn inverse_fourier(coeffs: &FourierCoefficients, n: usize) -> Result<BoundaryGrid> {
    if n < 8 || !is_power_of_two(n) {
        return Err(Error::precondition("grid size must be a power of two >= 8"));
    }
    let half = (n / 2) as i64;
    let mut buf = alloc::vec![ZERO; n];
    for (k, v) in coeffs.iter() {
        if k < -half || k >= half {
            return Err(Error::resolution("frequency support exceeds the requested grid"));
        }
        let j = k.rem_euclid(n as i64) as usize;
        buf[j] = v * n as f64;
    }
    ifft(&mut buf);
    BoundaryGrid::new(buf)
}

/// Poisson extension of a real boundary grid to `r e^{iθ}` together with its
/// harmonic conjugate normalized to vanish at the origin.
pub fn harmonic_extension(u: &BoundaryGrid, r: f64, theta: f64) -> Result<(f64, f64)> {
    if !(r < 1.0) {
        return Err(Error::domain("harmonic extension needs r < 1"));
    }
    let max_im = u.values().iter().map(|v| fabs(v.im)).fold(0.0, f64::max);
    if max_im > 1e-12 * (1.0 + u.max_modulus()) {
        return Err(Error::precondition("harmonic extension expects a real grid"));
    }
    let hat = fourier(u);
    let mut big_u = hat.get(0).re;
    let mut big_v = 0.0f64;
    let half = (u.n() / 2) as i64;
    let mut rk = 1.0f64;
    for k in 1..=half {
        rk *= r;
        if rk < 1e-320 {
            break;
        }
        let t = k as f64 * theta;
        let e = Complex64::new(cos(t), sin(t));
        // u real: the -k coefficient is the conjugate of the +k one
        let w = hat.get(k) * e * rk;
        big_u += 2.0 * w.re;
        big_v += 2.0 * w.im;
    }
    Ok((big_u, big_v))
}

/// Nearest-branch argument lift of a samplewise-unimodular grid. Returns the
/// lifted angles `φ_j` (with `e^{iφ_j} = f_j`) and the winding number
/// `(φ(2π) - φ(0))/2π`.
pub fn continuous_argument(f: &BoundaryGrid) -> Result<(Vec<f64>, i64)> {
    let n = f.n();
    for v in f.values() {
        if fabs(v.norm() - 1.0) > 1e-10 {
            return Err(Error::precondition("continuous argument needs unimodular samples"));
        }
    }
    for j in 0..n {
        let chord = (f.values()[(j + 1) % n] - f.values()[j]).norm();
        if chord >= 2.0 - 1e-9 {
            return Err(Error::resolution(
                "adjacent samples are antipodal; refine the grid",
            ));
        }
    }
    let mut phi = Vec::with_capacity(n);
    let mut cur = atan2(f.values()[0].im, f.values()[0].re);
    phi.push(cur);
    let mut total = 0.0f64;
    for j in 0..n {
        let ratio = f.values()[(j + 1) % n] / f.values()[j];
        let d = atan2(ratio.im, ratio.re);
        total += d;
        if j + 1 < n {
            cur += d;
            phi.push(cur);
        }
    }
    let winding = round(total / (2.0 * PI)) as i64;
    Ok((phi, winding))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Square-root lift of a samplewise-unimodular grid: for even winding
/// `f = g²` samplewise, for odd winding `f_j = e^{iθ_j} g_j²`; `g` is again
/// unimodular. The parity equals the winding number mod 2.
pub fn square_root_lift(f: &BoundaryGrid) -> Result<(BoundaryGrid, Parity)> {
    let n = f.n();
    let (phi, winding) = continuous_argument(f)?;
    let parity = if winding.rem_euclid(2) == 0 { Parity::Even } else { Parity::Odd };
    let p = if parity == Parity::Odd { 1.0 } else { 0.0 };
    let mut g = Vec::with_capacity(n);
    for (j, &ph) in phi.iter().enumerate() {
        let theta = 2.0 * PI * j as f64 / n as f64;
        let half = 0.5 * (ph - p * theta);
        g.push(Complex64::new(cos(half), sin(half)));
    }
    Ok((BoundaryGrid::new(g)?, parity))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourier_of_constant_and_tone() {
        let one = BoundaryGrid::from_fn(16, |_| Complex64::new(1.0, 0.0)).unwrap();
        let c = fourier(&one);
        assert!((c.get(0) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(c.truncated(1e-12).len(), 1);

        let tone = BoundaryGrid::from_fn(16, |t| Complex64::from_polar(1.0, t)).unwrap();
        let c = fourier(&tone);
        assert!((c.get(1) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(c.get(0).norm() < 1e-14);
    }

    #[test]
    fn roundtrip_identity() {
        let g = BoundaryGrid::from_fn(64, |t| {
            Complex64::new(sin(3.0 * t) + 0.2, cos(t) * 0.5 - 0.1)
        })
        .unwrap();
        let back = inverse_fourier(&fourier(&g), 64).unwrap();
        assert!(g.sup_distance(&back) < 1e-12);
    }

    #[test]
    fn inverse_rejects_small_grid() {
        let c = FourierCoefficients::from_pairs([(10i64, Complex64::new(1.0, 0.0))]);
        assert!(inverse_fourier(&c, 16).is_err());
        assert!(inverse_fourier(&c, 32).is_ok());
    }

    #[test]
    fn harmonic_extension_basics() {
        let one = BoundaryGrid::from_fn(32, |_| Complex64::new(1.0, 0.0)).unwrap();
        let (u, v) = harmonic_extension(&one, 0.7, 1.3).unwrap();
        assert!((u - 1.0).abs() < 1e-13 && v.abs() < 1e-13);

        let cosg = BoundaryGrid::from_fn(64, |t| Complex64::new(cos(t), 0.0)).unwrap();
        for (r, th) in [(0.5, 0.3), (0.9, 2.0), (0.0, 1.0)] {
            let (u, v) = harmonic_extension(&cosg, r, th).unwrap();
            assert!((u - r * cos(th)).abs() < 1e-12);
            assert!((v - r * sin(th)).abs() < 1e-12);
        }
        assert!(harmonic_extension(&one, 1.0, 0.0).is_err());
    }

    #[test]
    fn mean_value_property() {
        let g = BoundaryGrid::from_fn(128, |t| Complex64::new(sin(2.0 * t) + 0.3 * cos(5.0 * t), 0.0))
            .unwrap();
        let mean: f64 = g.values().iter().map(|v| v.re).sum::<f64>() / g.n() as f64;
        let (u0, v0) = harmonic_extension(&g, 0.0, 0.0).unwrap();
        assert!((u0 - mean).abs() < 1e-10);
        assert!(v0.abs() < 1e-12);
    }

    #[test]
    fn winding_numbers() {
        let id = BoundaryGrid::from_fn(64, |t| Complex64::from_polar(1.0, t)).unwrap();
        assert_eq!(continuous_argument(&id).unwrap().1, 1);
        let c = BoundaryGrid::from_fn(64, |_| Complex64::from_polar(1.0, PI / 3.0)).unwrap();
        let (phi, w) = continuous_argument(&c).unwrap();
        assert_eq!(w, 0);
        assert!(phi.iter().all(|p| (p - PI / 3.0).abs() < 1e-12));
        let sq = BoundaryGrid::from_fn(64, |t| Complex64::from_polar(1.0, 2.0 * t)).unwrap();
        assert_eq!(continuous_argument(&sq).unwrap().1, 2);
    }

    #[test]
    fn square_root_lift_cases() {
        let sq = BoundaryGrid::from_fn(64, |t| Complex64::from_polar(1.0, 2.0 * t)).unwrap();
        let (g, parity) = square_root_lift(&sq).unwrap();
        assert_eq!(parity, Parity::Even);
        for (j, v) in g.values().iter().enumerate() {
            let t = 2.0 * PI * j as f64 / 64.0;
            assert!((v - Complex64::from_polar(1.0, t)).norm() < 1e-12);
        }
        let id = BoundaryGrid::from_fn(64, |t| Complex64::from_polar(1.0, t)).unwrap();
        let (g, parity) = square_root_lift(&id).unwrap();
        assert_eq!(parity, Parity::Odd);
        for v in g.values() {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn square_root_reconstructs() {
        let f = BoundaryGrid::from_fn(256, |t| Complex64::from_polar(1.0, t + sin(t))).unwrap();
        let (g, parity) = square_root_lift(&f).unwrap();
        assert_eq!(parity, Parity::Odd);
        let mut worst = 0.0f64;
        for j in 0..256 {
            let t = 2.0 * PI * j as f64 / 256.0;
            let gj = g.values()[j];
            let rec = Complex64::from_polar(1.0, t) * gj * gj;
            worst = worst.max((f.values()[j] - rec).norm());
        }
        assert!(worst < 1e-12, "reconstruction error {worst}");
    }

    #[test]
    fn argument_rejects_coarse_jump() {
        // antipodal consecutive samples
        let f = BoundaryGrid::from_fn(8, |t| Complex64::from_polar(1.0, 4.0 * t)).unwrap();
        assert!(matches!(continuous_argument(&f), Err(Error::Resolution(_))));
    }
}
