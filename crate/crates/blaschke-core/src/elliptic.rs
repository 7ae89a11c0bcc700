//! Complete elliptic integrals of the first kind and the Jacobi `sn`
//! function, computed by the arithmetic–geometric mean and descending Landen
//! transformations. `sn` maps the rectangle `[-K, K] × [-K', K']` conformally
//! onto the Riemann sphere slit along `(-∞, -1] ∪ [1, ∞)`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::{exp, fabs, round, sqrt};
use num_complex::Complex64;

use crate::error::{Error, Result};

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..60 {
        let next = 0.5 * (a + b);
        b = sqrt(a * b);
        a = next;
        if fabs(a - b) < 1e-17 * a {
            break;
        }
    }
    0.5 * (a + b)
}

/// `K(k) = ∫₀¹ dt/√((1-t²)(1-k²t²))` via the AGM, relative error ≲ 1e-15.
pub fn complete_elliptic_k(k: f64) -> Result<f64> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::precondition("elliptic modulus must lie strictly in (0, 1)"));
    }
    Ok(PI / (2.0 * agm(1.0, sqrt(1.0 - k * k))))
}

/// A modulus together with everything derived from it: the complementary
/// modulus, both quarter periods, and the annulus radii `e^{∓πK/K'}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticParameters {
    pub k: f64,
    pub k_prime: f64,
    pub big_k: f64,
    pub big_k_prime: f64,
    pub r_inner: f64,
    pub r_outer: f64,
}

impl EllipticParameters {
    pub fn new(k: f64) -> Result<Self> {
        let big_k = complete_elliptic_k(k)?;
        let k_prime = sqrt(1.0 - k * k);
        let big_k_prime = complete_elliptic_k(k_prime)?;
        let r_inner = exp(-PI * big_k / big_k_prime);
        Ok(EllipticParameters {
            k,
            k_prime,
            big_k,
            big_k_prime,
            r_inner,
            r_outer: 1.0 / r_inner,
        })
    }
}

/// `sn` at a fixed modulus with the Landen modulus chain precomputed.
/// Arguments are reduced modulo the periods `4K` and `2iK'`, so evaluation
/// is valid on the whole plane; the poles at `±iK' (mod periods)` surface as
/// values of very large modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct SnEngine {
    params: EllipticParameters,
    chain: Vec<f64>,
}

impl SnEngine {
    pub fn new(k: f64) -> Result<Self> {
        let params = EllipticParameters::new(k)?;
        let mut chain = Vec::new();
        let mut kj = k;
        // descending Landen moduli: k_{j+1} = (1-k'_j)/(1+k'_j), quadratic decay
        while kj > 1e-15 && chain.len() < 40 {
            let kp = sqrt(1.0 - kj * kj);
            kj = (1.0 - kp) / (1.0 + kp);
            chain.push(kj);
        }
        Ok(SnEngine { params, chain })
    }

    pub fn params(&self) -> &EllipticParameters {
        &self.params
    }

    fn reduce(&self, u: Complex64) -> Complex64 {
        let four_k = 4.0 * self.params.big_k;
        let two_kp = 2.0 * self.params.big_k_prime;
        Complex64::new(
            u.re - four_k * round(u.re / four_k),
            u.im - two_kp * round(u.im / two_kp),
        )
    }

    pub fn sn(&self, u: Complex64) -> Complex64 {
        let mut v = self.reduce(u);
        for kj in &self.chain {
            v /= 1.0 + kj;
        }
        let mut s = v.sin();
        for kj in self.chain.iter().rev() {
            let den = Complex64::new(1.0, 0.0) + kj * s * s;
            if den.norm() == 0.0 {
                return Complex64::new(f64::INFINITY, 0.0);
            }
            s = (1.0 + kj) * s / den;
        }
        s
    }

    /// `(sn(u), sn'(u))` by carrying a dual number through the Landen chain.
    pub fn sn_dual(&self, u: Complex64) -> (Complex64, Complex64) {
        let mut v = self.reduce(u);
        let mut dv = Complex64::new(1.0, 0.0);
        for kj in &self.chain {
            v /= 1.0 + kj;
            dv /= 1.0 + kj;
        }
        let mut s = v.sin();
        let mut ds = v.cos() * dv;
        for kj in self.chain.iter().rev() {
            let den = Complex64::new(1.0, 0.0) + kj * s * s;
            let dnew = (1.0 + kj) * (Complex64::new(1.0, 0.0) - kj * s * s) / (den * den) * ds;
            s = (1.0 + kj) * s / den;
            ds = dnew;
        }
        (s, ds)
    }
}

/// `sn(z, k)` on the closed fundamental rectangle `[-K, K] × [-K', K']`.
/// The poles `±iK'` are reported as an infinite value (the point at
/// infinity of the Riemann sphere).
pub fn jacobi_sn(z: Complex64, k: f64) -> Result<Complex64> {
    let engine = SnEngine::new(k)?;
    let p = engine.params();
    if fabs(z.re) > p.big_k + 1e-9 || fabs(z.im) > p.big_k_prime + 1e-9 {
        return Err(Error::domain(
            "argument must lie in the closed rectangle [-K, K] x [-K', K']",
        ));
    }
    let pole = Complex64::new(0.0, p.big_k_prime);
    if (z - pole).norm() < 1e-12 || (z + pole).norm() < 1e-12 {
        return Ok(Complex64::new(f64::INFINITY, 0.0));
    }
    Ok(engine.sn(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_known_values() {
        // K(k) -> π/2 as k -> 0
        assert!(fabs(complete_elliptic_k(1e-9).unwrap() - PI / 2.0) < 1e-12);
        // self-complementary point: k = k'
        let k = 1.0 / sqrt(2.0);
        let big_k = complete_elliptic_k(k).unwrap();
        let big_kp = complete_elliptic_k(sqrt(1.0 - k * k)).unwrap();
        assert!(fabs(big_k - big_kp) < 1e-14);
        // Abramowitz–Stegun 17.3.33 reference for k = 0.5 (m = 0.25)
        assert!(fabs(complete_elliptic_k(0.5).unwrap() - 1.685_750_354_812_596) < 1e-12);
        assert!(complete_elliptic_k(0.0).is_err());
        assert!(complete_elliptic_k(1.0).is_err());
    }

    #[test]
    fn k_strictly_increasing() {
        let mut prev = 0.0;
        for j in 1..20 {
            let v = complete_elliptic_k(j as f64 / 20.0).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn parameter_invariants() {
        for k in [0.1, 0.21203, 0.5, 0.9] {
            let p = EllipticParameters::new(k).unwrap();
            assert!(fabs(p.k * p.k + p.k_prime * p.k_prime - 1.0) < 1e-12);
            assert!(fabs(p.r_inner * p.r_outer - 1.0) < 1e-12);
            assert!(p.r_inner < 1.0 && p.r_outer > 1.0);
        }
    }

    #[test]
    fn sn_corner_and_symmetries() {
        for k in [0.2, 0.5, 0.8] {
            let e = SnEngine::new(k).unwrap();
            let big_k = e.params().big_k;
            assert!(e.sn(Complex64::default()).norm() < 1e-15, "sn(0)=0");
            assert!((e.sn(Complex64::new(big_k, 0.0)) - 1.0).norm() < 1e-12, "sn(K)=1");
            for u in [
                Complex64::new(0.3, 0.2),
                Complex64::new(-1.1, 0.7),
                Complex64::new(0.5 * big_k, 0.3),
            ] {
                let s = e.sn(u);
                assert!((e.sn(-u) + s).norm() < 1e-12, "odd");
                assert!((e.sn(u.conj()) - s.conj()).norm() < 1e-12, "real coefficients");
            }
        }
    }

    #[test]
    fn sn_right_edge_is_real_in_band() {
        // the segment K + it K', |t| < 1, maps into [1, 1/k]
        let k = 0.4;
        let e = SnEngine::new(k).unwrap();
        let p = e.params();
        for j in -9..=9 {
            let t = j as f64 / 10.0;
            let v = e.sn(Complex64::new(p.big_k, t * p.big_k_prime));
            assert!(fabs(v.im) < 1e-9, "imag {v}");
            assert!(v.re >= 1.0 - 1e-9 && v.re <= 1.0 / k + 1e-9);
        }
    }

    #[test]
    fn sn_periods() {
        let k = 0.3;
        let e = SnEngine::new(k).unwrap();
        let p = e.params();
        let u = Complex64::new(0.37, 0.21);
        let shifted = u + Complex64::new(4.0 * p.big_k, 2.0 * p.big_k_prime);
        assert!((e.sn(u) - e.sn(shifted)).norm() < 1e-11);
    }

    #[test]
    fn dual_derivative_matches_difference_quotient() {
        let e = SnEngine::new(0.4).unwrap();
        let u = Complex64::new(0.37, 0.11);
        let (_, ds) = e.sn_dual(u);
        let h = 1e-6;
        let fd = (e.sn(u + Complex64::new(h, 0.0)) - e.sn(u - Complex64::new(h, 0.0)))
            / Complex64::new(2.0 * h, 0.0);
        assert!((ds - fd).norm() < 1e-8, "{ds} vs {fd}");
    }

    #[test]
    fn jacobi_sn_rectangle_and_pole() {
        let k = 0.5;
        let p = EllipticParameters::new(k).unwrap();
        assert!(jacobi_sn(Complex64::new(2.0 * p.big_k, 0.0), k).is_err());
        let pole = jacobi_sn(Complex64::new(0.0, p.big_k_prime), k).unwrap();
        assert!(pole.re.is_infinite());
        let v = jacobi_sn(Complex64::new(0.2, 0.1), k).unwrap();
        assert!(v.is_finite());
    }
}
