//! Radix-2 complex FFT, unnormalized forward / normalized inverse.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

pub fn is_power_of_two(n: usize) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// Smallest power of two `>= n` (n >= 1).
pub fn next_power_of_two(n: usize) -> usize {
    let mut p = 1usize;
    while p < n {
        p <<= 1;
    }
    p
}

/// In-place forward transform `X_k = sum_j x_j e^{-2πi jk/n}`; `n` must be a
/// power of two.
pub fn fft(data: &mut [Complex64]) {
    transform(data, -1.0);
}

/// Inverse of [`fft`], including the `1/n` normalization.
pub fn ifft(data: &mut [Complex64]) {
    transform(data, 1.0);
    let inv = 1.0 / data.len() as f64;
    for v in data.iter_mut() {
        *v *= inv;
    }
}

fn transform(a: &mut [Complex64], sign: f64) {
    let n = a.len();
    debug_assert!(is_power_of_two(n), "fft size must be a power of two");
    if n <= 1 {
        return;
    }
    // bit-reversal permutation
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    // Twiddles come from fresh sin/cos per level; the recurrence w *= w_len
    // drifts past 1e-13 at the certificate grid sizes used downstream.
    let mut tw: Vec<Complex64> = Vec::with_capacity(n / 2);
    let mut len = 2usize;
    while len <= n {
        let half = len / 2;
        let ang = sign * 2.0 * PI / len as f64;
        tw.clear();
        for i in 0..half {
            let t = ang * i as f64;
            tw.push(Complex64::new(libm::cos(t), libm::sin(t)));
        }
        let mut start = 0;
        while start < n {
            for i in 0..half {
                let u = a[start + i];
                let v = a[start + i + half] * tw[i];
                a[start + i] = u + v;
                a[start + i + half] = u - v;
            }
            start += len;
        }
        len <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        let t = -2.0 * PI * (j * k) as f64 / n as f64;
                        x[j] * Complex64::new(libm::cos(t), libm::sin(t))
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        let n = 16;
        let x: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new(libm::sin(0.7 * j as f64), libm::cos(1.3 * j as f64 + 0.2)))
            .collect();
        let want = naive_dft(&x);
        let mut got = x.clone();
        fft(&mut got);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-12);
        }
    }

    #[test]
    fn impulse_and_tone() {
        let mut x = vec![Complex64::new(0.0, 0.0); 8];
        x[0] = Complex64::new(1.0, 0.0);
        fft(&mut x);
        for v in &x {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        let mut tone: Vec<Complex64> = (0..8)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 8.0))
            .collect();
        fft(&mut tone);
        assert!((tone[1] - Complex64::new(8.0, 0.0)).norm() < 1e-13);
        assert!(tone[0].norm() < 1e-13);
    }

    #[test]
    fn roundtrip_large() {
        let n = 1 << 12;
        let x: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new(libm::cos(2.1 * j as f64), libm::sin(0.37 * j as f64)))
            .collect();
        let mut y = x.clone();
        fft(&mut y);
        ifft(&mut y);
        let worst = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        assert!(worst < 1e-12, "roundtrip error {worst}");
    }
}
