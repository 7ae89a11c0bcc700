//! Truncated power-series arithmetic used by the coefficient-matching
//! recursion: products, reciprocals, and disc-automorphism composition.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Product truncated to `n` coefficients.
pub(crate) fn mul_trunc(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; n];
    for (i, &ai) in a.iter().enumerate().take(n) {
        if ai == ZERO {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Reciprocal series of `a` truncated to `n` coefficients; requires
/// `a[0] != 0`.
pub(crate) fn recip_trunc(a: &[Complex64], n: usize) -> Result<Vec<Complex64>> {
    let a0 = *a.first().ok_or_else(|| Error::precondition("empty series"))?;
    if a0.norm() < 1e-300 {
        return Err(Error::precondition("series reciprocal needs a nonzero constant term"));
    }
    let mut r = vec![ZERO; n];
    r[0] = Complex64::new(1.0, 0.0) / a0;
    for k in 1..n {
        let mut acc = ZERO;
        for j in 1..=k {
            let aj = a.get(j).copied().unwrap_or(ZERO);
            acc += aj * r[k - j];
        }
        r[k] = -acc / a0;
    }
    Ok(r)
}

/// Series of `(c0 - f(z)) / (1 - conj(c0) f(z))` truncated to `n`
/// coefficients; requires `|c0| < 1` and `|f(0)| < 1` so the denominator has
/// a nonzero constant term.
pub(crate) fn mobius_of_series(
    c0: Complex64,
    f: &[Complex64],
    n: usize,
) -> Result<Vec<Complex64>> {
    let mut num = vec![ZERO; n];
    let mut den = vec![ZERO; n];
    num[0] = c0;
    den[0] = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let fk = f.get(k).copied().unwrap_or(ZERO);
        num[k] -= fk;
        den[k] -= c0.conj() * fk;
    }
    let rd = recip_trunc(&den, n)?;
    Ok(mul_trunc(&num, &rd, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    #[test]
    fn recip_inverts() {
        let a = [C::new(2.0, 0.0), C::new(-0.5, 0.3), C::new(0.1, 0.0), C::new(0.0, 0.7)];
        let r = recip_trunc(&a, 8).unwrap();
        let prod = mul_trunc(&a, &r, 8);
        assert!((prod[0] - C::new(1.0, 0.0)).norm() < 1e-14);
        for p in &prod[1..] {
            assert!(p.norm() < 1e-13);
        }
    }

    #[test]
    fn mobius_series_matches_pointwise() {
        // compare against direct evaluation at a small point
        let c0 = C::new(0.4, -0.2);
        let f = [C::new(0.1, 0.2), C::new(0.5, 0.0), C::new(0.0, -0.3)];
        let s = mobius_of_series(c0, &f, 24).unwrap();
        let z = C::new(0.05, 0.02);
        let fz = f[0] + f[1] * z + f[2] * z * z;
        let want = (c0 - fz) / (C::new(1.0, 0.0) - c0.conj() * fz);
        let got: C = s
            .iter()
            .rev()
            .fold(C::new(0.0, 0.0), |acc, &c| acc * z + c);
        assert!((got - want).norm() < 1e-13);
    }
}
