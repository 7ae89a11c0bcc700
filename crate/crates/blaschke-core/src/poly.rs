//! Polynomial utilities: Horner evaluation, products, and root finding via
//! the companion matrix with Newton polishing.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, CMat};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Evaluate `p(z)` for coefficients ordered low to high.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = ZERO;
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Evaluate `(p(z), p'(z))` in one pass.
pub fn horner2(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Convolution product of two coefficient lists.
pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == ZERO {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Monic polynomial with the given roots, coefficients low to high.
pub fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut p = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        p = mul(&p, &[-r, Complex64::new(1.0, 0.0)]);
    }
    p
}

/// All complex roots of `p` (coefficients low to high). Exact zeros at the
/// low end become roots at the origin; near-zero leading coefficients are
/// trimmed relative to the coefficient scale.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Err(Error::precondition("zero polynomial has no root set"));
    }
    let mut hi = coeffs.len();
    while hi > 1 && coeffs[hi - 1].norm() <= 1e-13 * scale {
        hi -= 1;
    }
    let mut lo = 0usize;
    while lo < hi - 1 && coeffs[lo] == ZERO {
        lo += 1;
    }
    let mut out: Vec<Complex64> = vec![ZERO; lo];
    let body = &coeffs[lo..hi];
    let deg = body.len() - 1;
    if deg == 0 {
        return Ok(out);
    }
    if deg == 1 {
        out.push(-body[0] / body[1]);
        return Ok(out);
    }
    // companion matrix of the monic polynomial (already Hessenberg)
    let lead = body[deg];
    let mut comp = CMat::zeros(deg);
    for i in 1..deg {
        comp.set(i, i - 1, Complex64::new(1.0, 0.0));
    }
    for i in 0..deg {
        comp.set(i, deg - 1, -body[i] / lead);
    }
    let mut rs = eigenvalues(&comp)?;
    // Newton polishing on the full polynomial
    for r in rs.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner2(body, *r);
            if dp.norm() < 1e-300 {
                break;
            }
            let step = p / dp;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    out.extend(rs);
    Ok(out)
}
