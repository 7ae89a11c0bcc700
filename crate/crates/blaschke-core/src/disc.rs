//! Points of the open unit disc and the self-inverse disc automorphism
//! `τ_a(z) = (a - z)/(1 - conj(a) z)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point strictly inside the unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.norm() < 1.0) {
            return Err(Error::domain("disc point must satisfy |value| < 1"));
        }
        Ok(DiscPoint(value))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// Unchecked automorphism kernel; callers guarantee the denominator is
/// bounded away from zero (|a| < 1 with |z| <= 1 suffices).
#[inline]
pub(crate) fn tau(a: Complex64, z: Complex64) -> Complex64 {
    (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

/// `τ_a(z) = (a - z)/(1 - conj(a) z)` on the closed disc.
///
/// Maps the closed disc onto itself, swapping `a` and `0`; it is its own
/// inverse. Unimodular inputs map to unimodular outputs.
pub fn mobius(a: DiscPoint, z: Complex64) -> Result<Complex64> {
    if z.norm() > 1.0 + 1e-9 {
        return Err(Error::domain("mobius requires |z| <= 1"));
    }
    let den = Complex64::new(1.0, 0.0) - a.value().conj() * z;
    if den.norm() < 1e-14 {
        return Err(Error::domain("mobius denominator vanished"));
    }
    Ok((a.value() - z) / den)
}
