//! Finite Blaschke products: construction, evaluation, Taylor coefficients,
//! boundary level sets, partial fractions, Möbius composition, and factoring
//! a boundary quotient `p/p*` into a quotient of two products.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::{atan2, fabs};
use num_complex::Complex64;

use crate::disc::{tau, DiscPoint};
use crate::error::{Error, Result};
use crate::grid::{BoundaryGrid, FourierCoefficients};
use crate::poly;
use crate::series;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `B(z) = c · Π_k (a_k - z)/(1 - ā_k z)` with `|c| = 1` and all `|a_k| < 1`.
/// Degree 0 is a unimodular constant. Zero multiplicity by repetition.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteBlaschkeProduct {
    c: Complex64,
    zeros: Vec<DiscPoint>,
}

impl FiniteBlaschkeProduct {
    /// The constant is renormalized to exact unit modulus; it must already be
    /// unimodular to 1e-9.
    pub fn new(c: Complex64, zeros: Vec<DiscPoint>) -> Result<Self> {
        let n = c.norm();
        if fabs(n - 1.0) > 1e-9 {
            return Err(Error::domain("Blaschke constant must be unimodular"));
        }
        Ok(FiniteBlaschkeProduct { c: c / n, zeros })
    }

    /// The product equal to `z^n` (constant `(-1)^n`, `n` zeros at the origin).
    pub fn monomial(n: usize) -> Self {
        let c = if n.is_multiple_of(2) { ONE } else { -ONE };
        let zeros = alloc::vec![DiscPoint::new(Complex64::new(0.0, 0.0)).unwrap(); n];
        FiniteBlaschkeProduct { c, zeros }
    }

    pub fn constant(&self) -> Complex64 {
        self.c
    }

    pub fn zeros(&self) -> &[DiscPoint] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// `z · B(z)`: prepend an origin zero. The new factor is `(0 - z) = -z`,
    /// so the constant flips sign.
    pub fn times_z(&self) -> Self {
        let mut zeros = Vec::with_capacity(self.zeros.len() + 1);
        zeros.push(DiscPoint::new(Complex64::new(0.0, 0.0)).unwrap());
        zeros.extend_from_slice(&self.zeros);
        FiniteBlaschkeProduct { c: -self.c, zeros }
    }

    pub(crate) fn eval_raw(&self, z: Complex64) -> Complex64 {
        let mut acc = self.c;
        for a in &self.zeros {
            acc *= tau(a.value(), z);
        }
        acc
    }

    /// Evaluate on the closed disc.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > 1.0 + 1e-9 {
            return Err(Error::domain("Blaschke products are evaluated on |z| <= 1"));
        }
        Ok(self.eval_raw(z))
    }

    /// Boundary samples at the `n`-th roots of unity.
    pub fn eval_grid(&self, n: usize) -> Result<BoundaryGrid> {
        BoundaryGrid::from_fn(n, |t| self.eval_raw(Complex64::from_polar(1.0, t)))
    }

    /// Taylor coefficients `c_0..c_n` at the origin.
    pub fn taylor(&self, n: usize) -> Vec<Complex64> {
        let terms = n + 1;
        let mut acc = alloc::vec![Complex64::new(0.0, 0.0); terms];
        acc[0] = self.c;
        for a in &self.zeros {
            let a = a.value();
            // (a - z) * (1 - ā z)^{-1}, truncated
            let den = [ONE, -a.conj()];
            let rec = series::recip_trunc(&den, terms).expect("1 - āz has nonzero constant term");
            let num = [a, -ONE];
            let factor = series::mul_trunc(&num, &rec, terms);
            acc = series::mul_trunc(&acc, &factor, terms);
        }
        acc
    }

    /// `ζ B'(ζ)/B(ζ) = Σ_k (1-|a_k|²)/|ζ-a_k|²` on the boundary: real and
    /// strictly positive.
    pub fn log_derivative_boundary(&self, zeta: Complex64) -> Result<f64> {
        if fabs(zeta.norm() - 1.0) > 1e-9 {
            return Err(Error::domain("log derivative is a boundary quantity"));
        }
        if self.zeros.is_empty() {
            return Err(Error::precondition(
                "log derivative of a constant product is degenerate",
            ));
        }
        let mut sum = 0.0;
        for a in &self.zeros {
            let a = a.value();
            sum += (1.0 - a.norm_sqr()) / (zeta - a).norm_sqr();
        }
        Ok(sum)
    }

    /// The `n` simple unimodular solutions of `B(z) = γ`, sorted by argument.
    pub fn solve_level_set(&self, gamma: Complex64) -> Result<Vec<Complex64>> {
        if fabs(gamma.norm() - 1.0) > 1e-9 {
            return Err(Error::domain("level-set target must be unimodular"));
        }
        if self.zeros.is_empty() {
            return Err(Error::precondition("level set of a constant product is degenerate"));
        }
        let mut roots = self.solve_equals(gamma)?;
        let mut worst = 0.0f64;
        for z in &roots {
            worst = worst.max(fabs(z.norm() - 1.0));
            worst = worst.max((self.eval_raw(*z) - gamma).norm());
        }
        if worst > 1e-10 {
            return Err(Error::numerical("level-set roots failed to converge", Some(worst)));
        }
        roots.sort_by(|a, b| {
            atan2(a.im, a.re)
                .partial_cmp(&atan2(b.im, b.re))
                .expect("finite arguments")
        });
        Ok(roots)
    }

    /// Solutions of `B(z) = w` via the polynomial `c·P - w·Q` with
    /// `P = Π(a_k - z)`, `Q = Π(1 - ā_k z)`, Newton-polished against the
    /// same polynomial.
    fn solve_equals(&self, w: Complex64) -> Result<Vec<Complex64>> {
        let zs: Vec<Complex64> = self.zeros.iter().map(|a| a.value()).collect();
        // P = Π(a_k - z) = (-1)^n Π(z - a_k)
        let mut p = poly::from_roots(&zs);
        if self.degree() % 2 == 1 {
            for co in &mut p {
                *co = -*co;
            }
        }
        // Q = Π(1 - ā_k z): roots 1/ā_k omitted for a_k = 0 (factor is 1)
        let mut q = alloc::vec![ONE];
        for a in &zs {
            q = poly::mul(&q, &[ONE, -a.conj()]);
        }
        let n = self.degree();
        let mut r = alloc::vec![Complex64::new(0.0, 0.0); n + 1];
        for (j, co) in r.iter_mut().enumerate() {
            *co = self.c * p.get(j).copied().unwrap_or_default()
                - w * q.get(j).copied().unwrap_or_default();
        }
        let mut roots = poly::roots(&r)?;
        for z in &mut roots {
            for _ in 0..3 {
                let (val, der) = poly::horner2(&r, *z);
                if der.norm() > 1e-300 {
                    *z -= val / der;
                }
            }
        }
        if roots.len() != n {
            return Err(Error::numerical(
                alloc::format!(
                    "expected {n} roots of the level polynomial, found {}",
                    roots.len()
                ),
                None,
            ));
        }
        Ok(roots)
    }

    /// Partial-fraction data for `1/(1 - γ̄ B)`: the level-set points `ζ_k` of
    /// `B = γ` with weights `c_k = B(ζ_k)/(ζ_k B'(ζ_k)) = 1/L(ζ_k) > 0`, so
    /// that `1/(1-γ̄B(z)) = Σ_k c_k/(1-ζ̄_k z)` and `Σ_k c_k = 1`.
    pub fn partial_fractions(&self, gamma: Complex64) -> Result<Vec<(Complex64, f64)>> {
        let at_origin = self.zeros.iter().any(|a| a.value().norm() < 1e-13);
        if !at_origin {
            return Err(Error::precondition("partial fractions require B(0) = 0"));
        }
        let roots = self.solve_level_set(gamma)?;
        roots
            .into_iter()
            .map(|zeta| {
                let l = self.log_derivative_boundary(zeta)?;
                Ok((zeta, 1.0 / l))
            })
            .collect()
    }
}

/// A quotient `numerator/denominator` of finite Blaschke products, evaluated
/// on the boundary (where the denominator cannot vanish).
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeQuotient {
    pub numerator: FiniteBlaschkeProduct,
    pub denominator: FiniteBlaschkeProduct,
}

impl BlaschkeQuotient {
    pub fn eval_boundary(&self, zeta: Complex64) -> Result<Complex64> {
        if fabs(zeta.norm() - 1.0) > 1e-9 {
            return Err(Error::domain("Blaschke quotients are evaluated on the boundary"));
        }
        Ok(self.numerator.eval_raw(zeta) / self.denominator.eval_raw(zeta))
    }

    pub fn eval_grid(&self, n: usize) -> Result<BoundaryGrid> {
        BoundaryGrid::from_fn(n, |t| {
            let zeta = Complex64::from_polar(1.0, t);
            self.numerator.eval_raw(zeta) / self.denominator.eval_raw(zeta)
        })
    }
}

/// Boundary probe avoiding the directions of the given points: the candidate
/// root of unity maximizing the distance to the nearest point.
fn probe_point(avoid: &[Complex64]) -> Complex64 {
    let mut best = Complex64::new(1.0, 0.0);
    let mut best_d = -1.0f64;
    for j in 0..17 {
        let zeta = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 17.0);
        let d = avoid
            .iter()
            .map(|a| (zeta - a).norm())
            .fold(f64::INFINITY, f64::min);
        if d > best_d {
            best_d = d;
            best = zeta;
        }
    }
    best
}

/// `τ_w ∘ B` as a finite Blaschke product of the same degree: its zeros are
/// the interior solutions of `B(z) = w`, and the constant is fixed by a
/// boundary probe.
pub fn compose_mobius(w: DiscPoint, b: &FiniteBlaschkeProduct) -> Result<FiniteBlaschkeProduct> {
    if b.degree() == 0 {
        return FiniteBlaschkeProduct::new(tau(w.value(), b.c), Vec::new());
    }
    let roots = b.solve_equals(w.value())?;
    let mut zeros = Vec::with_capacity(roots.len());
    for z in &roots {
        zeros.push(DiscPoint::new(*z).map_err(|_| {
            Error::numerical("interior level solution escaped the open disc", None)
        })?);
    }
    let zeta = probe_point(&roots);
    let mut denom = ONE;
    for a in &zeros {
        denom *= tau(a.value(), zeta);
    }
    let c = tau(w.value(), b.eval_raw(zeta)) / denom;
    let out = FiniteBlaschkeProduct::new(c, zeros)
        .map_err(|_| Error::numerical("composed constant drifted off the unit circle", None))?;
    Ok(out)
}

fn format_modulus_error(modulus: f64) -> String {
    alloc::format!(
        "trig polynomial has a root with |root| = {modulus:.9}, too close to the unit circle"
    )
}

/// Factor the boundary quotient `p/p*` of a trig polynomial `p` (with
/// `p*(z) = conj(p(1/z̄))`, equal to `conj(p)` on the boundary) as
/// `c · B₁/B₂` for finite Blaschke products `B₁, B₂` and a unimodular `c`
/// (which is also the numerator's stored constant).
///
/// Writing `p(z) = z^{k_min} q(z)` for a polynomial `q` with `q(0) ≠ 0`,
/// `p/p* = z^{k_min+k_max} q/q̃` where `q̃` reflects the roots of `q`:
/// interior roots of `q` become zeros of `B₁`, reflections `1/s̄` of exterior
/// roots become zeros of `B₂`, and the monomial shifts the balance by
/// `k_min + k_max` origin zeros.
pub fn quotient_from_meromorphic(
    p: &FourierCoefficients,
) -> Result<(BlaschkeQuotient, Complex64)> {
    if p.is_empty() {
        return Err(Error::precondition("trig polynomial must not vanish identically"));
    }
    // keep the support exact for the monomial bookkeeping below
    let scale = p.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    let p = p.truncated(1e-12 * scale);
    let k_min = p.support_min().unwrap();
    let k_max = p.support_max().unwrap();
    let deg = (k_max - k_min) as usize;
    let mut q = alloc::vec![Complex64::new(0.0, 0.0); deg + 1];
    for (k, v) in p.iter() {
        q[(k - k_min) as usize] = v;
    }
    let roots = if deg == 0 { Vec::new() } else { poly::roots(&q)? };

    let mut inside: Vec<DiscPoint> = Vec::new();
    let mut reflected: Vec<DiscPoint> = Vec::new();
    for r in &roots {
        let m = r.norm();
        if fabs(m - 1.0) < 1e-6 {
            return Err(Error::precondition(format_modulus_error(m)));
        }
        if m < 1.0 {
            inside.push(DiscPoint::new(*r).expect("checked interior"));
        } else {
            reflected.push(DiscPoint::new(r.conj().inv()).expect("reflection is interior"));
        }
    }
    let shift = k_min + k_max;
    let origin = DiscPoint::new(Complex64::new(0.0, 0.0)).unwrap();
    if shift > 0 {
        inside.extend(core::iter::repeat_n(origin, shift as usize));
    } else {
        reflected.extend(core::iter::repeat_n(origin, (-shift) as usize));
    }

    let b1 = FiniteBlaschkeProduct { c: ONE, zeros: inside };
    let b2 = FiniteBlaschkeProduct { c: ONE, zeros: reflected };
    let avoid: Vec<Complex64> = b1
        .zeros
        .iter()
        .chain(b2.zeros.iter())
        .map(|a| a.value())
        .collect();
    let zeta = probe_point(&avoid);
    let pv = p.eval(atan2(zeta.im, zeta.re));
    let target = pv / pv.conj();
    let c = target * b2.eval_raw(zeta) / b1.eval_raw(zeta);
    if fabs(c.norm() - 1.0) > 1e-8 {
        return Err(Error::numerical(
            "quotient constant drifted off the unit circle",
            Some(fabs(c.norm() - 1.0)),
        ));
    }
    let numerator = FiniteBlaschkeProduct::new(c, b1.zeros)?;
    let c = numerator.constant();
    Ok((BlaschkeQuotient { numerator, denominator: b2 }, c))
}
