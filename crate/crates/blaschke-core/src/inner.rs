//! Inner functions with atomic singular parts, the radial log-mean Blaschke
//! criterion, Frostman shifts, and approximation of inner functions by
//! Blaschke products.
//!
//! Masses follow the un-normalized boundary integral convention: the radial
//! limit of `∫₀^{2π} log|φ(re^{iθ})| dθ` is `-σ(𝕋)` with `σ(𝕋) = Σ m_j`.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::{log, sqrt};
use num_complex::Complex64;

use crate::blaschke::FiniteBlaschkeProduct;
use crate::disc::{tau, DiscPoint};
use crate::error::{Error, Result};
use crate::fft::next_power_of_two;

/// One point mass of the singular measure: angle in `[0, 2π)`, mass `> 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub theta: f64,
    pub mass: f64,
}

/// `φ = B · S_σ` with a finite Blaschke product `B` and an atomic singular
/// measure `σ = Σ m_j δ_{θ_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerFunction {
    blaschke: FiniteBlaschkeProduct,
    atoms: Vec<Atom>,
}

impl InnerFunction {
    pub fn new(blaschke: FiniteBlaschkeProduct, atoms: Vec<Atom>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(atoms.len());
        for a in atoms {
            if !(a.mass > 0.0) || !a.mass.is_finite() || !a.theta.is_finite() {
                return Err(Error::precondition("atoms need finite angle and positive mass"));
            }
            let wrapped = a.theta % (2.0 * PI);
            let theta = if wrapped < 0.0 { wrapped + 2.0 * PI } else { wrapped };
            normalized.push(Atom { theta, mass: a.mass });
        }
        Ok(InnerFunction { blaschke, atoms: normalized })
    }

    pub fn blaschke(&self) -> &FiniteBlaschkeProduct {
        &self.blaschke
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }
}

/// `B(z) · exp(-(1/2π) Σ_j m_j (e^{iθ_j}+z)/(e^{iθ_j}-z))` on the open disc.
pub fn evaluate_inner(phi: &InnerFunction, z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::domain("inner functions are evaluated strictly inside the disc"));
    }
    Ok(eval_inner_raw(phi, z))
}

fn eval_inner_raw(phi: &InnerFunction, z: Complex64) -> Complex64 {
    let mut exponent = Complex64::new(0.0, 0.0);
    for a in &phi.atoms {
        let zeta = Complex64::from_polar(1.0, a.theta);
        exponent -= a.mass / (2.0 * PI) * ((zeta + z) / (zeta - z));
    }
    phi.blaschke.eval_raw(z) * exponent.exp()
}

/// Inner function given either directly or as a chain of Frostman shifts
/// `τ_w ∘ (…)`. Shifts compose structurally so that shifted functions stay
/// evaluable (and their log-moduli stay finite) near the boundary.
#[derive(Debug, Clone, PartialEq)]
pub enum InnerEvaluator {
    Plain(InnerFunction),
    Shifted { w: DiscPoint, inner: Box<InnerEvaluator> },
}

impl InnerEvaluator {
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() >= 1.0 {
            return Err(Error::domain("inner functions are evaluated strictly inside the disc"));
        }
        Ok(self.eval_raw(z))
    }

    fn eval_raw(&self, z: Complex64) -> Complex64 {
        match self {
            InnerEvaluator::Plain(phi) => eval_inner_raw(phi, z),
            // an underflowing inner value is harmless here: τ_w(0) = w
            InnerEvaluator::Shifted { w, inner } => tau(w.value(), inner.eval_raw(z)),
        }
    }

    /// `log|self(z)|`, or `None` on a zero. For a plain inner function this
    /// is evaluated in log space, which stays finite where a direct
    /// evaluation would underflow (the singular factor decays like
    /// `exp(-c/(1-r))` near an atom).
    fn log_modulus(&self, z: Complex64) -> Option<f64> {
        match self {
            InnerEvaluator::Plain(phi) => {
                let mut acc = 0.0f64;
                for a in phi.blaschke.zeros() {
                    let a = a.value();
                    let num = (a - z).norm();
                    if num == 0.0 {
                        return None;
                    }
                    acc += log(num) - log((Complex64::new(1.0, 0.0) - a.conj() * z).norm());
                }
                let z2 = z.norm_sqr();
                for a in &phi.atoms {
                    let zeta = Complex64::from_polar(1.0, a.theta);
                    acc -= a.mass / (2.0 * PI) * (1.0 - z2) / (zeta - z).norm_sqr();
                }
                Some(acc)
            }
            InnerEvaluator::Shifted { .. } => {
                let v = self.eval_raw(z).norm();
                if v == 0.0 {
                    None
                } else {
                    Some(log(v))
                }
            }
        }
    }
}

/// `τ_w ∘ φ`.
pub fn frostman_shift(phi: &InnerEvaluator, w: DiscPoint) -> InnerEvaluator {
    InnerEvaluator::Shifted { w, inner: Box::new(phi.clone()) }
}

/// Trapezoid value of `∫₀^{2π} log|φ(re^{iθ})| dθ` on a uniform angle grid.
/// A node landing on a zero of `φ` is perturbed by half a grid step.
pub fn radial_log_mean(phi: &InnerEvaluator, r: f64, grid_n: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::domain("radius must lie in [0, 1)"));
    }
    if grid_n < 256 {
        return Err(Error::precondition("log-mean grid must have at least 256 nodes"));
    }
    let step = 2.0 * PI / grid_n as f64;
    let mut sum = 0.0f64;
    for j in 0..grid_n {
        let mut theta = j as f64 * step;
        let mut val = phi.log_modulus(Complex64::from_polar(r, theta));
        if val.is_none() {
            theta += 0.5 * step;
            val = phi.log_modulus(Complex64::from_polar(r, theta));
        }
        // ln(1e-300): only reachable through a doubly degenerate node
        sum += val.unwrap_or(-690.0);
    }
    Ok(sum * step)
}

/// Angle-grid size making the trapezoid alias error of a Poisson-type kernel
/// at radius `r` negligible (the error decays like `r^n`).
pub fn grid_for(r: f64) -> usize {
    let want = 16.0 / (1.0 - r).max(1e-5);
    next_power_of_two(want as usize).clamp(4096, 1 << 17)
}

pub const DEFAULT_R_LADDER: [f64; 4] = [0.9, 0.99, 0.999, 0.9999];

/// Blaschke-ness criterion: the radial limit of the log-mean is 0 exactly
/// for Blaschke products and `-σ(𝕋)` otherwise. The limit is extrapolated
/// from the last three ladder rungs by an exact fit in the basis
/// `{1, √(1-r), 1-r}` (the log-mean of shifted inner functions approaches
/// its limit like `√(1-r)`). Returns `(estimatedMass ≤ tol, estimatedMass)`.
pub fn is_blaschke_test(
    phi: &InnerEvaluator,
    r_ladder: &[f64],
    tol: f64,
) -> Result<(bool, f64)> {
    if r_ladder.len() < 3 {
        return Err(Error::precondition("the radius ladder needs at least three rungs"));
    }
    for w in r_ladder.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::precondition("the radius ladder must increase strictly"));
        }
    }
    if !(*r_ladder.last().unwrap() < 1.0) || r_ladder[0] <= 0.0 {
        return Err(Error::precondition("ladder radii must lie in (0, 1)"));
    }
    let k = r_ladder.len();
    let mut s = [0.0f64; 3];
    let mut y = [0.0f64; 3];
    for (i, &r) in r_ladder[k - 3..].iter().enumerate() {
        s[i] = sqrt(1.0 - r);
        y[i] = radial_log_mean(phi, r, grid_for(r))?;
    }
    // exact quadratic in s through the three samples, evaluated at s = 0
    let l0 = s[1] * s[2] / ((s[0] - s[1]) * (s[0] - s[2]));
    let l1 = s[0] * s[2] / ((s[1] - s[0]) * (s[1] - s[2]));
    let l2 = s[0] * s[1] / ((s[2] - s[0]) * (s[2] - s[1]));
    let limit = l0 * y[0] + l1 * y[1] + l2 * y[2];
    let mass = (-limit).max(0.0);
    Ok((mass <= tol, mass))
}

/// Certificate attached to [`frostman_approximate`]: the shift `w = ρe^{iθ}`
/// used, the proof bound `2ρ/(1-ρ)`, the estimated residual singular mass of
/// the shifted function, and the measured disc-grid sup error.
#[derive(Debug, Clone, PartialEq)]
pub struct FrostmanCertificate {
    pub w: DiscPoint,
    pub bound: f64,
    pub residual_mass: f64,
    pub achieved: f64,
}

/// Approximate an inner function by a Blaschke product within `eps`:
/// `B = -φ_w` for a Frostman shift `w = ρe^{iθ}` with `2ρ/(1-ρ) < eps` and a
/// shift angle at which the shifted function passes the Blaschke test (the
/// exceptional angle set has measure zero, so a modest scan finds one).
pub fn frostman_approximate(
    phi: &InnerEvaluator,
    eps: f64,
) -> Result<(InnerEvaluator, FrostmanCertificate)> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::precondition("tolerance must lie in (0, 1]"));
    }
    let rho = 0.9 * eps / (2.0 + eps);
    let bound = 2.0 * rho / (1.0 - rho);
    debug_assert!(bound < eps);
    let (_, base_mass) = is_blaschke_test(phi, &DEFAULT_R_LADDER, f64::INFINITY)?;
    let tol = 1e-2 * (1.0 + base_mass);

    // 64 even angles, then a golden-angle restart: only a measure-zero angle
    // set can fail the Blaschke test
    let golden = 0.618_033_988_749_894_9_f64;
    let candidates = (0..64)
        .map(|j| 2.0 * PI * j as f64 / 64.0)
        .chain((0..64).map(|j| 2.0 * PI * ((j as f64 + 0.5) * golden % 1.0)));
    for theta in candidates {
        let w = DiscPoint::new(Complex64::from_polar(rho, theta)).expect("ρ < 1");
        let shifted = frostman_shift(phi, w);
        let (passes, residual_mass) = is_blaschke_test(&shifted, &DEFAULT_R_LADDER, tol)?;
        if !passes {
            continue;
        }
        // B = -φ_w, realized as τ_0 ∘ τ_w ∘ φ
        let b = frostman_shift(&shifted, DiscPoint::new(Complex64::new(0.0, 0.0)).unwrap());
        let mut achieved = 0.0f64;
        for &r in &[0.3, 0.7, 0.95, 0.999] {
            for j in 0..128 {
                let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / 128.0);
                let err = (phi.eval_raw(z) - b.eval_raw(z)).norm();
                achieved = achieved.max(err);
            }
        }
        if achieved > bound + 1e-9 {
            return Err(Error::numerical(
                "shift error exceeded the proof bound",
                Some(achieved),
            ));
        }
        return Ok((b, FrostmanCertificate { w, bound, residual_mass, achieved }));
    }
    Err(Error::resolution(
        "no shift angle passed the Blaschke test; refine the radius ladder or grid",
    ))
}
