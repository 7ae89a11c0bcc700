//! Coefficient-matching Blaschke approximants (Carathéodory/Schur recursion)
//! and exact convex decompositions of dilated Blaschke products into finite
//! Blaschke products.

use alloc::vec::Vec;
use libm::fabs;
use num_complex::Complex64;

use crate::blaschke::{compose_mobius, FiniteBlaschkeProduct};
use crate::disc::DiscPoint;
use crate::error::{Error, Result};
use crate::grid::BoundaryGrid;
use crate::series;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Taylor coefficients `c_0..c_N` of a function at the origin. Whether the
/// function lies in the closed unit ball is the caller's contract; it is
/// certified only where an operation states so.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
}

impl TaylorSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::precondition("a Taylor series needs at least c_0"));
        }
        Ok(TaylorSeries { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Highest represented order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Partial-sum evaluation (no tail control; used for interior samples).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        crate::poly::horner(&self.coeffs, z)
    }
}

/// Finite convex combination: nonnegative weights summing to 1 and one item
/// per weight.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexCombination<T> {
    weights: Vec<f64>,
    items: Vec<T>,
}

impl<T> ConvexCombination<T> {
    pub fn new(weights: Vec<f64>, items: Vec<T>) -> Result<Self> {
        if weights.is_empty() || weights.len() != items.len() {
            return Err(Error::precondition(
                "a convex combination needs matching, nonempty weights and items",
            ));
        }
        if weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
            return Err(Error::precondition("convex weights must be nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if fabs(total - 1.0) > 1e-12 {
            return Err(Error::precondition("convex weights must sum to 1"));
        }
        Ok(ConvexCombination { weights, items })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn items(&self) -> &[T] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &T)> + '_ {
        self.weights.iter().copied().zip(self.items.iter())
    }
}

impl ConvexCombination<FiniteBlaschkeProduct> {
    /// Weighted sum of the item values at `z`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, b) in self.iter() {
            acc += w * b.evaluate(z)?;
        }
        Ok(acc)
    }

    pub fn eval_grid(&self, n: usize) -> Result<BoundaryGrid> {
        let values = BoundaryGrid::from_fn(n, |t| {
            let zeta = Complex64::from_polar(1.0, t);
            let mut acc = Complex64::new(0.0, 0.0);
            for (w, b) in self.iter() {
                acc += w * b.eval_raw(zeta);
            }
            acc
        })?;
        Ok(values)
    }
}

/// One Schur step: given `f = c_0 + c_1 z + …` with `|c_0| < 1`, return the
/// coefficients of `g = τ_{c_0}(f)/z` through order `N-1`. The constant term
/// of `τ_{c_0}(f)` vanishes identically, so the division is exact;
/// `g_0 = -c_1/(1-|c_0|²)`.
pub fn caratheodory_step(f: &TaylorSeries) -> Result<TaylorSeries> {
    let c0 = f.coeff(0);
    if c0.norm() >= 1.0 {
        return Err(Error::precondition(
            "Schur step needs |c_0| < 1; a unimodular constant term means f is constant",
        ));
    }
    if f.order() < 1 {
        return Err(Error::precondition("Schur step needs at least order 1"));
    }
    let composed = series::mobius_of_series(c0, f.coeffs(), f.order() + 1)?;
    TaylorSeries::new(composed[1..].to_vec())
}

/// The degree-`n+1` Blaschke product whose Taylor coefficients match
/// `c_0..c_n`, built by the recursion `B_n = τ_{c_0}(z·B_{n-1,g})` with
/// `g = τ_{c_0}(f)/z`; base case `B_0 = -τ_{-c_0}`. If `|c_0|` is within
/// 1e-13 of 1 the function is a unimodular constant and is returned as the
/// degree-0 product.
pub fn caratheodory_approximant(f: &TaylorSeries, n: usize) -> Result<FiniteBlaschkeProduct> {
    if n > f.order() {
        return Err(Error::precondition(
            "approximant order exceeds the available Taylor data",
        ));
    }
    let c0 = f.coeff(0);
    if c0.norm() >= 1.0 - 1e-13 {
        return FiniteBlaschkeProduct::new(c0 / c0.norm(), Vec::new());
    }
    if n == 0 {
        // B_0 = -τ_{-c_0} = (c_0 + z)/(1 + c̄_0 z)
        let zero = DiscPoint::new(-c0).expect("|c_0| < 1");
        return FiniteBlaschkeProduct::new(-ONE, alloc::vec![zero]);
    }
    let g = caratheodory_step(f)?;
    let inner = caratheodory_approximant(&g, n - 1)?.times_z();
    compose_mobius(DiscPoint::new(c0).expect("|c_0| < 1"), &inner)
}

/// The four-term convex decomposition of one dilated Blaschke factor
/// `z ↦ (α - tz)/(1 - ᾱtz)`: the factor with zero `αt`, the constant
/// `e^{i arg α}`, and the constants `+1`, `-1` with equal padding weights
/// (always four terms, in that order, even when weights vanish).
pub fn fisher_decompose_factor(
    alpha: DiscPoint,
    t: f64,
) -> Result<ConvexCombination<FiniteBlaschkeProduct>> {
    let (w1, u, w3) = factor_terms(alpha, t)?;
    let a = alpha.value();
    let phase = if a.norm() > 0.0 { a / a.norm() } else { ONE };
    let dilated = DiscPoint::new(a * t).expect("|αt| < 1");
    let items = alloc::vec![
        FiniteBlaschkeProduct::new(ONE, alloc::vec![dilated])?,
        FiniteBlaschkeProduct::new(phase, Vec::new())?,
        FiniteBlaschkeProduct::new(ONE, Vec::new())?,
        FiniteBlaschkeProduct::new(-ONE, Vec::new())?,
    ];
    ConvexCombination::new(alloc::vec![w1, u.norm(), w3, w3], items)
}

/// Weights of one factor: `w1` on the dilated factor, the complex constant
/// `u = w2·e^{i arg α}`, and the `±1` padding weight `w3`. The identity
/// `(α-tz)/(1-ᾱtz) = w1·(αt-z)/(1-ᾱtz·t/t) + u` is exact, and
/// `w1 + |u| + 2w3 = 1` in closed form.
fn factor_terms(alpha: DiscPoint, t: f64) -> Result<(f64, Complex64, f64)> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::precondition("dilation parameter must lie in (0, 1]"));
    }
    let a = alpha.value();
    let m = a.norm();
    let den = 1.0 - m * m * t * t;
    let w1 = t * (1.0 - m * m) / den;
    let w2 = m * (1.0 - t * t) / den;
    let phase = if m > 0.0 { a / m } else { ONE };
    let w3 = (1.0 - t) * (1.0 - m) / (2.0 * (1.0 + m * t));
    Ok((w1, phase * w2, w3))
}

pub const DEFAULT_FISHER_ITEM_CAP: usize = 65536;

/// [`fisher_decompose_product`] with the default item cap.
pub fn fisher_decompose_product(
    b: &FiniteBlaschkeProduct,
    t: f64,
) -> Result<ConvexCombination<FiniteBlaschkeProduct>> {
    fisher_decompose_product_with_cap(b, t, DEFAULT_FISHER_ITEM_CAP)
}

/// Exact convex decomposition of the dilation `z ↦ B(tz)` into finite
/// Blaschke products.
///
/// Per factor, `b_α(tz) = w1·b_{αt}(z) + u` after the `±1` padding cancels;
/// multiplying out over the factor subsets `S` gives
/// `B(tz) = Σ_S γ_S Π_{k∈S} b_{α_k t}` with `γ_S = c·Π_S w1·Π_{S^c} u`.
/// Each subset becomes one item (constant `γ_S/|γ_S|`, weight `|γ_S|`), and
/// the weight deficit `1 - Σ|γ_S| ≥ 0` is split over the constants `±1`.
/// Zero-weight subsets are skipped, so the item count is at most
/// `2^degree + 2`.
pub fn fisher_decompose_product_with_cap(
    b: &FiniteBlaschkeProduct,
    t: f64,
    cap: usize,
) -> Result<ConvexCombination<FiniteBlaschkeProduct>> {
    let deg = b.degree();
    if deg == 0 {
        let (w1, _, _) = factor_terms(DiscPoint::new(Complex64::new(0.0, 0.0)).unwrap(), t)?;
        debug_assert!(w1 > 0.0);
        return ConvexCombination::new(alloc::vec![1.0], alloc::vec![b.clone()]);
    }
    if deg >= usize::BITS as usize - 1 || (1usize << deg) + 2 > cap {
        return Err(Error::capacity(
            alloc::format!("subset expansion of a degree-{deg} product exceeds the item cap {cap}"),
            None,
        ));
    }
    let mut w1s = Vec::with_capacity(deg);
    let mut us = Vec::with_capacity(deg);
    let mut dilated = Vec::with_capacity(deg);
    for a in b.zeros() {
        let (w1, u, _) = factor_terms(*a, t)?;
        w1s.push(w1);
        us.push(u);
        dilated.push(DiscPoint::new(a.value() * t).expect("|αt| < 1"));
    }
    let mut weights: Vec<f64> = Vec::new();
    let mut items: Vec<FiniteBlaschkeProduct> = Vec::new();
    let mut covered = 0.0f64;
    for mask in 0..(1usize << deg) {
        let mut gamma = b.constant();
        let mut zeros = Vec::new();
        for k in 0..deg {
            if mask & (1 << k) != 0 {
                gamma *= w1s[k];
                zeros.push(dilated[k]);
            } else {
                gamma *= us[k];
            }
        }
        let lambda = gamma.norm();
        if lambda == 0.0 {
            continue;
        }
        covered += lambda;
        weights.push(lambda);
        items.push(FiniteBlaschkeProduct::new(gamma / lambda, zeros)?);
    }
    let deficit = (1.0 - covered).max(0.0);
    if deficit > 0.0 {
        weights.push(deficit / 2.0);
        items.push(FiniteBlaschkeProduct::new(ONE, Vec::new())?);
        weights.push(deficit / 2.0);
        items.push(FiniteBlaschkeProduct::new(-ONE, Vec::new())?);
    }
    ConvexCombination::new(weights, items)
}

/// Certificate attached to [`fisher_approximate`]: the dilation `t` and
/// matching order used, the requested tolerance, and the certified sup error
/// of the returned combination over the input grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FisherCertificate {
    pub t: f64,
    pub order: usize,
    pub requested: f64,
    pub achieved: f64,
}

const T_LADDER: [f64; 9] = [1.0, 0.99, 0.95, 0.9, 0.85, 0.8, 0.7, 0.6, 0.5];

/// Approximate a continuous `f` in the closed unit ball (given by its Taylor
/// coefficients and boundary samples) by a convex combination of finite
/// Blaschke products with certified grid sup error `< eps`.
///
/// The scan picks a matching order `n` and a dilation `t` so that `B_n(tζ)`
/// tracks `f(ζ)` within the budget (`|f - B_n(tz)| ≤ ω_f(1-t) + 2t^n`), then
/// decomposes the dilation exactly and certifies the combination itself by
/// summation on the grid.
pub fn fisher_approximate(
    f: &TaylorSeries,
    boundary: &BoundaryGrid,
    eps: f64,
) -> Result<(ConvexCombination<FiniteBlaschkeProduct>, FisherCertificate)> {
    if !(eps > 0.0) {
        return Err(Error::precondition("tolerance must be positive"));
    }
    let sup = boundary.max_modulus();
    if sup > 1.0 + 1e-9 {
        return Err(Error::precondition("f must lie in the closed unit ball"));
    }
    // f vanishing identically: ±1 with equal weights is exact
    if sup < eps * 1e-3 {
        let combo = ConvexCombination::new(
            alloc::vec![0.5, 0.5],
            alloc::vec![
                FiniteBlaschkeProduct::new(ONE, Vec::new())?,
                FiniteBlaschkeProduct::new(-ONE, Vec::new())?,
            ],
        )?;
        let cert = FisherCertificate { t: 1.0, order: 0, requested: eps, achieved: sup };
        return Ok((combo, cert));
    }

    let n_grid = boundary.n();
    let max_order = f.order().min(14);
    let mut approximants: Vec<FiniteBlaschkeProduct> = Vec::with_capacity(max_order + 1);
    for n in 0..=max_order {
        approximants.push(caratheodory_approximant(f, n)?);
    }

    let sup_error = |b: &FiniteBlaschkeProduct, t: f64| -> f64 {
        let mut worst = 0.0f64;
        for j in 0..n_grid {
            let zeta = boundary.point(j);
            let err = (boundary.values()[j] - b.eval_raw(t * zeta)).norm();
            worst = worst.max(err);
        }
        worst
    };

    // exact recovery: f may already be a finite Blaschke product
    for (n, b) in approximants.iter().enumerate() {
        if sup_error(b, 1.0) <= 1e-10 {
            let combo = fisher_decompose_product(b, 1.0)?;
            let achieved = certified_error(&combo, boundary)?;
            let cert = FisherCertificate { t: 1.0, order: n, requested: eps, achieved };
            return Ok((combo, cert));
        }
    }

    let mut best = f64::INFINITY;
    for (n, b) in approximants.iter().enumerate() {
        for &t in &T_LADDER {
            let pre = sup_error(b, t);
            best = best.min(pre);
            if pre < eps * 0.999 {
                let combo = fisher_decompose_product(b, t)?;
                let achieved = certified_error(&combo, boundary)?;
                if achieved < eps {
                    let cert = FisherCertificate { t, order: n, requested: eps, achieved };
                    return Ok((combo, cert));
                }
                best = best.min(achieved);
            }
        }
    }
    Err(Error::capacity(
        "no (order, dilation) pair certified the requested tolerance",
        Some(best),
    ))
}

/// Honest certification: sum the combination items on the grid.
fn certified_error(
    combo: &ConvexCombination<FiniteBlaschkeProduct>,
    boundary: &BoundaryGrid,
) -> Result<f64> {
    let approx = combo.eval_grid(boundary.n())?;
    Ok(boundary.sup_distance(&approx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use libm::exp;

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!((a - b).norm() < tol, "{a} vs {b}");
    }

    /// Taylor coefficients of e^{z-1}: e^{-1}/k!.
    fn exp_shift_series(order: usize) -> TaylorSeries {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = exp(-1.0);
        for k in 0..=order {
            if k > 0 {
                term /= k as f64;
            }
            coeffs.push(Complex64::new(term, 0.0));
        }
        TaylorSeries::new(coeffs).unwrap()
    }

    fn exp_shift_grid(n: usize) -> BoundaryGrid {
        BoundaryGrid::from_fn(n, |t| (Complex64::from_polar(1.0, t) - ONE).exp()).unwrap()
    }

    #[test]
    fn step_known_values() {
        let zero = TaylorSeries::new(alloc::vec![Complex64::default(); 4]).unwrap();
        let g = caratheodory_step(&zero).unwrap();
        assert!(g.coeffs().iter().all(|c| c.norm() == 0.0));

        // f(z) = z: τ_0(f)/z = -1
        let f = TaylorSeries::new(alloc::vec![Complex64::default(), ONE, Complex64::default()])
            .unwrap();
        let g = caratheodory_step(&f).unwrap();
        assert_close(g.coeff(0), -ONE, 1e-15);

        let f = TaylorSeries::new(alloc::vec![
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.2, 0.4),
            Complex64::new(0.05, 0.0),
        ])
        .unwrap();
        let g = caratheodory_step(&f).unwrap();
        let c0 = Complex64::new(0.3, 0.1);
        let expect = -Complex64::new(-0.2, 0.4) / (1.0 - c0.norm_sqr());
        assert_close(g.coeff(0), expect, 1e-14);
    }

    #[test]
    fn approximant_base_case() {
        let f = TaylorSeries::new(alloc::vec![Complex64::new(0.3, 0.1), ONE]).unwrap();
        let b0 = caratheodory_approximant(&f, 0).unwrap();
        assert_eq!(b0.degree(), 1);
        let c0 = Complex64::new(0.3, 0.1);
        assert_close(b0.evaluate(Complex64::default()).unwrap(), c0, 1e-14);
        for k in 0..8 {
            let z = Complex64::from_polar(0.7, k as f64);
            let expect = (c0 + z) / (ONE + c0.conj() * z);
            assert_close(b0.evaluate(z).unwrap(), expect, 1e-13);
        }
    }

    #[test]
    fn approximant_matches_coefficients() {
        let f = exp_shift_series(20);
        for n in [1usize, 3, 6] {
            let b = caratheodory_approximant(&f, n).unwrap();
            assert_eq!(b.degree(), n + 1);
            let taylor = b.taylor(n);
            for k in 0..=n {
                assert!(
                    (taylor[k] - f.coeff(k)).norm() < 1e-9,
                    "order {n}, coefficient {k}: {} vs {}",
                    taylor[k],
                    f.coeff(k)
                );
            }
        }
    }

    #[test]
    fn approximant_schwarz_bound() {
        let f = exp_shift_series(20);
        let b6 = caratheodory_approximant(&f, 6).unwrap();
        let r = 0.6;
        let mut worst = 0.0f64;
        for j in 0..512 {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / 512.0);
            let fv = (z - ONE).exp();
            worst = worst.max((fv - b6.evaluate(z).unwrap()).norm());
        }
        assert!(worst <= 2.0 * libm::pow(r, 6.0), "sup {worst}");
    }

    #[test]
    fn approximant_unimodular_constant_input() {
        let f = TaylorSeries::new(alloc::vec![Complex64::from_polar(1.0, 0.8), ONE]).unwrap();
        let b = caratheodory_approximant(&f, 1).unwrap();
        assert_eq!(b.degree(), 0);
        assert_close(b.constant(), Complex64::from_polar(1.0, 0.8), 1e-13);
    }

    #[test]
    fn factor_weights_example() {
        let alpha = DiscPoint::new(Complex64::new(0.5, 0.0)).unwrap();
        let combo = fisher_decompose_factor(alpha, 0.5).unwrap();
        let w = combo.weights();
        assert_eq!(combo.len(), 4);
        assert!(fabs(w[0] - 0.4) < 1e-14);
        assert!(fabs(w[1] - 0.4) < 1e-14);
        assert!(fabs(w[2] - 0.1) < 1e-14);
        assert!(fabs(w[3] - 0.1) < 1e-14);
        let mut worst = 0.0f64;
        for j in 0..256 {
            let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 256.0);
            let target = (0.5 - 0.5 * z) / (ONE - 0.25 * z);
            worst = worst.max((combo.evaluate(z).unwrap() - target).norm());
        }
        assert!(worst < 1e-12, "identity residual {worst}");
    }

    #[test]
    fn factor_degenerate_parameters() {
        let alpha = DiscPoint::new(Complex64::new(0.3, -0.2)).unwrap();
        let combo = fisher_decompose_factor(alpha, 1.0).unwrap();
        assert!(fabs(combo.weights()[0] - 1.0) < 1e-14);
        assert!(combo.weights()[1..].iter().all(|w| *w == 0.0));

        let origin = DiscPoint::new(Complex64::default()).unwrap();
        let combo = fisher_decompose_factor(origin, 0.7).unwrap();
        assert!(fabs(combo.weights()[0] - 0.7) < 1e-14);
        assert!(combo.weights()[1] == 0.0);
        assert!(fabs(combo.weights()[2] - 0.15) < 1e-14);

        assert!(fisher_decompose_factor(alpha, 0.0).is_err());
        assert!(fisher_decompose_factor(alpha, 1.1).is_err());
    }

    #[test]
    fn product_decomposition_identity() {
        let b = FiniteBlaschkeProduct::new(
            Complex64::from_polar(1.0, 0.7),
            alloc::vec![
                DiscPoint::new(Complex64::new(0.4, 0.2)).unwrap(),
                DiscPoint::new(Complex64::new(-0.3, 0.5)).unwrap(),
                DiscPoint::new(Complex64::new(0.1, -0.6)).unwrap(),
            ],
        )
        .unwrap();
        let t = 0.9;
        let combo = fisher_decompose_product(&b, t).unwrap();
        assert!(combo.len() <= (1 << 3) + 2);
        let total: f64 = combo.weights().iter().sum();
        assert!(fabs(total - 1.0) < 1e-12);
        let mut worst = 0.0f64;
        for j in 0..256 {
            let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 256.0);
            let target = b.eval_raw(t * z);
            worst = worst.max((combo.evaluate(z).unwrap() - target).norm());
        }
        assert!(worst < 1e-10, "identity residual {worst}");
    }

    #[test]
    fn product_degree_zero_and_cap() {
        let c = FiniteBlaschkeProduct::new(Complex64::from_polar(1.0, 2.0), alloc::vec![])
            .unwrap();
        let combo = fisher_decompose_product(&c, 0.5).unwrap();
        assert_eq!(combo.len(), 1);
        assert!(fabs(combo.weights()[0] - 1.0) < 1e-15);

        let big = FiniteBlaschkeProduct::monomial(6);
        assert!(matches!(
            fisher_decompose_product_with_cap(&big, 0.5, 16),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn approximate_zero_function() {
        let f = TaylorSeries::new(alloc::vec![Complex64::default(); 3]).unwrap();
        let grid = BoundaryGrid::from_fn(64, |_| Complex64::default()).unwrap();
        let (combo, cert) = fisher_approximate(&f, &grid, 0.1).unwrap();
        assert_eq!(combo.len(), 2);
        assert_eq!(cert.achieved, 0.0);
        for j in 0..8 {
            let z = Complex64::from_polar(1.0, j as f64);
            assert!(combo.evaluate(z).unwrap().norm() < 1e-15);
        }
    }

    #[test]
    fn approximate_recovers_blaschke_product() {
        let b = FiniteBlaschkeProduct::new(
            Complex64::from_polar(1.0, -0.4),
            alloc::vec![
                DiscPoint::new(Complex64::new(0.5, 0.1)).unwrap(),
                DiscPoint::new(Complex64::new(-0.2, 0.3)).unwrap(),
            ],
        )
        .unwrap();
        let f = TaylorSeries::new(b.taylor(24)).unwrap();
        let grid = b.eval_grid(128).unwrap();
        let (combo, cert) = fisher_approximate(&f, &grid, 0.25).unwrap();
        assert_eq!(cert.t, 1.0);
        assert_eq!(combo.len(), 1);
        assert!(cert.achieved <= 1e-10, "achieved {}", cert.achieved);
        assert!(fabs(combo.weights()[0] - 1.0) < 1e-12);
    }

    #[test]
    fn approximate_exp_shift() {
        let f = exp_shift_series(40);
        let grid = exp_shift_grid(256);
        let (combo, cert) = fisher_approximate(&f, &grid, 0.15).unwrap();
        assert!(cert.achieved < 0.15, "achieved {}", cert.achieved);
        let total: f64 = combo.weights().iter().sum();
        assert!(fabs(total - 1.0) < 1e-12);
        // re-certify independently of the returned certificate
        let approx = combo.eval_grid(256).unwrap();
        assert!(grid.sup_distance(&approx) < 0.15);
    }

    #[test]
    fn approximate_rejects_oversized_input() {
        let f = TaylorSeries::new(alloc::vec![Complex64::new(1.2, 0.0)]).unwrap();
        let grid = BoundaryGrid::from_fn(32, |_| Complex64::new(1.2, 0.0)).unwrap();
        assert!(matches!(
            fisher_approximate(&f, &grid, 0.1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn combination_validation() {
        let item = FiniteBlaschkeProduct::monomial(1);
        assert!(ConvexCombination::new(alloc::vec![0.5, 0.5], alloc::vec![item.clone()]).is_err());
        assert!(ConvexCombination::new(alloc::vec![0.7, 0.4], alloc::vec![item.clone(), item.clone()])
            .is_err());
        assert!(ConvexCombination::new(alloc::vec![-0.1, 1.1], alloc::vec![item.clone(), item.clone()])
            .is_err());
        assert!(ConvexCombination::<FiniteBlaschkeProduct>::new(alloc::vec![], alloc::vec![])
            .is_err());
    }
}
