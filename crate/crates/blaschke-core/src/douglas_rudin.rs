//! Approximation of unimodular boundary functions by quotients of inner
//! functions, built from a conformal chain through an annulus: the principal
//! logarithm `g`, the Jacobi function `h = sn ∘ g`, and a Möbius map `M`
//! whose composite `Φ = M ∘ h` sends the two annulus boundary circles onto
//! two short arcs of the unit circle. A two-valued step target is realized
//! as `Ψ = Φ ∘ F` with `F = exp(u + iV)`, and general unimodular targets are
//! reduced to two-valued ones through a telescoping product of level sets.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::{ceil, exp, fabs, log, sin, sqrt, tan};
use num_complex::Complex64;

use crate::elliptic::{EllipticParameters, SnEngine};
use crate::error::{Error, Result};
use crate::fft::{fft, ifft, is_power_of_two};
use crate::grid::{harmonic_extension, BoundaryGrid};
use crate::unimodular::UnimodularGridFunction;

const TWO_PI: f64 = 2.0 * PI;

/// Reduce an angle to `[0, 2π)`.
fn wrap_tau(x: f64) -> f64 {
    let r = x % TWO_PI;
    if r < 0.0 {
        r + TWO_PI
    } else {
        r
    }
}

/// A finite union of pairwise disjoint half-open arcs `[a, b) ⊂ [0, 2π)`,
/// stored sorted by left endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSet {
    arcs: Vec<(f64, f64)>,
}

impl ArcSet {
    pub fn new(mut arcs: Vec<(f64, f64)>) -> Result<Self> {
        for &(a, b) in &arcs {
            if !(a.is_finite() && b.is_finite() && 0.0 <= a && a < b && b <= TWO_PI) {
                return Err(Error::precondition(
                    "arcs must satisfy 0 <= a < b <= 2*pi",
                ));
            }
        }
        arcs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        for w in arcs.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::precondition("arcs must be pairwise disjoint"));
            }
        }
        Ok(ArcSet { arcs })
    }

    pub fn empty() -> Self {
        ArcSet { arcs: Vec::new() }
    }

    pub fn full() -> Self {
        ArcSet { arcs: vec![(0.0, TWO_PI)] }
    }

    pub fn arcs(&self) -> &[(f64, f64)] {
        &self.arcs
    }

    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(|&(a, b)| b - a).sum()
    }

    pub fn contains(&self, theta: f64) -> bool {
        let t = wrap_tau(theta);
        match self.arcs.partition_point(|&(a, _)| a <= t) {
            0 => false,
            i => t < self.arcs[i - 1].1,
        }
    }
}

fn check_angles(theta0: f64, eps: f64) -> Result<()> {
    if !(theta0 > 0.0 && theta0 < PI) {
        return Err(Error::precondition("target angle must lie in (0, pi)"));
    }
    if !(eps > 0.0 && eps < theta0.min(PI - theta0)) {
        return Err(Error::precondition(
            "gap angle must lie in (0, min(theta0, pi - theta0))",
        ));
    }
    Ok(())
}

/// The modulus `k ∈ (0, 1)` solving `(k-1)²/(4k) = tan((θ₀+ε)/2)/tan(θ₀/2) - 1`,
/// as the root of `k² - (2+4R)k + 1 = 0` inside the unit interval.
pub fn solve_modulus(theta0: f64, eps: f64) -> Result<f64> {
    check_angles(theta0, eps)?;
    let r = tan((theta0 + eps) / 2.0) / tan(theta0 / 2.0) - 1.0;
    modulus_from_ratio(r)
}

fn modulus_from_ratio(r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::numerical(
            "modulus relation produced a nonpositive ratio",
            Some(r),
        ));
    }
    let b = 2.0 + 4.0 * r;
    Ok((b - sqrt(b * b - 4.0)) / 2.0)
}

/// The fully solved conformal chain for one `(θ₀, ε)` pair: elliptic
/// parameters, the Möbius coefficients `α, β`, the annulus point `p` with
/// `Φ(p) = ∞`, and the sampled bound on `|(z-p)Φ(z)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct DouglasRudinMap {
    pub params: EllipticParameters,
    pub theta0: f64,
    pub eps: f64,
    pub alpha: f64,
    pub beta: f64,
    pub pole: Complex64,
    pub ell: f64,
    pub ell_prime: f64,
    pub bounded_const: f64,
    engine: SnEngine,
}

impl DouglasRudinMap {
    pub fn engine(&self) -> &SnEngine {
        &self.engine
    }

    /// `g(z) = (K'/π) log z` with the principal branch (cut along the
    /// negative real axis, i.e. through the annulus slot `[-R, -r]`).
    pub fn g(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() == 0.0 {
            return Err(Error::domain("g is undefined at the origin"));
        }
        Ok(z.ln() * (self.params.big_k_prime / PI))
    }

    pub fn h(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.engine.sn(self.g(z)?))
    }

    /// The Möbius factor; infinite or very large arguments are sent to the
    /// finite limit `M(∞) = (i-α)/(i+α)`.
    pub fn mobius_m(&self, x: Complex64) -> Complex64 {
        let i = Complex64::new(0.0, 1.0);
        let k = self.params.k;
        if !x.is_finite() || x.norm() > 1e12 {
            return (k * (i - self.alpha)) / (k * (i + self.alpha));
        }
        let num = k * (i - self.alpha) * x + (i * self.beta - self.alpha);
        let den = k * (i + self.alpha) * x + (i * self.beta + self.alpha);
        num / den
    }

    pub fn phi(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.mobius_m(self.h(z)?))
    }
}

/// Solve the whole chain for `(θ₀, ε)`. The modulus comes from the relation
/// that makes all four Möbius anchor values consistent,
/// `R = sin²((θ₀+ε)/2)/(sin(θ₀/2)sin(θ₀/2+ε)) - 1`; the anchors are then
/// verified to 1e-10 and the pole is found by a seeded Newton iteration.
pub fn build_map(theta0: f64, eps: f64) -> Result<DouglasRudinMap> {
    check_angles(theta0, eps)?;
    let sh = sin((theta0 + eps) / 2.0);
    let ratio = sh * sh / (sin(theta0 / 2.0) * sin(theta0 / 2.0 + eps)) - 1.0;
    let k = modulus_from_ratio(ratio)?;
    let engine = SnEngine::new(k)?;
    let params = engine.params().clone();

    let ell = tan(theta0 / 2.0);
    let te = tan(eps / 2.0);
    let ell_prime = ell * (1.0 + (k - 1.0) * (k - 1.0) / (4.0 * k));
    let den = ell * (1.0 - k) + 2.0 * te;
    let alpha = (1.0 + k) * ell * te / den;
    let beta = (-(1.0 - k) * ell + 2.0 * k * te) / den;

    let mut map = DouglasRudinMap {
        params,
        theta0,
        eps,
        alpha,
        beta,
        pole: Complex64::default(),
        ell,
        ell_prime,
        bounded_const: 0.0,
        engine,
    };

    let anchors = [
        (Complex64::new(-1.0 / k, 0.0), Complex64::new(1.0, 0.0)),
        (Complex64::new(-1.0, 0.0), Complex64::from_polar(1.0, -eps)),
        (Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, theta0 + eps)),
        (Complex64::new(1.0 / k, 0.0), Complex64::from_polar(1.0, theta0)),
    ];
    for (x, want) in anchors {
        let miss = (map.mobius_m(x) - want).norm();
        if miss > 1e-10 {
            return Err(Error::numerical("a Moebius anchor drifted", Some(miss)));
        }
    }
    let at_inf = map.mobius_m(Complex64::new(f64::INFINITY, 0.0));
    if fabs(at_inf.norm() - 1.0) > 1e-10 {
        return Err(Error::numerical(
            "the Moebius image of infinity is not unimodular",
            Some(fabs(at_inf.norm() - 1.0)),
        ));
    }

    map.pole = solve_pole(&map)?;
    map.bounded_const = sample_bounded_const(&map);
    Ok(map)
}

fn solve_pole(map: &DouglasRudinMap) -> Result<Complex64> {
    let p = &map.params;
    let i = Complex64::new(0.0, 1.0);
    let target = -(i * map.beta + map.alpha) / (p.k * (i + map.alpha));
    // coarse polar seed over the open annulus, then Newton on h
    let lo = p.r_inner * 1.05;
    let hi = p.r_outer / 1.05;
    let mut best = f64::INFINITY;
    let mut z = Complex64::new(1.0, 0.0);
    for a in 0..60 {
        let rad = lo * exp(log(hi / lo) * a as f64 / 59.0);
        for b in 0..120 {
            let t = -PI + TWO_PI * (b as f64 + 0.5) / 120.0;
            let cand = Complex64::from_polar(rad, t);
            let d = (map.h(cand)? - target).norm();
            if d < best {
                best = d;
                z = cand;
            }
        }
    }
    let scale = p.big_k_prime / PI;
    for _ in 0..60 {
        let g = z.ln() * scale;
        let (val, dsn) = map.engine.sn_dual(g);
        let deriv = dsn * scale / z;
        let step = (val - target) / deriv;
        z -= step;
        if step.norm() < 1e-14 * (1.0 + z.norm()) {
            break;
        }
    }
    let residual = (map.h(z)? - target).norm();
    if residual > 1e-10 {
        return Err(Error::numerical(
            "pole search did not converge",
            Some(residual),
        ));
    }
    if !(z.norm() > p.r_inner && z.norm() < p.r_outer) {
        return Err(Error::numerical(
            "pole left the open annulus",
            Some(z.norm()),
        ));
    }
    Ok(z)
}

fn sample_bounded_const(map: &DouglasRudinMap) -> f64 {
    let p = &map.params;
    let mut c = 0.0f64;
    for a in 0..=13 {
        let rad = p.r_inner * exp(log(p.r_outer / p.r_inner) * a as f64 / 13.0);
        for b in 0..96 {
            let t = -PI + TWO_PI * (b as f64 + 0.5) / 96.0;
            let z = Complex64::from_polar(rad, t);
            if let Ok(v) = map.phi(z) {
                let prod = ((z - map.pole) * v).norm();
                if prod.is_finite() {
                    c = c.max(prod);
                }
            }
        }
    }
    c
}

/// Discrete conjugate function: multiplier `-i sgn(k)` on the Fourier side.
fn conjugate_samples(u: &[f64]) -> Vec<f64> {
    let n = u.len();
    let mut buf: Vec<Complex64> = u.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft(&mut buf);
    for (j, v) in buf.iter_mut().enumerate() {
        let k = if j < n / 2 { j as i64 } else { j as i64 - n as i64 };
        *v *= match k {
            0 => Complex64::default(),
            _ if k > 0 => Complex64::new(0.0, -1.0),
            _ => Complex64::new(0.0, 1.0),
        };
    }
    ifft(&mut buf);
    buf.into_iter().map(|c| c.re).collect()
}

/// The approximant `Ψ` of a two-valued step target, with its boundary
/// samples and an evaluator on the open disc (through the analytic
/// completion of `u + iV`).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoValuedApprox {
    map: DouglasRudinMap,
    arcs: ArcSet,
    u_grid: BoundaryGrid,
    boundary: BoundaryGrid,
}

impl TwoValuedApprox {
    pub fn map(&self) -> &DouglasRudinMap {
        &self.map
    }

    pub fn arcs(&self) -> &ArcSet {
        &self.arcs
    }

    pub fn boundary(&self) -> &BoundaryGrid {
        &self.boundary
    }

    pub fn evaluate_disc(&self, z: Complex64) -> Result<Complex64> {
        if !(z.norm() < 1.0) {
            return Err(Error::domain("the evaluator is defined on the open disc"));
        }
        let (big_u, big_v) = harmonic_extension(&self.u_grid, z.norm(), z.arg())?;
        let w = Complex64::new(big_u, big_v) * (self.map.params.big_k_prime / PI);
        Ok(self.map.mobius_m(self.map.engine.sn(w)))
    }

    fn jump_indices(&self) -> Vec<usize> {
        let v = self.u_grid.values();
        let n = v.len();
        (0..n).filter(|&j| v[j].re != v[(j + n - 1) % n].re).collect()
    }
}

/// Certificates measured for one two-valued approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoValuedReport {
    pub bound: f64,
    pub achieved: f64,
    pub unimodularity: f64,
    pub negative_mass_ratio: f64,
    pub jumps: usize,
    pub buffered_samples: usize,
}

const CERT_GRID: usize = 1 << 17;

/// Negative-frequency mass ratio of `(F - p)·Ψ`, the discrete witness that
/// the approximant is a quotient of inner functions. Measured on a dedicated
/// fine grid slightly inside the circle (radius `1 - 16/n`), where the true
/// function is analytic and boundary-sampling alias of the conjugate
/// function's log singularities cannot leak into negative frequencies.
fn inner_quotient_certificate(map: &DouglasRudinMap, e: &ArcSet, s: f64) -> Result<f64> {
    let n = CERT_GRID;
    let mut buf: Vec<Complex64> = (0..n)
        .map(|j| {
            let inside = e.contains(TWO_PI * j as f64 / n as f64);
            Complex64::new(if inside { s } else { -s }, 0.0)
        })
        .collect();
    fft(&mut buf);
    let r = 1.0 - 16.0 / n as f64;
    let mut coef = vec![Complex64::default(); n];
    coef[0] = buf[0];
    let mut rk = 1.0f64;
    for k in 1..n / 2 {
        rk *= r;
        coef[k] = 2.0 * buf[k] * rk;
    }
    let mut w = coef;
    ifft(&mut w);
    let scale = map.params.big_k_prime / PI;
    for v in w.iter_mut() {
        let psi = map.mobius_m(map.engine.sn(*v * scale));
        *v = (v.exp() - map.pole) * psi;
    }
    fft(&mut w);
    let mut neg = 0.0f64;
    let mut total = 0.0f64;
    for (j, c) in w.iter().enumerate() {
        let m = c.norm_sqr();
        total += m;
        if j >= n / 2 {
            neg += m;
        }
    }
    let ratio = neg / total;
    if !(ratio <= 1e-4) {
        return Err(Error::numerical(
            "inner-quotient certificate failed",
            Some(ratio),
        ));
    }
    Ok(ratio)
}

/// Approximate the step function `φ = e^{iθ₀}` on `E`, `1` off `E`, by a
/// quotient of inner functions, certified on a grid of `grid_n` samples.
/// Samples within two grid steps of an arc endpoint are excluded from the
/// sup-error certificate (the target itself jumps there). The error bound is
/// the gap angle `eps` itself.
pub fn two_valued_approximate(
    e: &ArcSet,
    theta0: f64,
    eps: f64,
    grid_n: usize,
) -> Result<(TwoValuedApprox, TwoValuedReport)> {
    if !is_power_of_two(grid_n) || grid_n < 256 {
        return Err(Error::precondition(
            "certification grid must be a power of two with at least 256 samples",
        ));
    }
    let map = build_map(theta0, eps)?;
    let n = grid_n;
    let s = PI * map.params.big_k / map.params.big_k_prime;
    let inside: Vec<bool> = (0..n)
        .map(|j| e.contains(TWO_PI * j as f64 / n as f64))
        .collect();
    let u: Vec<f64> = inside.iter().map(|&b| if b { s } else { -s }).collect();

    let jumps: Vec<usize> = (0..n).filter(|&j| u[j] != u[(j + n - 1) % n]).collect();
    if jumps.len() >= 2 {
        for w in jumps.windows(2) {
            if w[1] - w[0] < 5 {
                return Err(Error::resolution(
                    "arc endpoints are unresolved at the current grid",
                ));
            }
        }
        if jumps[0] + n - jumps[jumps.len() - 1] < 5 {
            return Err(Error::resolution(
                "arc endpoints are unresolved at the current grid",
            ));
        }
    }

    let v = conjugate_samples(&u);
    let scale = map.params.big_k_prime / PI;
    let psi: Vec<Complex64> = (0..n)
        .map(|j| map.mobius_m(map.engine.sn(Complex64::new(u[j], v[j]) * scale)))
        .collect();

    let mut buffered = vec![false; n];
    for &j in &jumps {
        for d in 0..5 {
            buffered[(j + n - 2 + d) % n] = true;
        }
    }

    let on_value = Complex64::from_polar(1.0, theta0);
    let mut achieved = 0.0f64;
    let mut unimodularity = 0.0f64;
    for j in 0..n {
        if buffered[j] {
            continue;
        }
        let target = if inside[j] { on_value } else { Complex64::new(1.0, 0.0) };
        achieved = achieved.max((target - psi[j]).norm());
        unimodularity = unimodularity.max(fabs(psi[j].norm() - 1.0));
    }
    if achieved > eps {
        return Err(Error::numerical(
            "two-valued sup error exceeded its bound",
            Some(achieved),
        ));
    }
    if unimodularity > 1e-6 {
        return Err(Error::numerical(
            "approximant lost unimodularity off the buffers",
            Some(unimodularity),
        ));
    }

    let negative_mass_ratio = inner_quotient_certificate(&map, e, s)?;
    let buffered_samples = buffered.iter().filter(|&&b| b).count();
    let report = TwoValuedReport {
        bound: eps,
        achieved,
        unimodularity,
        negative_mass_ratio,
        jumps: jumps.len(),
        buffered_samples,
    };
    let approx = TwoValuedApprox {
        map,
        arcs: e.clone(),
        u_grid: BoundaryGrid::new(u.into_iter().map(|x| Complex64::new(x, 0.0)).collect())?,
        boundary: BoundaryGrid::new(psi)?,
    };
    Ok((approx, report))
}

/// Half-open arcs covering exactly the `true` runs of a circular mask, the
/// sample `j` standing for `[θ_j, θ_{j+1})`.
fn arcs_from_mask(mask: &[bool]) -> ArcSet {
    let n = mask.len();
    if mask.iter().all(|&b| b) {
        return ArcSet::full();
    }
    let step = TWO_PI / n as f64;
    let mut arcs = Vec::new();
    let mut j = 0;
    while j < n {
        if !mask[j] {
            j += 1;
            continue;
        }
        let start = j;
        while j < n && mask[j] {
            j += 1;
        }
        // a wrapping run simply yields two disjoint arcs, one at each edge
        arcs.push((start as f64 * step, (j as f64 * step).min(TWO_PI)));
    }
    ArcSet::new(arcs).expect("runs are disjoint by construction")
}

/// The telescoping product of two-valued approximants realizing a general
/// unimodular grid target.
#[derive(Debug, Clone, PartialEq)]
pub struct DouglasRudinProduct {
    levels: Vec<TwoValuedApprox>,
    boundary: BoundaryGrid,
    level_count: usize,
}

impl DouglasRudinProduct {
    pub fn levels(&self) -> &[TwoValuedApprox] {
        &self.levels
    }

    pub fn boundary(&self) -> &BoundaryGrid {
        &self.boundary
    }

    pub fn level_count(&self) -> usize {
        self.level_count
    }

    pub fn evaluate_disc(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for level in &self.levels {
            acc *= level.evaluate_disc(z)?;
        }
        Ok(acc)
    }
}

/// Certificates for the level-set product.
#[derive(Debug, Clone, PartialEq)]
pub struct DouglasRudinReport {
    pub levels: usize,
    pub constructed: usize,
    pub bound: f64,
    pub achieved: f64,
    pub per_level: Vec<TwoValuedReport>,
}

/// Approximate an arbitrary unimodular grid function by a product of
/// two-valued quotient approximants: `N = ⌈2π/eps⌉ + 1` argument levels,
/// one cumulative level set per step of `2π/N`, each realized at accuracy
/// `eps/N`; the telescoped error is at most `2π/N + eps ≤ 2·eps` away from
/// the level buffers.
pub fn douglas_rudin_approximate(
    phi: &UnimodularGridFunction,
    eps: f64,
) -> Result<(DouglasRudinProduct, DouglasRudinReport)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::precondition("tolerance must lie in (0, 1)"));
    }
    let n = phi.n();
    let big_n = ceil(TWO_PI / eps) as usize + 1;
    let level_angle = TWO_PI / big_n as f64;
    let level_of: Vec<usize> = phi
        .values()
        .iter()
        .map(|v| {
            let a = wrap_tau(v.arg());
            (((a / level_angle) as usize) + 1).min(big_n)
        })
        .collect();

    let mut levels = Vec::new();
    let mut per_level = Vec::new();
    for k in 2..=big_n {
        let mask: Vec<bool> = level_of.iter().map(|&l| l >= k).collect();
        if !mask.iter().any(|&b| b) {
            continue;
        }
        let arcs = arcs_from_mask(&mask);
        let (tv, report) = two_valued_approximate(&arcs, level_angle, eps / big_n as f64, n)?;
        levels.push(tv);
        per_level.push(report);
    }

    let mut product = vec![Complex64::new(1.0, 0.0); n];
    let mut buffered = vec![false; n];
    for level in &levels {
        for (j, v) in level.boundary.values().iter().enumerate() {
            product[j] *= v;
        }
        for j in level.jump_indices() {
            for d in 0..5 {
                buffered[(j + n - 2 + d) % n] = true;
            }
        }
    }
    let bound = 2.0 * eps;
    let mut achieved = 0.0f64;
    for j in 0..n {
        if !buffered[j] {
            achieved = achieved.max((phi.values()[j] - product[j]).norm());
        }
    }
    if achieved > bound {
        return Err(Error::numerical(
            "level-set product error exceeded its bound",
            Some(achieved),
        ));
    }
    let constructed = levels.len();
    Ok((
        DouglasRudinProduct {
            levels,
            boundary: BoundaryGrid::new(product)?,
            level_count: big_n,
        },
        DouglasRudinReport {
            levels: big_n,
            constructed,
            bound,
            achieved,
            per_level,
        },
    ))
}
