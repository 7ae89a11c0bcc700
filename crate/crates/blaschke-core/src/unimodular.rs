//! Approximation of unimodular boundary functions: quotients of finite
//! Blaschke products, Riemann-sum convex averaging (plain and inner/Marshall
//! variants), and Hankel lower estimates of the distance to the analytic
//! algebra.

use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::fabs;
use num_complex::Complex64;

use crate::approx::ConvexCombination;
use crate::blaschke::{quotient_from_meromorphic, BlaschkeQuotient};
use crate::error::{Error, Result};
use crate::grid::{fourier, inverse_fourier, square_root_lift, BoundaryGrid, FourierCoefficients, Parity};
use crate::linalg::CMat;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Boundary samples that are unimodular to 1e-10.
#[derive(Debug, Clone, PartialEq)]
pub struct UnimodularGridFunction {
    grid: BoundaryGrid,
}

impl UnimodularGridFunction {
    pub fn new(grid: BoundaryGrid) -> Result<Self> {
        for v in grid.values() {
            if fabs(v.norm() - 1.0) > 1e-10 {
                return Err(Error::precondition("samples must be unimodular to 1e-10"));
            }
        }
        Ok(UnimodularGridFunction { grid })
    }

    pub fn grid(&self) -> &BoundaryGrid {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn values(&self) -> &[Complex64] {
        self.grid.values()
    }
}

/// Error certificate for an averaging construction: the theorem bound in
/// force and the sup error actually measured on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComboCertificate {
    pub bound: f64,
    pub achieved: f64,
}

/// The `N` rotations `e^{i2kπ/N}`. For even `N` the second half is the exact
/// negation of the first, so that symmetric sums cancel bitwise.
pub(crate) fn rotations(n: usize) -> Vec<Complex64> {
    let mut g: Vec<Complex64> = Vec::with_capacity(n);
    if n.is_multiple_of(2) {
        for k in 0..n / 2 {
            g.push(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64));
        }
        for k in 0..n / 2 {
            g.push(-g[k]);
        }
    } else {
        for k in 0..n {
            g.push(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64));
        }
    }
    g
}

/// Weighted samplewise mean of a combination of grid functions. Items are
/// summed in antipodal pairs (`k` with `k + N/2`) when the count is even, so
/// rotation-symmetric combinations average to exact zero.
pub fn combination_mean(
    combo: &ConvexCombination<UnimodularGridFunction>,
) -> Result<BoundaryGrid> {
    let n_items = combo.len();
    let grid_n = combo.items()[0].n();
    if combo.items().iter().any(|u| u.n() != grid_n) {
        return Err(Error::precondition("combination items must share one grid size"));
    }
    let w = combo.weights();
    let items = combo.items();
    let mut acc = alloc::vec![Complex64::new(0.0, 0.0); grid_n];
    let half = n_items / 2;
    for j in 0..grid_n {
        let mut s = Complex64::new(0.0, 0.0);
        if n_items.is_multiple_of(2) {
            for k in 0..half {
                s += w[k] * items[k].values()[j] + w[k + half] * items[k + half].values()[j];
            }
        } else {
            for (k, item) in items.iter().enumerate() {
                s += w[k] * item.values()[j];
            }
        }
        acc[j] = s;
    }
    BoundaryGrid::new(acc)
}

/// Equal-weight convex combination of `n_items` unimodular grid functions
/// `u_k = (γ_k + (1-ε)f)/(1 + (1-ε)f̄γ_k)` averaging back to `f` within
/// `ε + 4π/(εN)` in grid sup norm.
pub fn riemann_unimodular_combo(
    f: &BoundaryGrid,
    eps: f64,
    n_items: usize,
) -> Result<(ConvexCombination<UnimodularGridFunction>, ComboCertificate)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::precondition("averaging parameter must lie in (0, 1)"));
    }
    if n_items == 0 {
        return Err(Error::precondition("at least one item is required"));
    }
    if f.max_modulus() > 1.0 + 1e-9 {
        return Err(Error::precondition("f must lie in the closed unit ball"));
    }
    let shrink = 1.0 - eps;
    let gammas = rotations(n_items);
    let mut items = Vec::with_capacity(n_items);
    for gamma in &gammas {
        let values = f
            .values()
            .iter()
            .map(|v| {
                let w = shrink * v;
                (gamma + w) / (ONE + w.conj() * gamma)
            })
            .collect();
        items.push(UnimodularGridFunction::new(BoundaryGrid::new(values)?)?);
    }
    let weights = alloc::vec![1.0 / n_items as f64; n_items];
    let combo = ConvexCombination::new(weights, items)?;
    let mean = combination_mean(&combo)?;
    let achieved = f.sup_distance(&mean);
    let bound = eps + 4.0 * PI / (eps * n_items as f64);
    if achieved > bound {
        return Err(Error::numerical(
            "averaging error exceeded the theorem bound",
            Some(achieved),
        ));
    }
    Ok((combo, ComboCertificate { bound, achieved }))
}

/// Certificate for [`helson_sarason`]: the square-root parity, the smoothing
/// order `m` used, the uniform lift error `‖g-p‖`, the resulting bound
/// `2‖g-p‖`, and the honestly measured quotient error.
#[derive(Debug, Clone, PartialEq)]
pub struct HelsonSarasonCertificate {
    pub parity: Parity,
    pub m: usize,
    pub lift_error: f64,
    pub bound: f64,
    pub achieved: f64,
}

/// De la Vallée Poussin smoothing of the grid Fourier data: weight 1 through
/// order `m`, linear rolloff through `2m`. Uniformly convergent for
/// continuous data, unlike raw partial sums.
fn vallee_poussin(hat: &FourierCoefficients, m: i64) -> FourierCoefficients {
    FourierCoefficients::from_pairs(hat.iter().filter_map(|(k, v)| {
        let a = k.abs();
        if a <= m {
            Some((k, v))
        } else if a <= 2 * m {
            Some((k, v * ((2 * m - a) as f64 / m as f64)))
        } else {
            None
        }
    }))
}

/// Approximate a continuous unimodular `f` by a quotient of finite Blaschke
/// products with grid sup error `< eps`.
///
/// The lift writes `f = ζ^parity g²` with `g` unimodular; a trig polynomial
/// `p` with `‖g-p‖ < eps/2` then gives `|f - ζ^parity p/p*| ≤ 2‖g-p‖ < eps`,
/// and `p/p*` factors exactly as a quotient of Blaschke products.
pub fn helson_sarason(
    f: &UnimodularGridFunction,
    eps: f64,
) -> Result<(BlaschkeQuotient, HelsonSarasonCertificate)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::precondition("tolerance must lie in (0, 1)"));
    }
    let n = f.n();
    let (g, parity) = square_root_lift(f.grid())?;
    let hat = fourier(&g);
    let m_cap = (n as i64 / 2 - 1) / 2;
    if m_cap < 1 {
        return Err(Error::resolution("grid too coarse for trig smoothing"));
    }
    let mut ladder = Vec::new();
    let mut m = 2i64;
    while m < m_cap {
        ladder.push(m);
        m *= 2;
    }
    ladder.push(m_cap);
    let mut best = f64::INFINITY;
    for &m in &ladder {
        let p = vallee_poussin(&hat, m);
        let p_grid = inverse_fourier(&p, n)?;
        let lift_error = g.sup_distance(&p_grid);
        best = best.min(lift_error);
        if lift_error >= eps / 2.0 {
            continue;
        }
        match quotient_from_meromorphic(&p) {
            Ok((mut quotient, _c)) => {
                if parity == Parity::Odd {
                    quotient.numerator = quotient.numerator.times_z();
                }
                let approx = quotient.eval_grid(n)?;
                let achieved = f.grid().sup_distance(&approx);
                if achieved < eps {
                    let cert = HelsonSarasonCertificate {
                        parity,
                        m: m as usize,
                        lift_error,
                        bound: 2.0 * lift_error,
                        achieved,
                    };
                    return Ok((quotient, cert));
                }
            }
            // a root of p drifted onto the circle: escalate the order
            Err(Error::Precondition(_)) | Err(Error::Numerical { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::capacity(
        "trig smoothing order exhausted before certification",
        Some(best),
    ))
}

/// Certificate for [`marshall_average`]: the theorem bound, the measured
/// averaging error, and the worst negative-frequency energy fraction over
/// the produced items (their discrete inner-ness).
#[derive(Debug, Clone, PartialEq)]
pub struct MarshallCertificate {
    pub bound: f64,
    pub achieved: f64,
    pub negative_energy: f64,
}

/// Largest modulus among negative-index Fourier coefficients, with its index.
fn worst_negative_coeff(grid: &BoundaryGrid) -> (f64, i64) {
    let hat = fourier(grid);
    let mut worst = (0.0f64, 0i64);
    for (k, v) in hat.iter() {
        if k < 0 && v.norm() > worst.0 {
            worst = (v.norm(), k);
        }
    }
    worst
}

fn require_analytic(name: &str, grid: &BoundaryGrid) -> Result<()> {
    let (modulus, index) = worst_negative_coeff(grid);
    if modulus > 1e-8 {
        return Err(Error::precondition(alloc::format!(
            "{name} is not analytic: Fourier coefficient {index} has modulus {modulus:.3e}"
        )));
    }
    Ok(())
}

/// Fraction of ℓ² mass sitting at negative frequencies.
fn negative_energy_fraction(grid: &BoundaryGrid) -> f64 {
    let hat = fourier(grid);
    let mut neg = 0.0f64;
    let mut total = 0.0f64;
    for (k, v) in hat.iter() {
        let e = v.norm_sqr();
        total += e;
        if k < 0 {
            neg += e;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        neg / total
    }
}

/// Inner-variant Riemann averaging: items
/// `ω_k = (ω₀γ_k + g)/(1 + ḡω₀γ_k)` are unimodular and (discretely) inner
/// when `g`, `ω₀`, `ω₀ḡ` are analytic; their equal-weight mean tracks `g`
/// within `((1+max|g|)/(1-max|g|))·(2π/N)`.
pub fn marshall_average(
    g: &BoundaryGrid,
    omega0: &UnimodularGridFunction,
    eps: f64,
    n_items: usize,
) -> Result<(ConvexCombination<UnimodularGridFunction>, MarshallCertificate)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::precondition("margin must lie in (0, 1)"));
    }
    if n_items == 0 {
        return Err(Error::precondition("at least one item is required"));
    }
    if omega0.n() != g.n() {
        return Err(Error::precondition("g and ω₀ must share one grid size"));
    }
    let g_max = g.max_modulus();
    if g_max > 1.0 - eps + 1e-12 {
        return Err(Error::precondition("g must satisfy |g| ≤ 1 - ε samplewise"));
    }
    require_analytic("g", g)?;
    require_analytic("omega0", omega0.grid())?;
    let product = BoundaryGrid::new(
        omega0
            .values()
            .iter()
            .zip(g.values())
            .map(|(w, gv)| w * gv.conj())
            .collect(),
    )?;
    require_analytic("omega0*conj(g)", &product)?;

    let gammas = rotations(n_items);
    let mut items = Vec::with_capacity(n_items);
    let mut negative_energy = 0.0f64;
    for gamma in &gammas {
        let values: Vec<Complex64> = omega0
            .values()
            .iter()
            .zip(g.values())
            .map(|(w, gv)| {
                let a = w * gamma;
                (a + gv) / (ONE + gv.conj() * a)
            })
            .collect();
        let item = BoundaryGrid::new(values)?;
        negative_energy = negative_energy.max(negative_energy_fraction(&item));
        items.push(UnimodularGridFunction::new(item)?);
    }
    let weights = alloc::vec![1.0 / n_items as f64; n_items];
    let combo = ConvexCombination::new(weights, items)?;
    let mean = combination_mean(&combo)?;
    let achieved = g.sup_distance(&mean);
    let bound = (1.0 + g_max) / (1.0 - g_max) * (2.0 * PI / n_items as f64);
    if achieved > bound {
        return Err(Error::numerical(
            "averaging error exceeded the theorem bound",
            Some(achieved),
        ));
    }
    Ok((combo, MarshallCertificate { bound, achieved, negative_energy }))
}

/// Lower bound for the distance to the analytic algebra, together with the
/// truncation that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    pub lower: f64,
    pub matrix_size: usize,
}

/// Largest singular value of the `M×M` Hankel matrix
/// `H_{ij} = f̂(-(i+j+1))` of the negative-index coefficients: a lower
/// estimate of `dist(f, H∞)`, monotone in `M` and exact once `M` covers the
/// support of a finitely supported symbol. Absent coefficients are exactly
/// zero (finite-support semantics).
pub fn hankel_distance_estimate(
    f: &FourierCoefficients,
    m: usize,
) -> Result<DistanceReport> {
    if m < 1 {
        return Err(Error::precondition("truncation size must be at least 1"));
    }
    let mut h = CMat::zeros(m);
    for i in 0..m {
        for j in 0..m {
            h.set(i, j, f.get(-((i + j + 1) as i64)));
        }
    }
    let lower = crate::linalg::op_norm(&h)?;
    Ok(DistanceReport { lower, matrix_size: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use libm::{cos, sin};

    fn unimodular_from_fn(n: usize, f: impl FnMut(f64) -> Complex64) -> UnimodularGridFunction {
        UnimodularGridFunction::new(BoundaryGrid::from_fn(n, f).unwrap()).unwrap()
    }

    #[test]
    fn rotations_pair_up() {
        let g = rotations(8);
        for k in 0..4 {
            assert_eq!(g[k + 4], -g[k]);
        }
        assert_eq!(rotations(7).len(), 7);
    }

    #[test]
    fn riemann_zero_function_is_exact() {
        let f = BoundaryGrid::from_fn(64, |_| Complex64::default()).unwrap();
        let (combo, cert) = riemann_unimodular_combo(&f, 0.3, 16).unwrap();
        assert_eq!(cert.achieved, 0.0);
        let mean = combination_mean(&combo).unwrap();
        assert!(mean.values().iter().all(|v| v.norm() == 0.0));
        // items are the pure rotations
        for (k, item) in combo.items().iter().enumerate() {
            let gamma = rotations(16)[k];
            assert!(item.values().iter().all(|v| (v - gamma).norm() < 1e-15));
        }
    }

    #[test]
    fn riemann_half_tone_within_bound() {
        let f = BoundaryGrid::from_fn(256, |t| Complex64::from_polar(0.5, t)).unwrap();
        let (combo, cert) = riemann_unimodular_combo(&f, 0.1, 1000).unwrap();
        assert!(cert.bound <= 0.1 + 4.0 * PI / 100.0 + 1e-12);
        assert!(cert.achieved <= cert.bound);
        assert_eq!(combo.len(), 1000);
        assert!(combo.weights().iter().all(|w| fabs(w - 1e-3) < 1e-18));
        for item in combo.items().iter().step_by(97) {
            for v in item.values() {
                assert!(fabs(v.norm() - 1.0) < 1e-12);
            }
        }
    }

    #[test]
    fn riemann_rejects_bad_inputs() {
        let f = BoundaryGrid::from_fn(32, |_| Complex64::default()).unwrap();
        assert!(riemann_unimodular_combo(&f, 0.0, 4).is_err());
        assert!(riemann_unimodular_combo(&f, 1.0, 4).is_err());
        assert!(riemann_unimodular_combo(&f, 0.5, 0).is_err());
        let big = BoundaryGrid::from_fn(32, |_| Complex64::new(1.1, 0.0)).unwrap();
        assert!(riemann_unimodular_combo(&big, 0.5, 4).is_err());
    }

    #[test]
    fn helson_sarason_pure_tone() {
        let f = unimodular_from_fn(128, |t| Complex64::from_polar(1.0, 3.0 * t));
        let (q, cert) = helson_sarason(&f, 0.3).unwrap();
        assert_eq!(cert.parity, Parity::Odd);
        assert_eq!(q.numerator.degree(), 3);
        assert_eq!(q.denominator.degree(), 0);
        assert!(q.numerator.zeros().iter().all(|a| a.value().norm() < 1e-12));
        assert!(cert.achieved < 1e-9, "achieved {}", cert.achieved);
    }

    #[test]
    fn helson_sarason_conjugate_factor() {
        let a = Complex64::new(0.4, 0.0);
        let f = unimodular_from_fn(512, |t| {
            let z = Complex64::from_polar(1.0, t);
            ((a - z) / (ONE - a.conj() * z)).conj()
        });
        for eps in [0.3, 0.1] {
            let (q, cert) = helson_sarason(&f, eps).unwrap();
            assert!(cert.achieved < eps, "achieved {}", cert.achieved);
            // 1/τ_a: the denominator should carry a zero near 0.4
            let closest = q
                .denominator
                .zeros()
                .iter()
                .map(|z| (z.value() - a).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(closest < 0.2, "nearest denominator zero at distance {closest}");
        }
    }

    #[test]
    fn helson_sarason_wiggle() {
        let f = unimodular_from_fn(1024, |t| Complex64::from_polar(1.0, t + 0.5 * sin(3.0 * t)));
        let (q, cert) = helson_sarason(&f, 0.1).unwrap();
        assert!(cert.achieved < 0.1, "achieved {}", cert.achieved);
        assert!(cert.bound >= cert.lift_error);
        let approx = q.eval_grid(1024).unwrap();
        for v in approx.values() {
            assert!(fabs(v.norm() - 1.0) < 1e-10);
        }
    }

    #[test]
    fn marshall_zero_g() {
        let g = BoundaryGrid::from_fn(64, |_| Complex64::default()).unwrap();
        let w0 = unimodular_from_fn(64, |t| Complex64::from_polar(1.0, t));
        let (combo, cert) = marshall_average(&g, &w0, 0.5, 8).unwrap();
        assert_eq!(cert.achieved, 0.0);
        assert!(cert.negative_energy < 1e-20);
        let mean = combination_mean(&combo).unwrap();
        assert!(mean.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn marshall_half_tone() {
        let g = BoundaryGrid::from_fn(512, |t| Complex64::from_polar(0.5, t)).unwrap();
        let w0 = unimodular_from_fn(512, |t| Complex64::from_polar(1.0, t));
        let (combo, cert) = marshall_average(&g, &w0, 0.5, 500).unwrap();
        assert!(cert.bound <= 3.0 * 2.0 * PI / 500.0 + 1e-12);
        assert!(cert.achieved <= cert.bound);
        assert!(cert.negative_energy <= 1e-6, "energy {}", cert.negative_energy);
        // closed form: ω_k = e^{iθ}(γ_k + 1/2)/(1 + γ_k/2)
        let gamma = rotations(500)[7];
        let expect = |t: f64| {
            Complex64::from_polar(1.0, t) * (gamma + 0.5) / (ONE + 0.5 * gamma)
        };
        for (j, v) in combo.items()[7].values().iter().enumerate().step_by(41) {
            let t = 2.0 * PI * j as f64 / 512.0;
            assert!((v - expect(t)).norm() < 1e-12);
        }
    }

    #[test]
    fn marshall_names_offending_certificate() {
        let w0 = unimodular_from_fn(64, |t| Complex64::from_polar(1.0, t));
        // g with a negative frequency
        let g = BoundaryGrid::from_fn(64, |t| Complex64::from_polar(0.3, -t)).unwrap();
        match marshall_average(&g, &w0, 0.5, 4) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("g is not analytic"), "{msg}"),
            other => panic!("expected precondition error, got {other:?}"),
        }
        // ω₀ḡ not analytic: ω₀ = e^{iθ}, g = (1/2)e^{2iθ} → ω₀ḡ = e^{-iθ}/2
        let g = BoundaryGrid::from_fn(64, |t| Complex64::from_polar(0.5, 2.0 * t)).unwrap();
        match marshall_average(&g, &w0, 0.4, 4) {
            Err(Error::Precondition(msg)) => {
                assert!(msg.contains("omega0*conj(g)"), "{msg}")
            }
            other => panic!("expected precondition error, got {other:?}"),
        }
        // margin violation
        let g = BoundaryGrid::from_fn(64, |t| Complex64::from_polar(0.8, t)).unwrap();
        assert!(marshall_average(&g, &w0, 0.5, 4).is_err());
    }

    #[test]
    fn hankel_known_distances() {
        let analytic = FourierCoefficients::from_pairs([
            (0i64, ONE),
            (3i64, Complex64::new(0.0, 2.0)),
        ]);
        assert_eq!(hankel_distance_estimate(&analytic, 4).unwrap().lower, 0.0);

        let anti = FourierCoefficients::from_pairs([(-1i64, ONE)]);
        let d = hankel_distance_estimate(&anti, 5).unwrap();
        assert!(fabs(d.lower - 1.0) < 1e-10, "{}", d.lower);

        let mixed = FourierCoefficients::from_pairs([
            (-1i64, Complex64::new(0.3, 0.0)),
            (2i64, ONE),
        ]);
        let d = hankel_distance_estimate(&mixed, 6).unwrap();
        assert!(fabs(d.lower - 0.3) < 1e-10, "{}", d.lower);

        assert!(hankel_distance_estimate(&mixed, 0).is_err());
    }

    #[test]
    fn hankel_monotone_in_truncation() {
        let f = FourierCoefficients::from_pairs([
            (-1i64, Complex64::new(0.4, 0.1)),
            (-2i64, Complex64::new(-0.2, 0.3)),
            (-5i64, Complex64::new(0.05, -0.3)),
            (1i64, Complex64::new(0.9, 0.0)),
        ]);
        let mut prev = 0.0f64;
        for m in [1usize, 2, 4, 8, 16] {
            let d = hankel_distance_estimate(&f, m).unwrap().lower;
            assert!(d + 1e-12 >= prev, "m={m}: {d} < {prev}");
            prev = d;
        }
    }

    #[test]
    fn vp_sum_reproduces_low_frequencies() {
        let g = BoundaryGrid::from_fn(128, |t| {
            Complex64::new(cos(2.0 * t) + 0.3, 0.2 * sin(t))
        })
        .unwrap();
        let p = vallee_poussin(&fourier(&g), 4);
        let back = inverse_fourier(&p, 128).unwrap();
        assert!(g.sup_distance(&back) < 1e-12);
    }
}
