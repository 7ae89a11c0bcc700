//! The acceptance suite: ten numbered criteria, each an independent
//! end-to-end check with explicit tolerances. `selftest` and the
//! integration gate both call into this module, so the CLI and the test
//! suite certify exactly the same properties.

use std::time::Instant;

use blaschke_core::{
    berger_stampfli_check, caratheodory_approximant, complete_elliptic_k, fisher_approximate,
    fisher_decompose_product, fourier, frostman_approximate, frostman_shift,
    hankel_distance_estimate, helson_sarason, is_blaschke_test, jacobi_sn, numerical_radius,
    riemann_unimodular_combo, two_valued_approximate, ArcSet, BoundaryGrid, Complex64,
    DiscPoint, EllipticParameters, FiniteBlaschkeProduct, FourierCoefficients, InnerEvaluator,
    OperatorMatrix, UnimodularGridFunction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::parallel::parallel_map;

const TAU: f64 = std::f64::consts::TAU;
const PI: f64 = std::f64::consts::PI;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub index: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

macro_rules! check {
    ($cond:expr, $($arg:tt)+) => {
        if !($cond) {
            return Err(format!($($arg)+));
        }
    };
}

fn core<T>(r: blaschke_core::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn random_zero(rng: &mut ChaCha8Rng, radius: f64) -> DiscPoint {
    let r = radius * rng.gen::<f64>();
    let t = TAU * rng.gen::<f64>();
    DiscPoint::new(Complex64::from_polar(r, t)).expect("inside the disc")
}

fn random_product(rng: &mut ChaCha8Rng, degree: usize, through_origin: bool) -> FiniteBlaschkeProduct {
    let mut zeros = Vec::with_capacity(degree);
    if through_origin {
        zeros.push(DiscPoint::new(Complex64::default()).unwrap());
    }
    while zeros.len() < degree {
        zeros.push(random_zero(rng, 0.65));
    }
    FiniteBlaschkeProduct::new(Complex64::from_polar(1.0, TAU * rng.gen::<f64>()), zeros)
        .expect("valid product")
}

fn random_operator(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> OperatorMatrix {
    let rows: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    Complex64::new(
                        scale * (2.0 * rng.gen::<f64>() - 1.0),
                        scale * (2.0 * rng.gen::<f64>() - 1.0),
                    )
                })
                .collect()
        })
        .collect();
    OperatorMatrix::from_rows(&rows).expect("finite entries")
}

fn exp_shift(z: Complex64) -> Complex64 {
    (z - Complex64::new(1.0, 0.0)).exp()
}

// ---------------------------------------------------------------- criteria

/// Coefficient matching: approximants of e^{z-1} agree to 1e-9 and obey
/// the tail bound 2r^n on inner circles, in under a second.
fn criterion_1() -> Check {
    let start = Instant::now();
    let f = core(catalog::taylor_target("exp_shift", 16))?;
    let mut worst_coeff = 0.0f64;
    let mut worst_margin = f64::INFINITY;
    for n in [2usize, 4, 6, 8] {
        let b = core(caratheodory_approximant(&f, n))?;
        let got = b.taylor(n);
        for k in 0..=n {
            worst_coeff = worst_coeff.max((got[k] - f.coeff(k)).norm());
        }
        check!(
            worst_coeff < 1e-9,
            "order {n}: coefficient residual {worst_coeff:.3e} above 1e-9"
        );
        for r in [0.3, 0.6, 0.9] {
            let mut sup = 0.0f64;
            for j in 0..512 {
                let z = Complex64::from_polar(r, TAU * j as f64 / 512.0);
                sup = sup.max((exp_shift(z) - core(b.evaluate(z))?).norm());
            }
            let bound = 2.0 * r.powi(n as i32);
            check!(sup <= bound, "order {n}, r = {r}: sup {sup:.3e} above {bound:.3e}");
            worst_margin = worst_margin.min(bound - sup);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check!(secs < 1.0, "took {secs:.2}s, budget is 1s");
    Ok(format!(
        "coefficient residual {worst_coeff:.2e}, smallest sup margin {worst_margin:.2e}, {:.0}ms",
        secs * 1e3
    ))
}

/// Convex decomposition: exact reproduction of dilated products and an
/// end-to-end approximation of e^{z-1}.
fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for rep in 0..6 {
        let b = random_product(&mut rng, 1 + rep % 3, false);
        for t in [0.5, 0.9] {
            let combo = core(fisher_decompose_product(&b, t))?;
            let wsum: f64 = combo.weights().iter().sum();
            check!((wsum - 1.0).abs() <= 1e-12, "weights sum to {wsum}");
            check!(
                combo.weights().iter().all(|&w| w >= 0.0),
                "negative weight in the decomposition"
            );
            let grid = core(combo.eval_grid(1024))?;
            for (j, v) in grid.values().iter().enumerate() {
                let z = Complex64::from_polar(1.0, TAU * j as f64 / 1024.0);
                let want = core(b.evaluate(t * z))?;
                worst = worst.max((v - want).norm());
            }
            check!(worst <= 1e-10, "decomposition residual {worst:.3e} above 1e-10");
        }
    }
    let f = core(catalog::taylor_target("exp_shift", 24))?;
    let boundary = core(BoundaryGrid::from_fn(1024, |t| {
        exp_shift(Complex64::from_polar(1.0, t))
    }))?;
    let eps = 0.15;
    let (_, cert) = core(fisher_approximate(&f, &boundary, eps))?;
    check!(cert.achieved < eps, "achieved {} not below {eps}", cert.achieved);
    Ok(format!(
        "decomposition residual {worst:.2e}, end-to-end achieved {:.3} < {eps}",
        cert.achieved
    ))
}

/// Unimodular averaging meets the bound eps + 4pi/(eps N) on catalog
/// targets, exactly zero for the zero function.
fn criterion_3() -> Check {
    let mut detail = String::new();
    for name in ["zero", "ball_085", "e_itheta"] {
        let g = core(catalog::grid_target(name, 1024))?;
        for (eps, n_items) in [(0.1, 1000usize), (0.3, 200usize)] {
            let (_, cert) = core(riemann_unimodular_combo(&g, eps, n_items))?;
            let budget = eps + 4.0 * PI / (eps * n_items as f64);
            check!(
                cert.achieved <= budget,
                "{name} at ({eps}, {n_items}): achieved {} above {budget}",
                cert.achieved
            );
            if name == "zero" {
                check!(cert.achieved == 0.0, "zero target achieved {} != 0", cert.achieved);
            }
            if name == "ball_085" && eps == 0.1 {
                detail = format!("ball_085 at (0.1, 1000): achieved {:.4}", cert.achieved);
            }
        }
    }
    Ok(detail)
}

/// Quotient approximation of continuous unimodular functions, certified
/// below eps with samplewise unimodular output.
fn criterion_4() -> Check {
    let mut worst_uni = 0.0f64;
    let mut detail = String::new();
    for name in ["e_5itheta", "conj_blaschke_a04", "winding1"] {
        let f = core(
            catalog::grid_target(name, 2048).and_then(UnimodularGridFunction::new),
        )?;
        for eps in [0.3, 0.1] {
            let (q, cert) = core(helson_sarason(&f, eps))?;
            check!(
                cert.achieved < eps,
                "{name} at eps {eps}: achieved {} not below eps",
                cert.achieved
            );
            let grid = core(q.eval_grid(2048))?;
            for v in grid.values() {
                worst_uni = worst_uni.max((v.norm() - 1.0).abs());
            }
            check!(worst_uni <= 1e-10, "{name}: unimodularity defect {worst_uni:.3e}");
            if name == "winding1" && eps == 0.1 {
                detail = format!(
                    "winding1 at eps 0.1: achieved {:.4}, unimodularity {:.1e}",
                    cert.achieved, worst_uni
                );
            }
        }
    }
    Ok(detail)
}

/// Singular-mass estimation within 5%, shift-search success on at least
/// 31 of 32 angles, and certified Frostman bounds below eps.
fn criterion_5() -> Check {
    let ladder = [0.9, 0.99, 0.999, 0.9999];
    for (name, want) in [("atom_pi", PI), ("atom_2pi", TAU)] {
        let phi = InnerEvaluator::Plain(core(catalog::inner_target(name))?);
        let (is_b, mass) = core(is_blaschke_test(&phi, &ladder, 1e-2))?;
        check!(!is_b, "{name} misclassified as a Blaschke product");
        check!(
            (mass - want).abs() <= 0.05 * want,
            "{name}: mass estimate {mass} off {want} by more than 5%"
        );
    }

    let phi = InnerEvaluator::Plain(core(catalog::inner_target("atom_pi"))?);
    let (_, base_mass) = core(is_blaschke_test(&phi, &ladder, f64::INFINITY))?;
    let tol = 1e-2 * (1.0 + base_mass);
    let rho = 0.3;
    let mut successes = 0usize;
    for j in 0..32 {
        let w = DiscPoint::new(Complex64::from_polar(rho, TAU * j as f64 / 32.0)).unwrap();
        let shifted = frostman_shift(&phi, w);
        if core(is_blaschke_test(&shifted, &ladder, tol))?.0 {
            successes += 1;
        }
    }
    check!(successes >= 31, "only {successes}/32 shift angles passed the Blaschke test");

    let mut bounds = Vec::new();
    for eps in [1.0, 0.5] {
        let (_, cert) = core(frostman_approximate(&phi, eps))?;
        let rho_e = 0.9 * eps / (2.0 + eps);
        let formula = 2.0 * rho_e / (1.0 - rho_e);
        check!(
            (cert.bound - formula).abs() <= 1e-12 && cert.bound < eps,
            "eps {eps}: bound {} is not the guaranteed 2p/(1-p) < eps",
            cert.bound
        );
        check!(
            cert.achieved <= cert.bound + 1e-9,
            "eps {eps}: achieved {} above bound {}",
            cert.achieved,
            cert.bound
        );
        bounds.push(cert.bound);
    }
    Ok(format!(
        "mass estimates within 5%, {successes}/32 shifts pass, bounds {:.3}/{:.3}",
        bounds[0], bounds[1]
    ))
}

fn simpson<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let whole = (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
    let left = (m - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + m)) + f(m));
    let right = (b - m) / 6.0 * (f(m) + 4.0 * f(0.5 * (m + b)) + f(b));
    if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        simpson(f, a, m, tol / 2.0, depth - 1) + simpson(f, m, b, tol / 2.0, depth - 1)
    }
}

/// Elliptic kernel: the self-dual point, quadrature cross-check, sn corner
/// values, and the worked annulus modulus.
fn criterion_6() -> Check {
    let p = core(EllipticParameters::new(std::f64::consts::FRAC_1_SQRT_2))?;
    check!(
        (p.big_k - p.big_k_prime).abs() <= 1e-10,
        "K and K' differ by {:.3e} at the self-dual point",
        (p.big_k - p.big_k_prime).abs()
    );

    for i in 1..=9 {
        let k = i as f64 / 10.0;
        let agm = core(complete_elliptic_k(k))?;
        let quad = simpson(
            move |t: f64| {
                let s = k * t.sin();
                1.0 / (1.0 - s * s).sqrt()
            },
            0.0,
            std::f64::consts::FRAC_PI_2,
            1e-13,
            40,
        );
        check!((agm - quad).abs() <= 1e-8, "k = {k}: AGM {agm} vs quadrature {quad}");
    }

    for k in [0.3, 0.7] {
        let pk = core(EllipticParameters::new(k))?;
        let at0 = core(jacobi_sn(Complex64::default(), k))?;
        check!(at0.norm() <= 1e-8, "sn(0) = {at0} for k = {k}");
        let atk = core(jacobi_sn(Complex64::new(pk.big_k, 0.0), k))?;
        check!(
            (atk - Complex64::new(1.0, 0.0)).norm() <= 1e-8,
            "sn(K) = {atk} for k = {k}"
        );
    }

    let (theta0, eps) = (std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_6);
    let k = core(blaschke_core::solve_modulus(theta0, eps))?;
    let target = ((theta0 + eps) / 2.0).tan() / (theta0 / 2.0).tan() - 1.0;
    let residual = ((1.0 - k) * (1.0 - k) / (4.0 * k) - target).abs();
    check!(residual <= 1e-12, "modulus residual {residual:.3e}");
    check!((k - 0.2115).abs() <= 1e-3, "modulus {k} far from the worked 0.2115");
    Ok(format!("self-dual K = {:.12}, worked modulus k = {k:.6}", p.big_k))
}

/// Conformal-map anchors, annulus boundary unimodularity, and the
/// two-valued pipeline with its spectral certificate.
fn criterion_7() -> Check {
    let start = Instant::now();
    let arcs = core(ArcSet::new(vec![(std::f64::consts::FRAC_PI_2, 1.5 * PI)]))?;
    let (approx, report) =
        core(two_valued_approximate(&arcs, std::f64::consts::FRAC_PI_2, 0.2, 4096))?;
    let secs = start.elapsed().as_secs_f64();
    check!(secs < 30.0, "two-valued pipeline took {secs:.1}s, budget 30s");
    check!(report.achieved <= 0.2, "buffered sup {} above 0.2", report.achieved);
    check!(
        report.negative_mass_ratio <= 1e-4,
        "spectral certificate {:.3e} above 1e-4",
        report.negative_mass_ratio
    );

    let m = approx.map();
    let k = m.params.k;
    let anchors = [
        (Complex64::new(-1.0 / k, 0.0), Complex64::new(1.0, 0.0)),
        (Complex64::new(-1.0, 0.0), Complex64::from_polar(1.0, -m.eps)),
        (Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, m.theta0 + m.eps)),
        (Complex64::new(1.0 / k, 0.0), Complex64::from_polar(1.0, m.theta0)),
    ];
    for (x, want) in anchors {
        let got = m.mobius_m(x);
        check!(
            (got - want).norm() <= 1e-10,
            "anchor M({x}) = {got}, expected {want}"
        );
    }

    let mut worst = 0.0f64;
    for &r in &[m.params.r_inner, m.params.r_outer] {
        for j in 0..128 {
            let z = Complex64::from_polar(r, TAU * j as f64 / 128.0);
            let v = core(m.phi(z))?;
            worst = worst.max((v.norm() - 1.0).abs());
        }
    }
    check!(worst <= 1e-8, "annulus boundary image off the circle by {worst:.3e}");
    Ok(format!(
        "anchors hold, boundary unimodular to {worst:.1e}, sup {:.3} in {:.1}s, certificate {:.1e}",
        report.achieved, secs, report.negative_mass_ratio
    ))
}

/// The scalar partial-fraction identity with positive weights summing to 1.
fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for rep in 0..5 {
        let b = random_product(&mut rng, 1 + rep, true);
        for i in 0..16 {
            let gamma = Complex64::from_polar(1.0, TAU * (i as f64 + 0.37) / 16.0);
            let pf = core(b.partial_fractions(gamma))?;
            let total: f64 = pf.iter().map(|&(_, c)| c).sum();
            check!((total - 1.0).abs() <= 1e-10, "weights sum to {total}");
            check!(pf.iter().all(|&(_, c)| c > 0.0), "nonpositive weight");
            for s in 0..12 {
                let z = Complex64::from_polar(
                    0.9 * (s as f64 + 0.5) / 12.0,
                    1.1 * s as f64 + 0.2 * rep as f64,
                );
                let lhs = (Complex64::new(1.0, 0.0)
                    - gamma.conj() * core(b.evaluate(z))?)
                .finv();
                let rhs: Complex64 = pf
                    .iter()
                    .map(|&(zeta, c)| c / (Complex64::new(1.0, 0.0) - zeta.conj() * z))
                    .sum();
                worst = worst.max((lhs - rhs).norm());
            }
            check!(worst <= 1e-9, "identity residual {worst:.3e} above 1e-9");
        }
    }
    Ok(format!("identity residual {worst:.2e} over 80 product/level pairs"))
}

/// The numerical-range mapping bound over a 1000-pair ensemble, the power
/// inequality, and the nilpotent radius.
fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pairs: Vec<(OperatorMatrix, FiniteBlaschkeProduct)> = (0..1000)
        .map(|_| {
            let dim = 2 + (rng.gen::<f64>() * 5.0) as usize; // 2..=6
            let deg = 1 + (rng.gen::<f64>() * 4.0) as usize; // 1..=4
            (
                random_operator(&mut rng, dim.min(6), 1.0),
                random_product(&mut rng, deg.min(4), true),
            )
        })
        .collect();
    let reports = parallel_map(&pairs, |(t, b)| berger_stampfli_check(t, b, 1e-8));
    let mut max_wbt = 0.0f64;
    for (i, r) in reports.iter().enumerate() {
        match r {
            Ok(rep) => {
                check!(rep.pass, "pair {i}: w(B(rT)) = {} above 1 + 1e-8", rep.w_bt);
                max_wbt = max_wbt.max(rep.w_bt);
            }
            Err(e) => return Err(format!("pair {i}: {e}")),
        }
    }

    for _ in 0..100 {
        let t = random_operator(&mut rng, 4, 0.8);
        let w1 = core(numerical_radius(&t, 128))?.radius;
        let mut power = t.matrix().clone();
        for n in 2..=5u32 {
            power = power.mul(t.matrix());
            let tn = core(OperatorMatrix::from_rows(
                &(0..4)
                    .map(|i| (0..4).map(|j| power.at(i, j)).collect())
                    .collect::<Vec<_>>(),
            ))?;
            let wn = core(numerical_radius(&tn, 128))?.radius;
            check!(
                wn <= w1.powi(n as i32) + 1e-8,
                "power inequality fails at n = {n}: {wn} vs {}",
                w1.powi(n as i32)
            );
        }
    }

    let nil = core(catalog::matrix_target("nilpotent2"))?;
    let w = core(numerical_radius(&nil, 720))?.radius;
    check!((w - 0.5).abs() <= 1e-9, "nilpotent radius {w}");
    Ok(format!(
        "1000/1000 mapping checks pass (max w(B(rT)) = {max_wbt:.9}), power inequality holds, nilpotent radius {w:.12}"
    ))
}

/// Hankel distance estimates: exact zeros, exact unimodular symbols, and
/// monotonicity in the truncation.
fn criterion_10() -> Check {
    let analytic = FourierCoefficients::from_pairs([
        (0, Complex64::new(0.7, 0.0)),
        (5, Complex64::new(0.1, -0.3)),
    ]);
    let d = core(hankel_distance_estimate(&analytic, 4))?;
    check!(d.lower == 0.0, "analytic symbol at distance {}", d.lower);

    let trace = core(catalog::grid_target("e_neg_itheta", 512))?;
    let d = core(hankel_distance_estimate(&fourier(&trace), 4))?;
    check!((d.lower - 1.0).abs() <= 1e-10, "e^(-i theta) at distance {}", d.lower);

    let mixed = FourierCoefficients::from_pairs([
        (-1, Complex64::new(0.3, 0.0)),
        (2, Complex64::new(1.0, 0.0)),
    ]);
    let d = core(hankel_distance_estimate(&mixed, 3))?;
    check!((d.lower - 0.3).abs() <= 1e-10, "mixed symbol at distance {}", d.lower);

    let long = FourierCoefficients::from_pairs(
        (1..=5).map(|k| (-k, Complex64::new(1.0 / k as f64, 0.0))),
    );
    let mut prev = 0.0;
    for m in 1..=6 {
        let d = core(hankel_distance_estimate(&long, m))?;
        check!(d.lower >= prev - 1e-12, "distance shrank at truncation {m}");
        prev = d.lower;
    }
    Ok(format!("exact values reproduced; monotone estimate reaches {prev:.6}"))
}

// ------------------------------------------------------------------ driver

pub const CRITERIA: &[Criterion] = &[
    ("coefficient matching", criterion_1),
    ("convex decomposition", criterion_2),
    ("unimodular averaging", criterion_3),
    ("quotient approximation", criterion_4),
    ("singular mass and shifts", criterion_5),
    ("elliptic kernel", criterion_6),
    ("two-valued conformal pipeline", criterion_7),
    ("partial fractions", criterion_8),
    ("numerical range mapping", criterion_9),
    ("analytic distance", criterion_10),
];

pub fn run_one(index: usize) -> CriterionOutcome {
    let (name, f) = CRITERIA[index - 1];
    let start = Instant::now();
    let result = f();
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok(detail) => CriterionOutcome { index, name, pass: true, detail, seconds },
        Err(detail) => CriterionOutcome { index, name, pass: false, detail, seconds },
    }
}

pub fn run_all() -> Vec<CriterionOutcome> {
    (1..=CRITERIA.len()).map(run_one).collect()
}
