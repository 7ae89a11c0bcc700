//! Property-based invariants for the Blaschke/Mobius calculus and the
//! boundary grid transforms.

use blaschke_core::{
    compose_mobius, fourier, inverse_fourier, mobius, BoundaryGrid, Complex64, DiscPoint,
    FiniteBlaschkeProduct,
};
use proptest::prelude::*;

fn disc_point(radius: f64) -> impl Strategy<Value = DiscPoint> {
    (0.0..radius, 0.0..core::f64::consts::TAU)
        .prop_map(|(r, t)| DiscPoint::new(Complex64::from_polar(r, t)).unwrap())
}

fn product(max_deg: usize) -> impl Strategy<Value = FiniteBlaschkeProduct> {
    (
        0.0..core::f64::consts::TAU,
        prop::collection::vec(disc_point(0.7), 1..=max_deg),
    )
        .prop_map(|(phase, zeros)| {
            FiniteBlaschkeProduct::new(Complex64::from_polar(1.0, phase), zeros).unwrap()
        })
}

/// A product vanishing at the origin (first zero pinned to 0).
fn product_through_origin(max_deg: usize) -> impl Strategy<Value = FiniteBlaschkeProduct> {
    (
        0.0..core::f64::consts::TAU,
        prop::collection::vec(disc_point(0.7), 0..max_deg),
    )
        .prop_map(|(phase, mut zeros)| {
            zeros.insert(0, DiscPoint::new(Complex64::default()).unwrap());
            FiniteBlaschkeProduct::new(Complex64::from_polar(1.0, phase), zeros).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mobius_is_an_involution(a in disc_point(0.9), r in 0.0..0.95f64, t in 0.0..std::f64::consts::TAU) {
        let z = Complex64::from_polar(r, t);
        let once = mobius(a, z).unwrap();
        let twice = mobius(a, once).unwrap();
        prop_assert!((twice - z).norm() < 1e-10);
    }

    #[test]
    fn products_are_unimodular_on_the_circle(b in product(5), t in 0.0..std::f64::consts::TAU) {
        let z = Complex64::from_polar(1.0, t);
        let v = b.evaluate(z).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn products_are_contractive_inside(b in product(5), r in 0.0..0.999f64, t in 0.0..std::f64::consts::TAU) {
        let v = b.evaluate(Complex64::from_polar(r, t)).unwrap();
        prop_assert!(v.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn composition_matches_pointwise_mobius(
        b in product(4),
        w in disc_point(0.8),
        r in 0.0..0.95f64,
        t in 0.0..std::f64::consts::TAU,
    ) {
        let composed = compose_mobius(w, &b).unwrap();
        let z = Complex64::from_polar(r, t);
        let direct = mobius(w, b.evaluate(z).unwrap()).unwrap();
        let via = composed.evaluate(z).unwrap();
        prop_assert!((via - direct).norm() < 1e-9);
    }

    #[test]
    fn level_sets_are_simple_boundary_roots(b in product(5), phi in 0.0..std::f64::consts::TAU) {
        let gamma = Complex64::from_polar(1.0, phi);
        let roots = b.solve_level_set(gamma).unwrap();
        prop_assert_eq!(roots.len(), b.degree());
        for (i, &z) in roots.iter().enumerate() {
            prop_assert!((z.norm() - 1.0).abs() < 1e-8);
            prop_assert!((b.evaluate(z).unwrap() - gamma).norm() < 1e-7);
            for &other in &roots[..i] {
                prop_assert!((z - other).norm() > 1e-6);
            }
        }
    }

    #[test]
    fn partial_fractions_reproduce_the_resolvent(
        b in product_through_origin(5),
        phi in 0.0..std::f64::consts::TAU,
        r in 0.0..0.9f64,
        t in 0.0..std::f64::consts::TAU,
    ) {
        let gamma = Complex64::from_polar(1.0, phi);
        let pf = b.partial_fractions(gamma).unwrap();
        let total: f64 = pf.iter().map(|&(_, c)| c).sum();
        prop_assert!((total - 1.0).abs() < 1e-10, "weights sum to {}", total);
        for &(_, c) in &pf {
            prop_assert!(c > 0.0);
        }
        let z = Complex64::from_polar(r, t);
        let lhs = (Complex64::new(1.0, 0.0) - gamma.conj() * b.evaluate(z).unwrap())
            .finv();
        let rhs: Complex64 = pf
            .iter()
            .map(|&(zeta, c)| c / (Complex64::new(1.0, 0.0) - zeta.conj() * z))
            .sum();
        prop_assert!((lhs - rhs).norm() < 1e-9, "residual {}", (lhs - rhs).norm());
    }

    #[test]
    fn fourier_roundtrip(values in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 64..=64)) {
        // fixed power-of-two size with arbitrary complex samples
        let pts: Vec<Complex64> = values.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        let grid = BoundaryGrid::new(pts.clone()).unwrap();
        let coeffs = fourier(&grid);
        let back = inverse_fourier(&coeffs, 64).unwrap();
        for (u, v) in back.values().iter().zip(&pts) {
            prop_assert!((u - v).norm() < 1e-10);
        }
    }
}

#[test]
fn taylor_matches_autodifferentiated_samples() {
    // Taylor coefficients recovered independently by discrete Cauchy integrals
    let b = FiniteBlaschkeProduct::new(
        Complex64::from_polar(1.0, 0.4),
        vec![
            DiscPoint::new(Complex64::new(0.3, 0.2)).unwrap(),
            DiscPoint::new(Complex64::new(-0.1, 0.5)).unwrap(),
        ],
    )
    .unwrap();
    let coeffs = b.taylor(10);
    let n = 4096;
    let r = 0.7f64;
    for (k, &c) in coeffs.iter().enumerate() {
        let mut acc = Complex64::default();
        for j in 0..n {
            let t = core::f64::consts::TAU * j as f64 / n as f64;
            let z = Complex64::from_polar(r, t);
            acc += b.evaluate(z).unwrap() * Complex64::from_polar(1.0, -(k as f64) * t);
        }
        let cauchy = acc / n as f64 / r.powi(k as i32);
        assert!(
            (cauchy - c).norm() < 1e-9,
            "coefficient {k}: cauchy {cauchy} vs taylor {c}"
        );
    }
}
