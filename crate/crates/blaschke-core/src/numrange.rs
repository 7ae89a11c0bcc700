//! Numerical range and radius of finite matrices, Blaschke calculus on
//! operators, the resolvent partial-fraction identity, and the
//! Berger–Stampfli bound `w(B(rT)) ≤ 1`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::fabs;
use num_complex::Complex64;

use crate::blaschke::FiniteBlaschkeProduct;
use crate::error::{Error, Result};
use crate::linalg::{
    eigenvalues, hermitian_eigen, hermitian_lambda_max, inverse, op_norm, CMat,
};

pub const DEFAULT_OPERATOR_CAP: usize = 64;

/// A square complex matrix standing for an operator on ℂⁿ, `n ≤ 64`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: CMat,
}

impl OperatorMatrix {
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let entries = CMat::from_rows(rows)?;
        Self::from_matrix(entries)
    }

    pub(crate) fn from_matrix(entries: CMat) -> Result<Self> {
        if entries.n() == 0 || entries.n() > DEFAULT_OPERATOR_CAP {
            return Err(Error::precondition("operator dimension must lie in 1..=64"));
        }
        if !entries.max_abs().is_finite() {
            return Err(Error::precondition("operator entries must be finite"));
        }
        Ok(OperatorMatrix { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.n()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries.at(i, j)
    }

    pub fn matrix(&self) -> &CMat {
        &self.entries
    }
}

/// Result of a numerical-range sweep: the radius `w(T)`, one boundary point
/// of `W(T)` per sampled direction, and the direction count.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeReport {
    pub radius: f64,
    pub boundary_polygon: Vec<Complex64>,
    pub angles: usize,
}

/// Support value `h(φ) = λ_max((e^{-iφ}T + e^{iφ}T*)/2)` of `W(T)`.
fn support_value(t: &CMat, adj: &CMat, phi: f64) -> Result<f64> {
    let e = Complex64::from_polar(1.0, -phi);
    let h = t.scale(e).add(&adj.scale(e.conj())).scale(Complex64::new(0.5, 0.0));
    hermitian_lambda_max(&h)
}

fn radius_of_cmat(t: &CMat, m: usize) -> Result<RangeReport> {
    let n = t.n();
    let adj = t.adjoint();
    let mut values = Vec::with_capacity(m);
    let mut polygon = Vec::with_capacity(m);
    for j in 0..m {
        let phi = 2.0 * PI * j as f64 / m as f64;
        let e = Complex64::from_polar(1.0, -phi);
        let h = t.scale(e).add(&adj.scale(e.conj())).scale(Complex64::new(0.5, 0.0));
        let (d, vecs) = hermitian_eigen(&h)?;
        let mut top = 0;
        for i in 1..n {
            if d[i] > d[top] {
                top = i;
            }
        }
        // Rayleigh value of T at the top eigenvector: a support point of W(T)
        let mut p = Complex64::default();
        for r in 0..n {
            for c in 0..n {
                p += vecs.at(r, top).conj() * t.at(r, c) * vecs.at(c, top);
            }
        }
        polygon.push(p);
        values.push(d[top]);
    }
    // refine around the strongest sampled lobes: the support function of a
    // polygonal range has several cosine lobes and grid aliasing must not
    // pick the wrong one
    let mut peaks: Vec<usize> = (0..m)
        .filter(|&j| values[j] >= values[(j + m - 1) % m] && values[j] >= values[(j + 1) % m])
        .collect();
    peaks.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap());
    let mut radius = values.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let step = 2.0 * PI / m as f64;
    for &j in peaks.iter().take(3) {
        let phi = 2.0 * PI * j as f64 / m as f64;
        let mut lo = phi - step;
        let mut hi = phi + step;
        for _ in 0..80 {
            let t1 = lo + (hi - lo) / 3.0;
            let t2 = hi - (hi - lo) / 3.0;
            if support_value(t, &adj, t1)? < support_value(t, &adj, t2)? {
                lo = t1;
            } else {
                hi = t2;
            }
        }
        radius = radius.max(support_value(t, &adj, 0.5 * (lo + hi))?);
    }
    Ok(RangeReport { radius, boundary_polygon: polygon, angles: m })
}

/// `w(T)` by a support-function sweep over `m ≥ 64` directions with local
/// refinement; the boundary polygon collects one support point per
/// direction.
pub fn numerical_radius(t: &OperatorMatrix, m: usize) -> Result<RangeReport> {
    if m < 64 {
        return Err(Error::precondition("angle count must be at least 64"));
    }
    radius_of_cmat(&t.entries, m)
}

fn require_origin_zero(b: &FiniteBlaschkeProduct) -> Result<()> {
    if !b.zeros().iter().any(|a| a.value().norm() < 1e-13) {
        return Err(Error::precondition("the product must vanish at the origin"));
    }
    Ok(())
}

fn apply_to_cmat(b: &FiniteBlaschkeProduct, t: &CMat) -> Result<CMat> {
    require_origin_zero(b)?;
    let eigs = eigenvalues(t)?;
    let rho = eigs.iter().map(|l| l.norm()).fold(0.0, f64::max);
    if rho > 1.0 - 1e-6 {
        return Err(Error::precondition(
            "operator spectral radius must stay below 1 - 1e-6",
        ));
    }
    let n = t.n();
    let id = CMat::identity(n);
    let mut acc = id.scale(b.constant());
    for a in b.zeros() {
        let av = a.value();
        let x = id.scale(av).sub(t);
        let y = id.sub(&t.scale(av.conj()));
        let yinv = inverse(&y).map_err(|_| {
            Error::numerical("a factor I - conj(a)T is too ill-conditioned", None)
        })?;
        acc = acc.mul(&x).mul(&yinv);
    }
    Ok(acc)
}

/// `B(T) = c · Π_k (a_k I - T)(I - conj(a_k) T)^{-1}` for a product with
/// `B(0) = 0` and an operator with spectral radius below `1 - 1e-6`.
pub fn apply_fbp_to_operator(
    b: &FiniteBlaschkeProduct,
    t: &OperatorMatrix,
) -> Result<OperatorMatrix> {
    OperatorMatrix::from_matrix(apply_to_cmat(b, &t.entries)?)
}

/// Residual of the operator partial-fraction identity
/// `(I - conj(γ)B(T))^{-1} = Σ_k c_k (I - conj(ζ_k) T)^{-1}` in operator
/// norm; the `(ζ_k, c_k)` come from the boundary level set `B = γ`.
pub fn resolvent_partial_fraction_check(
    t: &OperatorMatrix,
    b: &FiniteBlaschkeProduct,
    gamma: Complex64,
) -> Result<f64> {
    if fabs(gamma.norm() - 1.0) > 1e-9 {
        return Err(Error::precondition("the level value must be unimodular"));
    }
    let bt = apply_to_cmat(b, &t.entries)?;
    let n = t.n();
    let id = CMat::identity(n);
    let lhs_arg = id.sub(&bt.scale(gamma.conj()));
    let lhs = inverse(&lhs_arg)
        .map_err(|_| Error::precondition("I - conj(gamma)B(T) is singular"))?;
    let mut rhs = CMat::zeros(n);
    for (zeta, c) in b.partial_fractions(gamma)? {
        let factor = id.sub(&t.entries.scale(zeta.conj()));
        let finv = inverse(&factor).map_err(|_| {
            Error::numerical("a resolvent factor I - conj(zeta)T is singular", None)
        })?;
        rhs = rhs.add(&finv.scale(Complex64::new(c, 0.0)));
    }
    op_norm(&lhs.sub(&rhs))
}

/// Outcome of one Berger–Stampfli verification.
#[derive(Debug, Clone, PartialEq)]
pub struct BergerStampfliReport {
    pub w_t: f64,
    pub w_bt: f64,
    pub pass: bool,
}

/// Verify `w(B(rT)) ≤ 1 + tol` after rescaling `T` to numerical radius 1
/// and contracting by `r = 0.999` (which keeps the spectral radius inside
/// the disc, since `ρ ≤ w`).
pub fn berger_stampfli_check(
    t: &OperatorMatrix,
    b: &FiniteBlaschkeProduct,
    tol: f64,
) -> Result<BergerStampfliReport> {
    if !(tol >= 0.0) {
        return Err(Error::precondition("tolerance must be nonnegative"));
    }
    require_origin_zero(b)?;
    let w_t = radius_of_cmat(&t.entries, 720)?.radius;
    let scale = if w_t > 1e-12 { 0.999 / w_t } else { 1.0 };
    let contracted = t.entries.scale(Complex64::new(scale, 0.0));
    let bt = apply_to_cmat(b, &contracted)?;
    let w_bt = radius_of_cmat(&bt, 720)?.radius;
    Ok(BergerStampfliReport { w_t, w_bt, pass: w_bt <= 1.0 + tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::DiscPoint;

    fn op(rows: &[&[(f64, f64)]]) -> OperatorMatrix {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&(a, b)| Complex64::new(a, b)).collect())
            .collect();
        OperatorMatrix::from_rows(&rows).unwrap()
    }

    struct Lcg(u64);
    impl Lcg {
        fn next_f64(&mut self) -> f64 {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((self.0 >> 33) as f64 / (1u64 << 31) as f64) * 2.0 - 1.0
        }
        fn next_c(&mut self) -> Complex64 {
            Complex64::new(self.next_f64(), self.next_f64())
        }
    }

    fn random_matrix(rng: &mut Lcg, n: usize, scale: f64) -> OperatorMatrix {
        let rows: Vec<Vec<Complex64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.next_c() * scale).collect())
            .collect();
        OperatorMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn radius_known_matrices() {
        let shift = op(&[&[(0.0, 0.0), (1.0, 0.0)], &[(0.0, 0.0), (0.0, 0.0)]]);
        let r = numerical_radius(&shift, 128).unwrap();
        assert!(fabs(r.radius - 0.5) < 1e-12, "nilpotent radius {}", r.radius);

        let normal = op(&[&[(1.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (0.0, 1.0)]]);
        let r = numerical_radius(&normal, 128).unwrap();
        assert!(fabs(r.radius - 1.0) < 1e-12, "normal radius {}", r.radius);

        assert!(numerical_radius(&shift, 32).is_err());
    }

    #[test]
    fn radius_selfadjoint_is_norm() {
        let mut rng = Lcg(7);
        for _ in 0..4 {
            let a = random_matrix(&mut rng, 4, 1.0);
            let h = a.matrix().add(&a.matrix().adjoint());
            let t = OperatorMatrix::from_matrix(h).unwrap();
            let w = numerical_radius(&t, 128).unwrap().radius;
            let norm = op_norm(t.matrix()).unwrap();
            assert!(fabs(w - norm) < 1e-9, "{w} vs {norm}");
        }
    }

    #[test]
    fn radius_sandwich_and_rotation() {
        let mut rng = Lcg(21);
        for _ in 0..4 {
            let t = random_matrix(&mut rng, 4, 1.0);
            let rep = numerical_radius(&t, 256).unwrap();
            let norm = op_norm(t.matrix()).unwrap();
            assert!(rep.radius >= norm / 2.0 - 1e-9 && rep.radius <= norm + 1e-9);
            let rotated = OperatorMatrix::from_matrix(
                t.matrix().scale(Complex64::from_polar(1.0, 0.7)),
            )
            .unwrap();
            let wr = numerical_radius(&rotated, 256).unwrap().radius;
            assert!(fabs(wr - rep.radius) < 1e-9, "{wr} vs {}", rep.radius);
        }
    }

    #[test]
    fn rayleigh_values_respect_support() {
        let mut rng = Lcg(5);
        let t = random_matrix(&mut rng, 3, 1.0);
        let rep = numerical_radius(&t, 64).unwrap();
        let adj = t.matrix().adjoint();
        for _ in 0..200 {
            // random unit vector
            let mut x = [rng.next_c(), rng.next_c(), rng.next_c()];
            let norm = (x.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt();
            for v in x.iter_mut() {
                *v /= norm;
            }
            let mut p = Complex64::default();
            for r in 0..3 {
                for c in 0..3 {
                    p += x[r].conj() * t.matrix().at(r, c) * x[c];
                }
            }
            assert!(p.norm() <= rep.radius + 1e-9);
            for j in 0..64 {
                let phi = 2.0 * PI * j as f64 / 64.0;
                let h = support_value(t.matrix(), &adj, phi).unwrap();
                assert!((p * Complex64::from_polar(1.0, -phi)).re <= h + 1e-6);
            }
        }
    }

    #[test]
    fn apply_identity_and_square() {
        let t = op(&[&[(0.3, 0.1), (0.2, 0.0)], &[(0.0, -0.1), (-0.25, 0.05)]]);
        let bt = apply_fbp_to_operator(&FiniteBlaschkeProduct::monomial(1), &t).unwrap();
        assert!(bt.matrix().sub(t.matrix()).max_abs() < 1e-13);
        let bt2 = apply_fbp_to_operator(&FiniteBlaschkeProduct::monomial(2), &t).unwrap();
        assert!(bt2.matrix().sub(&t.matrix().mul(t.matrix())).max_abs() < 1e-13);
    }

    #[test]
    fn apply_matches_spectral_pushforward() {
        // diagonalizable T = S D S^{-1} with spectrum inside 0.8*D
        let s = op(&[
            &[(1.0, 0.0), (0.3, 0.1), (0.0, 0.2)],
            &[(0.0, 0.0), (1.0, 0.0), (-0.2, 0.1)],
            &[(0.1, 0.0), (0.0, 0.0), (1.0, 0.0)],
        ]);
        let lam = [
            Complex64::new(0.6, 0.2),
            Complex64::new(-0.3, 0.5),
            Complex64::new(0.1, -0.7),
        ];
        let mut d = CMat::zeros(3);
        for (i, &l) in lam.iter().enumerate() {
            d.set(i, i, l);
        }
        let sinv = inverse(s.matrix()).unwrap();
        let t = OperatorMatrix::from_matrix(s.matrix().mul(&d).mul(&sinv)).unwrap();
        let b = FiniteBlaschkeProduct::new(
            Complex64::new(1.0, 0.0),
            alloc::vec![
                DiscPoint::new(Complex64::default()).unwrap(),
                DiscPoint::new(Complex64::new(0.5, 0.0)).unwrap(),
            ],
        )
        .unwrap();
        let bt = apply_fbp_to_operator(&b, &t).unwrap();
        let mut got = eigenvalues(bt.matrix()).unwrap();
        for &l in &lam {
            let want = b.evaluate(l).unwrap();
            let (best, _) = got.iter().enumerate().fold(
                (0, f64::INFINITY),
                |(bi, bd), (i, g)| {
                    let d = (g - want).norm();
                    if d < bd {
                        (i, d)
                    } else {
                        (bi, bd)
                    }
                },
            );
            assert!((got[best] - want).norm() < 1e-8, "{want}");
            got.remove(best);
        }
    }

    #[test]
    fn apply_preconditions() {
        let t = op(&[&[(0.5, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (0.5, 0.0)]]);
        let no_origin = FiniteBlaschkeProduct::new(
            Complex64::new(1.0, 0.0),
            alloc::vec![DiscPoint::new(Complex64::new(0.4, 0.0)).unwrap()],
        )
        .unwrap();
        assert!(apply_fbp_to_operator(&no_origin, &t).is_err());
        let big = op(&[&[(1.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (0.5, 0.0)]]);
        assert!(apply_fbp_to_operator(&FiniteBlaschkeProduct::monomial(1), &big).is_err());
    }

    #[test]
    fn resolvent_identity_cases() {
        let half = op(&[&[(0.5, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (0.5, 0.0)]]);
        let r = resolvent_partial_fraction_check(
            &half,
            &FiniteBlaschkeProduct::monomial(1),
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        assert!(r < 1e-12, "residual {r}");

        let nil = op(&[&[(0.0, 0.0), (0.35, 0.0)], &[(0.0, 0.0), (0.0, 0.0)]]);
        let r = resolvent_partial_fraction_check(
            &nil,
            &FiniteBlaschkeProduct::monomial(2),
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        assert!(r < 1e-12, "residual {r}");

        let mut rng = Lcg(33);
        let t = random_matrix(&mut rng, 4, 0.3);
        let b = FiniteBlaschkeProduct::new(
            Complex64::from_polar(1.0, 0.3),
            alloc::vec![
                DiscPoint::new(Complex64::default()).unwrap(),
                DiscPoint::new(Complex64::new(0.3, 0.4)).unwrap(),
                DiscPoint::new(Complex64::new(-0.5, 0.1)).unwrap(),
            ],
        )
        .unwrap();
        let r = resolvent_partial_fraction_check(&t, &b, Complex64::from_polar(1.0, 1.1))
            .unwrap();
        assert!(r < 1e-8, "residual {r}");
    }

    #[test]
    fn berger_stampfli_known_and_ensemble() {
        let jordan = op(&[&[(0.0, 0.0), (2.0, 0.0)], &[(0.0, 0.0), (0.0, 0.0)]]);
        let rep =
            berger_stampfli_check(&jordan, &FiniteBlaschkeProduct::monomial(2), 1e-8).unwrap();
        assert!(fabs(rep.w_t - 1.0) < 1e-9);
        assert!(rep.w_bt < 1e-12);
        assert!(rep.pass);

        let mut rng = Lcg(101);
        for _ in 0..12 {
            let t = random_matrix(&mut rng, 3, 1.0);
            let mut zeros = alloc::vec![DiscPoint::new(Complex64::default()).unwrap()];
            for _ in 0..2 {
                zeros.push(DiscPoint::new(rng.next_c() * 0.6).unwrap());
            }
            let b = FiniteBlaschkeProduct::new(Complex64::new(1.0, 0.0), zeros).unwrap();
            let rep = berger_stampfli_check(&t, &b, 1e-8).unwrap();
            assert!(rep.pass, "w(B(rT)) = {}", rep.w_bt);
        }
    }
}
