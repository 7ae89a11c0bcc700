//! Dense complex linear algebra on small square matrices: LU with partial
//! pivoting, Householder Hessenberg reduction, implicitly shifted QR
//! eigenvalues, and a Jacobi eigensolver for Hermitian matrices.

use alloc::vec;
use alloc::vec::Vec;
use libm::{hypot, sqrt};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    n: usize,
    a: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat { n, a: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::precondition("matrix rows must form a square"));
        }
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            a.extend_from_slice(r);
        }
        Ok(CMat { n, a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.a[i * self.n + j] = v;
    }

    pub fn adjoint(&self) -> CMat {
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.a[j * n + i] = self.at(i, j).conj();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.at(i, k);
                if aik == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += aik * rhs.at(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        let mut out = self.clone();
        for (o, r) in out.a.iter_mut().zip(&rhs.a) {
            *o += r;
        }
        out
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        let mut out = self.clone();
        for (o, r) in out.a.iter_mut().zip(&rhs.a) {
            *o -= r;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> CMat {
        let mut out = self.clone();
        for o in out.a.iter_mut() {
            *o *= s;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn fro_norm(&self) -> f64 {
        sqrt(self.a.iter().map(|v| v.norm_sqr()).sum())
    }
}

/// LU factorization with partial pivoting.
pub struct Lu {
    lu: CMat,
    piv: Vec<usize>,
    swaps: usize,
}

pub fn lu_factor(m: &CMat) -> Result<Lu> {
    let n = m.n;
    let mut lu = m.clone();
    let mut piv: Vec<usize> = (0..n).collect();
    let mut swaps = 0usize;
    let scale = lu.max_abs().max(1e-300);
    for k in 0..n {
        let mut best = k;
        let mut bestv = lu.at(k, k).norm();
        for i in k + 1..n {
            let v = lu.at(i, k).norm();
            if v > bestv {
                bestv = v;
                best = i;
            }
        }
        if bestv <= 1e-14 * scale {
            return Err(Error::numerical("singular or near-singular matrix in LU", Some(bestv)));
        }
        if best != k {
            for j in 0..n {
                let t = lu.at(k, j);
                lu.set(k, j, lu.at(best, j));
                lu.set(best, j, t);
            }
            piv.swap(k, best);
            swaps += 1;
        }
        let pivot = lu.at(k, k);
        for i in k + 1..n {
            let f = lu.at(i, k) / pivot;
            lu.set(i, k, f);
            if f == ZERO {
                continue;
            }
            for j in k + 1..n {
                let v = lu.at(i, j) - f * lu.at(k, j);
                lu.set(i, j, v);
            }
        }
    }
    Ok(Lu { lu, piv, swaps })
}

impl Lu {
    pub fn solve_vec(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.n;
        debug_assert_eq!(b.len(), n);
        let mut x: Vec<Complex64> = self.piv.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu.at(i, j) * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu.at(i, j) * x[j];
            }
            x[i] = acc / self.lu.at(i, i);
        }
        x
    }

    pub fn solve_mat(&self, b: &CMat) -> CMat {
        let n = self.lu.n;
        let mut out = CMat::zeros(n);
        let mut col = vec![ZERO; n];
        for j in 0..n {
            for i in 0..n {
                col[i] = b.at(i, j);
            }
            let x = self.solve_vec(&col);
            for i in 0..n {
                out.set(i, j, x[i]);
            }
        }
        out
    }

    pub fn det(&self) -> Complex64 {
        let n = self.lu.n;
        let mut d = if self.swaps.is_multiple_of(2) { ONE } else { -ONE };
        for i in 0..n {
            d *= self.lu.at(i, i);
        }
        d
    }
}

/// `A^{-1} B`.
pub fn solve(a: &CMat, b: &CMat) -> Result<CMat> {
    Ok(lu_factor(a)?.solve_mat(b))
}

pub fn inverse(a: &CMat) -> Result<CMat> {
    solve(a, &CMat::identity(a.n))
}

/// Householder reduction to upper Hessenberg form (similarity transform).
pub fn hessenberg(m: &CMat) -> CMat {
    let n = m.n;
    let mut a = m.clone();
    if n < 3 {
        return a;
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        let rows = n - (k + 1);
        let mut nx2 = 0.0f64;
        for i in 0..rows {
            nx2 += a.at(k + 1 + i, k).norm_sqr();
        }
        let nx = sqrt(nx2);
        if nx < 1e-300 {
            continue;
        }
        let x0 = a.at(k + 1, k);
        let ph = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        for i in 0..rows {
            v[i] = a.at(k + 1 + i, k);
        }
        v[0] += ph * nx;
        let mut nv2 = 0.0f64;
        for i in 0..rows {
            nv2 += v[i].norm_sqr();
        }
        let nv = sqrt(nv2);
        if nv < 1e-300 {
            continue;
        }
        for vi in v.iter_mut().take(rows) {
            *vi /= nv;
        }
        // A[k+1.., k..] -= 2 v (v* A[k+1.., k..])
        for j in k..n {
            let mut w = ZERO;
            for i in 0..rows {
                w += v[i].conj() * a.at(k + 1 + i, j);
            }
            w *= 2.0;
            for i in 0..rows {
                let val = a.at(k + 1 + i, j) - v[i] * w;
                a.set(k + 1 + i, j, val);
            }
        }
        // A[.., k+1..] -= 2 (A[.., k+1..] v) v*
        for i in 0..n {
            let mut w = ZERO;
            for jj in 0..rows {
                w += a.at(i, k + 1 + jj) * v[jj];
            }
            w *= 2.0;
            for jj in 0..rows {
                let val = a.at(i, k + 1 + jj) - w * v[jj].conj();
                a.set(i, k + 1 + jj, val);
            }
        }
    }
    a
}

/// All eigenvalues of a general complex matrix (Hessenberg + implicitly
/// shifted QR with Wilkinson shifts). Order is unspecified.
pub fn eigenvalues(m: &CMat) -> Result<Vec<Complex64>> {
    let n = m.n;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = hessenberg(m);
    let mut eig: Vec<Complex64> = Vec::with_capacity(n);
    let mut hi = n as isize - 1;
    let tol = 1e-13;
    let mut stall = 0usize;
    while hi >= 0 {
        let hh = hi as usize;
        if hh == 0 {
            eig.push(h.at(0, 0));
            hi -= 1;
            continue;
        }
        let off = h.at(hh, hh - 1).norm();
        if off <= tol * (h.at(hh, hh).norm() + h.at(hh - 1, hh - 1).norm() + 1e-300) {
            eig.push(h.at(hh, hh));
            hi -= 1;
            stall = 0;
            continue;
        }
        if stall > 400 {
            return Err(Error::numerical("QR eigenvalue iteration stalled", Some(off)));
        }
        // Wilkinson shift: eigenvalue of the trailing 2x2 nearest its (2,2) entry
        let a = h.at(hh - 1, hh - 1);
        let b = h.at(hh - 1, hh);
        let c = h.at(hh, hh - 1);
        let d = h.at(hh, hh);
        let tr = a + d;
        let det = a * d - b * c;
        let disc = (tr * tr - 4.0 * det).sqrt();
        let l1 = (tr + disc) * 0.5;
        let l2 = (tr - disc) * 0.5;
        let mut mu = if (l1 - d).norm() < (l2 - d).norm() { l1 } else { l2 };
        if stall % 16 == 15 {
            // exceptional shift: breaks symmetric stalls (cyclic companions
            // of z^n - γ have a zero Wilkinson shift forever)
            mu = d + Complex64::new(0.75 * h.at(hh, hh - 1).norm(), 0.0);
        }

        let mm = hh + 1; // active block is 0..mm
        let mut x = h.at(0, 0) - mu;
        let mut y = h.at(1, 0);
        for k in 0..mm - 1 {
            let r = hypot(x.norm(), y.norm());
            let (cg, sg) = if r < 1e-300 { (ONE, ZERO) } else { (x / r, y / r) };
            // G* from the left on rows k, k+1
            let lo = k.saturating_sub(1);
            for j in lo..mm {
                let rk = h.at(k, j);
                let rk1 = h.at(k + 1, j);
                h.set(k, j, cg.conj() * rk + sg.conj() * rk1);
                h.set(k + 1, j, -sg * rk + cg * rk1);
            }
            // G from the right on columns k, k+1
            let hi2 = core::cmp::min(k + 2, mm - 1);
            for i in 0..=hi2 {
                let ck = h.at(i, k);
                let ck1 = h.at(i, k + 1);
                h.set(i, k, ck * cg + ck1 * sg);
                h.set(i, k + 1, -ck * sg.conj() + ck1 * cg.conj());
            }
            if k < mm - 2 {
                x = h.at(k + 1, k);
                y = h.at(k + 2, k);
            }
        }
        stall += 1;
    }
    Ok(eig)
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Returns the (unsorted) real eigenvalues and the unitary `V` with
/// `A V = V diag`. The input must be Hermitian to ~1e-12 of its scale.
pub fn hermitian_eigen(m: &CMat) -> Result<(Vec<f64>, CMat)> {
    let n = m.n;
    let herm_err = m.sub(&m.adjoint()).max_abs();
    if herm_err > 1e-10 * (1.0 + m.max_abs()) {
        return Err(Error::precondition("matrix is not Hermitian"));
    }
    let mut a = m.clone();
    let mut v = CMat::identity(n);
    for _sweep in 0..80 {
        let mut off2 = 0.0f64;
        let mut scale = 1e-300f64;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    scale += a.at(i, i).norm_sqr();
                } else {
                    off2 += a.at(i, j).norm_sqr();
                }
            }
        }
        if off2 <= 1e-28 * scale {
            break;
        }
        let thresh = 1e-18 * sqrt(scale);
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let apq = a.at(p, q);
                let beta = apq.norm();
                if beta < thresh {
                    continue;
                }
                let ph = apq / beta;
                let alpha = a.at(p, p).re;
                let gamma = a.at(q, q).re;
                let tau = (gamma - alpha) / (2.0 * beta);
                let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (libm::fabs(tau) + sqrt(1.0 + tau * tau));
                let cr = 1.0 / sqrt(1.0 + t * t);
                let sr = t * cr;
                // G = diag(ph, 1) * [[c, s], [-s, c]]
                let gpp = ph * cr;
                let gpq = ph * sr;
                let gqp = Complex64::new(-sr, 0.0);
                let gqq = Complex64::new(cr, 0.0);
                // rows: A := G* A
                for j in 0..n {
                    let rp = a.at(p, j);
                    let rq = a.at(q, j);
                    a.set(p, j, gpp.conj() * rp + gqp.conj() * rq);
                    a.set(q, j, gpq.conj() * rp + gqq.conj() * rq);
                }
                // columns: A := A G, and accumulate V := V G
                for i in 0..n {
                    let cp = a.at(i, p);
                    let cq = a.at(i, q);
                    a.set(i, p, cp * gpp + cq * gqp);
                    a.set(i, q, cp * gpq + cq * gqq);
                    let vp = v.at(i, p);
                    let vq = v.at(i, q);
                    v.set(i, p, vp * gpp + vq * gqp);
                    v.set(i, q, vp * gpq + vq * gqq);
                }
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| a.at(i, i).re).collect();
    Ok((d, v))
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn hermitian_lambda_max(m: &CMat) -> Result<f64> {
    let (d, _) = hermitian_eigen(m)?;
    Ok(d.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

/// Operator (spectral) 2-norm via the Hermitian eigenproblem of `A* A`.
pub fn op_norm(m: &CMat) -> Result<f64> {
    if m.n == 0 {
        return Ok(0.0);
    }
    let g = m.adjoint().mul(m);
    let lam = hermitian_lambda_max(&g)?;
    Ok(sqrt(lam.max(0.0)))
}
