//! Built-in named test functions: Taylor targets, Blaschke products,
//! boundary grid functions, inner functions with atoms, and matrices.

use blaschke_core::{
    Atom, BoundaryGrid, Complex64, DiscPoint, Error, FiniteBlaschkeProduct, InnerFunction,
    OperatorMatrix, Result, TaylorSeries,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: &'static str,
    pub summary: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "exp_shift", kind: "taylor", summary: "e^{z-1}, a ball function positive at the origin" },
    CatalogEntry { name: "fbp1", kind: "fbp", summary: "degree-1 product, zero 0.4" },
    CatalogEntry { name: "fbp2", kind: "fbp", summary: "degree-2 product, zeros 0.4 and -0.3+0.2i" },
    CatalogEntry { name: "fbp3", kind: "fbp", summary: "degree-3 product, adds zero 0.1-0.5i" },
    CatalogEntry { name: "fbp4", kind: "fbp", summary: "degree-4 product, adds zero -0.6i" },
    CatalogEntry { name: "zero", kind: "grid", summary: "the zero function" },
    CatalogEntry { name: "ball_085", kind: "grid", summary: "0.85 e^{i(θ+0.3 sin θ)}, a ball target" },
    CatalogEntry { name: "e_itheta", kind: "grid", summary: "e^{iθ}" },
    CatalogEntry { name: "e_5itheta", kind: "grid", summary: "e^{5iθ}" },
    CatalogEntry { name: "e_neg_itheta", kind: "grid", summary: "e^{-iθ}" },
    CatalogEntry { name: "winding1", kind: "grid", summary: "e^{i(θ+0.5 sin 3θ)}, winding number 1" },
    CatalogEntry { name: "conj_blaschke_a04", kind: "grid", summary: "conjugated boundary trace of fbp1" },
    CatalogEntry { name: "two_valued_step", kind: "grid", summary: "e^{iπ/2} on [1,2.2)∪[4,4.9), else 1" },
    CatalogEntry { name: "atom_pi", kind: "inner", summary: "one boundary atom of mass π over fbp1" },
    CatalogEntry { name: "atom_2pi", kind: "inner", summary: "one boundary atom of mass 2π over fbp1" },
    CatalogEntry { name: "fbp_atom_pi", kind: "inner", summary: "fbp3 with an atom of mass π" },
    CatalogEntry { name: "nilpotent2", kind: "matrix", summary: "[[0,1],[0,0]], numerical radius 1/2" },
    CatalogEntry { name: "nilpotent2w1", kind: "matrix", summary: "[[0,2],[0,0]], numerical radius 1" },
    CatalogEntry { name: "diag_1_i", kind: "matrix", summary: "diag(1, i), normal with radius 1" },
    CatalogEntry { name: "jordan3", kind: "matrix", summary: "3x3 Jordan block at 0.3" },
    CatalogEntry { name: "normal4", kind: "matrix", summary: "diag(0.9, -0.4+0.3i, 0.2i, -0.7)" },
];

fn unknown(kind: &str, name: &str) -> Error {
    Error::precondition(format!("unknown {kind} catalog entry '{name}'"))
}

pub fn taylor_target(name: &str, order: usize) -> Result<TaylorSeries> {
    match name {
        "exp_shift" => {
            let mut coeffs = Vec::with_capacity(order + 1);
            let mut c = (-1.0f64).exp();
            coeffs.push(Complex64::new(c, 0.0));
            for k in 1..=order {
                c /= k as f64;
                coeffs.push(Complex64::new(c, 0.0));
            }
            TaylorSeries::new(coeffs)
        }
        _ => Err(unknown("taylor", name)),
    }
}

pub fn fbp_target(name: &str) -> Result<FiniteBlaschkeProduct> {
    let zeros: &[Complex64] = match name {
        "fbp1" => &[Complex64::new(0.4, 0.0)],
        "fbp2" => &[Complex64::new(0.4, 0.0), Complex64::new(-0.3, 0.2)],
        "fbp3" => &[
            Complex64::new(0.4, 0.0),
            Complex64::new(-0.3, 0.2),
            Complex64::new(0.1, -0.5),
        ],
        "fbp4" => &[
            Complex64::new(0.4, 0.0),
            Complex64::new(-0.3, 0.2),
            Complex64::new(0.1, -0.5),
            Complex64::new(0.0, -0.6),
        ],
        _ => return Err(unknown("fbp", name)),
    };
    FiniteBlaschkeProduct::new(
        Complex64::from_polar(1.0, 0.7),
        zeros.iter().map(|&z| DiscPoint::new(z).unwrap()).collect(),
    )
}

pub fn grid_target(name: &str, n: usize) -> Result<BoundaryGrid> {
    match name {
        "zero" => BoundaryGrid::from_fn(n, |_| Complex64::default()),
        "ball_085" => {
            BoundaryGrid::from_fn(n, |t| Complex64::from_polar(0.85, t + 0.3 * t.sin()))
        }
        "e_itheta" => BoundaryGrid::from_fn(n, |t| Complex64::from_polar(1.0, t)),
        "e_5itheta" => BoundaryGrid::from_fn(n, |t| Complex64::from_polar(1.0, 5.0 * t)),
        "e_neg_itheta" => BoundaryGrid::from_fn(n, |t| Complex64::from_polar(1.0, -t)),
        "winding1" => {
            BoundaryGrid::from_fn(n, |t| Complex64::from_polar(1.0, t + 0.5 * (3.0 * t).sin()))
        }
        "conj_blaschke_a04" => {
            let b = fbp_target("fbp1")?;
            BoundaryGrid::from_fn(n, |t| {
                b.evaluate(Complex64::from_polar(1.0, t)).unwrap().conj()
            })
        }
        "two_valued_step" => BoundaryGrid::from_fn(n, |t| {
            if (1.0..2.2).contains(&t) || (4.0..4.9).contains(&t) {
                Complex64::from_polar(1.0, core::f64::consts::FRAC_PI_2)
            } else {
                Complex64::new(1.0, 0.0)
            }
        }),
        _ => Err(unknown("grid", name)),
    }
}

pub fn inner_target(name: &str) -> Result<InnerFunction> {
    match name {
        "atom_pi" => InnerFunction::new(
            fbp_target("fbp1")?,
            vec![Atom { theta: 2.2, mass: core::f64::consts::PI }],
        ),
        "atom_2pi" => InnerFunction::new(
            fbp_target("fbp1")?,
            vec![Atom { theta: 2.2, mass: core::f64::consts::TAU }],
        ),
        "fbp_atom_pi" => InnerFunction::new(
            fbp_target("fbp3")?,
            vec![Atom { theta: 0.9, mass: core::f64::consts::PI }],
        ),
        _ => Err(unknown("inner", name)),
    }
}

pub fn matrix_target(name: &str) -> Result<OperatorMatrix> {
    let rows: Vec<Vec<Complex64>> = match name {
        "nilpotent2" => vec![
            vec![Complex64::default(), Complex64::new(1.0, 0.0)],
            vec![Complex64::default(), Complex64::default()],
        ],
        "nilpotent2w1" => vec![
            vec![Complex64::default(), Complex64::new(2.0, 0.0)],
            vec![Complex64::default(), Complex64::default()],
        ],
        "diag_1_i" => vec![
            vec![Complex64::new(1.0, 0.0), Complex64::default()],
            vec![Complex64::default(), Complex64::new(0.0, 1.0)],
        ],
        "jordan3" => {
            let l = Complex64::new(0.3, 0.0);
            let one = Complex64::new(1.0, 0.0);
            vec![
                vec![l, one, Complex64::default()],
                vec![Complex64::default(), l, one],
                vec![Complex64::default(), Complex64::default(), l],
            ]
        }
        "normal4" => {
            let d = [
                Complex64::new(0.9, 0.0),
                Complex64::new(-0.4, 0.3),
                Complex64::new(0.0, 0.2),
                Complex64::new(-0.7, 0.0),
            ];
            (0..4)
                .map(|i| {
                    (0..4)
                        .map(|j| if i == j { d[i] } else { Complex64::default() })
                        .collect()
                })
                .collect()
        }
        _ => return Err(unknown("matrix", name)),
    };
    OperatorMatrix::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use blaschke_core::{fourier, inverse_fourier};

    #[test]
    fn names_are_unique_and_resolvable() {
        for (i, e) in CATALOG.iter().enumerate() {
            for other in &CATALOG[..i] {
                assert_ne!(e.name, other.name);
            }
            let ok = match e.kind {
                "taylor" => taylor_target(e.name, 16).is_ok(),
                "fbp" => fbp_target(e.name).is_ok(),
                "grid" => grid_target(e.name, 256).is_ok(),
                "inner" => inner_target(e.name).is_ok(),
                "matrix" => matrix_target(e.name).is_ok(),
                _ => false,
            };
            assert!(ok, "{} does not resolve", e.name);
        }
        assert!(CATALOG.iter().any(|e| e.name == "exp_shift"));
    }

    #[test]
    fn catalog_products_are_unimodular_on_the_boundary() {
        for e in CATALOG.iter().filter(|e| e.kind == "fbp") {
            let b = fbp_target(e.name).unwrap();
            for j in 0..64 {
                let z = Complex64::from_polar(1.0, core::f64::consts::TAU * j as f64 / 64.0);
                assert!((b.evaluate(z).unwrap().norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn catalog_grids_roundtrip_fourier() {
        for e in CATALOG.iter().filter(|e| e.kind == "grid") {
            let g = grid_target(e.name, 512).unwrap();
            let back = inverse_fourier(&fourier(&g), 512).unwrap();
            for (a, b) in g.values().iter().zip(back.values()) {
                assert!((a - b).norm() < 1e-12, "{} fails the round trip", e.name);
            }
        }
    }
}
