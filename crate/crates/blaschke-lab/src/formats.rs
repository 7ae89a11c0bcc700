//! JSON schemas for every object the command line reads or writes, with
//! lossless conversions to and from the core types.

use std::collections::BTreeMap;

use blaschke_core::{
    Atom, BoundaryGrid, Complex64, DiscPoint, Error, FiniteBlaschkeProduct,
    FourierCoefficients, InnerFunction, OperatorMatrix, Result, TaylorSeries,
};
use serde::{Deserialize, Serialize};

fn c(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

fn pair(v: Complex64) -> [f64; 2] {
    [v.re, v.im]
}

/// Boundary grid: `{"n": 8, "values": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridJson {
    pub n: usize,
    pub values: Vec<[f64; 2]>,
}

impl GridJson {
    pub fn from_grid(grid: &BoundaryGrid) -> Self {
        GridJson {
            n: grid.n(),
            values: grid.values().iter().map(|&v| pair(v)).collect(),
        }
    }

    pub fn to_grid(&self) -> Result<BoundaryGrid> {
        if self.n != self.values.len() {
            return Err(Error::precondition(
                "grid JSON: the declared size does not match the value count",
            ));
        }
        BoundaryGrid::new(self.values.iter().map(|&v| c(v)).collect())
    }
}

/// Sparse coefficients keyed by integer index:
/// `{"coeffs": {"-1": [re, im], "2": [re, im]}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffsJson {
    pub coeffs: BTreeMap<String, [f64; 2]>,
}

impl CoeffsJson {
    fn parsed(&self) -> Result<Vec<(i64, Complex64)>> {
        self.coeffs
            .iter()
            .map(|(k, &v)| {
                k.parse::<i64>()
                    .map(|idx| (idx, c(v)))
                    .map_err(|_| Error::precondition("coefficient keys must be integers"))
            })
            .collect()
    }

    pub fn to_fourier(&self) -> Result<FourierCoefficients> {
        Ok(FourierCoefficients::from_pairs(self.parsed()?))
    }

    /// Interpret the coefficients as a Taylor series: all indices must be
    /// nonnegative; gaps are zero.
    pub fn to_taylor(&self) -> Result<TaylorSeries> {
        let entries = self.parsed()?;
        let max = entries.iter().map(|&(k, _)| k).max().unwrap_or(0);
        if entries.iter().any(|&(k, _)| k < 0) {
            return Err(Error::precondition(
                "Taylor data must not contain negative indices",
            ));
        }
        let mut coeffs = vec![Complex64::default(); max as usize + 1];
        for (k, v) in entries {
            coeffs[k as usize] = v;
        }
        TaylorSeries::new(coeffs)
    }
}

/// Finite Blaschke product: `{"c": [re, im], "zeros": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FbpJson {
    pub c: [f64; 2],
    pub zeros: Vec<[f64; 2]>,
}

impl FbpJson {
    pub fn from_fbp(b: &FiniteBlaschkeProduct) -> Self {
        FbpJson {
            c: pair(b.constant()),
            zeros: b.zeros().iter().map(|a| pair(a.value())).collect(),
        }
    }

    pub fn to_fbp(&self) -> Result<FiniteBlaschkeProduct> {
        let zeros = self
            .zeros
            .iter()
            .map(|&z| DiscPoint::new(c(z)))
            .collect::<Result<Vec<_>>>()?;
        FiniteBlaschkeProduct::new(c(self.c), zeros)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomJson {
    pub theta: f64,
    pub mass: f64,
}

/// Inner function: Blaschke part plus atomic singular part.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InnerJson {
    pub fbp: FbpJson,
    #[serde(default)]
    pub atoms: Vec<AtomJson>,
}

impl InnerJson {
    pub fn from_inner(phi: &InnerFunction) -> Self {
        InnerJson {
            fbp: FbpJson::from_fbp(phi.blaschke()),
            atoms: phi
                .atoms()
                .iter()
                .map(|a| AtomJson { theta: a.theta, mass: a.mass })
                .collect(),
        }
    }

    pub fn to_inner(&self) -> Result<InnerFunction> {
        InnerFunction::new(
            self.fbp.to_fbp()?,
            self.atoms
                .iter()
                .map(|a| Atom { theta: a.theta, mass: a.mass })
                .collect(),
        )
    }
}

/// Square matrix: `{"n": 2, "re": [[...], [...]], "im": [[...], [...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_operator(t: &OperatorMatrix) -> Self {
        let n = t.n();
        MatrixJson {
            n,
            re: (0..n)
                .map(|i| (0..n).map(|j| t.entry(i, j).re).collect())
                .collect(),
            im: (0..n)
                .map(|i| (0..n).map(|j| t.entry(i, j).im).collect())
                .collect(),
        }
    }

    pub fn to_operator(&self) -> Result<OperatorMatrix> {
        let shape_ok = |m: &Vec<Vec<f64>>| {
            m.len() == self.n && m.iter().all(|row| row.len() == self.n)
        };
        if !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::precondition(
                "matrix JSON: re/im must both be n rows of n entries",
            ));
        }
        let rows: Vec<Vec<Complex64>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| Complex64::new(self.re[i][j], self.im[i][j]))
                    .collect()
            })
            .collect();
        OperatorMatrix::from_rows(&rows)
    }
}

/// Convex combination of finite Blaschke products.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CombinationJson {
    pub weights: Vec<f64>,
    pub items: Vec<FbpJson>,
}

/// The certificate block every approximation report embeds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub bound: f64,
    pub achieved: f64,
    pub grid: usize,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::precondition(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::precondition(format!("cannot parse {}: {e}", path.display())))
}
