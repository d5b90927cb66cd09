//! Matrices of the total differential and the cohomology questions they answer.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{Bicomplex, Cochain, Shape, TotalCochain};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, pivot_columns, zeros, Matrix, Scalar, SparseColumns};

/// Default upper bound on the degrees the command line computes without `--force`.
pub const DEFAULT_DEGREE_CAP: usize = 3;

/// Environment variable that overrides [`DEFAULT_DEGREE_CAP`].
pub const DEGREE_CAP_ENV: &str = "CPAIR_DEGREE_CAP";

/// The cap in effect: the environment override if it parses, else the default.
pub fn degree_cap() -> usize {
    std::env::var(DEGREE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DEGREE_CAP)
}

/// Refuses degrees above `cap`, quoting the size of the space involved.
pub fn check_degree(degree: usize, cap: usize, dim: usize) -> Result<()> {
    if degree > cap {
        return Err(Error::DegreeCap { degree, cap, dim });
    }
    Ok(())
}

/// Coordinates of `C^n_tot`: where each bidegree starts in the flat vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasisIndex {
    pub n: usize,
    pub shapes: Vec<Shape>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl GradedBasisIndex {
    pub fn new(bc: &Bicomplex<'_>, n: usize) -> Self {
        let shapes: Vec<Shape> = (0..=n).map(|k| bc.shape(n - k, k)).collect();
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for s in &shapes {
            offsets.push(total);
            total += s.len();
        }
        Self { n, shapes, offsets, total }
    }

    /// Bidegree `(p, q)` and local coordinate of a flat index.
    pub fn locate(&self, i: usize) -> (usize, usize, usize) {
        let k = self.offsets.iter().rposition(|&o| o <= i).expect("offsets start at zero");
        (self.n - k, k, i - self.offsets[k])
    }
}

pub fn total_space_dim(bc: &Bicomplex<'_>, n: usize) -> usize {
    GradedBasisIndex::new(bc, n).total
}

/// Which complex a cohomology question is asked about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Column {
    /// The total complex of the bicomplex.
    Total,
    /// The `p = 0` row: the Leibniz complex `Hom(L^q, P)`.
    Leibniz,
    /// The Hochschild complex `Hom(A^p, M)`, with `C^0 = M`.
    Hochschild,
}

impl FromStr for Column {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "total" => Ok(Self::Total),
            "leibniz" => Ok(Self::Leibniz),
            "hochschild" => Ok(Self::Hochschild),
            other => Err(Error::Input(format!("unknown column {other:?}"))),
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Total => "total",
            Self::Leibniz => "leibniz",
            Self::Hochschild => "hochschild",
        })
    }
}

type SparseVec = Vec<(usize, Scalar)>;

fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

/// Dimension of the degree-`n` space of a column.
pub fn space_dim(bc: &Bicomplex<'_>, column: Column, n: usize) -> usize {
    match column {
        Column::Total => total_space_dim(bc, n),
        Column::Leibniz => bc.shape(0, n).len(),
        Column::Hochschild if n == 0 => bc.module().m_dim(),
        Column::Hochschild => bc.shape(n, 0).len(),
    }
}

/// Image of the `j`-th basis vector of degree `n` under the column's differential.
fn image_of_basis(bc: &Bicomplex<'_>, column: Column, n: usize, j: usize) -> Result<Vec<Scalar>> {
    let dim = space_dim(bc, column, n);
    match column {
        Column::Total => {
            let c = bc.total_from_flat(n, &unit(dim, j))?;
            Ok(bc.total_delta(&c)?.flatten())
        }
        Column::Leibniz => {
            let f = Cochain::from_coeffs(bc.shape(0, n), unit(dim, j))?;
            Ok(bc.leibniz_delta(&f)?.into_coeffs())
        }
        Column::Hochschild if n == 0 => {
            // δm(a) = a·m - m·a
            let module = bc.module();
            let da = bc.pair().dim_a();
            let mut out = zeros(da * module.m_dim());
            for a in 0..da {
                for (k, (l, r)) in module.left_act.slot(a, j).iter().zip(module.right_act.slot(j, a)).enumerate() {
                    out[a * module.m_dim() + k] = l - r;
                }
            }
            Ok(out)
        }
        Column::Hochschild => {
            let f = Cochain::from_coeffs(bc.shape(n, 0), unit(dim, j))?;
            Ok(bc.hochschild_delta(&f)?.into_coeffs())
        }
    }
}

/// Columns of the differential leaving degree `n`, assembled in parallel.
pub fn differential_columns(bc: &Bicomplex<'_>, column: Column, n: usize) -> Result<Vec<SparseVec>> {
    (0..space_dim(bc, column, n))
        .into_par_iter()
        .map(|j| image_of_basis(bc, column, n, j).map(|v| sparse(&v)))
        .collect()
}

pub fn differential_sparse(bc: &Bicomplex<'_>, column: Column, n: usize) -> Result<SparseColumns> {
    let rows = space_dim(bc, column, n + 1);
    let mut m = SparseColumns::new(rows);
    for col in differential_columns(bc, column, n)? {
        m.push_sparse(col);
    }
    Ok(m)
}

pub fn differential_matrix(bc: &Bicomplex<'_>, column: Column, n: usize) -> Result<Matrix> {
    Ok(differential_sparse(bc, column, n)?.to_dense())
}

/// Matrix of `δ_tot: C^n_tot -> C^{n+1}_tot` in the canonical coordinates.
pub fn total_delta_matrix(bc: &Bicomplex<'_>, n: usize) -> Result<Matrix> {
    differential_matrix(bc, Column::Total, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub column: Column,
    pub degree: usize,
    pub cochain_dim: usize,
    pub kernel_dim: usize,
    pub incoming_rank: usize,
    pub dim: usize,
}

/// `dim H^n = dim ker δ^n - rank δ^{n-1}` for the chosen column.
pub fn column_cohomology(bc: &Bicomplex<'_>, column: Column, n: usize) -> Result<CohomologyReport> {
    let cochain_dim = space_dim(bc, column, n);
    let out_rank = differential_sparse(bc, column, n)?.rank();
    let incoming_rank = if n == 0 { 0 } else { differential_sparse(bc, column, n - 1)?.rank() };
    let kernel_dim = cochain_dim - out_rank;
    Ok(CohomologyReport {
        column,
        degree: n,
        cochain_dim,
        kernel_dim,
        incoming_rank,
        dim: kernel_dim - incoming_rank,
    })
}

/// Dimension of the total cohomology `HL^n(A, L; M, P)`.
pub fn cohomology_dim(bc: &Bicomplex<'_>, n: usize) -> Result<usize> {
    Ok(column_cohomology(bc, Column::Total, n)?.dim)
}

pub fn is_cocycle(bc: &Bicomplex<'_>, c: &TotalCochain) -> Result<bool> {
    Ok(bc.total_delta(c)?.is_zero())
}

/// A preimage of `c` under `δ_tot`, if there is one. Degree 0 has no
/// incoming differential, so it is rejected.
pub fn is_coboundary(bc: &Bicomplex<'_>, c: &TotalCochain) -> Result<Option<TotalCochain>> {
    let n = c.degree();
    if n == 0 {
        return Err(Error::Input("degree-0 cochains have no coboundary preimage".into()));
    }
    let m = total_delta_matrix(bc, n - 1)?;
    match m.solve(&c.flatten())? {
        Some(x) => Ok(Some(bc.total_from_flat(n - 1, &x)?)),
        None => Ok(None),
    }
}

/// Flat coordinates of a basis of `H^n` lifted to cocycles: kernel vectors of
/// `δ^n` that are independent modulo the image of `δ^{n-1}`.
pub fn column_representatives(bc: &Bicomplex<'_>, column: Column, n: usize) -> Result<Vec<Vec<Scalar>>> {
    let kernel = differential_matrix(bc, column, n)?.nullspace_basis();
    let image: Vec<Vec<Scalar>> = if n == 0 {
        Vec::new()
    } else {
        let d = differential_matrix(bc, column, n - 1)?;
        (0..d.cols()).map(|j| d.column(j)).filter(|v| !is_zero_vec(v)).collect()
    };
    let rows = space_dim(bc, column, n);
    let all: Vec<Vec<Scalar>> = image.iter().chain(&kernel).cloned().collect();
    let m = Matrix::from_columns(rows, &all)?;
    Ok(pivot_columns(&m)
        .into_iter()
        .filter(|&j| j >= image.len())
        .map(|j| kernel[j - image.len()].clone())
        .collect())
}

/// Cocycle representatives of a basis of `HL^n`.
pub fn class_representatives(bc: &Bicomplex<'_>, n: usize) -> Result<Vec<TotalCochain>> {
    column_representatives(bc, Column::Total, n)?
        .iter()
        .map(|v| bc.total_from_flat(n, v))
        .collect()
}

/// Whether the given degree-`n` cocycles are linearly independent modulo
/// coboundaries.
pub fn independent_in_cohomology(bc: &Bicomplex<'_>, classes: &[TotalCochain]) -> Result<bool> {
    let Some(first) = classes.first() else {
        return Ok(true);
    };
    let n = first.degree();
    let image: Vec<Vec<Scalar>> = if n == 0 {
        Vec::new()
    } else {
        let d = total_delta_matrix(bc, n - 1)?;
        (0..d.cols()).map(|j| d.column(j)).collect()
    };
    let rows = total_space_dim(bc, n);
    let base = if image.is_empty() { 0 } else { Matrix::from_columns(rows, &image)?.rank() };
    let all: Vec<Vec<Scalar>> = image.into_iter().chain(classes.iter().map(TotalCochain::flatten)).collect();
    Ok(Matrix::from_columns(rows, &all)?.rank() == base + classes.len())
}
