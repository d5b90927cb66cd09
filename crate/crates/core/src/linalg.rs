//! Exact linear algebra over the rationals.
//!
//! Everything here is exact: [`Scalar`] is an arbitrary-precision rational in
//! lowest terms, and elimination never rounds. Matrices are dense and
//! row-major. [`SparseColumns`] exists for the one place where density hurts,
//! the rank of the large degree-3 differentials.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field. `BigRational` keeps numerator and denominator coprime
/// with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`; anything with a decimal point or exponent is
/// rejected so that inputs stay exact.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let bad = || Error::Scalar(text.to_string());
    let parse_int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Scalar::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let n = parse_int(n.trim())?;
            let d = parse_int(d.trim())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
    }
}

pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn zeros(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`, skipping work when `c` is zero.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: zeros(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_entries(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(v).expect("rectangular literal")
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.entries)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let row = &mut out.entries[i * other.cols..(i + 1) * other.cols];
                axpy(row, a, other.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn nullspace_basis(&self) -> Vec<Vec<Scalar>> {
        nullspace_basis(self)
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        solve(self, b)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form of a row list, in place. Returns the pivot
/// columns; row `i` of the result has its leading one in `pivots[i]`.
fn rref(rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[r][j].is_zero()).collect();
        for &j in &support {
            rows[r][j] *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                row[j] -= &f * &pivot_row[j];
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn to_rows(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.rows).map(|i| m.row(i).to_vec()).collect()
}

/// Rank over Q by exact Gauss-Jordan elimination.
pub fn rank(m: &Matrix) -> usize {
    let mut rows = to_rows(m);
    rref(&mut rows, m.cols).len()
}

/// Indices of the pivot columns of the echelon form, i.e. the columns that
/// are not combinations of earlier ones.
pub fn pivot_columns(m: &Matrix) -> Vec<usize> {
    let mut rows = to_rows(m);
    rref(&mut rows, m.cols)
}

/// A basis of the kernel, one vector per free column of the echelon form.
pub fn nullspace_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut rows = to_rows(m);
    let pivots = rref(&mut rows, m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = zeros(m.cols);
            v[f] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][f].clone();
            }
            v
        })
        .collect()
}

/// Some exact solution of `m x = b` (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    let mut rows: Vec<Vec<Scalar>> = (0..m.rows)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = zeros(m.cols);
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][m.cols].clone();
    }
    Ok(Some(x))
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vec<Scalar>], v: &[Scalar]) -> Result<bool> {
    if let Some(bad) = vectors.iter().find(|u| u.len() != v.len()) {
        return Err(Error::Dimension(format!(
            "spanning vector of length {} against target of length {}",
            bad.len(),
            v.len()
        )));
    }
    if vectors.is_empty() {
        return Ok(is_zero_vec(v));
    }
    let m = Matrix::from_columns(v.len(), vectors)?;
    Ok(solve(&m, v)?.is_some())
}

/// Column-sparse matrix used for ranks of large, very sparse differentials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseColumns {
    rows: usize,
    columns: Vec<Vec<(usize, Scalar)>>,
}

impl SparseColumns {
    pub fn new(rows: usize) -> Self {
        Self { rows, columns: Vec::new() }
    }

    /// Appends a dense column, keeping only its nonzero entries.
    pub fn push_dense(&mut self, col: &[Scalar]) {
        debug_assert_eq!(col.len(), self.rows);
        self.columns.push(
            col.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect(),
        );
    }

    /// Appends a column given as `(row, value)` pairs sorted by row, with no zeros.
    pub fn push_sparse(&mut self, col: Vec<(usize, Scalar)>) {
        debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(col.iter().all(|(i, x)| *i < self.rows && !x.is_zero()));
        self.columns.push(col);
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.columns[j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }

    /// Rank by column reduction keyed on the lowest nonzero row.
    pub fn rank(&self) -> usize {
        let mut reduced: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
        for col in &self.columns {
            let mut c = col.clone();
            while let Some((low, lead)) = c.last().cloned() {
                match reduced.get(&low) {
                    Some(p) => {
                        let f = lead / &p.last().expect("stored columns are nonzero").1;
                        c = sub_scaled(&c, &f, p);
                    }
                    None => {
                        reduced.insert(low, c);
                        break;
                    }
                }
            }
        }
        reduced.len()
    }
}

/// `a - f * b` on sorted sparse vectors.
fn sub_scaled(a: &[(usize, Scalar)], f: &Scalar, b: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map_or(usize::MAX, |e| e.0);
        let jb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ia < jb {
            out.push(a[i].clone());
            i += 1;
        } else if jb < ia {
            out.push((jb, -(f * &b[j].1)));
            j += 1;
        } else {
            let x = &a[i].1 - f * &b[j].1;
            if !x.is_zero() {
                out.push((ia, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Largest absolute numerator or denominator, handy in reports.
pub fn height(v: &[Scalar]) -> BigInt {
    v.iter()
        .flat_map(|x| [x.numer().abs(), x.denom().clone()])
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(4, 2).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(0, 0).rank(), 0);
        assert_eq!(Matrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert!(Matrix::identity(2).nullspace_basis().is_empty());
        assert_eq!(Matrix::zeros(2, 3).nullspace_basis().len(), 3);
        let m = Matrix::from_i64(&[&[1, 1]]);
        let ns = m.nullspace_basis();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], -ns[0][1].clone());
        assert!(is_zero_vec(&m.mul_vec(&ns[0]).unwrap()));
    }

    #[test]
    fn solve_examples() {
        let x = Matrix::identity(2).solve(&v(&[3, 5])).unwrap().unwrap();
        assert_eq!(x, v(&[3, 5]));
        let m = Matrix::from_i64(&[&[1, 1]]);
        let x = m.solve(&v(&[2])).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], int(2));
        let m = Matrix::from_i64(&[&[1], &[1]]);
        assert_eq!(m.solve(&v(&[0, 1])).unwrap(), None);
        assert!(m.solve(&v(&[1])).is_err());
    }

    #[test]
    fn in_span_examples() {
        assert!(in_span(&[v(&[1, 0])], &v(&[2, 0])).unwrap());
        assert!(!in_span(&[v(&[1, 0])], &v(&[0, 1])).unwrap());
        assert!(in_span(&[], &v(&[0, 0])).unwrap());
        assert!(!in_span(&[], &v(&[0, 1])).unwrap());
        assert!(matches!(in_span(&[v(&[1])], &v(&[1, 0])), Err(Error::Dimension(_))));
    }

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_scalar("-4").unwrap(), int(-4));
        assert_eq!(parse_scalar(" 2/-4 ").unwrap(), frac(-1, 2));
        for bad in ["0.5", "1e3", "", "1/0", "x", "1/2/3", "--1"] {
            assert!(parse_scalar(bad).is_err(), "{bad} should be rejected");
        }
        assert_eq!(format_scalar(&frac(-6, 4)), "-3/2");
    }

    fn small_rational() -> impl Strategy<Value = Scalar> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| frac(n, d))
    }

    fn matrix_strategy() -> impl Strategy<Value = Matrix> {
        (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(
                prop_oneof![3 => Just(Scalar::zero()), 2 => small_rational()],
                r * c,
            )
            .prop_map(move |e| Matrix::from_entries(r, c, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in matrix_strategy()) {
            let ns = m.nullspace_basis();
            prop_assert_eq!(m.rank() + ns.len(), m.cols());
            for n in &ns {
                prop_assert!(is_zero_vec(&m.mul_vec(n).unwrap()));
            }
        }

        #[test]
        fn solve_is_exact(m in matrix_strategy(), seed in prop::collection::vec(small_rational(), 6)) {
            let x0: Vec<Scalar> = seed.into_iter().take(m.cols()).chain(std::iter::repeat(Scalar::zero())).take(m.cols()).collect();
            let b = m.mul_vec(&x0).unwrap();
            let x = m.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        }

        #[test]
        fn rank_invariant_under_row_ops(m in matrix_strategy(), c in small_rational()) {
            prop_assume!(m.rows() >= 2 && !c.is_zero());
            let mut rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
            rows.swap(0, 1);
            for x in rows[0].iter_mut() { *x *= &c; }
            let m2 = Matrix::from_rows(rows).unwrap();
            prop_assert_eq!(m.rank(), m2.rank());
        }

        #[test]
        fn sparse_rank_matches_dense(m in matrix_strategy()) {
            let mut s = SparseColumns::new(m.rows());
            for j in 0..m.cols() { s.push_dense(&m.column(j)); }
            prop_assert_eq!(s.rank(), m.rank());
            prop_assert_eq!(s.to_dense(), m);
        }
    }
}
