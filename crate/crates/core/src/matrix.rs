//! Graded polynomial matrices.
//!
//! A matrix represents a map of graded free modules `⊕ S(-c_j) -> ⊕ S(-r_i)`. Row `i`
//! carries the target shift `r_i`, column `j` carries the source shift `c_j`, and a
//! nonzero entry `(i, j)` of a homogeneous matrix has degree `c_j - r_i`.
//! Storage is column-major; each column is one element of the target free module.

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::poly::{PolyRing, Polynomial};

/// One element of a graded free module: one polynomial per basis element.
pub type FreeModuleElement = Vec<Polynomial>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    nvars: usize,
    row_degrees: Vec<i32>,
    col_degrees: Vec<i32>,
    cols: Vec<FreeModuleElement>,
}

impl Matrix {
    pub fn new(nvars: usize, row_degrees: Vec<i32>, col_degrees: Vec<i32>, cols: Vec<FreeModuleElement>) -> Self {
        assert_eq!(col_degrees.len(), cols.len(), "column degree count");
        for c in &cols {
            assert_eq!(c.len(), row_degrees.len(), "column length");
        }
        Self { nvars, row_degrees, col_degrees, cols }
    }

    /// Builds a matrix from row-major entries, inferring the column degrees from the
    /// row shifts. Zero columns are dropped.
    pub fn from_rows(nvars: usize, rows: &[Vec<Polynomial>], row_degrees: Vec<i32>) -> Result<Self> {
        if rows.len() != row_degrees.len() {
            return Err(Error::Shape(format!(
                "{} rows but {} shifts",
                rows.len(),
                row_degrees.len()
            )));
        }
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for j in 0..ncols {
            let col: Vec<Polynomial> = rows.iter().map(|r| r[j].clone()).collect();
            if col.iter().all(Polynomial::is_zero) {
                continue;
            }
            degs.push(column_degree(&col, &row_degrees, j)?);
            cols.push(col);
        }
        Ok(Self::new(nvars, row_degrees, degs, cols))
    }

    pub fn zero(nvars: usize, row_degrees: Vec<i32>, col_degrees: Vec<i32>) -> Self {
        let cols = col_degrees
            .iter()
            .map(|_| vec![Polynomial::zero(nvars); row_degrees.len()])
            .collect();
        Self::new(nvars, row_degrees, col_degrees, cols)
    }

    pub fn identity(nvars: usize, degrees: Vec<i32>) -> Self {
        Self::scalar(nvars, degrees, &Polynomial::one(nvars), 0)
    }

    /// `g * I` where `g` is homogeneous of degree `deg`.
    pub fn scalar(nvars: usize, degrees: Vec<i32>, g: &Polynomial, deg: i32) -> Self {
        let n = degrees.len();
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { g.clone() } else { Polynomial::zero(nvars) })
                    .collect()
            })
            .collect();
        let col_degrees = degrees.iter().map(|d| d + deg).collect();
        Self::new(nvars, degrees, col_degrees, cols)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.row_degrees.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_degrees(&self) -> &[i32] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i32] {
        &self.col_degrees
    }

    pub fn cols(&self) -> &[FreeModuleElement] {
        &self.cols
    }

    pub fn col(&self, j: usize) -> &FreeModuleElement {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.cols[j][i]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().flatten().all(Polynomial::is_zero)
    }

    /// Every nonzero entry is homogeneous of degree `c_j - r_i`.
    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().zip(&self.col_degrees).all(|(col, &cd)| {
            col.iter().zip(&self.row_degrees).all(|(e, &rd)| {
                e.is_zero() || (e.homogeneous_degree().map(|d| d as i32) == Some(cd - rd))
            })
        })
    }

    pub fn check_homogeneous(&self) -> Result<()> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(Error::Inhomogeneous("matrix entries do not match the degree shifts".into()))
        }
    }

    /// Whether some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.cols
            .iter()
            .flatten()
            .any(|e| !e.is_zero() && e.is_constant())
    }

    pub fn with_degrees(mut self, row_degrees: Vec<i32>, col_degrees: Vec<i32>) -> Self {
        assert_eq!(row_degrees.len(), self.row_degrees.len());
        assert_eq!(col_degrees.len(), self.col_degrees.len());
        self.row_degrees = row_degrees;
        self.col_degrees = col_degrees;
        self
    }

    pub fn twist(&self, d: i32) -> Self {
        Self {
            nvars: self.nvars,
            row_degrees: self.row_degrees.iter().map(|x| x + d).collect(),
            col_degrees: self.col_degrees.iter().map(|x| x + d).collect(),
            cols: self.cols.clone(),
        }
    }

    pub fn mul(&self, field: &PrimeField, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.nrows(), "matrix product shape");
        let cols = other
            .cols
            .iter()
            .map(|ocol| apply(field, self, ocol))
            .collect();
        Matrix::new(self.nvars, self.row_degrees.clone(), other.col_degrees.clone(), cols)
    }

    /// Entrywise sum; the degrees are taken from `self`.
    pub fn add(&self, field: &PrimeField, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows(), self.ncols()), (other.nrows(), other.ncols()), "matrix sum shape");
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(field, y)).collect())
            .collect();
        Matrix::new(self.nvars, self.row_degrees.clone(), self.col_degrees.clone(), cols)
    }

    pub fn transpose(&self) -> Matrix {
        let cols = (0..self.nrows())
            .map(|i| self.cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Matrix::new(
            self.nvars,
            self.col_degrees.iter().map(|d| -d).collect(),
            self.row_degrees.iter().map(|d| -d).collect(),
            cols,
        )
    }

    pub fn hconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows(), other.nrows(), "hconcat row count");
        let mut m = self.clone();
        m.cols.extend(other.cols.iter().cloned());
        m.col_degrees.extend_from_slice(&other.col_degrees);
        m
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let n = self.nvars;
        let mut rows = self.row_degrees.clone();
        rows.extend_from_slice(&other.row_degrees);
        let mut cols = Vec::new();
        for c in &self.cols {
            let mut v = c.clone();
            v.extend(std::iter::repeat_n(Polynomial::zero(n), other.nrows()));
            cols.push(v);
        }
        for c in &other.cols {
            let mut v = vec![Polynomial::zero(n); self.nrows()];
            v.extend(c.iter().cloned());
            cols.push(v);
        }
        let mut cd = self.col_degrees.clone();
        cd.extend_from_slice(&other.col_degrees);
        Matrix::new(n, rows, cd, cols)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::new(
            self.nvars,
            self.row_degrees.clone(),
            idx.iter().map(|&j| self.col_degrees[j]).collect(),
            idx.iter().map(|&j| self.cols[j].clone()).collect(),
        )
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::new(
            self.nvars,
            idx.iter().map(|&i| self.row_degrees[i]).collect(),
            self.col_degrees.clone(),
            self.cols
                .iter()
                .map(|c| idx.iter().map(|&i| c[i].clone()).collect())
                .collect(),
        )
    }

    /// Kronecker product: rows indexed `(i, k) -> i * b.nrows() + k`, columns likewise.
    pub fn kron(&self, field: &PrimeField, b: &Matrix) -> Matrix {
        let mut rows = Vec::with_capacity(self.nrows() * b.nrows());
        for ra in &self.row_degrees {
            for rb in &b.row_degrees {
                rows.push(ra + rb);
            }
        }
        let mut cols = Vec::with_capacity(self.ncols() * b.ncols());
        let mut cdeg = Vec::with_capacity(self.ncols() * b.ncols());
        for (acol, ca) in self.cols.iter().zip(&self.col_degrees) {
            for (bcol, cb) in b.cols.iter().zip(&b.col_degrees) {
                let mut v = Vec::with_capacity(rows.len());
                for a in acol {
                    for e in bcol {
                        v.push(if a.is_zero() || e.is_zero() {
                            Polynomial::zero(self.nvars)
                        } else {
                            a.mul(field, e)
                        });
                    }
                }
                cols.push(v);
                cdeg.push(ca + cb);
            }
        }
        Matrix::new(self.nvars, rows, cdeg, cols)
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Matrix {
        Matrix {
            nvars: self.nvars,
            row_degrees: self.row_degrees.clone(),
            col_degrees: self.col_degrees.clone(),
            cols: self.cols.iter().map(|c| c.iter().map(&f).collect()).collect(),
        }
    }

    pub fn scale(&self, field: &PrimeField, c: FieldElement) -> Matrix {
        self.map_entries(|e| e.scale(field, c))
    }

    /// Drops zero columns.
    pub fn prune_zero_cols(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.ncols())
            .filter(|&j| self.cols[j].iter().any(|e| !e.is_zero()))
            .collect();
        self.select_cols(&keep)
    }

    /// Row-major rendering with the ring's variable names.
    pub fn display(&self, ring: &PolyRing) -> String {
        let rows: Vec<Vec<String>> = (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| ring.display(self.entry(i, j))).collect())
            .collect();
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        rows.iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
                format!("| {} |", cells.join("  "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Row-major entries, for serialization.
    pub fn to_rows(&self, ring: &PolyRing) -> Vec<Vec<String>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| ring.display(self.entry(i, j))).collect())
            .collect()
    }
}

/// `m * v`.
pub fn apply(field: &PrimeField, m: &Matrix, v: &[Polynomial]) -> FreeModuleElement {
    assert_eq!(m.ncols(), v.len());
    let mut out = vec![Polynomial::zero(m.nvars); m.nrows()];
    for (coef, col) in v.iter().zip(&m.cols) {
        if coef.is_zero() {
            continue;
        }
        for (o, e) in out.iter_mut().zip(col) {
            if !e.is_zero() {
                *o = o.add(field, &e.mul(field, coef));
            }
        }
    }
    out
}

/// Degree of a homogeneous column relative to the row shifts.
pub fn column_degree(col: &[Polynomial], row_degrees: &[i32], j: usize) -> Result<i32> {
    let mut deg = None;
    for (e, &rd) in col.iter().zip(row_degrees) {
        if e.is_zero() {
            continue;
        }
        let d = e
            .homogeneous_degree()
            .ok_or_else(|| Error::Inhomogeneous(format!("entry in column {j} is not homogeneous")))?
            as i32
            + rd;
        match deg {
            None => deg = Some(d),
            Some(prev) if prev != d => {
                return Err(Error::Inhomogeneous(format!(
                    "column {j} mixes degrees {prev} and {d}"
                )))
            }
            _ => {}
        }
    }
    deg.ok_or_else(|| Error::Shape(format!("column {j} is zero")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::with_vars(32003, &["x", "y", "u", "v"]).unwrap()
    }

    fn m(r: &PolyRing, rows: &[&[&str]], shifts: Vec<i32>) -> Matrix {
        let rows: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect())
            .collect();
        Matrix::from_rows(r.nvars(), &rows, shifts).unwrap()
    }

    #[test]
    fn factorization_product() {
        let r = ring();
        let a = m(&r, &[&["y", "u"], &["-x", "-v"]], vec![1, 1]);
        let b = m(&r, &[&["-v", "-u"], &["x", "y"]], vec![2, 2]);
        let ab = a.mul(r.field(), &b);
        let f = r.parse("x*u - y*v").unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { f.clone() } else { r.zero() };
                assert_eq!(ab.entry(i, j), &want);
            }
        }
        assert!(a.is_homogeneous() && b.is_homogeneous());
    }

    #[test]
    fn inhomogeneous_column_rejected() {
        let r = ring();
        let rows = vec![vec![r.parse("x").unwrap()], vec![r.parse("x*y").unwrap()]];
        assert!(matches!(
            Matrix::from_rows(4, &rows, vec![0, 0]),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn transpose_degrees() {
        let r = ring();
        let a = m(&r, &[&["x", "y"]], vec![0]);
        let t = a.transpose();
        assert_eq!(t.row_degrees(), &[-1, -1]);
        assert_eq!(t.col_degrees(), &[0]);
        assert!(t.is_homogeneous());
    }

    #[test]
    fn kron_shapes() {
        let r = ring();
        let a = m(&r, &[&["x", "y"]], vec![0]);
        let id = Matrix::identity(4, vec![0, 1]);
        let k = a.kron(r.field(), &id);
        assert_eq!((k.nrows(), k.ncols()), (2, 4));
        assert!(k.is_homogeneous());
        assert_eq!(k.row_degrees(), &[0, 1]);
    }
}
