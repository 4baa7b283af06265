//! Matrix factorizations from determinantal presentations, and seeded random ones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::matrix::Matrix;
use crate::module::GradedModule;
use crate::poly::Polynomial;
use crate::resolution::{invert_constant, MatrixFactorization};
use crate::ring::Ring;

fn rows_of(m: &Matrix) -> Vec<Vec<Polynomial>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m.entry(i, j).clone()).collect())
        .collect()
}

fn minor(rows: &[Vec<Polynomial>], skip_row: usize, skip_col: usize) -> Vec<Vec<Polynomial>> {
    rows.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip_row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip_col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

/// Laplace expansion along the first row; fine for the small sizes used here.
pub fn determinant(field: &PrimeField, nvars: usize, rows: &[Vec<Polynomial>]) -> Polynomial {
    match rows.len() {
        0 => Polynomial::one(nvars),
        1 => rows[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(nvars);
            for j in 0..n {
                if rows[0][j].is_zero() {
                    continue;
                }
                let t = rows[0][j].mul(field, &determinant(field, nvars, &minor(rows, 0, j)));
                acc = if j % 2 == 0 { acc.add(field, &t) } else { acc.sub(field, &t) };
            }
            acc
        }
    }
}

impl MatrixFactorization {
    /// For square `a` with `det(a) = c·f`, `c` a nonzero constant, the partner
    /// `c⁻¹·adj(a)`. Requires `a.nrows() >= 2`.
    pub fn determinantal(ring: &Ring, a: &Matrix) -> Result<Self> {
        let f = ring
            .relation()
            .ok_or_else(|| Error::InvalidArgument("matrix factorizations need a hypersurface".into()))?;
        let n = a.nrows();
        if a.ncols() != n || n < 2 {
            return Err(Error::Shape(format!("expected a square matrix of size at least 2, got {}x{}", n, a.ncols())));
        }
        a.check_homogeneous()?;
        let field = ring.field();
        let nv = ring.nvars();
        let rows = rows_of(a);
        let det = determinant(field, nv, &rows);
        let c = f
            .leading_term()
            .and_then(|(lc, lm)| det.terms().iter().find(|(_, m)| m == lm).map(|(dc, _)| field.div(*dc, *lc)))
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidArgument("determinant is not a unit multiple of the relation".into()))?;
        if det != f.scale(field, c) {
            return Err(Error::InvalidArgument("determinant is not a unit multiple of the relation".into()));
        }
        let cinv = field.inv(c);
        let df = ring.relation_degree();
        let cols: Vec<Vec<Polynomial>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        let m = determinant(field, nv, &minor(&rows, j, i)).scale(field, cinv);
                        if (i + j) % 2 == 0 {
                            m
                        } else {
                            m.neg(field)
                        }
                    })
                    .collect()
            })
            .collect();
        let b = Matrix::new(
            nv,
            a.col_degrees().to_vec(),
            a.row_degrees().iter().map(|d| d + df).collect(),
            cols,
        );
        let mf = Self { a: a.clone(), b, f: f.clone() };
        if !mf.verify(field) {
            return Err(Error::FactorizationFailed { at: 0 });
        }
        Ok(mf)
    }

    /// `coker(A)` as a module over `R`.
    pub fn module(&self, ring: &Ring) -> Result<GradedModule> {
        GradedModule::cokernel(ring, self.a.clone())
    }
}

/// Random invertible constant matrix that only mixes basis vectors of equal degree.
fn random_block_constant(field: &PrimeField, degrees: &[i32], rng: &mut ChaCha8Rng) -> Vec<Vec<FieldElement>> {
    let n = degrees.len();
    let p = field.characteristic();
    loop {
        let m: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if degrees[i] == degrees[j] {
                            field.from_u64(rng.gen_range(0..p) as u64)
                        } else {
                            FieldElement::ZERO
                        }
                    })
                    .collect()
            })
            .collect();
        if invert_constant(field, &m).is_some() {
            return m;
        }
    }
}

fn constant_matrix(nvars: usize, degrees: &[i32], m: &[Vec<FieldElement>]) -> Matrix {
    let n = degrees.len();
    Matrix::new(
        nvars,
        degrees.to_vec(),
        degrees.to_vec(),
        (0..n)
            .map(|j| (0..n).map(|i| Polynomial::constant(nvars, m[i][j])).collect())
            .collect(),
    )
}

/// `P·A·Q` for random degree-preserving constant `P`, `Q`.
pub fn random_conjugate(ring: &Ring, a: &Matrix, rng: &mut ChaCha8Rng) -> Matrix {
    let field = ring.field();
    let nv = ring.nvars();
    let p = random_block_constant(field, a.row_degrees(), rng);
    let q = random_block_constant(field, a.col_degrees(), rng);
    let p = constant_matrix(nv, a.row_degrees(), &p);
    let q = constant_matrix(nv, a.col_degrees(), &q);
    p.mul(field, a).mul(field, &q)
}

/// `count` factorizations `P·A0·Q` with partners from the adjugate, drawn from `seed`.
pub fn random_factorizations(ring: &Ring, a0: &Matrix, count: usize, seed: u64) -> Result<Vec<MatrixFactorization>> {
    MatrixFactorization::determinantal(ring, a0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| MatrixFactorization::determinantal(ring, &random_conjugate(ring, a0, &mut rng)))
        .collect()
}

/// `[[a1, a2], [-b2, b1]]`, whose determinant is `a1·b1 + a2·b2`.
pub fn two_term_matrix(ring: &Ring, a1: &Polynomial, a2: &Polynomial, b1: &Polynomial, b2: &Polynomial) -> Result<Matrix> {
    let field = ring.field();
    let deg = |p: &Polynomial| {
        p.homogeneous_degree()
            .map(|d| d as i32)
            .ok_or_else(|| Error::Inhomogeneous(ring.display(p)))
    };
    let (da1, da2, db2) = (deg(a1)?, deg(a2)?, deg(b2)?);
    Ok(Matrix::new(
        ring.nvars(),
        vec![0, da1 - db2],
        vec![da1, da2],
        vec![vec![a1.clone(), b2.neg(field)], vec![a2.clone(), b1.clone()]],
    ))
}

/// The circulant `[[x, y, z], [z, x, y], [y, z, x]]` in the first three variables,
/// with determinant `x³ + y³ + z³ - 3xyz`.
pub fn circulant_matrix(ring: &Ring) -> Result<Matrix> {
    if ring.nvars() < 3 {
        return Err(Error::InvalidArgument("the circulant needs three variables".into()));
    }
    let v: Vec<Polynomial> = (0..3).map(|i| ring.base().var(i)).collect();
    let rows = vec![
        vec![v[0].clone(), v[1].clone(), v[2].clone()],
        vec![v[2].clone(), v[0].clone(), v[1].clone()],
        vec![v[1].clone(), v[2].clone(), v[0].clone()],
    ];
    Matrix::from_rows(ring.nvars(), &rows, vec![0, 0, 0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{detect_periodicity, extract_mf, FreeResolution};

    #[test]
    fn adjugate_partner_of_a1() {
        let r = Ring::define(32003, &["x", "y", "z"], "x*y - z^2").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let a = two_term_matrix(&r, &p("x"), &p("z"), &p("y"), &p("-z")).unwrap();
        let mf = MatrixFactorization::determinantal(&r, &a).unwrap();
        assert_eq!(mf.b.entry(0, 0), &p("y"));
        assert_eq!(mf.b.entry(1, 1), &p("x"));
        assert_eq!(mf.b.entry(0, 1), &p("-z"));
    }

    #[test]
    fn circulant_cubic() {
        let r = Ring::define(32003, &["x", "y", "z"], "x^3 + y^3 + z^3 - 3*x*y*z").unwrap();
        let a = circulant_matrix(&r).unwrap();
        let mf = MatrixFactorization::determinantal(&r, &a).unwrap();
        assert_eq!(mf.size(), 3);
        assert_eq!(mf.b.col_degrees(), &[3, 3, 3]);
    }

    #[test]
    fn rejects_wrong_determinant() {
        let r = Ring::define(32003, &["x", "y", "z"], "x*y - z^2").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let a = two_term_matrix(&r, &p("x"), &p("z"), &p("y"), &p("z")).unwrap();
        assert!(MatrixFactorization::determinantal(&r, &a).is_err());
    }

    #[test]
    fn random_conjugates_resolve_periodically() {
        let r = Ring::define(32003, &["x", "y", "u", "v"], "x*u - y*v").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let a0 = two_term_matrix(&r, &p("x"), &p("y"), &p("u"), &p("-v")).unwrap();
        let mfs = random_factorizations(&r, &a0, 3, 7).unwrap();
        assert_ne!(mfs[0].a, mfs[1].a);
        for mf in &mfs {
            let m = mf.module(&r).unwrap();
            let res = FreeResolution::compute(&m, 5).unwrap();
            assert_eq!(res.betti_table().totals(), vec![2; 6]);
            assert_eq!(detect_periodicity(&res).unwrap().onset, 1);
            assert!(extract_mf(&res, 1).unwrap().verify(r.field()));
        }
        let again = random_factorizations(&r, &a0, 3, 7).unwrap();
        assert_eq!(mfs, again);
    }
}
