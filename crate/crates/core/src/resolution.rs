//! Minimal graded free resolutions, Betti tables, periodicity and matrix factorizations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::matrix::Matrix;
use crate::module::{syzygy_over_ring, GradedModule};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Largest homological index any resolution is computed to.
pub const MAX_BOUND: usize = 64;

/// Default truncation `2·dim R + 6`.
pub fn default_bound(ring: &Ring) -> usize {
    2 * ring.dim() + 6
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    /// The hypersurface ring itself.
    Ring,
    /// The ambient polynomial ring.
    Ambient,
}

/// `0 <- F_0 <- F_1 <- ...` with `maps[i-1] = d_i: F_i -> F_{i-1}`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Ring,
    f0: Vec<i32>,
    maps: Vec<Matrix>,
    finished: bool,
}

impl FreeResolution {
    /// Minimal resolution of `m` over its own ring, computed through `F_bound`.
    pub fn compute(m: &GradedModule, bound: usize) -> Result<Self> {
        if bound > MAX_BOUND {
            return Err(Error::BoundExceeded { requested: bound, cap: MAX_BOUND });
        }
        let m = m.minimal_presentation();
        let mut res = Self {
            ring: m.ring().clone(),
            f0: m.generator_degrees().to_vec(),
            maps: Vec::new(),
            finished: false,
        };
        let d1 = m.presentation().clone();
        if d1.ncols() == 0 {
            res.finished = true;
        } else {
            res.maps.push(d1);
        }
        res.extend_to(bound)?;
        Ok(res)
    }

    /// Computes further syzygies until `F_bound` is known or the resolution ends.
    pub fn extend_to(&mut self, bound: usize) -> Result<()> {
        if bound > MAX_BOUND {
            return Err(Error::BoundExceeded { requested: bound, cap: MAX_BOUND });
        }
        while !self.finished && self.maps.len() < bound {
            let last = self.maps.last().unwrap();
            let next = syzygy_over_ring(&self.ring, last)?;
            if next.ncols() == 0 {
                self.finished = true;
            } else {
                self.maps.push(next);
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Number of maps computed.
    pub fn computed(&self) -> usize {
        self.maps.len()
    }

    /// Whether the resolution is known to stop after the computed maps.
    pub fn is_finite(&self) -> bool {
        self.finished
    }

    /// Projective dimension, when the resolution is finite.
    pub fn length(&self) -> Option<usize> {
        self.finished.then_some(self.maps.len())
    }

    /// `d_i` for `1 <= i <= computed()`.
    pub fn map(&self, i: usize) -> Option<&Matrix> {
        i.checked_sub(1).and_then(|k| self.maps.get(k))
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Degree shifts of `F_i`; empty past the end of a finite resolution.
    pub fn term(&self, i: usize) -> Option<Vec<i32>> {
        if i == 0 {
            return Some(self.f0.clone());
        }
        match self.maps.get(i - 1) {
            Some(d) => Some(d.col_degrees().to_vec()),
            None if self.finished => Some(Vec::new()),
            None => None,
        }
    }

    pub fn rank(&self, i: usize) -> Option<usize> {
        self.term(i).map(|t| t.len())
    }

    /// `d_i` as a matrix, including zero maps past the end of a finite resolution.
    pub(crate) fn differential(&self, i: usize) -> Option<Matrix> {
        if i == 0 {
            return Some(Matrix::zero(self.ring.nvars(), Vec::new(), self.f0.clone()));
        }
        if let Some(d) = self.map(i) {
            return Some(d.clone());
        }
        let src = self.term(i)?;
        let tgt = self.term(i - 1)?;
        Some(Matrix::zero(self.ring.nvars(), tgt, src))
    }

    /// `d_i · d_{i+1} = 0` for all computed `i`.
    pub fn is_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| self.ring.mul_matrix(&w[0], &w[1]).is_zero())
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|d| !d.has_unit_entry())
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for i in 0..=self.maps.len() {
            for d in self.term(i).unwrap_or_default() {
                *entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }
}

/// Resolution of `m` over `R` or over the ambient ring `S`.
pub fn resolve(m: &GradedModule, over: Over, bound: usize) -> Result<FreeResolution> {
    match over {
        Over::Ring => FreeResolution::compute(m, bound),
        Over::Ambient => FreeResolution::compute(&m.over_ambient(), bound.max(m.ring().nvars() + 1)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i32), usize>,
}

impl BettiTable {
    /// `β_{i,j}` keyed by homological index and internal degree.
    pub fn entries(&self) -> &BTreeMap<(usize, i32), usize> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total Betti numbers `β_0, β_1, ...`.
    pub fn totals(&self) -> Vec<usize> {
        let n = self.entries.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let mut t = vec![0; n];
        for (&(i, _), &b) in &self.entries {
            t[i] += b;
        }
        t
    }

    /// The usual table layout: rows `j - i`, columns `i`.
    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "0\n".into();
        }
        let cols = self.totals().len();
        let rows: Vec<i32> = {
            let mut r: Vec<i32> = self.entries.keys().map(|&(i, j)| j - i as i32).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let mut out = String::new();
        out.push_str("      ");
        for i in 0..cols {
            out.push_str(&format!("{i:>5}"));
        }
        out.push('\n');
        out.push_str("total:");
        for t in self.totals() {
            out.push_str(&format!("{t:>5}"));
        }
        out.push('\n');
        for r in rows {
            out.push_str(&format!("{r:>5}:"));
            for i in 0..cols {
                match self.get(i, r + i as i32) {
                    0 => out.push_str("    ."),
                    b => out.push_str(&format!("{b:>5}")),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// `A·B = B·A = f·I` over the ambient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    pub a: Matrix,
    pub b: Matrix,
    pub f: Polynomial,
}

impl MatrixFactorization {
    pub fn size(&self) -> usize {
        self.a.nrows()
    }

    fn is_f_identity(m: &Matrix, f: &Polynomial) -> bool {
        m.nrows() == m.ncols()
            && (0..m.nrows()).all(|i| {
                (0..m.ncols()).all(|j| {
                    let e = m.entry(i, j);
                    if i == j {
                        e == f
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Exact check of both products.
    pub fn verify(&self, field: &PrimeField) -> bool {
        self.a.ncols() == self.b.nrows()
            && self.b.ncols() == self.a.nrows()
            && Self::is_f_identity(&self.a.mul(field, &self.b), &self.f)
            && Self::is_f_identity(&self.b.mul(field, &self.a), &self.f)
    }
}

/// Inverse of a square matrix over the prime field.
pub(crate) fn invert_constant(field: &PrimeField, m: &[Vec<FieldElement>]) -> Option<Vec<Vec<FieldElement>>> {
    let n = m.len();
    let mut a: Vec<Vec<FieldElement>> = m.to_vec();
    let mut inv: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let s = field.inv(a[c][c]);
        for j in 0..n {
            a[c][j] = field.mul(a[c][j], s);
            inv[c][j] = field.mul(inv[c][j], s);
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let t = a[r][c];
                for j in 0..n {
                    a[r][j] = field.sub(a[r][j], field.mul(t, a[c][j]));
                    inv[r][j] = field.sub(inv[r][j], field.mul(t, inv[c][j]));
                }
            }
        }
    }
    Some(inv)
}

/// Inverse over `S` of a square homogeneous matrix of degree 0. Such a matrix is
/// invertible exactly when its constant part is, and the inverse is a finite
/// geometric series in the nilpotent remainder.
pub(crate) fn invert_degree_zero(field: &PrimeField, u: &Matrix) -> Option<Matrix> {
    let n = u.nrows();
    if u.ncols() != n {
        return None;
    }
    let nv = u.nvars();
    let consts: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = u.entry(i, j);
                    if e.is_constant() {
                        e.constant_coefficient()
                    } else {
                        FieldElement::ZERO
                    }
                })
                .collect()
        })
        .collect();
    let dinv = invert_constant(field, &consts)?;
    let dinv = Matrix::new(
        nv,
        u.col_degrees().to_vec(),
        u.row_degrees().to_vec(),
        (0..n)
            .map(|j| (0..n).map(|i| Polynomial::constant(nv, dinv[i][j])).collect())
            .collect(),
    );
    // X = -D^{-1} N where N = U - D
    let nonconst = u.map_entries(|e| if e.is_constant() { Polynomial::zero(nv) } else { e.clone() });
    let x = dinv.mul(field, &nonconst).scale(field, field.neg(FieldElement::ONE));
    let mut acc = dinv.clone();
    let mut pow = x.clone();
    for _ in 0..n {
        if pow.is_zero() {
            break;
        }
        acc = acc.add(field, &pow.mul(field, &dinv));
        pow = pow.mul(field, &x);
    }
    let check = u.mul(field, &acc);
    let is_id = (0..n).all(|i| {
        (0..n).all(|j| {
            let e = check.entry(i, j);
            if i == j {
                e.is_constant() && e.constant_coefficient() == FieldElement::ONE
            } else {
                e.is_zero()
            }
        })
    });
    is_id.then_some(acc)
}

/// Tries to complete `(d_i, d_{i+1})` to a matrix factorization `(A, B)` with
/// `A = d_i` and `B = d_{i+1}·U^{-1}`, where `d_i·d_{i+1} = f·U`.
fn factorization_at(ring: &Ring, a: &Matrix, b0: &Matrix) -> Option<MatrixFactorization> {
    let f = ring.relation()?;
    let field = ring.field();
    let n = a.nrows();
    if a.ncols() != n || b0.nrows() != n || b0.ncols() != n {
        return None;
    }
    let p = a.mul(field, b0);
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut col = Vec::with_capacity(n);
        for i in 0..n {
            let (q, r) = p.entry(i, j).divide(field, f);
            if !r.is_zero() {
                return None;
            }
            col.push(q);
        }
        cols.push(col);
    }
    let df = ring.relation_degree();
    // U: F_{i+1} -> F_{i-1}(-deg f), so B = d_{i+1}·U^{-1} has source F_{i-1}(-deg f)
    let u = Matrix::new(
        ring.nvars(),
        a.row_degrees().iter().map(|d| d + df).collect(),
        b0.col_degrees().to_vec(),
        cols,
    );
    let uinv = invert_degree_zero(field, &u)?;
    let b = b0.mul(field, &uinv);
    let mf = MatrixFactorization { a: a.clone(), b, f: f.clone() };
    mf.verify(field).then_some(mf)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicityCertificate {
    pub onset: usize,
    pub period: usize,
    pub verified_through: usize,
}

/// Smallest `o` such that `(d_i, d_{i+1})` completes to a matrix factorization for
/// every computed `i >= o`. Finite resolutions report `onset = pd`, period 1.
pub fn detect_periodicity(res: &FreeResolution) -> Result<PeriodicityCertificate> {
    let k = res.computed();
    if res.is_finite() {
        return Ok(PeriodicityCertificate { onset: k, period: 1, verified_through: k });
    }
    if !res.ring().is_hypersurface() || k < 2 {
        return Err(Error::NoPeriodicity { bound: k });
    }
    let ok: Vec<bool> = (1..k)
        .map(|i| factorization_at(res.ring(), res.map(i).unwrap(), res.map(i + 1).unwrap()).is_some())
        .collect();
    if !ok[k - 2] {
        return Err(Error::NoPeriodicity { bound: k });
    }
    let mut onset = k - 1;
    while onset > 1 && ok[onset - 2] {
        onset -= 1;
    }
    let same = (onset..k).all(|i| res.map(i).unwrap().cols() == res.map(i + 1).unwrap().cols());
    Ok(PeriodicityCertificate { onset, period: if same { 1 } else { 2 }, verified_through: k })
}

/// The matrix factorization `(d_at, d_{at+1}·U^{-1})`, retrying once at `at + 1`.
pub fn extract_mf(res: &FreeResolution, at: usize) -> Result<MatrixFactorization> {
    let cert = detect_periodicity(res)?;
    if res.is_finite() {
        return Err(Error::FactorizationFailed { at });
    }
    if at < cert.onset.max(1) {
        return Err(Error::InvalidArgument(format!(
            "index {at} precedes the periodicity onset {}",
            cert.onset
        )));
    }
    for i in [at, at + 1] {
        if let (Some(a), Some(b)) = (res.map(i), res.map(i + 1)) {
            if let Some(mf) = factorization_at(res.ring(), a, b) {
                return Ok(mf);
            }
        }
    }
    Err(Error::FactorizationFailed { at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn xy() -> Ring {
        Ring::define(32003, &["x", "y"], "x*y").unwrap()
    }

    #[test]
    fn alternating_resolution() {
        let r = xy();
        let m = GradedModule::quotient(&r, &[r.parse("x").unwrap()]).unwrap();
        let res = FreeResolution::compute(&m, 6).unwrap();
        assert!(res.is_complex() && res.is_minimal());
        assert_eq!(res.betti_table().totals(), vec![1; 7]);
        for i in 1..=6 {
            let want = if i % 2 == 1 { "x" } else { "y" };
            assert_eq!(res.map(i).unwrap().entry(0, 0), &r.parse(want).unwrap());
        }
        let cert = detect_periodicity(&res).unwrap();
        assert_eq!((cert.onset, cert.period), (1, 2));
        let mf = extract_mf(&res, 1).unwrap();
        assert_eq!(mf.a.entry(0, 0), &r.parse("x").unwrap());
        assert_eq!(mf.b.entry(0, 0), &r.parse("y").unwrap());
    }

    #[test]
    fn example_ideal_is_periodic_from_start() {
        let r = Ring::define(32003, &["x", "y", "u", "v"], "x*u - y*v").unwrap();
        let m = GradedModule::ideal(&r, &[r.parse("x").unwrap(), r.parse("y").unwrap()]).unwrap();
        let res = FreeResolution::compute(&m, 6).unwrap();
        assert_eq!(res.betti_table().totals(), vec![2; 7]);
        let cert = detect_periodicity(&res).unwrap();
        assert_eq!((cert.onset, cert.period), (1, 2));
        let mf = extract_mf(&res, 1).unwrap();
        assert!(mf.verify(r.field()));
        assert_eq!(mf.size(), 2);
    }

    #[test]
    fn free_and_koszul() {
        let r = xy();
        let res = FreeResolution::compute(&GradedModule::free(&r, vec![0, 0]), 4).unwrap();
        assert_eq!(res.length(), Some(0));
        assert_eq!(res.betti_table().totals(), vec![2]);
        let cert = detect_periodicity(&res).unwrap();
        assert_eq!((cert.onset, cert.period), (0, 1));

        let s = Ring::polynomial(PolyRing::with_vars(32003, &["x", "y"]).unwrap());
        let k = GradedModule::residue_field(&s);
        let res = FreeResolution::compute(&k, 5).unwrap();
        assert_eq!(res.length(), Some(2));
        assert_eq!(res.betti_table().totals(), vec![1, 2, 1]);
        assert_eq!(res.betti_table().get(2, 2), 1);
    }

    #[test]
    fn degree_zero_inverse() {
        let s = PolyRing::with_vars(32003, &["x", "y"]).unwrap();
        let f = s.field();
        // [[1, x], [0, 2]] with rows of degree 0, 1 and columns of degree 0, 1
        let u = Matrix::new(
            2,
            vec![0, 1],
            vec![0, 1],
            vec![vec![s.one(), s.zero()], vec![s.parse("x").unwrap(), s.constant(2)]],
        );
        let inv = invert_degree_zero(f, &u).unwrap();
        let id = u.mul(f, &inv);
        assert_eq!(id.entry(0, 0), &s.one());
        assert!(id.entry(0, 1).is_zero() && id.entry(1, 0).is_zero());
        assert_eq!(id.entry(1, 1), &s.one());
    }

    #[test]
    fn quadric_cone_partner() {
        let r = Ring::define(32003, &["x", "y", "z"], "x*y - z^2").unwrap();
        let rows = vec![
            vec![r.parse("x").unwrap(), r.parse("z").unwrap()],
            vec![r.parse("z").unwrap(), r.parse("y").unwrap()],
        ];
        let m = GradedModule::cokernel(&r, Matrix::from_rows(3, &rows, vec![0, 0]).unwrap()).unwrap();
        let res = FreeResolution::compute(&m, 6).unwrap();
        assert_eq!(res.map(1).unwrap(), m.presentation());
        let mf = extract_mf(&res, 1).unwrap();
        assert!(mf.verify(r.field()));
        assert_eq!(mf.b.col_degrees(), &[2, 2]);
        // A·B = f·I pins B down to the adjugate
        let adj = [["y", "-z"], ["-z", "x"]];
        for (i, row) in adj.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(mf.b.entry(i, j), &r.parse(e).unwrap());
            }
        }
    }
}
