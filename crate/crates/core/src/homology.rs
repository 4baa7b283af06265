//! Tor and Ext as graded subquotients, Hilbert functions, lengths, dimension and depth.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hilbert;
use crate::matrix::Matrix;
use crate::module::{homology, GradedModule};
use crate::resolution::{detect_periodicity, resolve, FreeResolution, Over};
use crate::ring::Ring;

/// Length of a module over `k`: finite or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl Length {
    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn value(self) -> Option<usize> {
        match self {
            Length::Finite(v) => Some(v),
            Length::Infinite => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Length::Finite(0)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(v) => write!(f, "{v}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(v) => s.serialize_u64(*v as u64),
            Length::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Depth, with the zero module at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn value(self) -> Option<usize> {
        match self {
            Depth::Finite(v) => Some(v),
            Depth::Infinite => None,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(v) => write!(f, "{v}"),
            Depth::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Depth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Depth::Finite(v) => s.serialize_u64(*v as u64),
            Depth::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `d -> dim_k M_d` on a window of degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    pub start: i64,
    pub values: Vec<usize>,
}

impl HilbertFunction {
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn get(&self, d: i64) -> Option<usize> {
        let k = d - self.start;
        (0..self.values.len() as i64).contains(&k).then(|| self.values[k as usize])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// The shift `t` with `self(d) = other(d + t)` on the common window, if the nonzero
    /// parts line up exactly. Two zero functions match with `t = 0`.
    pub fn twist_to(&self, other: &HilbertFunction) -> Option<i64> {
        let first = |h: &HilbertFunction| h.values.iter().position(|&v| v != 0).map(|k| h.start + k as i64);
        let last = |h: &HilbertFunction| h.values.iter().rposition(|&v| v != 0).map(|k| h.start + k as i64);
        match (first(self), first(other)) {
            (None, None) => Some(0),
            (Some(a), Some(b)) => {
                let t = b - a;
                let (la, lb) = (last(self).unwrap(), last(other).unwrap());
                if lb - la != t {
                    return None;
                }
                (a..=la)
                    .all(|d| self.get(d) == other.get(d + t))
                    .then_some(t)
            }
            _ => None,
        }
    }
}

pub fn hilbert_function(m: &GradedModule, lo: i64, hi: i64) -> HilbertFunction {
    HilbertFunction { start: lo, values: (lo..=hi).map(|d| m.hilbert_value(d)).collect() }
}

pub fn length(m: &GradedModule) -> Length {
    match hilbert::finite_length(m.groebner(), m.ring().nvars()) {
        Some(v) => Length::Finite(v),
        None => Length::Infinite,
    }
}

/// Degrees carrying the module, when it has finite length.
pub fn support_window(m: &GradedModule) -> Option<(i64, i64)> {
    hilbert::support_bounds(m.groebner(), m.ring().nvars())
}

/// Krull dimension; `-1` for the zero module.
pub fn krull_dim(m: &GradedModule) -> i64 {
    hilbert::krull_dim(m.groebner(), m.ring().nvars())
}

/// Projective dimension over the ambient polynomial ring; `None` for the zero module.
pub fn ambient_projective_dimension(m: &GradedModule) -> Option<usize> {
    if m.is_zero() {
        return None;
    }
    let res = resolve(m, Over::Ambient, m.ring().nvars() + 1).expect("ambient resolutions are short");
    debug_assert!(res.is_finite());
    res.length()
}

/// `depth M = n - pd_S M` by Auslander-Buchsbaum over the ambient ring.
pub fn depth(m: &GradedModule) -> Depth {
    match ambient_projective_dimension(m) {
        None => Depth::Infinite,
        Some(pd) => Depth::Finite(m.ring().nvars() - pd),
    }
}

/// Projective dimension over the module's own ring, if it is at most `bound`.
pub fn projective_dimension(m: &GradedModule, bound: usize) -> Result<Option<usize>> {
    let res = FreeResolution::compute(m, bound + 1)?;
    Ok(res.length().filter(|&l| l <= bound))
}

fn negated(a: &[i32]) -> Vec<i32> {
    a.iter().map(|x| -x).collect()
}

fn ensure(res: &FreeResolution, i: usize) -> Result<()> {
    if res.term(i).is_none() {
        return Err(Error::BoundExceeded { requested: i, cap: res.computed() });
    }
    Ok(())
}

/// `H_i(C ⊗ N)` for `C_{i+1} -> C_i -> C_{i-1}` given by `d_i` and `d_next`.
pub(crate) fn complex_homology(ring: &Ring, d_i: &Matrix, d_next: &Matrix, n: &GradedModule) -> Result<GradedModule> {
    if ring != n.ring() {
        return Err(Error::ContextMismatch);
    }
    let field = ring.field();
    let nv = ring.nvars();
    let n = n.minimal_presentation();
    let psi = n.presentation();
    let g0 = psi.row_degrees().to_vec();
    if d_i.ncols() == 0 || g0.is_empty() {
        return Ok(GradedModule::zero(ring));
    }
    let id_g = Matrix::identity(nv, g0);
    let a = d_i.kron(field, &id_g);
    let rel_target = Matrix::identity(nv, d_i.row_degrees().to_vec()).kron(field, psi);
    let b = d_next.kron(field, &id_g);
    let rel_here = Matrix::identity(nv, d_i.col_degrees().to_vec()).kron(field, psi);
    homology(ring, &a, &rel_target, &b, &rel_here)
}

/// `H^i(Hom(C, N))` for `C_{i+1} -> C_i -> C_{i-1}` given by `d_i` and `d_next`.
pub(crate) fn complex_cohomology(ring: &Ring, d_i: &Matrix, d_next: &Matrix, n: &GradedModule) -> Result<GradedModule> {
    if ring != n.ring() {
        return Err(Error::ContextMismatch);
    }
    let field = ring.field();
    let nv = ring.nvars();
    let n = n.minimal_presentation();
    let psi = n.presentation();
    let g0 = psi.row_degrees().to_vec();
    if d_i.ncols() == 0 || g0.is_empty() {
        return Ok(GradedModule::zero(ring));
    }
    let id_g = Matrix::identity(nv, g0);
    let a = d_next.transpose().kron(field, &id_g);
    let rel_target = Matrix::identity(nv, negated(d_next.col_degrees())).kron(field, psi);
    let b = d_i.transpose().kron(field, &id_g);
    let rel_here = Matrix::identity(nv, negated(d_i.col_degrees())).kron(field, psi);
    homology(ring, &a, &rel_target, &b, &rel_here)
}

/// `H_i(F ⊗ N)` for a resolution `F` of `M`; `F` must be known through `F_{i+1}`.
pub fn tor_from_resolution(res: &FreeResolution, n: &GradedModule, i: usize) -> Result<GradedModule> {
    ensure(res, i + 1)?;
    let (d_i, d_next) = (res.differential(i).unwrap(), res.differential(i + 1).unwrap());
    complex_homology(res.ring(), &d_i, &d_next, n)
}

/// `H^i(Hom(F, N))` for a resolution `F` of `M`; `F` must be known through `F_{i+1}`.
pub fn ext_from_resolution(res: &FreeResolution, n: &GradedModule, i: usize) -> Result<GradedModule> {
    ensure(res, i + 1)?;
    let (d_i, d_next) = (res.differential(i).unwrap(), res.differential(i + 1).unwrap());
    complex_cohomology(res.ring(), &d_i, &d_next, n)
}

pub fn tor(m: &GradedModule, n: &GradedModule, i: usize) -> Result<GradedModule> {
    let res = FreeResolution::compute(m, i + 1)?;
    tor_from_resolution(&res, n, i)
}

pub fn ext(m: &GradedModule, n: &GradedModule, i: usize) -> Result<GradedModule> {
    let res = FreeResolution::compute(m, i + 1)?;
    ext_from_resolution(&res, n, i)
}

/// Lengths of `Tor_0 .. Tor_bound` together with the resolution that produced them.
#[derive(Clone, Debug)]
pub struct TorScan {
    pub lengths: Vec<Length>,
    /// Index from which the resolution is a matrix factorization, if certified.
    pub onset: Option<usize>,
    pub bound: usize,
}

impl TorScan {
    pub fn new(m: &GradedModule, n: &GradedModule, bound: usize) -> Result<Self> {
        let res = FreeResolution::compute(m, bound + 1)?;
        Self::from_resolution(&res, n, bound)
    }

    pub fn from_resolution(res: &FreeResolution, n: &GradedModule, bound: usize) -> Result<Self> {
        let lengths = (0..=bound)
            .map(|i| tor_from_resolution(res, n, i).map(|t| length(&t)))
            .collect::<Result<Vec<_>>>()?;
        let onset = detect_periodicity(res).ok().map(|c| c.onset);
        Ok(Self { lengths, onset, bound })
    }

    /// Whether the scan determines `Tor_j` for every `j`: past the onset, lengths repeat
    /// with period 2, so two indices past it settle all higher ones.
    pub fn covers_all(&self) -> bool {
        self.onset.is_some_and(|o| o < self.bound)
    }

    /// Smallest `i` with `Tor_j` of finite length for all `j >= i`.
    pub fn f_index(&self) -> Option<usize> {
        if !self.covers_all() {
            return None;
        }
        let mut i = self.bound + 1;
        while i > 0 && self.lengths[i - 1].is_finite() {
            i -= 1;
        }
        (i <= self.bound).then_some(i)
    }
}

/// The finite length index, or `None` if it exceeds `bound`.
pub fn f_index(m: &GradedModule, n: &GradedModule, bound: usize) -> Result<Option<usize>> {
    let bound = bound.max(m.ring().dim() + 3);
    Ok(TorScan::new(m, n, bound)?.f_index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use crate::ring::Ring;

    fn ex35() -> (Ring, GradedModule) {
        let r = Ring::define(32003, &["x", "y", "u", "v"], "x*u - y*v").unwrap();
        let m = GradedModule::ideal(&r, &[r.parse("x").unwrap(), r.parse("y").unwrap()]).unwrap();
        (r, m)
    }

    #[test]
    fn example_tor_lengths() {
        let (_, m) = ex35();
        let ms = m.dual();
        let res = FreeResolution::compute(&m, 4).unwrap();
        let l: Vec<Length> = (1..=3).map(|i| length(&tor_from_resolution(&res, &ms, i).unwrap())).collect();
        assert_eq!(l, vec![Length::Finite(1), Length::Finite(0), Length::Finite(1)]);
    }

    #[test]
    fn depth_and_dimension() {
        let (r, m) = ex35();
        let ms = m.dual();
        let t = m.tensor(&ms).unwrap();
        assert_eq!(depth(&t), Depth::Finite(1));
        let rr = GradedModule::free(&r, vec![0]);
        assert_eq!(depth(&rr), Depth::Finite(3));
        assert_eq!(krull_dim(&rr), 3);
        let k = GradedModule::residue_field(&r);
        assert_eq!(depth(&k), Depth::Finite(0));
        assert_eq!(krull_dim(&k), 0);
        assert_eq!(length(&k), Length::Finite(1));
        assert_eq!(length(&rr), Length::Infinite);
        assert_eq!(depth(&GradedModule::zero(&r)), Depth::Infinite);
        let q = GradedModule::quotient(&r, &[r.parse("x").unwrap(), r.parse("y").unwrap()]).unwrap();
        assert_eq!(krull_dim(&q), 2);
    }

    #[test]
    fn ext_over_node() {
        let r = Ring::define(32003, &["x", "y"], "x*y").unwrap();
        let m = GradedModule::quotient(&r, &[r.parse("x").unwrap()]).unwrap();
        let res = FreeResolution::compute(&m, 8).unwrap();
        for i in 1..=7 {
            let l = length(&ext_from_resolution(&res, &m, i).unwrap());
            let want = if i % 2 == 1 { 0 } else { 1 };
            assert_eq!(l, Length::Finite(want), "Ext^{i}");
        }
    }

    #[test]
    fn free_modules_are_acyclic() {
        let (r, m) = ex35();
        let rr = GradedModule::free(&r, vec![0]);
        for i in 1..3 {
            assert!(tor(&rr, &m, i).unwrap().is_zero());
            assert!(ext(&rr, &m, i).unwrap().is_zero());
        }
        assert_eq!(f_index(&rr, &m, 4).unwrap(), Some(1));
        let k = GradedModule::residue_field(&r);
        assert_eq!(f_index(&k, &k, 4).unwrap(), Some(0));
        assert_eq!(f_index(&m, &m.dual(), 6).unwrap(), Some(1));
    }

    #[test]
    fn twist_matching() {
        let a = HilbertFunction { start: -2, values: vec![0, 1, 2, 0, 0] };
        let b = HilbertFunction { start: 0, values: vec![0, 0, 1, 2, 0] };
        assert_eq!(a.twist_to(&b), Some(3));
        let c = HilbertFunction { start: 0, values: vec![1, 1, 0] };
        assert_eq!(a.twist_to(&c), None);
    }

    #[test]
    fn koszul_tor_over_ambient() {
        let s = Ring::polynomial(PolyRing::with_vars(32003, &["x", "y"]).unwrap());
        let a = GradedModule::quotient(&s, &[s.parse("x").unwrap()]).unwrap();
        let b = GradedModule::quotient(&s, &[s.parse("y").unwrap()]).unwrap();
        assert_eq!(length(&tor(&a, &b, 0).unwrap()), Length::Finite(1));
        assert!(tor(&a, &b, 1).unwrap().is_zero());
    }
}
