//! Finitely generated graded modules over `R`, given by presentations.
//!
//! A module is `coker(φ: F_1 -> F_0)` with `F_0 = ⊕ R(-s_i)`. Entries of `φ` are kept as
//! normal forms modulo `f`. Viewed over `S`, the same module is `coker [φ | f·I]`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{minimal_subset, syzygy_basis, syzygy_vectors, GroebnerBasis, ModuleOrder};
use crate::hilbert;
use crate::matrix::{FreeModuleElement, Matrix};
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Clone, Debug)]
pub struct GradedModule {
    ring: Ring,
    presentation: Matrix,
    minimal: bool,
    gb: OnceLock<GroebnerBasis>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.presentation == other.presentation
    }
}

fn check_ring(ring: &Ring, m: &Matrix) -> Result<()> {
    if m.nvars() != ring.nvars() {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// The columns `f·e_i` of a free module with the given shifts (none over `S`).
fn f_columns(ring: &Ring, shifts: &[i32]) -> Vec<FreeModuleElement> {
    let Some(f) = ring.relation() else { return Vec::new() };
    let n = ring.nvars();
    (0..shifts.len())
        .map(|j| {
            (0..shifts.len())
                .map(|i| if i == j { f.clone() } else { Polynomial::zero(n) })
                .collect()
        })
        .collect()
}

/// Columns of `cands` forming a minimal generating set of `span(cands)` modulo
/// `span(prefix)`, computed in `R`-free modules (i.e. modulo `f` as well).
pub(crate) fn trim(ring: &Ring, shifts: &[i32], prefix: &[FreeModuleElement], cands: &Matrix) -> Matrix {
    let mut pre = prefix.to_vec();
    pre.extend(f_columns(ring, shifts));
    let keep = minimal_subset(ring.field(), shifts, &pre, cands.cols());
    cands.select_cols(&keep)
}

/// Minimal generators of the kernel of `m` over `R`, as columns.
///
/// Over `R = S/(f)` the kernel is computed from the syzygies over `S` of `[m | f·I]`
/// restricted to the first block of coordinates.
pub fn syzygy_over_ring(ring: &Ring, m: &Matrix) -> Result<Matrix> {
    check_ring(ring, m)?;
    m.check_homogeneous()?;
    let m = ring.reduce_matrix(m);
    let Some(f) = ring.relation() else {
        return syzygy_basis(ring.base(), &m);
    };
    let n = ring.nvars();
    let fi = Matrix::scalar(n, m.row_degrees().to_vec(), f, ring.relation_degree());
    let aug = m.hconcat(&fi);
    let k = m.ncols();
    let mut cols = Vec::new();
    let mut degs = Vec::new();
    for (v, d) in syzygy_vectors(ring.field(), &aug) {
        let p: Vec<Polynomial> = v[..k].iter().map(|e| ring.reduce(e)).collect();
        if p.iter().all(Polynomial::is_zero) {
            continue;
        }
        cols.push(p);
        degs.push(d);
    }
    let cands = Matrix::new(n, m.col_degrees().to_vec(), degs, cols);
    let out = trim(ring, m.col_degrees(), &[], &cands);
    debug_assert!(ring.mul_matrix(&m, &out).is_zero());
    Ok(out)
}

/// Unit-pivot elimination followed by trimming to minimal relations.
fn minimalize(ring: &Ring, pres: &Matrix) -> Matrix {
    let field = ring.field();
    let n = ring.nvars();
    let mut rows = pres.row_degrees().to_vec();
    let mut cdeg = pres.col_degrees().to_vec();
    let mut cols: Vec<FreeModuleElement> = pres.cols().to_vec();
    loop {
        let pivot = (0..rows.len()).find_map(|i| {
            (0..cols.len())
                .find(|&j| !cols[j][i].is_zero() && cols[j][i].is_constant())
                .map(|j| (i, j))
        });
        let Some((i, j)) = pivot else { break };
        let cinv = field.inv(cols[j][i].constant_coefficient());
        let pcol = cols.remove(j);
        cdeg.remove(j);
        for col in cols.iter_mut() {
            if col[i].is_zero() {
                continue;
            }
            let factor = col[i].scale(field, field.neg(cinv));
            for (e, p) in col.iter_mut().zip(&pcol) {
                if !p.is_zero() {
                    *e = ring.reduce(&e.add(field, &p.mul(field, &factor)));
                }
            }
            debug_assert!(col[i].is_zero());
        }
        for col in cols.iter_mut() {
            col.remove(i);
        }
        rows.remove(i);
    }
    let m = Matrix::new(n, rows, cdeg, cols).prune_zero_cols();
    let shifts = m.row_degrees().to_vec();
    trim(ring, &shifts, &[], &m)
}

impl GradedModule {
    fn raw(ring: &Ring, presentation: Matrix, minimal: bool) -> Self {
        Self { ring: ring.clone(), presentation, minimal, gb: OnceLock::new() }
    }

    /// `coker(m)`; entries are reduced modulo `f`.
    pub fn cokernel(ring: &Ring, m: Matrix) -> Result<Self> {
        check_ring(ring, &m)?;
        m.check_homogeneous()?;
        let m = ring.reduce_matrix(&m).prune_zero_cols();
        Ok(Self::raw(ring, m, false))
    }

    /// `⊕ R(-s_i)`.
    pub fn free(ring: &Ring, shifts: Vec<i32>) -> Self {
        let m = Matrix::zero(ring.nvars(), shifts, Vec::new());
        Self::raw(ring, m, true)
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::free(ring, Vec::new())
    }

    /// The ideal generated by `gens`, presented by the syzygies of the generator row.
    pub fn ideal(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        let gens: Vec<Polynomial> = gens.iter().map(|g| ring.reduce(g)).collect();
        let mut degs = Vec::new();
        for g in &gens {
            if g.nvars() != ring.nvars() {
                return Err(Error::ContextMismatch);
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
            degs.push(
                g.homogeneous_degree()
                    .ok_or_else(|| Error::Inhomogeneous(ring.display(g)))? as i32,
            );
        }
        let row = Matrix::new(ring.nvars(), vec![0], degs, gens.into_iter().map(|g| vec![g]).collect());
        let syz = syzygy_over_ring(ring, &row)?;
        Ok(Self::cokernel(ring, syz)?.minimal_presentation())
    }

    /// `R/(gens)`.
    pub fn quotient(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        let rows = vec![gens.iter().map(|g| ring.reduce(g)).collect::<Vec<_>>()];
        let m = Matrix::from_rows(ring.nvars(), &rows, vec![0])?;
        Self::cokernel(ring, m)
    }

    /// `k = R/m`.
    pub fn residue_field(ring: &Ring) -> Self {
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.base().var(i)).collect();
        Self::quotient(ring, &vars).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn presentation(&self) -> &Matrix {
        &self.presentation
    }

    /// Degrees of the generators.
    pub fn generator_degrees(&self) -> &[i32] {
        self.presentation.row_degrees()
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.nrows()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn minimal_presentation(&self) -> Self {
        if self.minimal {
            return self.clone();
        }
        let m = minimalize(&self.ring, &self.presentation);
        debug_assert!(!m.has_unit_entry());
        Self::raw(&self.ring, m, true)
    }

    /// `M(d)`, so that `M(d)_e = M_{d+e}`.
    pub fn twist(&self, d: i32) -> Self {
        Self::raw(&self.ring, self.presentation.twist(-d), self.minimal)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        let m = self.presentation.direct_sum(&other.presentation);
        Ok(Self::raw(&self.ring, m, self.minimal && other.minimal))
    }

    /// `[φ | f·I]`, the presentation over `S`.
    pub fn s_presentation(&self) -> Matrix {
        match self.ring.relation() {
            None => self.presentation.clone(),
            Some(f) => {
                let fi = Matrix::scalar(
                    self.ring.nvars(),
                    self.generator_degrees().to_vec(),
                    f,
                    self.ring.relation_degree(),
                );
                self.presentation.hconcat(&fi)
            }
        }
    }

    /// The same module regarded over the ambient polynomial ring.
    pub fn over_ambient(&self) -> Self {
        let s = self.ring.ambient();
        Self::raw(&s, self.s_presentation(), false)
    }

    /// Groebner basis of the relations over `S`.
    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let order = ModuleOrder::graded(self.generator_degrees());
            GroebnerBasis::compute_with_order(
                self.ring.field(),
                self.ring.nvars(),
                order,
                self.s_presentation().cols(),
            )
        })
    }

    /// `dim_k M_d`.
    pub fn hilbert_value(&self, d: i64) -> usize {
        hilbert::hilbert_value(self.groebner(), self.ring.nvars(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.minimal_presentation().num_generators() == 0
    }

    pub fn is_free(&self) -> bool {
        self.minimal_presentation().presentation.ncols() == 0
    }

    /// Whether `v ∈ F_0` maps to zero in `M`.
    pub fn contains_relation(&self, v: &FreeModuleElement) -> bool {
        self.groebner().contains(v)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        let field = self.ring.field();
        let n = self.ring.nvars();
        let (phi, psi) = (&self.presentation, &other.presentation);
        let i_f = Matrix::identity(n, phi.row_degrees().to_vec());
        let i_g = Matrix::identity(n, psi.row_degrees().to_vec());
        let rel = phi.kron(field, &i_g).hconcat(&i_f.kron(field, psi));
        Ok(Self::cokernel(&self.ring, rel)?.minimal_presentation())
    }

    /// `Hom_R(self, other)`, the kernel of `Hom(F_0, N) -> Hom(F_1, N)`.
    pub fn hom(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        let field = self.ring.field();
        let n = self.ring.nvars();
        let phi = &self.minimal_presentation().presentation;
        let psi = &other.presentation;
        let phit = phi.transpose();
        let i_g = Matrix::identity(n, psi.row_degrees().to_vec());
        let a = phit.kron(field, &i_g);
        let rel_target = Matrix::identity(n, phit.row_degrees().to_vec()).kron(field, psi);
        let rel_here = Matrix::identity(n, phit.col_degrees().to_vec()).kron(field, psi);
        let b = Matrix::zero(n, a.col_degrees().to_vec(), Vec::new());
        homology(&self.ring, &a, &rel_target, &b, &rel_here)
    }

    /// `M* = Hom_R(M, R)`.
    pub fn dual(&self) -> Self {
        self.hom(&Self::free(&self.ring, vec![0])).expect("same ring")
    }

    /// The first syzygy `ker(F_0 -> M)` of the minimal presentation.
    pub fn syzygy(&self) -> Self {
        let phi = self.minimal_presentation().presentation;
        let syz = syzygy_over_ring(&self.ring, &phi).expect("presentations are homogeneous");
        let k = Matrix::new(
            self.ring.nvars(),
            phi.col_degrees().to_vec(),
            syz.col_degrees().to_vec(),
            syz.cols().to_vec(),
        );
        Self::cokernel(&self.ring, k).expect("homogeneous").minimal_presentation()
    }
}

/// Homology `ker(a) / im(b)` of `E' <- E <- E''` taken modulo the relation modules:
/// the target is `E' / im(rel_target)` and the middle term is `E / im(rel_here)`.
pub(crate) fn homology(
    ring: &Ring,
    a: &Matrix,
    rel_target: &Matrix,
    b: &Matrix,
    rel_here: &Matrix,
) -> Result<GradedModule> {
    let n = ring.nvars();
    let shifts = a.col_degrees().to_vec();
    let z = if a.nrows() == 0 {
        Matrix::identity(n, shifts.clone())
    } else {
        let aug = ring.reduce_matrix(&a.hconcat(rel_target));
        let k = syzygy_over_ring(ring, &aug)?;
        let idx: Vec<usize> = (0..a.ncols()).collect();
        let z = k.select_rows(&idx).with_degrees(shifts.clone(), k.col_degrees().to_vec());
        ring.reduce_matrix(&z).prune_zero_cols()
    };
    let w = ring.reduce_matrix(&b.hconcat(rel_here));
    let z = trim(ring, &shifts, w.cols(), &z);
    if z.ncols() == 0 {
        return Ok(GradedModule::zero(ring));
    }
    let k = syzygy_over_ring(ring, &z.hconcat(&w))?;
    let idx: Vec<usize> = (0..z.ncols()).collect();
    let rel = k
        .select_rows(&idx)
        .with_degrees(z.col_degrees().to_vec(), k.col_degrees().to_vec());
    Ok(GradedModule::cokernel(ring, rel)?.minimal_presentation())
}
