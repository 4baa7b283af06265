//! Groebner bases for submodules of graded free modules over `k[x_1, ..., x_n]`.
//!
//! Buchberger's algorithm with the normal selection strategy: pairs are handled in
//! order of (sugar) degree, then by pair index. For homogeneous input this processes
//! the module degree by degree, which also identifies a minimal generating subset of
//! the input for free.
//!
//! Module terms `x^a e_i` are compared by block (lower block is larger), then total
//! degree `|a| + shift_i`, then grevlex on `x^a`, then position (lower index is
//! larger). With a single block this is a graded term-over-position order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::matrix::{FreeModuleElement, Matrix};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub mono: Monomial,
    pub comp: usize,
    pub coeff: FieldElement,
}

/// Sparse module element: terms sorted strictly descending in a [`ModuleOrder`].
pub(crate) type Vector = Vec<Term>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    shifts: Vec<i32>,
    blocks: Vec<u8>,
}

impl ModuleOrder {
    /// Graded term-over-position order on a free module with the given shifts.
    pub fn graded(shifts: &[i32]) -> Self {
        Self { shifts: shifts.to_vec(), blocks: vec![0; shifts.len()] }
    }

    /// Block order: every term in a lower block beats every term in a higher one.
    pub fn with_blocks(shifts: &[i32], blocks: &[u8]) -> Self {
        assert_eq!(shifts.len(), blocks.len());
        Self { shifts: shifts.to_vec(), blocks: blocks.to_vec() }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    #[inline]
    fn total_degree(&self, m: &Monomial, comp: usize) -> i64 {
        m.degree() as i64 + self.shifts[comp] as i64
    }

    #[inline]
    pub(crate) fn cmp(&self, am: &Monomial, ac: usize, bm: &Monomial, bc: usize) -> Ordering {
        self.blocks[bc]
            .cmp(&self.blocks[ac])
            .then_with(|| self.total_degree(am, ac).cmp(&self.total_degree(bm, bc)))
            .then_with(|| am.cmp_grevlex(bm))
            .then_with(|| bc.cmp(&ac))
    }

    #[inline]
    fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(&a.mono, a.comp, &b.mono, b.comp)
    }

    pub(crate) fn to_vector(&self, field: &PrimeField, col: &[Polynomial]) -> Vector {
        debug_assert_eq!(col.len(), self.rank());
        let mut v: Vector = col
            .iter()
            .enumerate()
            .flat_map(|(comp, p)| {
                p.terms().iter().map(move |(c, m)| Term { mono: m.clone(), comp, coeff: *c })
            })
            .collect();
        v.sort_by(|a, b| self.cmp_terms(b, a));
        // inputs are canonical polynomials, so no duplicates can occur
        debug_assert!(v.windows(2).all(|w| self.cmp_terms(&w[0], &w[1]) == Ordering::Greater));
        let _ = field;
        v
    }

    /// Total degree of the leading term; for homogeneous vectors, the degree.
    pub(crate) fn degree(&self, v: &Vector) -> Option<i64> {
        v.iter().map(|t| self.total_degree(&t.mono, t.comp)).max()
    }

    fn is_homogeneous(&self, v: &Vector) -> bool {
        match v.first() {
            None => true,
            Some(t0) => {
                let d = self.total_degree(&t0.mono, t0.comp);
                v.iter().all(|t| self.total_degree(&t.mono, t.comp) == d)
            }
        }
    }
}

pub(crate) fn to_dense(nvars: usize, rank: usize, v: &Vector) -> FreeModuleElement {
    let mut parts: Vec<Vec<(FieldElement, Monomial)>> = vec![Vec::new(); rank];
    for t in v {
        parts[t.comp].push((t.coeff, t.mono.clone()));
    }
    parts
        .into_iter()
        .map(|terms| Polynomial::from_sorted_terms(nvars, terms))
        .collect()
}

/// `a + c * q * b`.
fn axpy(order: &ModuleOrder, field: &PrimeField, a: &[Term], c: FieldElement, q: &Monomial, b: &[Term]) -> Vector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<Term> = b.first().map(|t| scaled(field, t, c, q));
    while i < a.len() {
        let Some(bt) = bj.as_ref() else { break };
        match order.cmp_terms(&a[i], bt) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(bj.take().unwrap());
                j += 1;
                bj = b.get(j).map(|t| scaled(field, t, c, q));
            }
            Ordering::Equal => {
                let s = field.add(a[i].coeff, bt.coeff);
                if !s.is_zero() {
                    out.push(Term { mono: a[i].mono.clone(), comp: a[i].comp, coeff: s });
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| scaled(field, t, c, q));
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    if let Some(bt) = bj {
        out.push(bt);
        out.extend(b[j + 1..].iter().map(|t| scaled(field, t, c, q)));
    }
    out
}

#[inline]
fn scaled(field: &PrimeField, t: &Term, c: FieldElement, q: &Monomial) -> Term {
    Term { mono: t.mono.mul(q), comp: t.comp, coeff: field.mul(t.coeff, c) }
}

fn make_monic(field: &PrimeField, v: &mut Vector) {
    if let Some(lc) = v.first().map(|t| t.coeff) {
        if lc != FieldElement::ONE {
            let inv = field.inv(lc);
            for t in v.iter_mut() {
                t.coeff = field.mul(t.coeff, inv);
            }
        }
    }
}

/// A set of monic vectors usable as reducers.
#[derive(Clone, Debug)]
struct Reducers {
    elems: Vec<Vector>,
    by_comp: Vec<Vec<usize>>,
    active: Vec<bool>,
}

impl Reducers {
    fn new(rank: usize) -> Self {
        Self { elems: Vec::new(), by_comp: vec![Vec::new(); rank], active: Vec::new() }
    }

    fn push(&mut self, v: Vector) -> usize {
        let k = self.elems.len();
        self.by_comp[v[0].comp].push(k);
        self.elems.push(v);
        self.active.push(true);
        k
    }

    fn find(&self, mono: &Monomial, comp: usize) -> Option<usize> {
        self.by_comp[comp]
            .iter()
            .copied()
            .find(|&k| self.active[k] && self.elems[k][0].mono.divides(mono))
    }

    /// Reduces `v`; with `tail == false` only the leading term is reduced away.
    fn reduce(&self, order: &ModuleOrder, field: &PrimeField, v: Vector, tail: bool) -> Vector {
        let mut rem: Vector = Vec::new();
        let mut cur = v;
        let mut start = 0;
        while start < cur.len() {
            let (mono, comp, coeff) = {
                let t = &cur[start];
                (&t.mono, t.comp, t.coeff)
            };
            match self.find(mono, comp) {
                Some(k) => {
                    let g = &self.elems[k];
                    let q = g[0].mono.quotient_of(mono);
                    let next = axpy(order, field, &cur[start + 1..], field.neg(coeff), &q, &g[1..]);
                    cur = next;
                    start = 0;
                }
                None if !tail => {
                    rem.extend(cur.drain(start..));
                    return rem;
                }
                None => {
                    rem.push(cur[start].clone());
                    start += 1;
                }
            }
        }
        rem
    }
}

pub(crate) struct Outcome {
    pub basis: Vec<Vector>,
    /// For each input: whether it was needed, i.e. not in the span of lower-degree data
    /// and earlier inputs. For homogeneous input this marks a minimal generating set.
    pub minimal_inputs: Vec<bool>,
}

/// Buchberger's algorithm. Returns the reduced Groebner basis.
pub(crate) fn buchberger(order: &ModuleOrder, field: &PrimeField, inputs: Vec<Vector>) -> Outcome {
    let rank = order.rank();
    let mut g = Reducers::new(rank);
    let mut sugar: Vec<i64> = Vec::new();
    let mut queue: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut minimal = vec![false; inputs.len()];

    let mut inputs: Vec<(i64, usize, Vector)> = inputs
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_empty())
        .map(|(i, v)| (order.degree(&v).unwrap(), i, v))
        .collect();
    inputs.sort_by_key(|(d, i, _)| (*d, *i));
    let mut inputs = inputs.into_iter().peekable();

    let add = |g: &mut Reducers,
                   sugar: &mut Vec<i64>,
                   queue: &mut BTreeSet<(i64, usize, usize)>,
                   pending: &mut BTreeSet<(usize, usize)>,
                   mut v: Vector,
                   s: i64| {
        make_monic(field, &mut v);
        let k = g.elems.len();
        let (lm, lc) = (v[0].mono.clone(), v[0].comp);
        for &i in &g.by_comp[lc] {
            let li = &g.elems[i][0].mono;
            let l = li.lcm(&lm);
            let si = sugar[i] + (l.degree() - li.degree()) as i64;
            let sk = s + (l.degree() - lm.degree()) as i64;
            queue.insert((si.max(sk), k, i));
            pending.insert((i, k));
        }
        g.push(v);
        sugar.push(s);
    };

    loop {
        let next_pair = queue.first().map(|p| p.0);
        let next_input = inputs.peek().map(|x| x.0);
        let take_pair = match (next_pair, next_input) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(p), Some(i)) => p <= i,
        };
        if take_pair {
            let (s, j, i) = queue.pop_first().unwrap();
            pending.remove(&(i, j));
            let (li, lj) = (&g.elems[i][0].mono, &g.elems[j][0].mono);
            let comp = g.elems[i][0].comp;
            let l = li.lcm(lj);
            // chain criterion
            let redundant = g.by_comp[comp].iter().any(|&k| {
                k != i
                    && k != j
                    && g.elems[k][0].mono.divides(&l)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if redundant {
                continue;
            }
            let qi = li.quotient_of(&l);
            let qj = lj.quotient_of(&l);
            let left: Vector = g.elems[i][1..].iter().map(|t| scaled(field, t, FieldElement::ONE, &qi)).collect();
            let sp = axpy(order, field, &left, field.neg(FieldElement::ONE), &qj, &g.elems[j][1..]);
            let r = g.reduce(order, field, sp, true);
            if !r.is_empty() {
                add(&mut g, &mut sugar, &mut queue, &mut pending, r, s);
            }
        } else {
            let (d, idx, v) = inputs.next().unwrap();
            let r = g.reduce(order, field, v, true);
            if !r.is_empty() {
                minimal[idx] = true;
                add(&mut g, &mut sugar, &mut queue, &mut pending, r, d);
            }
        }
    }

    Outcome { basis: interreduce(order, field, g), minimal_inputs: minimal }
}

fn interreduce(order: &ModuleOrder, field: &PrimeField, mut g: Reducers) -> Vec<Vector> {
    let n = g.elems.len();
    for k in 0..n {
        let (m, c) = (&g.elems[k][0].mono, g.elems[k][0].comp);
        let dominated = g.by_comp[c].iter().any(|&j| {
            j != k && g.active[j] && {
                let mj = &g.elems[j][0].mono;
                mj.divides(m) && (mj != m || j < k)
            }
        });
        if dominated {
            g.active[k] = false;
        }
    }
    let mut out = Vec::new();
    for k in 0..n {
        if !g.active[k] {
            continue;
        }
        let v = g.elems[k].clone();
        let head = v[0].clone();
        let tail = g.reduce(order, field, v[1..].to_vec(), true);
        let tail = full_reduce(order, field, &g, tail);
        let mut r = vec![head];
        r.extend(tail);
        make_monic(field, &mut r);
        out.push(r);
    }
    out
}

fn full_reduce(order: &ModuleOrder, field: &PrimeField, g: &Reducers, v: Vector) -> Vector {
    g.reduce(order, field, v, true)
}

/// A reduced Groebner basis of a submodule of a graded free module.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    field: PrimeField,
    nvars: usize,
    order: ModuleOrder,
    reducers: Reducers,
}

impl GroebnerBasis {
    /// Reduced Groebner basis in the graded term-over-position order.
    pub fn compute(ring: &PolyRing, shifts: &[i32], gens: &[FreeModuleElement]) -> Result<Self> {
        for g in gens {
            if g.len() != shifts.len() {
                return Err(Error::Shape(format!(
                    "generator has {} components, free module has rank {}",
                    g.len(),
                    shifts.len()
                )));
            }
            if g.iter().any(|p| p.nvars() != ring.nvars()) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(Self::compute_with_order(ring.field(), ring.nvars(), ModuleOrder::graded(shifts), gens))
    }

    pub(crate) fn compute_with_order(
        field: &PrimeField,
        nvars: usize,
        order: ModuleOrder,
        gens: &[FreeModuleElement],
    ) -> Self {
        let inputs = gens.iter().map(|g| order.to_vector(field, g)).collect();
        let out = buchberger(&order, field, inputs);
        Self::from_basis(*field, nvars, order, out.basis)
    }

    pub(crate) fn from_basis(field: PrimeField, nvars: usize, order: ModuleOrder, basis: Vec<Vector>) -> Self {
        let mut reducers = Reducers::new(order.rank());
        for v in basis {
            reducers.push(v);
        }
        Self { field, nvars, order, reducers }
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.reducers.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reducers.elems.is_empty()
    }

    /// Always true for bases built here.
    pub fn is_reduced(&self) -> bool {
        let elems = &self.reducers.elems;
        elems.iter().enumerate().all(|(k, v)| {
            v[0].coeff == FieldElement::ONE
                && elems.iter().enumerate().all(|(j, w)| {
                    j == k
                        || v.iter().all(|t| !(t.comp == w[0].comp && w[0].mono.divides(&t.mono)))
                })
        })
    }

    pub fn generators(&self) -> Vec<FreeModuleElement> {
        self.reducers
            .elems
            .iter()
            .map(|v| to_dense(self.nvars, self.order.rank(), v))
            .collect()
    }

    /// Leading monomials as `(component, monomial)`.
    pub fn leading_monomials(&self) -> Vec<(usize, Monomial)> {
        self.reducers.elems.iter().map(|v| (v[0].comp, v[0].mono.clone())).collect()
    }

    pub fn normal_form(&self, v: &FreeModuleElement) -> FreeModuleElement {
        let vec = self.order.to_vector(&self.field, v);
        let r = self.reducers.reduce(&self.order, &self.field, vec, true);
        to_dense(self.nvars, self.order.rank(), &r)
    }

    pub fn contains(&self, v: &FreeModuleElement) -> bool {
        let vec = self.order.to_vector(&self.field, v);
        self.reducers.reduce(&self.order, &self.field, vec, false).is_empty()
    }

    /// Re-checks Buchberger's criterion: every S-pair reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let e = &self.reducers.elems;
        for j in 0..e.len() {
            for i in 0..j {
                if e[i][0].comp != e[j][0].comp {
                    continue;
                }
                let l = e[i][0].mono.lcm(&e[j][0].mono);
                let qi = e[i][0].mono.quotient_of(&l);
                let qj = e[j][0].mono.quotient_of(&l);
                let left: Vector = e[i].iter().map(|t| scaled(&self.field, t, FieldElement::ONE, &qi)).collect();
                let sp = axpy(&self.order, &self.field, &left, self.field.neg(FieldElement::ONE), &qj, &e[j]);
                if !self.reducers.reduce(&self.order, &self.field, sp, false).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Syzygies of the columns of `m` over the polynomial ring, as a Groebner basis of the
/// syzygy module. Uses the block order on `F_0 ⊕ F_1` with `F_0` dominant: basis
/// elements whose leading term falls in `F_1` are exactly the syzygies.
pub(crate) fn syzygy_vectors(field: &PrimeField, m: &Matrix) -> Vec<(FreeModuleElement, i32)> {
    let (r0, r1) = (m.nrows(), m.ncols());
    let nvars = m.nvars();
    let mut shifts = m.row_degrees().to_vec();
    shifts.extend_from_slice(m.col_degrees());
    let mut blocks = vec![0u8; r0];
    blocks.extend(std::iter::repeat_n(1u8, r1));
    let order = ModuleOrder::with_blocks(&shifts, &blocks);
    let inputs: Vec<Vector> = m
        .cols()
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut ext = col.clone();
            ext.extend((0..r1).map(|k| if k == j { Polynomial::one(nvars) } else { Polynomial::zero(nvars) }));
            order.to_vector(field, &ext)
        })
        .collect();
    let out = buchberger(&order, field, inputs);
    out.basis
        .iter()
        .filter(|v| v[0].comp >= r0)
        .map(|v| {
            let shifted: Vector = v
                .iter()
                .map(|t| Term { mono: t.mono.clone(), comp: t.comp - r0, coeff: t.coeff })
                .collect();
            let deg = order.degree(v).unwrap() as i32;
            (to_dense(nvars, r1, &shifted), deg)
        })
        .collect()
}

/// Indices of `cands` forming a minimal generating set of `span(prefix ∪ cands)`
/// modulo `span(prefix)`. All vectors must be homogeneous.
pub(crate) fn minimal_subset(
    field: &PrimeField,
    shifts: &[i32],
    prefix: &[FreeModuleElement],
    cands: &[FreeModuleElement],
) -> Vec<usize> {
    let order = ModuleOrder::graded(shifts);
    let inputs: Vec<Vector> = prefix
        .iter()
        .chain(cands)
        .map(|v| order.to_vector(field, v))
        .collect();
    debug_assert!(inputs.iter().all(|v| order.is_homogeneous(v)));
    let out = buchberger(&order, field, inputs);
    (0..cands.len())
        .filter(|&j| out.minimal_inputs[prefix.len() + j])
        .collect()
}

/// Minimal generators of the syzygy module of the columns of `m` over `k[x]`.
pub fn syzygy_basis(ring: &PolyRing, m: &Matrix) -> Result<Matrix> {
    if m.nvars() != ring.nvars() {
        return Err(Error::ContextMismatch);
    }
    m.check_homogeneous()?;
    let field = ring.field();
    let syz = syzygy_vectors(field, m);
    let cands: Vec<FreeModuleElement> = syz.iter().map(|(v, _)| v.clone()).collect();
    let keep = minimal_subset(field, m.col_degrees(), &[], &cands);
    let out = Matrix::new(
        m.nvars(),
        m.col_degrees().to_vec(),
        keep.iter().map(|&k| syz[k].1).collect(),
        keep.iter().map(|&k| syz[k].0.clone()).collect(),
    );
    debug_assert!(m.mul(field, &out).is_zero());
    Ok(out)
}
