//! Complete resolutions of maximal Cohen-Macaulay modules and stable Tor and Ext.
//!
//! Past the periodicity onset `o` the minimal resolution of `M` is the two-periodic
//! complex of a matrix factorization `(A, B)`. Extending that complex in both
//! directions gives a complete resolution `T` with `T_i = F_i` for `i >= o - 1`:
//!
//! ```text
//! ... -> T_{o+1} --B--> T_o --A--> T_{o-1} --B--> T_{o-2} -> ...
//! ```
//!
//! with `T_{i+2} = T_i(-deg f)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{
    complex_cohomology, complex_homology, depth, ext_from_resolution, length, support_window,
    tor_from_resolution, Depth, HilbertFunction, Length,
};
use crate::matrix::Matrix;
use crate::module::GradedModule;
use crate::report::{Check, Verdict};
use crate::resolution::{detect_periodicity, extract_mf, FreeResolution, MatrixFactorization};
use crate::ring::Ring;
use crate::theta::{theta, theta_from_resolution, ThetaReport};

#[derive(Clone, Debug)]
pub struct CompleteResolution {
    ring: Ring,
    pub mf: MatrixFactorization,
    /// `T_i = F_i` and `∂_i = d_i` from here on (up to a change of basis in `F_{o+1}`).
    pub splice_degree: usize,
    /// `F_0 <- ... <- F_{o-1}`, the part of the minimal resolution below the splice.
    pub prefix: Vec<Matrix>,
    p: Vec<i32>,
    q: Vec<i32>,
}

fn shifted(a: &[i32], by: i32) -> Vec<i32> {
    a.iter().map(|x| x + by).collect()
}

impl CompleteResolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn df(&self) -> i32 {
        self.ring.relation_degree()
    }

    /// `(parity, k)` with `i = o - parity + 2k`.
    fn position(&self, i: i64) -> (bool, i32) {
        let r = i - self.splice_degree as i64;
        (r.rem_euclid(2) == 1, r.div_euclid(2) as i32)
    }

    /// Degree shifts of `T_i`.
    pub fn term(&self, i: i64) -> Vec<i32> {
        let (odd, k) = self.position(i);
        if odd {
            shifted(&self.q, (k + 1) * self.df())
        } else {
            shifted(&self.p, k * self.df())
        }
    }

    /// `∂_i: T_i -> T_{i-1}`.
    pub fn differential(&self, i: i64) -> Matrix {
        let (odd, k) = self.position(i);
        let df = self.df();
        if odd {
            self.mf.b.clone().with_degrees(shifted(&self.p, k * df), shifted(&self.q, (k + 1) * df))
        } else {
            self.mf.a.clone().with_degrees(shifted(&self.q, k * df), shifted(&self.p, k * df))
        }
    }

    /// `H_i(T) = 0` and `H^i(Hom(T, R)) = 0` for `lo <= i <= hi`.
    pub fn is_exact_on(&self, lo: i64, hi: i64) -> Result<bool> {
        let rr = GradedModule::free(&self.ring, vec![0]);
        for i in lo..=hi {
            if !self.ring.mul_matrix(&self.differential(i), &self.differential(i + 1)).is_zero() {
                return Ok(false);
            }
            if !self.stable_tor(&rr, i)?.is_zero() || !self.stable_ext(&rr, i)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `T̂or_i(M, N) = H_i(T ⊗ N)`.
    pub fn stable_tor(&self, n: &GradedModule, i: i64) -> Result<GradedModule> {
        complex_homology(&self.ring, &self.differential(i), &self.differential(i + 1), n)
    }

    /// `Êxt^i(M, N) = H^i(Hom(T, N))`.
    pub fn stable_ext(&self, n: &GradedModule, i: i64) -> Result<GradedModule> {
        complex_cohomology(&self.ring, &self.differential(i), &self.differential(i + 1), n)
    }
}

/// The complete resolution of a nonfree MCM module, checked exact on `±(dim R + 4)`.
pub fn complete_resolution(m: &GradedModule) -> Result<CompleteResolution> {
    let ring = m.ring();
    let d = ring.dim();
    match depth(m) {
        Depth::Infinite => return Err(Error::FreeModule),
        Depth::Finite(k) if k < d => return Err(Error::NotMaximalCohenMacaulay { depth: k, dim: d }),
        _ => {}
    }
    if m.is_free() {
        return Err(Error::FreeModule);
    }
    let mut res = FreeResolution::compute(m, d + 4)?;
    let cert = match detect_periodicity(&res) {
        Ok(c) => c,
        Err(_) => {
            res.extend_to(2 * d + 8)?;
            detect_periodicity(&res)?
        }
    };
    let o = cert.onset.max(1);
    let mf = extract_mf(&res, o)?;
    let cr = CompleteResolution {
        ring: ring.clone(),
        p: mf.a.col_degrees().to_vec(),
        q: mf.a.row_degrees().to_vec(),
        mf,
        splice_degree: o,
        prefix: res.maps()[..o - 1].to_vec(),
    };
    let w = d as i64 + 4;
    if !cr.is_exact_on(-w, w)? {
        return Err(Error::FactorizationFailed { at: o });
    }
    Ok(cr)
}

pub fn stable_tor(m: &GradedModule, n: &GradedModule, i: i64) -> Result<GradedModule> {
    complete_resolution(m)?.stable_tor(n, i)
}

pub fn stable_ext(m: &GradedModule, n: &GradedModule, i: i64) -> Result<GradedModule> {
    complete_resolution(m)?.stable_ext(n, i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StableKind {
    Tor,
    Ext,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StableEntry {
    pub index: i64,
    pub length: Length,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableTable {
    pub kind: StableKind,
    pub entries: Vec<StableEntry>,
}

impl StableTable {
    pub fn compute(cr: &CompleteResolution, n: &GradedModule, kind: StableKind, lo: i64, hi: i64) -> Result<Self> {
        let entries = (lo..=hi)
            .map(|i| {
                let h = match kind {
                    StableKind::Tor => cr.stable_tor(n, i)?,
                    StableKind::Ext => cr.stable_ext(n, i)?,
                };
                Ok(StableEntry { index: i, length: length(&h) })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { kind, entries })
    }

    pub fn is_periodic(&self) -> bool {
        self.entries.windows(3).all(|w| w[0].length == w[2].length)
    }

    pub fn get(&self, i: i64) -> Option<Length> {
        self.entries.iter().find(|e| e.index == i).map(|e| e.length)
    }
}

/// Generators live in degrees `>= lowest`; compares on this many degrees past it.
const INFINITE_WINDOW: i64 = 12;

fn lowest_degree(m: &GradedModule) -> Option<i64> {
    let mm = m.minimal_presentation();
    mm.generator_degrees().iter().min().map(|&d| d as i64)
}

fn hf_for(m: &GradedModule, lo: i64, hi: i64) -> HilbertFunction {
    crate::homology::hilbert_function(m, lo, hi)
}

/// Whether `a(d) = b(d + t)` for all `d`, with `t` given or inferred.
/// Returns the twist that matched.
pub fn graded_match(a: &GradedModule, b: &GradedModule, twist: Option<i64>) -> Option<i64> {
    let (za, zb) = (a.is_zero(), b.is_zero());
    if za || zb {
        return (za && zb).then_some(twist.unwrap_or(0));
    }
    match (support_window(a), support_window(b)) {
        (Some((alo, ahi)), Some((blo, bhi))) => {
            let ha = hf_for(a, alo, ahi);
            let hb = hf_for(b, blo, bhi);
            let t = ha.twist_to(&hb)?;
            (twist.is_none() || twist == Some(t)).then_some(t)
        }
        (None, None) => {
            let (la, lb) = (lowest_degree(a)?, lowest_degree(b)?);
            let t = twist.unwrap_or(lb - la);
            let ha = hf_for(a, la, la + INFINITE_WINDOW);
            let hb = hf_for(b, la + t, la + t + INFINITE_WINDOW);
            (ha.values == hb.values).then_some(t)
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    /// Which identity, `1..=6`, in the order listed by [`verify_stable_identities`].
    pub identity: u8,
    pub index: i64,
    pub twist: Option<i64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableIdentityReport {
    pub window: (i64, i64),
    pub checks: Vec<IdentityCheck>,
    pub verdict: Verdict,
}

/// For MCM `M` compares graded Hilbert functions of both sides of
///
/// 1. `Tor_i(M, N) ≅ T̂or_i(M, N)` for `i > 0`
/// 2. `Ext^i(M, N) ≅ Êxt^i(M, N)` for `i > 0`
/// 3. `T̂or_i ≅ T̂or_{i+2}` (up to the twist by `deg f`)
/// 4. `Êxt^i ≅ Êxt^{i+2}` (likewise)
/// 5. `T̂or_i(M, N) ≅ Êxt^{-i-1}(M*, N)`
/// 6. `Tor_i(M, N) ≅ Êxt^{i+1}(M*, N)` for `i > 0`
///
/// on indices `lo..=hi`, as graded equalities. The periodic ones carry the twist
/// `±deg f`, and so does the last one: moving `Êxt^{-i-1}` to `Êxt^{i+1}` crosses
/// `i + 1` periods.
pub fn verify_stable_identities(m: &GradedModule, n: &GradedModule, lo: i64, hi: i64) -> Result<StableIdentityReport> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty window {lo}..{hi}")));
    }
    let cr = complete_resolution(m)?;
    let ms = m.dual();
    let crs = complete_resolution(&ms)?;
    let df = m.ring().relation_degree() as i64;
    let top = hi.max(1) as usize + 2;
    let res = FreeResolution::compute(m, top)?;
    let mut checks = Vec::new();
    let mut push = |identity: u8, index: i64, twist: Option<i64>| {
        checks.push(IdentityCheck { identity, index, twist, holds: twist.is_some() });
    };
    for i in lo..=hi {
        let st = cr.stable_tor(n, i)?;
        let se = cr.stable_ext(n, i)?;
        if i > 0 {
            let t = tor_from_resolution(&res, n, i as usize)?;
            let e = ext_from_resolution(&res, n, i as usize)?;
            push(1, i, graded_match(&t, &st, Some(0)));
            push(2, i, graded_match(&e, &se, Some(0)));
            push(6, i, graded_match(&t, &crs.stable_ext(n, i + 1)?, Some(-(i + 1) * df)));
        }
        push(3, i, graded_match(&st, &cr.stable_tor(n, i + 2)?, Some(df)));
        push(4, i, graded_match(&se, &cr.stable_ext(n, i + 2)?, Some(-df)));
        push(5, i, graded_match(&st, &crs.stable_ext(n, -i - 1)?, Some(0)));
    }
    checks.sort_by_key(|c| (c.identity, c.index));
    let verdict = Verdict::from_bool(checks.iter().all(|c| c.holds));
    Ok(StableIdentityReport { window: (lo, hi), checks, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityPair {
    pub i: i64,
    pub j: i64,
    /// `l(Êxt^i(M, N))`
    pub left: Length,
    /// `l(Êxt^j(M*, N*))`
    pub right: Length,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub preconditions: Vec<Check>,
    pub pairs: Vec<DualityPair>,
    pub verdict: Verdict,
}

fn even_isolated(ring: &Ring) -> Vec<Check> {
    let d = ring.dim();
    vec![
        Check::assert("even-dimension", d % 2 == 0, format!("dim R = {d}")),
        Check::assert("isolated-singularity", ring.is_isolated_singularity(), "Jacobian ideal of dimension <= 0"),
    ]
}

/// `l(Êxt^i(M, N)) = l(Êxt^j(M*, N*))` for `i - j` odd, over an even-dimensional
/// isolated singularity with `M`, `N` MCM.
pub fn verify_buchweitz_duality(m: &GradedModule, n: &GradedModule, pairs: &[(i64, i64)]) -> Result<DualityReport> {
    if let Some(&(i, j)) = pairs.iter().find(|(i, j)| (i - j).rem_euclid(2) == 0) {
        return Err(Error::InvalidArgument(format!("i - j must be odd, got ({i}, {j})")));
    }
    let ring = m.ring();
    let mut pre = even_isolated(ring);
    let d = ring.dim();
    for (name, x) in [("m-mcm", m), ("n-mcm", n)] {
        let dx = depth(x);
        pre.push(Check::assert(name, dx >= Depth::Finite(d), format!("depth = {dx}")));
    }
    if pre.iter().any(|c| c.verdict != Verdict::Holds) {
        return Ok(DualityReport { preconditions: pre, pairs: Vec::new(), verdict: Verdict::NotApplicable });
    }
    if m.is_free() || n.is_free() {
        // stable homology of a free module vanishes identically
        let out = pairs
            .iter()
            .map(|&(i, j)| DualityPair { i, j, left: Length::Finite(0), right: Length::Finite(0), holds: true })
            .collect();
        return Ok(DualityReport { preconditions: pre, pairs: out, verdict: Verdict::Holds });
    }
    let cr = complete_resolution(m)?;
    let crs = complete_resolution(&m.dual())?;
    let ns = n.dual();
    let out: Vec<DualityPair> = pairs
        .iter()
        .map(|&(i, j)| {
            let left = length(&cr.stable_ext(n, i)?);
            let right = length(&crs.stable_ext(&ns, j)?);
            Ok(DualityPair { i, j, left, right, holds: left == right })
        })
        .collect::<Result<_>>()?;
    let verdict = Verdict::from_bool(out.iter().all(|p| p.holds));
    Ok(DualityReport { preconditions: pre, pairs: out, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaVanishingReport {
    pub preconditions: Vec<Check>,
    pub theta: Option<ThetaReport>,
    /// `θ(K, K*)` for the first syzygy `K` of `M`.
    pub syzygy_theta: Option<i64>,
    pub verdict: Verdict,
}

/// `θ(M, M*) = 0` for a vector bundle `M` over an even-dimensional isolated singularity,
/// together with `θ(M, M*) = θ(K, K*)` for `K = syz M`. The value of `θ(M, M*)` is
/// recorded even when the preconditions fail.
pub fn verify_theta_vanishing(m: &GradedModule) -> Result<ThetaVanishingReport> {
    let ring = m.ring();
    let mut pre = even_isolated(ring);
    let ms = m.dual();
    let res = FreeResolution::compute(m, 2 * crate::theta::theta_index(ring) + 5)?;
    let th = theta_from_resolution(&res, &ms);
    pre.push(Check::assert(
        "finite-length-higher-tor",
        th.as_ref().is_ok_and(|t| t.f_index <= 1),
        match &th {
            Ok(t) => format!("f-index {}", t.f_index),
            Err(e) => e.to_string(),
        },
    ));
    let theta_report = th.ok();
    if pre.iter().any(|c| c.verdict != Verdict::Holds) {
        return Ok(ThetaVanishingReport {
            preconditions: pre,
            theta: theta_report,
            syzygy_theta: None,
            verdict: Verdict::NotApplicable,
        });
    }
    let t = theta_report.expect("checked above");
    let k = m.syzygy();
    let tk = theta(&k, &k.dual())?.value;
    let verdict = Verdict::from_bool(t.value == 0 && tk == t.value);
    Ok(ThetaVanishingReport { preconditions: pre, theta: Some(t), syzygy_theta: Some(tk), verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::Length;

    fn a1() -> (Ring, GradedModule) {
        let r = Ring::define(32003, &["x", "y", "z"], "x*y - z^2").unwrap();
        let rows = vec![
            vec![r.parse("x").unwrap(), r.parse("z").unwrap()],
            vec![r.parse("z").unwrap(), r.parse("y").unwrap()],
        ];
        let m = GradedModule::cokernel(&r, Matrix::from_rows(3, &rows, vec![0, 0]).unwrap()).unwrap();
        (r, m)
    }

    #[test]
    fn a1_complete_resolution() {
        let (_, m) = a1();
        let cr = complete_resolution(&m).unwrap();
        assert_eq!(cr.splice_degree, 1);
        assert!(cr.prefix.is_empty());
        assert_eq!(cr.term(0), vec![0, 0]);
        assert_eq!(cr.term(1), vec![1, 1]);
        assert_eq!(cr.term(-1), vec![-1, -1]);
        assert_eq!(cr.term(2), vec![2, 2]);
        let t = StableTable::compute(&cr, &m, StableKind::Tor, -4, 4).unwrap();
        assert!(t.is_periodic());
    }

    #[test]
    fn rejects_free_and_non_mcm() {
        let (r, _) = a1();
        assert_eq!(complete_resolution(&GradedModule::free(&r, vec![0])).unwrap_err(), Error::FreeModule);
        let k = GradedModule::residue_field(&r);
        assert!(matches!(complete_resolution(&k), Err(Error::NotMaximalCohenMacaulay { .. })));
    }

    #[test]
    fn example_ideal_has_complete_resolution() {
        let r = Ring::define(32003, &["x", "y", "u", "v"], "x*u - y*v").unwrap();
        let m = GradedModule::ideal(&r, &[r.parse("x").unwrap(), r.parse("y").unwrap()]).unwrap();
        let cr = complete_resolution(&m).unwrap();
        assert_eq!(cr.mf.size(), 2);
        let ms = m.dual();
        let t = StableTable::compute(&cr, &ms, StableKind::Tor, -3, 3).unwrap();
        assert_eq!(t.get(1), Some(Length::Finite(1)));
        assert_eq!(t.get(2), Some(Length::Finite(0)));
        assert!(t.is_periodic());
    }

    #[test]
    fn identities_on_a1_pair() {
        let (_, m) = a1();
        let rep = verify_stable_identities(&m, &m, -3, 3).unwrap();
        let bad: Vec<_> = rep.checks.iter().filter(|c| !c.holds).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert_eq!(rep.verdict, Verdict::Holds);
    }

    #[test]
    fn duality_on_a1_pair() {
        let (_, m) = a1();
        let rep = verify_buchweitz_duality(&m, &m, &[(1, 0), (2, -1), (0, 3)]).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
        assert!(verify_buchweitz_duality(&m, &m, &[(1, 1)]).is_err());
        let r = Ring::define(32003, &["x", "y", "u", "v"], "x*u - y*v").unwrap();
        let e = GradedModule::ideal(&r, &[r.parse("x").unwrap(), r.parse("y").unwrap()]).unwrap();
        assert_eq!(verify_buchweitz_duality(&e, &e, &[(1, 0)]).unwrap().verdict, Verdict::NotApplicable);
    }

    #[test]
    fn theta_vanishing() {
        let (r, m) = a1();
        let rep = verify_theta_vanishing(&m).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
        assert_eq!(rep.theta.unwrap().value, 0);
        let f = GradedModule::free(&r, vec![0]);
        assert_eq!(verify_theta_vanishing(&f).unwrap().verdict, Verdict::Holds);
        let r3 = Ring::define(32003, &["x", "y", "u", "v"], "x*u - y*v").unwrap();
        let e = GradedModule::ideal(&r3, &[r3.parse("x").unwrap(), r3.parse("y").unwrap()]).unwrap();
        let rep = verify_theta_vanishing(&e).unwrap();
        assert_eq!(rep.verdict, Verdict::NotApplicable);
        assert_eq!(rep.theta.unwrap().value, -1);
    }
}
