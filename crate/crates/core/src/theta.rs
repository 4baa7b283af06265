//! Hochster's theta pairing, rigidity scans, duals and pushforwards, and the depth,
//! dimension and freeness criteria that are phrased in terms of them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::homology::{
    depth, ext, ext_from_resolution, krull_dim, length, tor_from_resolution, Depth, Length, TorScan,
};
use crate::matrix::Matrix;
use crate::module::{syzygy_over_ring, GradedModule};
use crate::poly::Polynomial;
use crate::report::{Check, Verdict};
use crate::resolution::{detect_periodicity, resolve, FreeResolution, Over};
use crate::ring::Ring;

/// `e = ceil((d + 1) / 2)`, the first index read by [`theta`].
pub fn theta_index(ring: &Ring) -> usize {
    (ring.dim() + 2) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityPair {
    pub e: usize,
    /// `l(Tor_{2e+2})`
    pub even: Length,
    /// `l(Tor_{2e+1})`
    pub odd: Length,
}

impl StabilityPair {
    fn value(&self) -> Option<i64> {
        Some(self.even.value()? as i64 - self.odd.value()? as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub value: i64,
    pub e_used: usize,
    pub stability_pairs: Vec<StabilityPair>,
    pub f_index: usize,
    /// Largest Tor index computed.
    pub bound: usize,
}

fn theta_from_scan(scan: &TorScan, e: usize) -> Result<ThetaReport> {
    let undefined = || {
        let index = scan
            .lengths
            .iter()
            .rposition(|l| !l.is_finite())
            .unwrap_or(scan.bound);
        Error::ThetaUndefined { index, bound: scan.bound }
    };
    let fi = scan.f_index().ok_or_else(undefined)?;
    if fi > 2 * e + 1 {
        return Err(undefined());
    }
    let pairs: Vec<StabilityPair> = [e, e + 1]
        .iter()
        .map(|&k| StabilityPair { e: k, even: scan.lengths[2 * k + 2], odd: scan.lengths[2 * k + 1] })
        .collect();
    let values: Vec<i64> = pairs.iter().map(|p| p.value().ok_or_else(undefined)).collect::<Result<_>>()?;
    if values[0] != values[1] {
        return Err(Error::ThetaUnstable(format!(
            "e = {} gives {}, e = {} gives {}",
            e,
            values[0],
            e + 1,
            values[1]
        )));
    }
    Ok(ThetaReport { value: values[0], e_used: e, stability_pairs: pairs, f_index: fi, bound: scan.bound })
}

/// `θ(M, N) = l(Tor_{2e+2}) - l(Tor_{2e+1})`, read at `e` and `e + 1`.
pub fn theta(m: &GradedModule, n: &GradedModule) -> Result<ThetaReport> {
    let e = theta_index(m.ring());
    let scan = TorScan::new(m, n, 2 * e + 4)?;
    theta_from_scan(&scan, e)
}

/// Same as [`theta`] but reusing a resolution of `M`.
pub fn theta_from_resolution(res: &FreeResolution, n: &GradedModule) -> Result<ThetaReport> {
    let e = theta_index(res.ring());
    let scan = TorScan::from_resolution(res, n, 2 * e + 4)?;
    theta_from_scan(&scan, e)
}

/// `l(Tor_i^S(M, N))` over the ambient polynomial ring for `i = 0..=n`.
pub fn ambient_tor_lengths(m: &GradedModule, n: &GradedModule) -> Result<Vec<Length>> {
    let (ms, ns) = (m.over_ambient(), n.over_ambient());
    let nv = m.ring().nvars();
    let res = resolve(&ms, Over::Ring, nv + 1)?;
    (0..=nv)
        .map(|i| tor_from_resolution(&res, &ns, i).map(|t| length(&t)))
        .collect()
}

/// `χ^S(M, N) = Σ (-1)^i l(Tor_i^S(M, N))`; needs `M ⊗ N` of finite length.
pub fn chi_ambient(m: &GradedModule, n: &GradedModule) -> Result<i64> {
    if !length(&m.tensor(n)?).is_finite() {
        return Err(Error::InvalidArgument("the tensor product has infinite length".into()));
    }
    let mut chi = 0i64;
    for (i, l) in ambient_tor_lengths(m, n)?.into_iter().enumerate() {
        let v = l.value().expect("Tor over S of a finite length tensor product") as i64;
        chi += if i % 2 == 0 { v } else { -v };
    }
    Ok(chi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RigidityVerdict {
    RigidWithinBound,
    Counterexample(usize),
    NoVanishingFound,
}

impl Serialize for RigidityVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RigidityVerdict::RigidWithinBound => s.serialize_str("rigid-within-bound"),
            RigidityVerdict::Counterexample(j) => s.serialize_str(&format!("counterexample({j})")),
            RigidityVerdict::NoVanishingFound => s.serialize_str("no-vanishing-found"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub first_vanishing: Option<usize>,
    pub lengths: Vec<Length>,
    pub onset: Option<usize>,
    pub bound: usize,
    pub verdict: RigidityVerdict,
}

/// Scans `Tor_0 .. Tor_bound` for a vanishing index and checks that vanishing persists.
pub fn check_rigidity(m: &GradedModule, n: &GradedModule, bound: usize) -> Result<RigidityReport> {
    let bound = bound.max(m.ring().dim() + 3);
    let scan = TorScan::new(m, n, bound)?;
    let first = scan.lengths.iter().position(|l| l.is_zero());
    let verdict = match first {
        None => RigidityVerdict::NoVanishingFound,
        Some(i) => match (i + 1..=bound).find(|&j| !scan.lengths[j].is_zero()) {
            Some(j) => RigidityVerdict::Counterexample(j),
            None => RigidityVerdict::RigidWithinBound,
        },
    };
    Ok(RigidityReport { first_vanishing: first, lengths: scan.lengths, onset: scan.onset, bound, verdict })
}

/// `0 -> left -> middle -> right -> 0`, exact by construction.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub left: GradedModule,
    pub middle: GradedModule,
    pub right: GradedModule,
}

impl ShortExactSequence {
    /// `0 -> A -> A ⊕ C -> C -> 0`.
    pub fn split(a: &GradedModule, c: &GradedModule) -> Result<Self> {
        Ok(Self { left: a.clone(), middle: a.direct_sum(c)?, right: c.clone() })
    }

    /// `0 -> I -> R -> R/I -> 0`.
    pub fn ideal(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        Ok(Self {
            left: GradedModule::ideal(ring, gens)?,
            middle: GradedModule::free(ring, vec![0]),
            right: GradedModule::quotient(ring, gens)?,
        })
    }

    /// Hilbert functions add up on degrees `lo..=hi`.
    pub fn hilbert_additive(&self, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|d| {
            self.middle.hilbert_value(d) == self.left.hilbert_value(d) + self.right.hilbert_value(d)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiadditivityReport {
    pub left: i64,
    pub middle: i64,
    pub right: i64,
    pub exactness_window: (i64, i64),
    pub holds: bool,
}

/// `θ(M, N₂) = θ(M, N₁) + θ(M, N₃)` for `0 -> N₁ -> N₂ -> N₃ -> 0`.
pub fn theta_biadditivity_check(m: &GradedModule, ses: &ShortExactSequence) -> Result<BiadditivityReport> {
    let window = (-2, 8);
    if !ses.hilbert_additive(window.0, window.1) {
        return Err(Error::InvalidArgument("the sequence is not exact".into()));
    }
    let res = FreeResolution::compute(m, 2 * theta_index(m.ring()) + 5)?;
    let left = theta_from_resolution(&res, &ses.left)?.value;
    let middle = theta_from_resolution(&res, &ses.middle)?.value;
    let right = theta_from_resolution(&res, &ses.right)?.value;
    Ok(BiadditivityReport { left, middle, right, exactness_window: window, holds: middle == left + right })
}

/// `M*` together with the data of the natural map `M -> M**`.
#[derive(Clone, Debug)]
pub struct DualData {
    pub dual: GradedModule,
    /// Columns are the minimal generators of `M* ⊆ F_0*`.
    pub generators: Matrix,
    /// The natural map `M -> M**` is injective.
    pub torsionless: bool,
    /// The natural map `M -> M**` is an isomorphism.
    pub reflexive: bool,
}

fn identity_on(ring: &Ring, degrees: &[i32]) -> Matrix {
    Matrix::identity(ring.nvars(), degrees.to_vec())
}

/// `ker(m)` over `R`, with the identity for a map into the zero module.
fn kernel(ring: &Ring, m: &Matrix) -> Result<Matrix> {
    if m.nrows() == 0 {
        return Ok(identity_on(ring, m.col_degrees()));
    }
    syzygy_over_ring(ring, m)
}

/// `M*` as the kernel of `φᵀ`, with `M -> M**` checked for injectivity and surjectivity.
pub fn dual_and_reflexivity(m: &GradedModule) -> Result<DualData> {
    let ring = m.ring();
    let nv = ring.nvars();
    let mm = m.minimal_presentation();
    let phi = mm.presentation();
    let z = kernel(ring, &phi.transpose())?;
    let rel = syzygy_over_ring(ring, &z)?;
    let dual = GradedModule::cokernel(
        ring,
        Matrix::new(nv, z.col_degrees().to_vec(), rel.col_degrees().to_vec(), rel.cols().to_vec()),
    )?
    .minimal_presentation();
    let zt = z.transpose();
    let torsionless = if zt.nrows() == 0 {
        mm.is_zero()
    } else {
        let k = syzygy_over_ring(ring, &zt)?;
        k.cols().iter().all(|c| mm.contains_relation(c))
    };
    // M** = ker(relᵀ) inside the free module on the generators of M*
    let bidual = kernel(ring, &dual.presentation().transpose())?;
    let image = GradedModule::cokernel(ring, zt)?;
    let surjective = bidual.cols().iter().all(|c| image.contains_relation(c));
    Ok(DualData { dual, generators: z, torsionless, reflexive: torsionless && surjective })
}

/// `0 -> M -> R^λ -> M₁ -> 0`.
#[derive(Clone, Debug)]
pub struct PushforwardResult {
    pub m1: GradedModule,
    pub lambda: usize,
    /// `M -> R^λ` on the generators of `M`.
    pub embedding: Matrix,
}

pub fn pushforward(m: &GradedModule) -> Result<PushforwardResult> {
    let data = dual_and_reflexivity(m)?;
    if !data.torsionless {
        return Err(Error::NotTorsionless);
    }
    let embedding = data.generators.transpose();
    let m1 = GradedModule::cokernel(m.ring(), embedding.clone())?.minimal_presentation();
    Ok(PushforwardResult { m1, lambda: data.generators.ncols(), embedding })
}

fn is_mcm(m: &GradedModule) -> bool {
    depth(m) >= Depth::Finite(m.ring().dim())
}

/// Freeness, depth drop and MCM transfer across the pushforward, at the irrelevant ideal.
pub fn verify_pushforward_properties(m: &GradedModule) -> Result<Vec<Check>> {
    let pf = pushforward(m)?;
    let (dm, d1) = (depth(m), depth(&pf.m1));
    let free_m = m.is_free();
    let free_1 = pf.m1.is_free();
    let drop_ok = match (dm, d1) {
        (_, Depth::Infinite) => true,
        (Depth::Finite(a), Depth::Finite(b)) => b + 1 >= a,
        (Depth::Infinite, Depth::Finite(_)) => false,
    };
    let mcm = if is_mcm(m) {
        Check::assert("mcm-transfer", is_mcm(&pf.m1), format!("depth M1 = {d1}"))
    } else {
        Check::new("mcm-transfer", Verdict::NotApplicable, "M is not maximal Cohen-Macaulay")
    };
    Ok(vec![
        Check::assert("free-iff-free", free_m == free_1, format!("M free: {free_m}, M1 free: {free_1}")),
        Check::assert("depth-drop", drop_ok, format!("depth M = {dm}, depth M1 = {d1}")),
        mcm,
    ])
}

/// Lengths of `Tor_1 .. Tor_bound` all zero, with periodicity covering the rest.
/// `None` when the scan cannot decide.
fn higher_tor_vanishes(scan: &TorScan) -> Option<bool> {
    if scan.lengths[1..].iter().any(|l| !l.is_zero()) {
        return Some(false);
    }
    scan.covers_all().then_some(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthFormulaReport {
    pub depth_m: Depth,
    pub depth_n: Depth,
    pub depth_r: usize,
    pub depth_tensor: Depth,
    pub tor_bound: usize,
    pub verdict: Verdict,
    pub detail: String,
}

/// `depth M + depth N = depth R + depth(M ⊗ N)` when all higher Tor vanish.
pub fn verify_depth_formula(m: &GradedModule, n: &GradedModule, bound: usize) -> Result<DepthFormulaReport> {
    let bound = bound.max(m.ring().dim() + 3);
    let (dm, dn) = (depth(m), depth(n));
    let depth_r = m.ring().dim();
    let tensor = m.tensor(n)?;
    let dt = depth(&tensor);
    let mut report = DepthFormulaReport {
        depth_m: dm,
        depth_n: dn,
        depth_r,
        depth_tensor: dt,
        tor_bound: bound,
        verdict: Verdict::NotApplicable,
        detail: String::new(),
    };
    if m.is_zero() || n.is_zero() {
        report.detail = "a module is zero".into();
        return Ok(report);
    }
    let scan = TorScan::new(m, n, bound)?;
    match higher_tor_vanishes(&scan) {
        Some(true) => {}
        Some(false) => {
            let i = scan.lengths[1..].iter().position(|l| !l.is_zero()).unwrap() + 1;
            report.detail = format!("Tor_{i} has length {}", scan.lengths[i]);
            return Ok(report);
        }
        None => {
            report.detail = format!("Tor vanishing not certified beyond {bound}");
            return Ok(report);
        }
    }
    let (Depth::Finite(a), Depth::Finite(b), Depth::Finite(t)) = (dm, dn, dt) else {
        report.detail = "the tensor product is zero".into();
        return Ok(report);
    };
    report.verdict = Verdict::from_bool(a + b == depth_r + t);
    report.detail = format!("{a} + {b} vs {depth_r} + {t}");
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub dim_m: i64,
    pub dim_n: i64,
    pub dim_r: usize,
    pub tensor_length: Length,
    pub verdict: Verdict,
}

/// `dim M + dim N <= dim R` whenever `M ⊗ N` has finite length.
pub fn verify_dimension_inequality(m: &GradedModule, n: &GradedModule) -> Result<DimensionReport> {
    let tensor_length = length(&m.tensor(n)?);
    let (dim_m, dim_n) = (krull_dim(m), krull_dim(n));
    let dim_r = m.ring().dim();
    let verdict = if tensor_length.is_finite() {
        Verdict::from_bool(dim_m + dim_n <= dim_r as i64)
    } else {
        Verdict::NotApplicable
    };
    Ok(DimensionReport { dim_m, dim_n, dim_r, tensor_length, verdict })
}

/// `D^i(N) = coker(F_i* -> F_{i+1}*)` from the minimal resolution of `N`.
pub fn transpose_d(n: &GradedModule, i: usize) -> Result<GradedModule> {
    let res = FreeResolution::compute(n, i + 1)?;
    let d = res.differential(i + 1).expect("computed through i + 1");
    Ok(GradedModule::cokernel(n.ring(), d.transpose())?.minimal_presentation())
}

/// Projective dimension as far as a bounded resolution can tell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectiveDimension {
    Finite(usize),
    /// The resolution became a matrix factorization, so it never stops.
    Infinite,
    Unknown,
}

impl Serialize for ProjectiveDimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ProjectiveDimension::Finite(v) => s.serialize_u64(*v as u64),
            ProjectiveDimension::Infinite => s.serialize_str("inf"),
            ProjectiveDimension::Unknown => s.serialize_str("unknown"),
        }
    }
}

pub fn projective_dimension(res: &FreeResolution) -> ProjectiveDimension {
    if let Some(l) = res.length() {
        return ProjectiveDimension::Finite(l);
    }
    match detect_periodicity(res) {
        Ok(_) => ProjectiveDimension::Infinite,
        Err(_) => ProjectiveDimension::Unknown,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JothilingamReport {
    pub n: usize,
    pub ext_vanishes: bool,
    pub pd: ProjectiveDimension,
    pub pd_below_n: Option<bool>,
    pub regular: bool,
    pub hypothesis_assumed: bool,
    pub verdict: Verdict,
    pub note: Option<String>,
}

/// `Ext^n(M, M) = 0 ⟺ pd M < n`. Asserted over a polynomial ring; over a hypersurface
/// only when the caller vouches for `[M] = 0` in the rationalized reduced Grothendieck group.
pub fn jothilingam_check(m: &GradedModule, n: usize, bound: usize, assume_hypothesis: bool) -> Result<JothilingamReport> {
    let regular = !m.ring().is_hypersurface();
    let bound = if regular { bound.max(m.ring().nvars() + 1) } else { bound.max(n + 2) };
    let res = FreeResolution::compute(m, bound)?;
    let ext_vanishes = ext_from_resolution(&res, m, n)?.is_zero();
    let pd = projective_dimension(&res);
    let pd_below_n = match pd {
        ProjectiveDimension::Finite(p) => Some(p < n),
        ProjectiveDimension::Infinite => Some(false),
        ProjectiveDimension::Unknown => None,
    };
    let decided = pd_below_n.map(|b| Verdict::from_bool(b == ext_vanishes));
    let verdict = match decided {
        Some(v) if regular || assume_hypothesis => v,
        _ => Verdict::NotApplicable,
    };
    let note = (!regular && ext_vanishes && pd_below_n == Some(false)).then(|| {
        format!(
            "Ext^{n}(M, M) = 0 while pd M = {}: the converse needs [M] = 0 in the rationalized reduced Grothendieck group",
            if pd == ProjectiveDimension::Infinite { "inf".to_string() } else { format!("{pd:?}") }
        )
    });
    Ok(JothilingamReport { n, ext_vanishes, pd, pd_below_n, regular, hypothesis_assumed: assume_hypothesis, verdict, note })
}

pub fn random_linear_form(ring: &Ring, rng: &mut ChaCha8Rng) -> Polynomial {
    let field = ring.field();
    let p = field.characteristic() as u64;
    let mut out = ring.zero();
    for i in 0..ring.nvars() {
        let c = field.from_u64(rng.gen_range(1..p));
        out = out.add_scaled(field, c, &ring.base().var(i));
    }
    ring.reduce(&out)
}

const PARAMETER_ATTEMPTS: usize = 8;

/// `d` linear forms that cut the dimension of both `R` and `M` down one at a time,
/// hence a regular sequence on each when they are Cohen-Macaulay.
fn parameter_sequence(m: &GradedModule, rng: &mut ChaCha8Rng, on_module: bool) -> Result<Vec<Polynomial>> {
    let ring = m.ring();
    let d = ring.dim();
    let dm = krull_dim(m);
    for _ in 0..PARAMETER_ATTEMPTS {
        let forms: Vec<Polynomial> = (0..d).map(|_| random_linear_form(ring, rng)).collect();
        let ok = (1..=d).all(|k| {
            let q = GradedModule::quotient(ring, &forms[..k]).expect("linear forms are homogeneous");
            let ring_ok = krull_dim(&q) == (d - k) as i64;
            let module_ok = !on_module || krull_dim(&m.tensor(&q).expect("same ring")) == dm - k as i64;
            ring_ok && module_ok
        });
        if ok {
            return Ok(forms);
        }
    }
    Err(Error::ParameterSearchFailed { attempts: PARAMETER_ATTEMPTS })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McmReport {
    pub depth: Depth,
    pub dim: usize,
    pub mcm: bool,
    pub seed: u64,
    pub probe: Vec<String>,
    pub probe_length: Length,
    /// `(i, l(Tor_i(M, N)))` for the probe `N`.
    pub tor_lengths: Vec<(usize, Length)>,
    pub verdict: Verdict,
}

/// MCM modules have `Tor_{>0}(M, R/(ℓ)) = 0` for a system of parameters `ℓ`; non-MCM
/// modules must have `Tor_1` nonzero against any nonzero finite length module.
pub fn mcm_criterion_check(m: &GradedModule, bound: usize, seed: u64) -> Result<McmReport> {
    if m.is_zero() {
        return Err(Error::InvalidArgument("the module is zero".into()));
    }
    let ring = m.ring();
    let dm = depth(m);
    let mcm = is_mcm(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms = parameter_sequence(m, &mut rng, mcm)?;
    let probe = GradedModule::quotient(ring, &forms)?;
    let probe_length = length(&probe);
    let top = if mcm { bound.max(2) } else { 1 };
    let res = FreeResolution::compute(m, top + 1)?;
    let tor_lengths = (1..=top)
        .map(|i| tor_from_resolution(&res, &probe, i).map(|t| (i, length(&t))))
        .collect::<Result<Vec<_>>>()?;
    let verdict = if mcm {
        Verdict::from_bool(tor_lengths.iter().all(|(_, l)| l.is_zero()))
    } else {
        Verdict::from_bool(!tor_lengths[0].1.is_zero())
    };
    Ok(McmReport {
        depth: dm,
        dim: ring.dim(),
        mcm,
        seed,
        probe: forms.iter().map(|f| ring.display(f)).collect(),
        probe_length,
        tor_lengths,
        verdict,
    })
}

/// Locally free on the punctured spectrum: `Ext^1(M, ΩM)` has finite length, since it
/// vanishes at a prime exactly when `0 -> ΩM -> F -> M -> 0` splits there.
pub fn is_vector_bundle(m: &GradedModule) -> Result<bool> {
    let omega = m.syzygy();
    if omega.is_zero() {
        return Ok(true);
    }
    Ok(length(&ext(m, &omega, 1)?).is_finite())
}

/// `H^r_m(X) = 0`, tested through graded local duality as `Ext^{d-r}(X, R) = 0`.
pub fn local_cohomology_vanishes(x: &GradedModule, r: usize) -> Result<bool> {
    let d = x.ring().dim();
    if r > d {
        return Ok(true);
    }
    let rr = GradedModule::free(x.ring(), vec![0]);
    Ok(ext(x, &rr, d - r)?.is_zero())
}

/// Statements about a vector bundle `M` against a second module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "case")]
pub enum BundleCase {
    /// `θ(M, N) = 0`, `depth M >= 1`, `depth(M ⊗ N) >= 1` force `Tor_{>0}(M, N) = 0`.
    TorVanishing,
    /// `θ(M, N) = 0`, `depth M >= r`, `N` is `(S_r)`, `H^r_m(M ⊗ N) = 0` force
    /// `depth(M ⊗ N) >= r + 1`, and Tor vanishing when `r > 0`.
    DepthBound { r: usize },
    /// `depth(M ⊗ M*) >= 2` and `Tor_{>0}(M, M*) = 0` force `M` free.
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleReport {
    pub case: BundleCase,
    pub hypotheses: Vec<Check>,
    pub conclusion: Option<Check>,
    pub verdict: Verdict,
}

fn tor_vanishing_check(scan: &TorScan) -> Check {
    match higher_tor_vanishes(scan) {
        Some(ok) => Check::assert("higher-tor-vanish", ok, format!("Tor lengths {:?}", fmt_lengths(&scan.lengths))),
        None => Check::new("higher-tor-vanish", Verdict::NotApplicable, "not certified by periodicity"),
    }
}

fn fmt_lengths(ls: &[Length]) -> Vec<String> {
    ls.iter().map(Length::to_string).collect()
}

fn theta_zero_check(m: &GradedModule, n: &GradedModule) -> Check {
    match theta(m, n) {
        Ok(t) => Check::assert("theta-zero", t.value == 0, format!("theta = {}", t.value)),
        Err(e) => Check::assert("theta-zero", false, e.to_string()),
    }
}

fn depth_at_least(name: &str, x: &GradedModule, k: usize) -> Check {
    let d = depth(x);
    Check::assert(name, d >= Depth::Finite(k), format!("depth = {d}"))
}

/// Checks each hypothesis of `case` at the irrelevant ideal and, when all of them hold,
/// the conclusion by direct computation. `n` is ignored for [`BundleCase::Free`].
pub fn verify_bundle_case(m: &GradedModule, n: Option<&GradedModule>, case: BundleCase, bound: usize) -> Result<BundleReport> {
    let ring = m.ring();
    let bound = bound.max(ring.dim() + 3);
    let mut hyp = vec![Check::assert("hypersurface", ring.is_hypersurface(), "")];
    let conclusion_of: Box<dyn Fn() -> Result<Check>>;
    match case {
        BundleCase::Free => {
            let ms = m.dual();
            let t = m.tensor(&ms)?;
            hyp.push(depth_at_least("depth-tensor-dual", &t, 2));
            let scan = TorScan::new(m, &ms, bound)?;
            hyp.push(tor_vanishing_check(&scan));
            let m = m.clone();
            conclusion_of = Box::new(move || Ok(Check::assert("free", m.is_free(), "")));
        }
        BundleCase::TorVanishing | BundleCase::DepthBound { .. } => {
            let n = n.ok_or_else(|| Error::InvalidArgument("a second module is required".into()))?;
            hyp.push(Check::assert("vector-bundle", is_vector_bundle(m)?, "Ext^1(M, syz M) of finite length"));
            let t = m.tensor(n)?;
            let scan = TorScan::new(m, n, bound)?;
            match case {
                BundleCase::TorVanishing => {
                    hyp.push(depth_at_least("depth-m", m, 1));
                    hyp.push(theta_zero_check(m, n));
                    hyp.push(depth_at_least("depth-tensor", &t, 1));
                    conclusion_of = Box::new(move || Ok(tor_vanishing_check(&scan)));
                }
                BundleCase::DepthBound { r } => {
                    let d = ring.dim();
                    hyp.push(Check::assert("r-below-dim", r < d, format!("r = {r}, d = {d}")));
                    hyp.push(depth_at_least("depth-m", m, r));
                    hyp.push(depth_at_least("serre-condition-n", n, r.min(d)));
                    hyp.push(theta_zero_check(m, n));
                    hyp.push(Check::assert(
                        "local-cohomology-vanishes",
                        local_cohomology_vanishes(&t, r)?,
                        format!("Ext^{}(M ⊗ N, R) = 0", d.saturating_sub(r)),
                    ));
                    conclusion_of = Box::new(move || {
                        let deep = depth(&t) >= Depth::Finite(r + 1);
                        let tor = if r > 0 { higher_tor_vanishes(&scan) } else { Some(true) };
                        Ok(Check::new(
                            "depth-and-tor",
                            match tor {
                                Some(tv) => Verdict::from_bool(deep && tv),
                                None => Verdict::NotApplicable,
                            },
                            format!("depth(M ⊗ N) = {}", depth(&t)),
                        ))
                    });
                }
                BundleCase::Free => unreachable!(),
            }
        }
    }
    let all = hyp.iter().all(|c| c.verdict == Verdict::Holds);
    let conclusion = if all { Some(conclusion_of()?) } else { None };
    let verdict = conclusion.as_ref().map_or(Verdict::NotApplicable, |c| c.verdict);
    Ok(BundleReport { case, hypotheses: hyp, conclusion, verdict })
}
