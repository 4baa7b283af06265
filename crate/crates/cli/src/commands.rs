//! One function per subcommand. Each returns JSON results, a verdict and a text rendering.

use std::fmt::Write as _;

use serde_json::{json, Value};

use hypersurf_core::homology::{
    ambient_projective_dimension, depth, ext_from_resolution, krull_dim, length, support_window, tor_from_resolution,
};
use hypersurf_core::resolution::{default_bound, detect_periodicity, extract_mf};
use hypersurf_core::stable::{complete_resolution, verify_buchweitz_duality, verify_stable_identities, verify_theta_vanishing};
use hypersurf_core::theta::{
    check_rigidity, dual_and_reflexivity, jothilingam_check, mcm_criterion_check, pushforward, theta,
    theta_biadditivity_check, verify_bundle_case, verify_depth_formula, verify_dimension_inequality,
    verify_pushforward_properties, ShortExactSequence,
};
use hypersurf_core::{
    BundleCase, Check, Error, FreeResolution, GradedModule, RigidityVerdict, StableKind, StableTable, Verdict,
};

use crate::config::{ConfigError, SessionConfig};
use crate::report::{betti_json, matrix_json, module_json, to_value};

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub modules: Vec<String>,
    pub i: Option<i64>,
    /// Inclusive.
    pub range: Option<(i64, i64)>,
    pub bound: Option<usize>,
    pub seed: u64,
    pub assume_hypothesis: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{err}{}", guidance(err))]
    Compute {
        #[from]
        err: Error,
    },
}

fn guidance(e: &Error) -> &'static str {
    match e {
        Error::BoundExceeded { .. } => "; lower --bound",
        Error::NoPeriodicity { .. } | Error::ThetaUndefined { .. } | Error::ThetaUnstable(_) => {
            "; try a larger --bound"
        }
        _ => "",
    }
}

pub type CmdResult = Result<Outcome, CommandError>;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub results: Vec<Value>,
    pub verdict: Verdict,
    pub text: String,
}

impl Outcome {
    fn new(result: Value, verdict: Verdict, text: String) -> Self {
        Self { results: vec![result], verdict, text }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    DepthFormula,
    DimInequality,
    StableIdentities,
    Buchweitz,
    ThetaVanishing,
    VectorBundle,
    Jothilingam,
    Mcm,
    Biadditivity,
}

impl Property {
    pub const ALL: [(&'static str, Property); 9] = [
        ("depth-formula", Property::DepthFormula),
        ("dim-inequality", Property::DimInequality),
        ("stable-identities", Property::StableIdentities),
        ("buchweitz", Property::Buchweitz),
        ("theta-vanishing", Property::ThetaVanishing),
        ("vector-bundle", Property::VectorBundle),
        ("jothilingam", Property::Jothilingam),
        ("mcm", Property::Mcm),
        ("biadditivity", Property::Biadditivity),
    ];

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().find(|(n, _)| *n == s).map(|&(_, p)| p)
    }

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(_, p)| *p == self).map(|(n, _)| *n).unwrap()
    }
}

struct Ctx<'a> {
    cfg: &'a SessionConfig,
    opts: &'a Options,
}

impl<'a> Ctx<'a> {
    fn module(&self, k: usize) -> Result<(&'a str, &'a GradedModule), CommandError> {
        let name = self.opts.modules.get(k).ok_or_else(|| {
            CommandError::Usage(format!("this command needs at least {} --module argument(s)", k + 1))
        })?;
        Ok((name.as_str(), self.cfg.module(name)?))
    }

    /// Second module, falling back to the first.
    fn module_or_first(&self, k: usize) -> Result<(&'a str, &'a GradedModule), CommandError> {
        if self.opts.modules.len() > k {
            self.module(k)
        } else {
            self.module(0)
        }
    }

    fn bound(&self) -> usize {
        self.opts.bound.or(self.cfg.bound).unwrap_or_else(|| default_bound(&self.cfg.ring))
    }

    fn indices(&self, lo: i64, hi: i64) -> Vec<i64> {
        match (self.opts.i, self.opts.range) {
            (Some(i), _) => vec![i],
            (None, Some((a, b))) => (a..=b).collect(),
            (None, None) => (lo..=hi).collect(),
        }
    }

    fn nonnegative(&self, lo: i64, hi: i64) -> Result<Vec<usize>, CommandError> {
        self.indices(lo, hi)
            .into_iter()
            .map(|i| usize::try_from(i).map_err(|_| CommandError::Usage(format!("index {i} must be nonnegative"))))
            .collect()
    }
}

pub fn resolve(cfg: &SessionConfig, opts: &Options, betti_only: bool) -> CmdResult {
    let cx = Ctx { cfg, opts };
    let (name, m) = cx.module(0)?;
    let bound = cx.bound();
    let res = FreeResolution::compute(m, bound)?;
    let betti = res.betti_table();
    let periodicity = detect_periodicity(&res).ok();
    let sound = res.is_complex() && res.is_minimal();
    let mut result = json!({
        "module": name,
        "bound": bound,
        "finite": res.is_finite(),
        "length": res.length(),
        "betti": betti_json(&betti),
        "periodicity": periodicity.as_ref().map(to_value),
    });
    if !betti_only {
        let maps: Vec<Value> = res.maps().iter().map(|d| matrix_json(&cfg.ring, d)).collect();
        result["maps"] = Value::Array(maps);
    }
    let mut text = format!("{name} over {cfg}, bound {bound}\n{}", betti.render());
    match (&periodicity, res.length()) {
        (_, Some(l)) => writeln!(text, "finite resolution, length {l}").unwrap(),
        (Some(p), None) => writeln!(text, "periodic of period {} from index {}", p.period, p.onset).unwrap(),
        (None, None) => writeln!(text, "no periodicity detected within the bound").unwrap(),
    }
    if !betti_only {
        for (i, d) in res.maps().iter().enumerate() {
            writeln!(text, "d{}:\n{}", i + 1, d.display(cfg.ring.base())).unwrap();
        }
    }
    Ok(Outcome::new(result, Verdict::from_bool(sound), text))
}

fn homology_table(cfg: &SessionConfig, opts: &Options, ext: bool) -> CmdResult {
    let cx = Ctx { cfg, opts };
    let (mn, m) = cx.module(0)?;
    let (nn, n) = cx.module_or_first(1)?;
    let hi = cfg.ring.dim() as i64 + 2;
    let idx = cx.nonnegative(0, hi)?;
    let top = idx.iter().copied().max().unwrap_or(0);
    let res = FreeResolution::compute(m, top + 1)?;
    let label = if ext { "Ext" } else { "Tor" };
    let mut rows = Vec::new();
    let mut text = String::new();
    for i in idx {
        let h = if ext { ext_from_resolution(&res, n, i)? } else { tor_from_resolution(&res, n, i)? };
        let l = length(&h);
        let support = support_window(&h);
        let sep = if ext { '^' } else { '_' };
        writeln!(text, "l({label}{sep}{i}({mn}, {nn})) = {l}").unwrap();
        rows.push(json!({ "index": i, "length": l, "support": support }));
    }
    let result = json!({ "kind": label.to_lowercase(), "modules": [mn, nn], "entries": rows });
    Ok(Outcome::new(result, Verdict::Holds, text))
}

pub fn tor(cfg: &SessionConfig, opts: &Options) -> CmdResult {
    homology_table(cfg, opts, false)
}

pub fn ext(cfg: &SessionConfig, opts: &Options) -> CmdResult {
    homology_table(cfg, opts, true)
}

pub fn theta_cmd(cfg: &SessionConfig, opts: &Options) -> CmdResult {
    let cx = Ctx { cfg, opts };
    let (mn, m) = cx.module(0)?;
    let (nn, n) = cx.module_or_first(1)?;
    let t = theta(m, n)?;
    let mut text = format!("theta({mn}, {nn}) = {}\n", t.value);
    for p in &t.stability_pairs {
        writeln!(text, "  e = {}: l(Tor_{}) = {}, l(Tor_{}) = {}", p.e, 2 * p.e + 2, p.even, 2 * p.e + 1, p.odd).unwrap();
    }
    writeln!(text, "  finite length from index {}, Tor computed through {}", t.f_index, t.bound).unwrap();
    let result = json!({ "modules": [mn, nn], "theta": to_value(&t) });
    Ok(Outcome::new(result, Verdict::Holds, text))
}

pub fn rigidity(cfg: &SessionConfig, opts: &Options) -> CmdResult {
    let cx = Ctx { cfg, opts };
    let (mn, m) = cx.module(0)?;
    let (nn, n) = cx.module_or_first(1)?;
    let r = check_rigidity(m, n, cx.bound())?;
    let verdict = match r.verdict {
        RigidityVerdict::RigidWithinBound => Verdict::Holds,
        RigidityVerdict::Counterexample(_) => Verdict::Violated,
        RigidityVerdict::NoVanishingFound => Verdict::NotApplicable,
    };
    let lengths: Vec<String> = r.lengths.iter().map(|l| l.to_string()).collect();
    let text = format!(
        "rigidity of ({mn}, {nn}): {}\n  Tor lengths 0..{}: [{}]\n",
        to_value(&r.verdict).as_str().unwrap_or_default(),
        r.bound,
        lengths.join(", ")
    );
    Ok(Outcome::new(json!({ "modules": [mn, nn], "rigidity": to_value(&r) }), verdict, text))
}

pub fn dual(cfg: &SessionConfig, opts: &Options) -> CmdResult {
    let cx = Ctx { cfg, opts };
    let (mn, m) = cx.module(0)?;
    let d = dual_and_reflexivity(m)?;
    let text = format!(
        "{mn}* generated in degrees {:?}\n  torsionless: {}\n  reflexive: {}\n",
        d.dual.minimal_presentation().generator_degrees(),
        d.torsionless,
        d.reflexive
    );
    let result = json!({
        "module": mn,
        "dual": module_json(&d.dual),
        "torsionless": d.torsionless,
        "reflexive": d.reflexive,
    });
    Ok(Outcome::new(result, Verdict::Holds, text))
}

pub fn pushforward_cmd(cfg: &SessionConfig, opts: &Options) -> CmdResult {
    let cx = Ctx { cfg, opts };
    let (mn, m) = cx.module(0)?;
    let p = pushforward(m)?;
    let checks = verify_pushforward_properties(m)?;
    let verdict = Verdict::combine(checks.iter().map(|c| c.verdict));
    let mut text = format!("0 -> {mn} -> R^{} -> M1 -> 0\n", p.lambda);
    write_checks(&mut text, &checks);
    let result = json!({
        "module": mn,
        "lambda": p.lambda,
        "m1": module_json(&p.m1),
        "embedding": matrix_json(&cfg.ring, &p.embedding),
        "checks": to_value(&checks),
    });
    Ok(Outcome::new(result, verdict, text))
}

pub fn depth_cmd(cfg: &SessionConfig, opts: &Options) -> CmdResult {
    let cx = Ctx { cfg, opts };
    let (mn, m) = cx.module(0)?;
    let d = depth(m);
    let pd = ambient_projective_dimension(m);
    let text = format!("depth({mn}) = {d}\n  pd over the polynomial ring: {}\n", pd.map_or("-".into(), |p| p.to_string()));
    let result = json!({ "module": mn, "depth": d, "ambient_pd": pd, "nvars": cfg.ring.nvars() });
    Ok(Outcome::new(result, Verdict::Holds, text))
}

pub fn dim_cmd(cfg: &SessionConfig, opts: &Options) -> CmdResult {
    let cx = Ctx { cfg, opts };
    let (mn, m) = cx.module(0)?;
    let d = krull_dim(m);
    let text = format!("dim({mn}) = {d}\n  dim R = {}\n", cfg.ring.dim());
    let result = json!({ "module": mn, "dim": d, "dim_ring": cfg.ring.dim(), "length": length(m) });
    Ok(Outcome::new(result, Verdict::Holds, text))
}

pub fn mf(cfg: &SessionConfig, opts: &Options) -> CmdResult {
    let cx = Ctx { cfg, opts };
    let (mn, m) = cx.module(0)?;
    let bound = cx.bound();
    let res = FreeResolution::compute(m, bound)?;
    let cert = detect_periodicity(&res)?;
    let at = cert.onset.max(1);
    let f = extract_mf(&res, at)?;
    let ok = f.verify(cfg.ring.field());
    let re = f.module(&cfg.ring)?;
    let pattern = FreeResolution::compute(&re, bound)?.betti_table().totals();
    let text = format!(
        "matrix factorization of size {} at index {at}\nA:\n{}\nB:\n{}\nA*B = B*A = f*I: {ok}\nresolution of coker A: {:?}\n",
        f.size(),
        f.a.display(cfg.ring.base()),
        f.b.display(cfg.ring.base()),
        pattern
    );
    let result = json!({
        "module": mn,
        "index": at,
        "a": matrix_json(&cfg.ring, &f.a),
        "b": matrix_json(&cfg.ring, &f.b),
        "verified": ok,
        "cokernel_betti_totals": pattern,
    });
    Ok(Outcome::new(result, Verdict::from_bool(ok), text))
}

pub fn stable(cfg: &SessionConfig, opts: &Options) -> CmdResult {
    let cx = Ctx { cfg, opts };
    let (mn, m) = cx.module(0)?;
    let (nn, n) = cx.module_or_first(1)?;
    let idx = cx.indices(-3, 3);
    let (lo, hi) = (*idx.first().unwrap(), *idx.last().unwrap());
    let cr = complete_resolution(m)?;
    let w = cfg.ring.dim() as i64 + 4;
    let (elo, ehi) = (lo.min(-w), hi.max(w));
    let exact = cr.is_exact_on(elo, ehi)?;
    let tor = StableTable::compute(&cr, n, StableKind::Tor, lo, hi)?;
    let ext = StableTable::compute(&cr, n, StableKind::Ext, lo, hi)?;
    let periodic = tor.is_periodic() && ext.is_periodic();
    let mut text = format!("complete resolution of {mn}, spliced at {}, exact on [{elo}, {ehi}]: {exact}\n", cr.splice_degree);
    writeln!(text, "{:>6} {:>8} {:>8}", "i", "Tor^", "Ext^").unwrap();
    for (a, b) in tor.entries.iter().zip(&ext.entries) {
        writeln!(text, "{:>6} {:>8} {:>8}", a.index, a.length.to_string(), b.length.to_string()).unwrap();
    }
    let result = json!({
        "modules": [mn, nn],
        "splice_degree": cr.splice_degree,
        "exactness_window": [elo, ehi],
        "exact": exact,
        "tor": to_value(&tor),
        "ext": to_value(&ext),
        "periodic": periodic,
    });
    Ok(Outcome::new(result, Verdict::from_bool(exact && periodic), text))
}

fn write_checks(text: &mut String, checks: &[Check]) {
    for c in checks {
        if c.detail.is_empty() {
            writeln!(text, "  {:<28} {}", c.name, c.verdict).unwrap();
        } else {
            writeln!(text, "  {:<28} {} ({})", c.name, c.verdict, c.detail).unwrap();
        }
    }
}

pub fn check(cfg: &SessionConfig, opts: &Options, property: Property) -> CmdResult {
    let cx = Ctx { cfg, opts };
    let bound = cx.bound();
    let (mn, m) = cx.module(0)?;
    let head = |v: Verdict| format!("{}: {v}\n", property.name());
    let out = match property {
        Property::DepthFormula => {
            let (nn, n) = cx.module_or_first(1)?;
            let r = verify_depth_formula(m, n, bound)?;
            let text = format!(
                "{}  depth {mn} = {}, depth {nn} = {}, depth R = {}, depth {mn}⊗{nn} = {}\n  {}\n",
                head(r.verdict),
                r.depth_m,
                r.depth_n,
                r.depth_r,
                r.depth_tensor,
                r.detail
            );
            Outcome::new(json!({ "modules": [mn, nn], "report": to_value(&r) }), r.verdict, text)
        }
        Property::DimInequality => {
            let (nn, n) = cx.module_or_first(1)?;
            let r = verify_dimension_inequality(m, n)?;
            let text = format!(
                "{}  dim {mn} + dim {nn} = {} + {} vs dim R = {}; l({mn}⊗{nn}) = {}\n",
                head(r.verdict),
                r.dim_m,
                r.dim_n,
                r.dim_r,
                r.tensor_length
            );
            Outcome::new(json!({ "modules": [mn, nn], "report": to_value(&r) }), r.verdict, text)
        }
        Property::StableIdentities => {
            let (nn, n) = cx.module_or_first(1)?;
            let idx = cx.indices(-3, 3);
            let r = verify_stable_identities(m, n, idx[0], *idx.last().unwrap())?;
            let failed = r.checks.iter().filter(|c| !c.holds).count();
            let text = format!(
                "{}  {} graded comparisons on [{}, {}], {failed} failed\n",
                head(r.verdict),
                r.checks.len(),
                r.window.0,
                r.window.1
            );
            Outcome::new(json!({ "modules": [mn, nn], "report": to_value(&r) }), r.verdict, text)
        }
        Property::Buchweitz => {
            let (nn, n) = cx.module_or_first(1)?;
            let pairs: Vec<(i64, i64)> = match opts.i {
                Some(i) => vec![(i, i - 1)],
                None => vec![(1, 0), (2, -1), (0, 3)],
            };
            let r = verify_buchweitz_duality(m, n, &pairs)?;
            let mut text = head(r.verdict);
            write_checks(&mut text, &r.preconditions);
            for p in &r.pairs {
                writeln!(text, "  l(Ext^{}({mn},{nn})) = {}, l(Ext^{}({mn}*,{nn}*)) = {}", p.i, p.left, p.j, p.right).unwrap();
            }
            Outcome::new(json!({ "modules": [mn, nn], "report": to_value(&r) }), r.verdict, text)
        }
        Property::ThetaVanishing => {
            let r = verify_theta_vanishing(m)?;
            let mut text = head(r.verdict);
            write_checks(&mut text, &r.preconditions);
            if let Some(t) = &r.theta {
                writeln!(text, "  theta({mn}, {mn}*) = {}", t.value).unwrap();
            }
            if let Some(t) = r.syzygy_theta {
                writeln!(text, "  theta(K, K*) = {t} for the first syzygy K").unwrap();
            }
            Outcome::new(json!({ "module": mn, "report": to_value(&r) }), r.verdict, text)
        }
        Property::VectorBundle => {
            let mut cases = vec![BundleCase::Free];
            let second = if opts.modules.len() > 1 { Some(cx.module(1)?) } else { None };
            if second.is_some() {
                let r = opts.i.map_or(Ok(1), usize::try_from).map_err(|_| CommandError::Usage("r must be nonnegative".into()))?;
                cases.insert(0, BundleCase::TorVanishing);
                cases.insert(1, BundleCase::DepthBound { r });
            }
            let mut reports = Vec::new();
            let mut text = String::new();
            for case in cases {
                let r = verify_bundle_case(m, second.map(|s| s.1), case, bound)?;
                writeln!(text, "{}: {}", to_value(&case)["case"].as_str().unwrap_or_default(), r.verdict).unwrap();
                write_checks(&mut text, &r.hypotheses);
                if let Some(c) = &r.conclusion {
                    write_checks(&mut text, std::slice::from_ref(c));
                }
                reports.push(r);
            }
            let verdict = Verdict::combine(reports.iter().map(|r| r.verdict));
            let text = format!("{}{text}", head(verdict));
            let names: Vec<&str> = std::iter::once(mn).chain(second.map(|s| s.0)).collect();
            Outcome::new(json!({ "modules": names, "reports": to_value(&reports) }), verdict, text)
        }
        Property::Jothilingam => {
            let ns = cx.nonnegative(1, 3)?;
            let mut reports = Vec::new();
            let mut text = String::new();
            for n in ns {
                let r = jothilingam_check(m, n, bound, opts.assume_hypothesis)?;
                let below = r.pd_below_n.map_or("unknown", |b| if b { "yes" } else { "no" });
                writeln!(text, "  n = {n}: Ext^n(M, M) = 0: {}, pd M < n: {below}, {}", r.ext_vanishes, r.verdict).unwrap();
                if let Some(note) = &r.note {
                    writeln!(text, "    note: {note}").unwrap();
                }
                reports.push(r);
            }
            let verdict = Verdict::combine(reports.iter().map(|r| r.verdict));
            Outcome::new(json!({ "module": mn, "reports": to_value(&reports) }), verdict, format!("{}{text}", head(verdict)))
        }
        Property::Mcm => {
            let r = mcm_criterion_check(m, bound.min(cfg.ring.dim() + 2), opts.seed)?;
            let tors: Vec<String> = r.tor_lengths.iter().map(|(i, l)| format!("Tor_{i} = {l}")).collect();
            let text = format!(
                "{}  depth {} of dim {}, MCM: {}\n  probe R/({}) of length {}: {}\n",
                head(r.verdict),
                r.depth,
                r.dim,
                r.mcm,
                r.probe.join(", "),
                r.probe_length,
                tors.join(", ")
            );
            Outcome::new(json!({ "module": mn, "report": to_value(&r) }), r.verdict, text)
        }
        Property::Biadditivity => {
            let (ses, names) = if opts.modules.len() >= 3 {
                let (an, a) = cx.module(1)?;
                let (cn, c) = cx.module(2)?;
                (ShortExactSequence::split(a, c)?, vec![mn.to_string(), an.to_string(), cn.to_string()])
            } else {
                let vars: Vec<_> = (0..cfg.ring.nvars()).map(|i| cfg.ring.base().var(i)).collect();
                (ShortExactSequence::ideal(&cfg.ring, &vars)?, vec![mn.to_string(), "m".into(), "R".into(), "k".into()])
            };
            let r = theta_biadditivity_check(m, &ses)?;
            let verdict = Verdict::from_bool(r.holds);
            let text = format!(
                "{}  theta against left, middle, right: {}, {}, {}\n",
                head(verdict),
                r.left,
                r.middle,
                r.right
            );
            Outcome::new(json!({ "modules": names, "report": to_value(&r) }), verdict, text)
        }
    };
    Ok(out)
}
