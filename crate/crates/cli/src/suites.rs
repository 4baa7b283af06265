//! The built-in example corpus and the expectations checked by `verify examples`.

use std::fmt::Display;

use serde::Serialize;
use sha2::{Digest, Sha256};

use hypersurf_core::factorization::random_factorizations;
use hypersurf_core::homology::{depth, length, TorScan};
use hypersurf_core::resolution::{detect_periodicity, extract_mf};
use hypersurf_core::stable::{verify_buchweitz_duality, verify_stable_identities, verify_theta_vanishing};
use hypersurf_core::theta::{
    check_rigidity, dual_and_reflexivity, jothilingam_check, mcm_criterion_check, theta, verify_bundle_case,
    verify_depth_formula, verify_dimension_inequality, ProjectiveDimension,
};
use hypersurf_core::{
    BundleCase, Check, Depth, FreeResolution, Length, RigidityVerdict, Verdict,
};

use crate::config::{parse_config_str, ConfigError, SessionConfig};

/// Sorted by name, which fixes the report order.
pub const CORPUS: [(&str, &str); 4] = [
    ("a1_quadric", include_str!("../corpus/a1_quadric.conf")),
    ("cone_ideal", include_str!("../corpus/cone_ideal.conf")),
    ("crossing_lines", include_str!("../corpus/crossing_lines.conf")),
    ("transversal_planes", include_str!("../corpus/transversal_planes.conf")),
];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub config_digest: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

type Probe = hypersurf_core::Result<Check>;

fn expect<T: PartialEq + Display>(name: &str, observed: T, expected: T) -> Check {
    if observed == expected {
        Check::new(name, Verdict::Holds, observed.to_string())
    } else {
        Check::new(name, Verdict::Violated, format!("got {observed}, expected {expected}"))
    }
}

fn expect_verdict(name: &str, observed: Verdict, expected: Verdict) -> Check {
    expect(name, observed, expected)
}

fn run(name: &str, probe: impl FnOnce() -> Probe) -> Check {
    probe().unwrap_or_else(|e| Check::new(name, Verdict::Violated, e.to_string()))
}

fn rigidity_name(v: RigidityVerdict) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn lengths(ls: &[Length]) -> String {
    ls.iter().map(Length::to_string).collect::<Vec<_>>().join(",")
}

pub fn config(name: &str) -> Result<SessionConfig, ConfigError> {
    let text = CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| ConfigError::UnknownModule(name.to_string()))?;
    parse_config_str(text)
}

fn cone_ideal(cfg: &SessionConfig, seed: u64) -> Result<Vec<Check>, ConfigError> {
    let m = cfg.module("M")?;
    let ms = cfg.module("Mstar")?;
    let mm = cfg.module("m")?;
    let bound = cfg.bound.unwrap_or(12);
    let mut out = vec![expect("dim-ring", cfg.ring.dim(), 3)];
    out.push(run("tor-lengths-1-3", || {
        let scan = TorScan::new(m, ms, 3)?;
        Ok(expect("tor-lengths-1-3", lengths(&scan.lengths[1..]), "1,0,1".into()))
    }));
    out.push(run("theta", || Ok(expect("theta", theta(m, ms)?.value, -1))));
    out.push(run("depth-tensor", || Ok(expect("depth-tensor", depth(&m.tensor(ms)?), Depth::Finite(1)))));
    out.push(run("reflexive", || Ok(expect("reflexive", dual_and_reflexivity(m)?.reflexive, true))));
    out.push(expect("not-free", m.is_free(), false));
    out.push(run("rigidity", || {
        let r = check_rigidity(m, ms, bound)?;
        Ok(expect("rigidity", rigidity_name(r.verdict), "counterexample(3)".into()))
    }));
    out.push(run("depth-formula", || {
        Ok(expect_verdict("depth-formula", verify_depth_formula(m, ms, bound)?.verdict, Verdict::NotApplicable))
    }));
    out.push(run("theta-vanishing", || {
        let r = verify_theta_vanishing(m)?;
        let contrast = r.theta.as_ref().map(|t| t.value);
        let mut c = expect_verdict("theta-vanishing", r.verdict, Verdict::NotApplicable);
        if c.verdict == Verdict::Holds && contrast != Some(-1) {
            c = Check::new("theta-vanishing", Verdict::Violated, format!("contrast theta {contrast:?}, expected -1"));
        }
        Ok(c)
    }));
    out.push(run("buchweitz", || {
        let r = verify_buchweitz_duality(m, m, &[(1, 0)])?;
        Ok(expect_verdict("buchweitz", r.verdict, Verdict::NotApplicable))
    }));
    out.push(run("mcm-module", || {
        let r = mcm_criterion_check(m, 4, seed)?;
        Ok(expect_verdict("mcm-module", if r.mcm { r.verdict } else { Verdict::Violated }, Verdict::Holds))
    }));
    out.push(run("mcm-probe-depth-one", || {
        let r = mcm_criterion_check(mm, 4, seed)?;
        let tor1 = r.tor_lengths.first().map(|&(_, l)| l).unwrap_or(Length::Finite(0));
        let ok = !r.mcm && r.depth == Depth::Finite(1) && !tor1.is_zero() && r.verdict == Verdict::Holds;
        Ok(Check::assert("mcm-probe-depth-one", ok, format!("Tor_1 against the probe = {tor1}")))
    }));
    Ok(out)
}

fn crossing_lines(cfg: &SessionConfig) -> Result<Vec<Check>, ConfigError> {
    let m = cfg.module("M")?;
    let mut out = Vec::new();
    let res = match FreeResolution::compute(m, 11) {
        Ok(r) => r,
        Err(e) => return Ok(vec![Check::new("resolution", Verdict::Violated, e.to_string())]),
    };
    let totals = res.betti_table().totals();
    let totals = &totals[..11];
    out.push(Check::assert("betti-0-10", totals == [1; 11], format!("{totals:?}")));
    out.push(run("ext-odd-vanish", || {
        let ls = (1..=9)
            .step_by(2)
            .map(|i| Ok(length(&hypersurf_core::homology::ext_from_resolution(&res, m, i)?)))
            .collect::<hypersurf_core::Result<Vec<_>>>()?;
        Ok(expect("ext-odd-vanish", lengths(&ls), "0,0,0,0,0".into()))
    }));
    out.push(run("ext-even-length-one", || {
        let ls = (2..=10)
            .step_by(2)
            .map(|i| Ok(length(&hypersurf_core::homology::ext_from_resolution(&res, m, i)?)))
            .collect::<hypersurf_core::Result<Vec<_>>>()?;
        Ok(expect("ext-even-length-one", lengths(&ls), "1,1,1,1,1".into()))
    }));
    out.push(run("jothilingam-caveat", || {
        let r = jothilingam_check(m, 1, 10, false)?;
        let ok = r.ext_vanishes
            && r.pd == ProjectiveDimension::Infinite
            && r.verdict == Verdict::NotApplicable
            && r.note.is_some();
        Ok(Check::assert("jothilingam-caveat", ok, r.note.unwrap_or_default()))
    }));
    Ok(out)
}

fn a1_quadric(cfg: &SessionConfig, seed: u64) -> Result<Vec<Check>, ConfigError> {
    let (m, ms, n, r, p, q) = (
        cfg.module("M")?,
        cfg.module("Mstar")?,
        cfg.module("N")?,
        cfg.module("R")?,
        cfg.module("P")?,
        cfg.module("Q")?,
    );
    let bound = cfg.bound.unwrap_or(10);
    let mut out = vec![
        expect("dim-ring", cfg.ring.dim(), 2),
        expect("isolated-singularity", cfg.ring.is_isolated_singularity(), true),
    ];
    out.push(run("theta-dual", || Ok(expect("theta-dual", theta(m, ms)?.value, 0))));
    out.push(run("theta-vanishing", || {
        Ok(expect_verdict("theta-vanishing", verify_theta_vanishing(m)?.verdict, Verdict::Holds))
    }));
    out.push(run("stable-identities", || {
        Ok(expect_verdict("stable-identities", verify_stable_identities(m, m, -3, 3)?.verdict, Verdict::Holds))
    }));
    out.push(run("buchweitz", || {
        Ok(expect_verdict("buchweitz", verify_buchweitz_duality(m, m, &[(1, 0), (2, -1)])?.verdict, Verdict::Holds))
    }));
    out.push(run("dim-inequality", || {
        Ok(expect_verdict("dim-inequality", verify_dimension_inequality(p, q)?.verdict, Verdict::Holds))
    }));
    for (label, a, b) in [("depth-formula-regular-form", m, n), ("depth-formula-free", r, p)] {
        out.push(run(label, || Ok(expect_verdict(label, verify_depth_formula(a, b, bound)?.verdict, Verdict::Holds))));
    }
    for (label, a, b, want) in [
        ("rigidity-regular-form", m, n, "rigid-within-bound"),
        ("rigidity-free", r, n, "rigid-within-bound"),
        ("rigidity-dual", m, ms, "no-vanishing-found"),
    ] {
        out.push(run(label, || Ok(expect(label, rigidity_name(check_rigidity(a, b, bound)?.verdict), want.into()))));
    }
    out.push(run("mcm-module", || {
        let rep = mcm_criterion_check(m, 4, seed)?;
        Ok(expect_verdict("mcm-module", if rep.mcm { rep.verdict } else { Verdict::Violated }, Verdict::Holds))
    }));
    out.push(run("vector-bundle-tor-vanishing", || {
        let rep = verify_bundle_case(m, Some(n), BundleCase::TorVanishing, bound)?;
        Ok(expect_verdict("vector-bundle-tor-vanishing", rep.verdict, Verdict::Holds))
    }));
    out.push(run("matrix-factorization", || {
        let res = FreeResolution::compute(m, 6)?;
        let cert = detect_periodicity(&res)?;
        let mf = extract_mf(&res, cert.onset.max(1))?;
        Ok(Check::assert("matrix-factorization", mf.verify(cfg.ring.field()), format!("size {}", mf.size())))
    }));
    out.push(run("random-factorizations", || {
        let mfs = random_factorizations(&cfg.ring, m.presentation(), 3, seed)?;
        let mut ok = true;
        for mf in &mfs {
            let res = FreeResolution::compute(&mf.module(&cfg.ring)?, 4)?;
            ok &= mf.verify(cfg.ring.field()) && res.betti_table().totals() == vec![2; 5];
        }
        Ok(Check::assert("random-factorizations", ok, format!("{} conjugates, seed {seed}", mfs.len())))
    }));
    Ok(out)
}

fn transversal_planes(cfg: &SessionConfig) -> Result<Vec<Check>, ConfigError> {
    let (p, q) = (cfg.module("P")?, cfg.module("Q")?);
    Ok(vec![
        expect("dim-ring", cfg.ring.dim(), 3),
        run("dim-inequality-violated", || {
            Ok(expect_verdict("dim-inequality-violated", verify_dimension_inequality(p, q)?.verdict, Verdict::Violated))
        }),
    ])
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteResult, ConfigError> {
    let cfg = config(name)?;
    let checks = match name {
        "a1_quadric" => a1_quadric(&cfg, seed)?,
        "cone_ideal" => cone_ideal(&cfg, seed)?,
        "crossing_lines" => crossing_lines(&cfg)?,
        "transversal_planes" => transversal_planes(&cfg)?,
        _ => unreachable!("corpus entries are matched above"),
    };
    let verdict = Verdict::combine(checks.iter().map(|c| c.verdict));
    Ok(SuiteResult { suite: name.to_string(), config_digest: cfg.digest, verdict, checks })
}

/// Runs every suite on its own thread; results come back in corpus order.
pub fn verify_examples(seed: u64) -> Result<Vec<SuiteResult>, ConfigError> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CORPUS.iter().map(|(name, _)| s.spawn(move || run_suite(name, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

/// Digest over every corpus file, in corpus order.
pub fn corpus_digest() -> String {
    let mut h = Sha256::new();
    for (name, text) in CORPUS {
        h.update(name.as_bytes());
        h.update([0]);
        h.update(text.as_bytes());
    }
    hex::encode(h.finalize())
}
