//! Sectioned plain-text session files.
//!
//! ```text
//! [ring]
//! char = 32003
//! vars = x, y, u, v
//! relation = x*u - y*v
//!
//! [session]
//! seed = 7
//! bound = 12
//!
//! [module M]
//! kind = ideal
//! generators = x, y
//!
//! [module Mstar]
//! kind = dual-of
//! of = M
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use sha2::{Digest, Sha256};

use hypersurf_core::theta::pushforward;
use hypersurf_core::{GradedModule, Matrix, PolyRing, Polynomial, Ring, DEFAULT_CHARACTERISTIC};

pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("unknown module `{0}`")]
    UnknownModule(String),
}

fn at(line: usize, column: usize, msg: impl Into<String>) -> ConfigError {
    ConfigError::Parse { line, column, msg: msg.into() }
}

/// One `key = value` line; `column` is where the value starts (1-based).
#[derive(Clone, Debug)]
struct Entry {
    value: String,
    line: usize,
    column: usize,
}

#[derive(Clone, Debug)]
struct Section {
    header_line: usize,
    /// `ring`, `session` or `module`
    kind: String,
    name: Option<String>,
    entries: BTreeMap<String, Entry>,
}

impl Section {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.get(key)
    }

    fn require(&self, key: &str) -> Result<&Entry, ConfigError> {
        self.get(key).ok_or_else(|| at(self.header_line, 1, format!("missing key `{key}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Ideal,
    Quotient,
    Cokernel,
    Free,
    Residue,
    DualOf,
    SyzygyOf,
    PushforwardOf,
    DirectSum,
}

impl ModuleKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "ideal" => Self::Ideal,
            "quotient" => Self::Quotient,
            "cokernel" => Self::Cokernel,
            "free" => Self::Free,
            "residue" => Self::Residue,
            "dual-of" => Self::DualOf,
            "syzygy-of" => Self::SyzygyOf,
            "pushforward-of" => Self::PushforwardOf,
            "direct-sum" => Self::DirectSum,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub relation: String,
    pub ring: Ring,
    pub seed: u64,
    pub bound: Option<usize>,
    /// Definition order.
    pub names: Vec<String>,
    modules: BTreeMap<String, GradedModule>,
    /// Hex SHA-256 of the source text.
    pub digest: String,
}

impl SessionConfig {
    pub fn module(&self, name: &str) -> Result<&GradedModule, ConfigError> {
        self.modules.get(name).ok_or_else(|| ConfigError::UnknownModule(name.to_string()))
    }

    pub fn modules(&self) -> impl Iterator<Item = (&str, &GradedModule)> {
        self.names.iter().map(|n| (n.as_str(), &self.modules[n]))
    }
}

impl fmt::Display for SessionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]/({})", self.characteristic, self.variables.join(", "), self.relation)
    }
}

pub fn parse_config(path: &Path) -> Result<SessionConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
    parse_config_str(&text)
}

fn split_sections(text: &str) -> Result<Vec<Section>, ConfigError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| at(line, indent + trimmed.len(), "expected `]`"))?;
            let mut words = inner.split_whitespace();
            let (kind, name) = (words.next(), words.next());
            if words.next().is_some() {
                return Err(at(line, indent + 1, "too many words in section header"));
            }
            let name = match (kind, name) {
                (Some("ring"), None) | (Some("session"), None) => None,
                (Some("module"), Some(n)) => {
                    if !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                        return Err(at(line, indent + 1, format!("invalid module name `{n}`")));
                    }
                    Some(n.to_string())
                }
                (Some("module"), None) => return Err(at(line, indent + 1, "module section needs a name")),
                _ => return Err(at(line, indent + 1, format!("unknown section `[{inner}]`"))),
            };
            let tag = kind.unwrap().to_string();
            if let Some(n) = &name {
                if sections.iter().any(|s| s.name.as_deref() == Some(n.as_str())) {
                    return Err(at(line, indent + 1, format!("duplicate module name `{n}`")));
                }
            } else if sections.iter().any(|s| s.kind == tag) {
                return Err(at(line, indent + 1, format!("duplicate section `[{tag}]`")));
            }
            sections.push(Section { header_line: line, kind: tag, name, entries: BTreeMap::new() });
            continue;
        }
        let section = sections
            .last_mut()
            .ok_or_else(|| at(line, indent + 1, "key outside of any section"))?;
        let eq = content.find('=').ok_or_else(|| at(line, indent + 1, "expected `key = value`"))?;
        let key = content[..eq].trim();
        if key.is_empty() {
            return Err(at(line, indent + 1, "empty key"));
        }
        let after = &content[eq + 1..];
        let value = after.trim();
        let column = eq + 2 + (after.len() - after.trim_start().len());
        if section.entries.contains_key(key) {
            return Err(at(line, indent + 1, format!("duplicate key `{key}`")));
        }
        section.entries.insert(key.to_string(), Entry { value: value.to_string(), line, column });
    }
    Ok(sections)
}

fn list(value: &str) -> Vec<&str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_int<T: std::str::FromStr>(e: &Entry, what: &str) -> Result<T, ConfigError> {
    e.value.parse().map_err(|_| at(e.line, e.column, format!("expected {what}, found `{}`", e.value)))
}

fn parse_shifts(e: &Entry) -> Result<Vec<i32>, ConfigError> {
    list(&e.value)
        .iter()
        .map(|s| s.parse().map_err(|_| at(e.line, e.column, format!("bad shift `{s}`"))))
        .collect()
}

/// Maps an error position inside a polynomial onto the config line.
fn poly_error(e: &Entry, offset: usize, err: hypersurf_core::Error) -> ConfigError {
    let pos = match &err {
        hypersurf_core::Error::Syntax { pos, .. } | hypersurf_core::Error::UnknownVariable { pos, .. } => *pos,
        _ => 0,
    };
    at(e.line, e.column + offset + pos, err.to_string())
}

/// Splits a comma-separated polynomial list, remembering each item's offset in `e.value`.
fn parse_polys(ring: &PolyRing, e: &Entry, text: &str, base: usize) -> Result<Vec<Polynomial>, ConfigError> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in text.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let item = piece.trim();
        if !item.is_empty() {
            out.push(ring.parse(item).map_err(|err| poly_error(e, base + start + lead, err))?);
        }
        start += piece.len() + 1;
    }
    Ok(out)
}

fn parse_matrix(ring: &PolyRing, e: &Entry, shifts: Option<Vec<i32>>) -> Result<Matrix, ConfigError> {
    let mut rows = Vec::new();
    let mut start = 0;
    for row in e.value.split(';') {
        rows.push(parse_polys(ring, e, row, start)?);
        start += row.len() + 1;
    }
    let width = rows[0].len();
    if width == 0 || rows.iter().any(|r| r.len() != width) {
        return Err(at(e.line, e.column, "matrix rows must be nonempty and of equal length"));
    }
    let shifts = shifts.unwrap_or_else(|| vec![0; rows.len()]);
    if shifts.len() != rows.len() {
        return Err(at(e.line, e.column, format!("{} shifts for {} rows", shifts.len(), rows.len())));
    }
    Matrix::from_rows(ring.nvars(), &rows, shifts).map_err(|err| at(e.line, e.column, err.to_string()))
}

pub fn parse_config_str(text: &str) -> Result<SessionConfig, ConfigError> {
    let sections = split_sections(text)?;
    let ring_section = sections
        .iter()
        .find(|s| s.kind == "ring")
        .ok_or_else(|| at(1, 1, "missing [ring] section"))?;
    let characteristic = match ring_section.get("char") {
        Some(e) => parse_int::<u32>(e, "a prime")?,
        None => DEFAULT_CHARACTERISTIC,
    };
    let vars_entry = ring_section.require("vars")?;
    let variables: Vec<String> = list(&vars_entry.value).iter().map(|s| s.to_string()).collect();
    let refs: Vec<&str> = variables.iter().map(String::as_str).collect();
    let base = PolyRing::with_vars(characteristic, &refs).map_err(|err| {
        let e = ring_section.get("char").unwrap_or(vars_entry);
        at(e.line, e.column, err.to_string())
    })?;
    let rel_entry = ring_section.require("relation")?;
    let f = base.parse(&rel_entry.value).map_err(|err| poly_error(rel_entry, 0, err))?;
    let ring = Ring::hypersurface(base, f).map_err(|err| at(rel_entry.line, rel_entry.column, err.to_string()))?;

    let (mut seed, mut bound) = (DEFAULT_SEED, None);
    if let Some(s) = sections.iter().find(|s| s.kind == "session") {
        if let Some(e) = s.get("seed") {
            seed = parse_int(e, "an integer seed")?;
        }
        if let Some(e) = s.get("bound") {
            bound = Some(parse_int(e, "a bound")?);
        }
    }

    let mut modules = BTreeMap::new();
    let mut names = Vec::new();
    for s in sections.iter().filter(|s| s.name.is_some()) {
        let name = s.name.clone().unwrap();
        let m = elaborate(&ring, s, &modules)?;
        modules.insert(name.clone(), m);
        names.push(name);
    }
    Ok(SessionConfig {
        characteristic,
        variables,
        relation: rel_entry.value.clone(),
        ring,
        seed,
        bound,
        names,
        modules,
        digest: hex::encode(Sha256::digest(text.as_bytes())),
    })
}

fn elaborate(ring: &Ring, s: &Section, known: &BTreeMap<String, GradedModule>) -> Result<GradedModule, ConfigError> {
    let kind_entry = s.require("kind")?;
    let kind = ModuleKind::parse(&kind_entry.value)
        .ok_or_else(|| at(kind_entry.line, kind_entry.column, format!("unknown kind `{}`", kind_entry.value)))?;
    let fail = |e: &Entry, err: hypersurf_core::Error| at(e.line, e.column, err.to_string());
    let lookup = |e: &Entry, name: &str| {
        known
            .get(name)
            .cloned()
            .ok_or_else(|| at(e.line, e.column, format!("unknown module `{name}` (modules must be defined before use)")))
    };
    let shifts = s.get("shifts").map(parse_shifts).transpose()?;
    let m = match kind {
        ModuleKind::Ideal | ModuleKind::Quotient => {
            let e = s.require("generators")?;
            let gens = parse_polys(ring.base(), e, &e.value, 0)?;
            if gens.is_empty() {
                return Err(at(e.line, e.column, "no generators"));
            }
            let gens: Vec<Polynomial> = gens.iter().map(|g| ring.reduce(g)).collect();
            if kind == ModuleKind::Ideal {
                GradedModule::ideal(ring, &gens).map_err(|err| fail(e, err))?
            } else {
                GradedModule::quotient(ring, &gens).map_err(|err| fail(e, err))?
            }
        }
        ModuleKind::Cokernel => {
            let e = s.require("matrix")?;
            let mat = parse_matrix(ring.base(), e, shifts.clone())?;
            return GradedModule::cokernel(ring, ring.reduce_matrix(&mat)).map_err(|err| fail(e, err));
        }
        ModuleKind::Free => {
            let e = s.require("shifts")?;
            return Ok(GradedModule::free(ring, parse_shifts(e)?));
        }
        ModuleKind::Residue => GradedModule::residue_field(ring),
        ModuleKind::DualOf | ModuleKind::SyzygyOf | ModuleKind::PushforwardOf => {
            let e = s.require("of")?;
            let src = lookup(e, e.value.trim())?;
            match kind {
                ModuleKind::DualOf => src.dual(),
                ModuleKind::SyzygyOf => src.syzygy(),
                _ => pushforward(&src).map_err(|err| fail(e, err))?.m1,
            }
        }
        ModuleKind::DirectSum => {
            let e = s.require("of")?;
            let parts = list(&e.value);
            if parts.is_empty() {
                return Err(at(e.line, e.column, "direct-sum needs at least one summand"));
            }
            let mut acc = lookup(e, parts[0])?;
            for p in &parts[1..] {
                acc = acc.direct_sum(&lookup(e, p)?).map_err(|err| fail(e, err))?;
            }
            acc
        }
    };
    // `shifts` on a derived module is a single twist
    Ok(match shifts.as_deref() {
        Some([t]) => m.twist(*t),
        Some(_) => {
            let e = s.get("shifts").unwrap();
            return Err(at(e.line, e.column, "expected a single twist for this kind"));
        }
        None => m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "[ring]\nchar = 32003\nvars = x, y, u, v\nrelation = x*u - y*v\n\n[module M]\nkind = ideal\ngenerators = x, y\n\n[module Mstar]\nkind = dual-of\nof = M\n";

    #[test]
    fn parses_example() {
        let c = parse_config_str(EX).unwrap();
        assert_eq!(c.ring.dim(), 3);
        assert_eq!(c.names, vec!["M", "Mstar"]);
        assert_eq!(c.module("Mstar").unwrap().num_generators(), 2);
        assert!(matches!(c.module("N"), Err(ConfigError::UnknownModule(_))));
    }

    #[test]
    fn rejects_inhomogeneous_relation() {
        let err = parse_config_str("[ring]\nvars = x, y, u\nrelation = x*u - y\n").unwrap_err();
        assert!(matches!(err, ConfigError::Parse { line: 3, column: 12, .. }), "{err}");
    }

    #[test]
    fn reports_positions() {
        let err = parse_config_str("[ring]\nvars = x, y\nrelation = x*y\n[module M]\nkind = ideal\ngenerators = x, w\n").unwrap_err();
        assert!(matches!(err, ConfigError::Parse { line: 6, column: 17, .. }), "{err}");
        let err = parse_config_str("[ring]\nvars = x\nrelation = x^2\n[module A]\nkind = residue\n[module A]\nkind = residue\n").unwrap_err();
        assert!(err.to_string().contains("duplicate module"), "{err}");
        let err = parse_config_str("[ring]\nvars = x\nrelation = x^2\n[modul A]\n").unwrap_err();
        assert!(matches!(err, ConfigError::Parse { line: 4, .. }));
    }

    #[test]
    fn composites() {
        let text = "[ring]\nvars = x, y, z\nrelation = x*y - z^2\n[session]\nseed = 5\n\
                    [module M]\nkind = cokernel\nmatrix = x, z; z, y\n\
                    [module K]\nkind = syzygy-of\nof = M\n\
                    [module P]\nkind = direct-sum\nof = M, K\n\
                    [module F]\nkind = free\nshifts = 0, 1\n";
        let c = parse_config_str(text).unwrap();
        assert_eq!(c.seed, 5);
        assert_eq!(c.module("K").unwrap().num_generators(), 2);
        assert_eq!(c.module("P").unwrap().num_generators(), 4);
        assert!(c.module("F").unwrap().is_free());
    }
}
