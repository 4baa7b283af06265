//! Three-valued verdicts shared by every verification routine.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }

    /// Violated dominates, then holds; an empty or all-inapplicable list is inapplicable.
    pub fn combine(items: impl IntoIterator<Item = Verdict>) -> Self {
        let mut out = Verdict::NotApplicable;
        for v in items {
            match v {
                Verdict::Violated => return Verdict::Violated,
                Verdict::Holds => out = Verdict::Holds,
                Verdict::NotApplicable => {}
            }
        }
        out
    }

    pub fn is_violated(self) -> bool {
        self == Verdict::Violated
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// One named assertion inside a larger report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        Self { name: name.into(), verdict, detail: detail.into() }
    }

    pub fn assert(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, Verdict::from_bool(ok), detail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination() {
        use Verdict::*;
        assert_eq!(Verdict::combine([Holds, NotApplicable]), Holds);
        assert_eq!(Verdict::combine([Holds, Violated, NotApplicable]), Violated);
        assert_eq!(Verdict::combine([]), NotApplicable);
    }

    #[test]
    fn serialized_names() {
        assert_eq!(serde_json::to_string(&Verdict::NotApplicable).unwrap(), "\"not-applicable\"");
        assert_eq!(Verdict::Holds.to_string(), "holds");
    }
}
