//! The claims manifest: expected values, their origin and where they come
//! from. Bundled at build time, replaceable with `--claims`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const BUNDLED: &str = include_str!("../data/claims.toml");

pub const CASES: [&str; 4] = ["todd", "s48", "s28", "s25"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Paper,
    Derived,
    Trivial,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Origin::Paper => "paper",
            Origin::Derived => "derived",
            Origin::Trivial => "trivial",
        };
        write!(f, "[{}]", s.to_ascii_uppercase())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub id: String,
    pub case: String,
    pub description: String,
    pub expected: String,
    pub origin: Origin,
    pub source: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub version: u32,
    #[serde(rename = "claim")]
    pub claims: Vec<Claim>,
}

impl Manifest {
    pub fn parse(text: &str) -> CliResult<Self> {
        let m: Manifest = toml::from_str(text).map_err(|e| CliError::compute(format!("claims manifest: {e}")))?;
        if m.version != 1 {
            return Err(CliError::compute(format!("claims manifest: unsupported version {}", m.version)));
        }
        let mut seen = BTreeSet::new();
        for c in &m.claims {
            if !seen.insert(c.id.as_str()) {
                return Err(CliError::compute(format!("claims manifest: duplicate id {:?}", c.id)));
            }
            if !CASES.contains(&c.case.as_str()) {
                return Err(CliError::compute(format!("claims manifest: {:?} has unknown case {:?}", c.id, c.case)));
            }
            if c.source.trim().is_empty() {
                return Err(CliError::compute(format!("claims manifest: {:?} has no source", c.id)));
            }
        }
        Ok(m)
    }

    pub fn bundled() -> Self {
        Manifest::parse(BUNDLED).expect("bundled manifest is valid")
    }

    pub fn for_case<'a>(&'a self, case: &'a str) -> impl Iterator<Item = &'a Claim> + 'a {
        self.claims.iter().filter(move |c| c.case == case)
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}
