//! Run reports persisted as JSON.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::claims::{Claim, ClaimResult, ClaimStatus};
use super::identities::IdentityResult;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub package_version: String,
    pub os: String,
    pub arch: String,
    pub threads: usize,
}

impl Environment {
    pub fn current() -> Self {
        Environment {
            package_version: env!("CARGO_PKG_VERSION").to_string(),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            threads: rayon::current_num_threads(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub id: String,
    pub label: String,
    pub status: ClaimStatus,
    pub ran: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub environment: Environment,
    pub claims: Vec<ClaimResult>,
    #[serde(default)]
    pub identities: Vec<IdentityResult>,
    /// One row per catalog entry, run or not.
    pub traceability: Vec<TraceRow>,
}

impl Report {
    pub fn new(catalog: &[Claim], claims: Vec<ClaimResult>, identities: Vec<IdentityResult>) -> Self {
        let traceability = catalog
            .iter()
            .map(|c| TraceRow {
                id: c.id.clone(),
                label: c.label.clone(),
                status: c.status,
                ran: claims.iter().any(|r| r.id == c.id),
            })
            .collect();
        Report { schema_version: SCHEMA_VERSION, environment: Environment::current(), claims, identities, traceability }
    }

    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed()) && self.identities.iter().all(|i| i.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Report = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(Error::Fixture(format!("unsupported report schema {}", r.schema_version)));
        }
        Ok(r)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))
    }
}
