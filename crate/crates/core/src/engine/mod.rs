//! Catalog drivers: congruence claims, identities, the mod 4 / mod 8
//! characterizations, density estimates, Radu fixtures and run reports.

pub mod characterize;
pub mod claims;
pub mod density;
pub mod identities;
pub mod param;
pub mod report;

pub use characterize::{check_characterization_mod4, check_characterization_mod8, CharacterizationResult};
pub use claims::{builtin_claims, run_claims, Claim, ClaimResult, ClaimStatus, RunOptions, Verdict};
pub use density::{estimate_density, Sampling};
pub use identities::{identity_catalog, verify_identity, Expr, IdentityCase, IdentityResult};
pub use report::Report;

use crate::error::{Error, Result};
use crate::radu::RaduFile;

const RADU_FIXTURES: [(&str, &str); 4] = [
    ("a3-49n+39", include_str!("../../fixtures/radu/a3-49n+39.json")),
    ("a25-31^2n+644", include_str!("../../fixtures/radu/a25-31^2n+644.json")),
    ("a41-47^2n+256", include_str!("../../fixtures/radu/a41-47^2n+256.json")),
    ("a61-67^2n+555", include_str!("../../fixtures/radu/a61-67^2n+555.json")),
];

pub fn parse_radu_file(text: &str) -> Result<RaduFile> {
    serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))
}

/// Bundled Radu instances, keyed by the congruence they address.
pub fn builtin_radu() -> Vec<(&'static str, RaduFile)> {
    RADU_FIXTURES.iter().map(|&(k, text)| (k, parse_radu_file(text).expect("bundled fixture parses"))).collect()
}
