//! Corpus, campaign runner and report files for `classbound-core`.
//!
//! A campaign applies each selected verifier to each corpus item it applies
//! to. Verifier errors never abort a run; they become skip records.

pub mod campaign;
pub mod corpus;
pub mod error;
pub mod report;
pub mod spec;

pub use campaign::{run_campaign, run_campaign_with, CampaignConfig, CampaignReport, LemmaSummary, Skip, Suite, STANDARD_SUITE};
pub use corpus::{corpus_standard, CorpusItem, Expected, Source};
pub use error::HarnessError;
pub use report::{emit_report, Format};
pub use spec::InstanceSpec;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable overriding the enumeration cap.
pub const CAP_ENV: &str = "CLASSBOUND_CAP";

/// The cap from `CLASSBOUND_CAP`, else the library default.
pub fn cap_from_env() -> Result<usize, HarnessError> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| HarnessError::BadCap(v)),
        Err(_) => Ok(classbound_core::DEFAULT_CAP),
    }
}
