//! Height reports, the claim registry and batch sweeps.

mod claims;
mod report;
mod sweep;

pub use claims::{check_claims, check_claims_with_report, ClaimResult, WitnessChain, CLAIM_IDS};
pub use report::{analyze, HeightReport, ORACLE_CHECK_LIMIT, SCHEMA};
pub use sweep::{
    sweep, ClaimTally, InputInfo, InputRecord, SweepOptions, SweepOutcome, SweepSource,
    SweepSummary, Violation,
};
