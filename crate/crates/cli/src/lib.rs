//! Command-line harness for `wallspan-core`: sampling campaigns, JSON
//! reports and the acceptance suite.

pub mod accept;
pub mod campaign;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

pub use accept::{run_acceptance, AcceptanceReport, CriterionResult};
pub use campaign::run_campaign;
pub use config::{CampaignConfig, OutputFormat, Span};
pub use error::CliError;
pub use report::VerificationReport;
