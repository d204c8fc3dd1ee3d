//! The certificate: every check of the suite in a fixed order, with a
//! versioned JSON or plain-text report.

mod checks;
mod config;
mod report;

use thiserror::Error;

pub use checks::{check_ids, describe_cochain, run_certificate};
pub use config::{Config, MAX_RANK_LIMIT, SAMPLE_LIMIT};
pub use report::{Assumption, CertificateReport, Check, Format, Status, SCHEMA};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("unknown format {0:?}, expected json or text")]
    Format(String),
    #[error("bad input: {0}")]
    Input(String),
}
