//! Campaign runner, reports and configuration for the `sptree` command-line
//! tool.

pub mod campaign;
pub mod config;
pub mod report;
pub mod source;

use thiserror::Error;

pub use campaign::{run_campaign, CampaignId, CampaignSpec};
pub use report::{read_report, write_report, ReportFormat, VerificationReport};
pub use source::Source;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid campaign: {0}")]
    InvalidSpec(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error(transparent)]
    Enum(#[from] sptree::enumerate::EnumError),
    #[error(transparent)]
    Embed(#[from] sptree::embed::EmbedError),
    #[error(transparent)]
    Turan(#[from] sptree::turan::TuranError),
    #[error(transparent)]
    Spectral(#[from] sptree::spectral::SpectralError),
    #[error(transparent)]
    Graph(#[from] sptree::GraphError),
    #[error(transparent)]
    Graph6(#[from] sptree::graph::Graph6Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    /// Budget and cap failures, as opposed to bad input.
    pub fn is_resource_limit(&self) -> bool {
        use sptree::embed::EmbedError as E;
        use sptree::enumerate::EnumError;
        matches!(
            self,
            HarnessError::Cap(_)
                | HarnessError::Enum(EnumError::CapExceeded { .. })
                | HarnessError::Embed(E::BudgetExceeded { .. } | E::FallbackExhausted { .. } | E::CapExceeded { .. })
                | HarnessError::Turan(sptree::turan::TuranError::Embed(
                    E::BudgetExceeded { .. } | E::CapExceeded { .. }
                ))
        )
    }
}
