use std::process::ExitCode;

use modcount::expander::ExpanderError;
use modcount::fractures::FractureError;
use modcount::graph::GraphError;
use modcount::groups::GroupError;
use modcount::homcount::HomError;
use modcount::pathcycle::PathCycleError;
use modcount::presentations::PresentationError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Config(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Mismatch(_) => 4,
        })
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<ExpanderError> for CliError {
    fn from(e: ExpanderError) -> Self {
        match e {
            ExpanderError::Group(g) => g.into(),
            ExpanderError::Spectral(s) => CliError::Config(s.to_string()),
        }
    }
}

impl From<FractureError> for CliError {
    fn from(e: FractureError) -> Self {
        match e {
            FractureError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            FractureError::ClassCountMismatch { .. } => CliError::Mismatch(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<HomError> for CliError {
    fn from(e: HomError) -> Self {
        match e {
            HomError::CapExceeded { .. } | HomError::TableTooLarge | HomError::TooManyVertices { .. } => {
                CliError::Cap(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<PathCycleError> for CliError {
    fn from(e: PathCycleError) -> Self {
        match e {
            PathCycleError::Hom(h) => h.into(),
            _ => CliError::Config(e.to_string()),
        }
    }
}
