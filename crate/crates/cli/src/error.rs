use genconj::chartab::ChartabError;
use genconj::corpus::CorpusError;
use genconj::matclass::MatclassError;
use genconj::permoracle::PermError;
use genconj::structgen::StructgenError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Data(_) => "data",
            CliError::Budget(_) => "budget",
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::NotFound { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<ChartabError> for CliError {
    fn from(e: ChartabError) -> Self {
        match e {
            ChartabError::UnknownClass(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<StructgenError> for CliError {
    fn from(e: StructgenError) -> Self {
        use StructgenError as S;
        match e {
            S::Chartab(c) => c.into(),
            S::TupleLength(_) | S::ClassIndex(_) | S::IdentityClass | S::Abelian(_) | S::MaxK(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::BudgetExceeded { .. } | PermError::NotSmall { .. } => CliError::Budget(e.to_string()),
            PermError::UnknownClass(_) | PermError::UnknownSubgroup(_) | PermError::TupleLength(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<MatclassError> for CliError {
    fn from(e: MatclassError) -> Self {
        CliError::Data(e.to_string())
    }
}
