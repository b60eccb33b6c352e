use spectra_core::gm::GmError;
use spectra_core::hn::HnError;
use spectra_core::model::ModelError;
use spectra_core::riemann_roch::RrError;
use spectra_core::spectrum::SpectrumError;
use thiserror::Error;

/// Exit code 1 for [`CliError::Domain`], 2 for [`CliError::Input`].
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{id}: {message}")]
    Domain { id: &'static str, message: String },
    #[error("MalformedInput: {0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { .. } => 1,
            CliError::Input(_) => 2,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    fn domain(id: &'static str, err: impl std::fmt::Display) -> Self {
        CliError::Domain {
            id,
            message: err.to_string(),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        let id = match &e {
            ModelError::ToddViolation(_) => "ToddViolation",
            ModelError::NonPositiveDegree(_) => "NonPositiveDegree",
            ModelError::PencilTooSmall(_) => "PencilTooSmall",
            ModelError::UnknownEntry(_) => "UnknownEntry",
            ModelError::NotNormalizable { .. } => "NotNormalizable",
            ModelError::Overflow => "Overflow",
        };
        CliError::domain(id, e)
    }
}

impl From<RrError> for CliError {
    fn from(e: RrError) -> Self {
        let id = match &e {
            RrError::NonIntegralChi(_) => "NonIntegralChi",
            RrError::NegativeRank(_) => "NegativeRank",
            RrError::NonIntegralRank(_) => "NonIntegralRank",
            RrError::NonIntegralDegree(_) => "NonIntegralDegree",
            RrError::RouteMismatch { .. } => "RouteMismatch",
            RrError::NotNormalized { .. } => "NotNormalized",
            RrError::Model(inner) => return inner.clone().into(),
        };
        CliError::domain(id, e)
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        let id = match &e {
            SpectrumError::InvalidRank(_) => "InvalidRank",
            SpectrumError::TwistOutOfRange { .. } => "TwistOutOfRange",
            SpectrumError::UnboundedSearch => "UnboundedSearch",
        };
        CliError::domain(id, e)
    }
}

impl From<HnError> for CliError {
    fn from(e: HnError) -> Self {
        let id = match &e {
            HnError::RankOverflow { .. } => "RankOverflow",
            HnError::InvalidPoint { .. } => "InvalidPoint",
            HnError::ZeroTotalRank => "ZeroTotalRank",
            HnError::EndpointMismatch(..) => "EndpointMismatch",
        };
        CliError::domain(id, e)
    }
}

impl From<GmError> for CliError {
    fn from(e: GmError) -> Self {
        let id = match &e {
            GmError::NotGloballyGenerated(_) => "NotGloballyGenerated",
            GmError::TrivialNormalBundle => "TrivialNormalBundle",
            GmError::PencilTooSmall(_) => "PencilTooSmall",
            GmError::DegreeTooSmall(_) => "DegreeTooSmall",
            GmError::NotSorted => "NotSorted",
            GmError::InvalidRank => "InvalidRank",
        };
        CliError::domain(id, e)
    }
}
