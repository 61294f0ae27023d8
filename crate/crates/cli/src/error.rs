use serde::Serialize;
use thiserror::Error;

use ncomp_core::algebra::AlgebraError;
use ncomp_core::cqstruct::CqError;
use ncomp_core::field::FieldError;
use ncomp_core::unitgroup::UnitGroupError;
use ncomp_core::verifier::VerifierError;

/// Every failure carries the process exit code it maps to.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("math error: {0}")]
    Math(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Hypothesis(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Math(_) => 3,
            CliError::Budget(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Hypothesis(_) => "hypothesis",
            CliError::Parse(_) => "parse",
            CliError::Math(_) => "math",
            CliError::Budget(_) => "budget",
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            code: u8,
            kind: &'a str,
            message: String,
        }
        #[derive(Serialize)]
        struct Wrapper<'a> {
            error: Body<'a>,
        }
        serde_json::to_string(&Wrapper {
            error: Body {
                code: self.exit_code(),
                kind: self.kind(),
                message: self.to_string(),
            },
        })
        .expect("plain strings serialize")
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<CqError> for CliError {
    fn from(e: CqError) -> Self {
        match e {
            CqError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            CqError::HypothesisFail(_) | CqError::Field(FieldError::QDoesNotDivide { .. }) => {
                CliError::Hypothesis(e.to_string())
            }
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<UnitGroupError> for CliError {
    fn from(e: UnitGroupError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<VerifierError> for CliError {
    fn from(e: VerifierError) -> Self {
        match e {
            VerifierError::Cq(c) => c.into(),
            VerifierError::UnitGroup(u) => u.into(),
            // Invalid fields and groups, and branch refusals, are hypothesis failures.
            _ => CliError::Hypothesis(e.to_string()),
        }
    }
}
