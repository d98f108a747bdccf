use thiserror::Error;

use crate::canonical::WeylPoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not unitary: max |U†U - I| entry is {defect:.3e} (tolerance {tolerance:.0e})")]
    NonUnitary { defect: f64, tolerance: f64 },

    #[error("state vector is not normalized: |‖ψ‖² - 1| = {defect:.3e}")]
    NotNormalized { defect: f64 },

    #[error("unknown gate `{name}`; valid names: {valid}")]
    UnknownGate { name: String, valid: String },

    #[error("malformed gate name `{0}`: parametrized entries are written NAME:value")]
    MalformedGateName(String),

    #[error("point {0} lies outside the Weyl chamber")]
    OutsideChamber(WeylPoint),

    #[error("{what} = {value} is outside its valid range {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("Monte-Carlo estimate needs at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },

    #[error("G2 has imaginary residue {residue:.3e}; input is not a consistent two-qubit unitary")]
    InconsistentInvariant { residue: f64 },

    #[error(
        "operator route self-check failed: two-trace form {two_trace:.15} vs single-trace form {single_trace:.15}"
    )]
    OperatorRouteMismatch { two_trace: f64, single_trace: f64 },

    #[error("trace has imaginary residue {residue:.3e} in the operator route")]
    ImaginaryTrace { residue: f64 },

    #[error(
        "classification routes disagree at {point}: geometric is_pe={geometric_pe} margins {geometric_margins:?}, \
         invariant is_pe={invariant_pe} margins {invariant_margins:?}"
    )]
    TheoremViolation {
        point: WeylPoint,
        geometric_pe: bool,
        geometric_margins: Vec<f64>,
        invariant_pe: bool,
        invariant_margins: Vec<f64>,
    },
}
