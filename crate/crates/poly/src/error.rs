use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable {0} already occurs in the polynomial being homogenized")]
    HomogenizingVariablePresent(String),
    #[error("Gröbner computation exceeded the step limit of {0} S-pair reductions")]
    StepLimit(usize),
    #[error("cannot saturate or divide by the zero polynomial")]
    ZeroDivisor,
    #[error("inexact division in ideal quotient")]
    InexactDivision,
}
