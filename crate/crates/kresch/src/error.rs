//! Crate-wide error type.
//!
//! Domain rejections (non-terminating input, Pochhammer poles, parameter
//! box violations) are ordinary `Err` values, never panics: the callers
//! decide whether to print a diagnostic, skip a cell, or abort.

use thiserror::Error;

use crate::exact::{Index, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("series does not terminate: no numerator parameter is a non-positive integer")]
    NonTerminating,

    #[error("denominator parameter {parameter} hits a Pochhammer zero within the truncation range")]
    DenominatorPole { parameter: Rational },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index {index} out of range (maximum {max})")]
    IndexOutOfRange { index: Index, max: Index },

    #[error("invalid range: [{lo}, {hi}]")]
    InvalidRange { lo: Index, hi: Index },

    #[error("cannot parse `{text}` as a rational (expected `p/q` or `p`)")]
    ParseRational { text: String },

    #[error("line {line}: cannot parse `{text}` as a rational")]
    ParseSequence { line: usize, text: String },

    #[error("unknown suite `{name}` (expected lemma340, c310a, c310b, kernel, c320 or all)")]
    UnknownSuite { name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
