//! Laurent expansion of minors in the chamber minors of a base class, and
//! the oracles that check it.
//!
//! Each braid move `X → Y` carries the relation `X·Y = A·D + B·C`. Walking
//! a move path from the base class and solving `Y = (A·D + B·C) / X` at
//! every step expresses any minor in the base chamber minors.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphError, MovePath};
use crate::label::{ChamberLabel, ClassKey, LabelError};
use crate::laurent::{LaurentError, LaurentPoly};

mod express;
mod matrix;
mod symbolic;
mod verify;

pub use express::{express_all, express_minor, express_steps, ExchangeStep};
pub use matrix::{numeric_check, tp_matrix, RationalMatrix};
pub use symbolic::{identity_check_classes, identity_check_sampled, symb_identity_check, IdentityReport, SymPoly};
pub use verify::{
    sample_classes, verify_conjecture, Failure, Scope, VerificationReport, VerifyOptions, FULL_MAX_STRINGS,
    SAMPLE_MAX_STRINGS,
};

#[derive(Debug, Error)]
pub enum PositivityError {
    #[error("exchange step {step} is not divisible ({relation})")]
    NotDivisible { step: usize, relation: String },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("minor {0} must pair equal-size nonempty subsets within 1..{1}")]
    BadMinor(ChamberLabel, usize),
    #[error("{0}")]
    ScopeTooLarge(String),
    #[error("matrix is not totally positive: minor {0} is not positive")]
    NotTotallyPositive(ChamberLabel),
}

/// Index `(r, b)` of a minor; both subsets nonempty and of equal size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MinorId(ChamberLabel);

impl MinorId {
    pub fn new(label: ChamberLabel, n: usize) -> Result<MinorId, PositivityError> {
        if label.is_empty() || !label.is_balanced() || label.max_element() > n {
            return Err(PositivityError::BadMinor(label, n));
        }
        Ok(MinorId(label))
    }

    pub fn parse(text: &str, n: usize) -> Result<MinorId, PositivityError> {
        MinorId::new(text.parse()?, n)
    }

    pub fn label(self) -> ChamberLabel {
        self.0
    }
}

impl std::fmt::Display for MinorId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A minor expressed in the chamber minors of `base`.
#[derive(Clone, Debug)]
pub struct ExpressionReport {
    pub base: ClassKey,
    pub target: MinorId,
    pub path: MovePath,
    pub expression: LaurentPoly,
    pub positive: bool,
    pub term_count: usize,
}

impl ExpressionReport {
    fn new(base: ClassKey, target: MinorId, path: MovePath, expression: LaurentPoly) -> Self {
        ExpressionReport {
            base,
            target,
            path,
            positive: expression.is_positive(),
            term_count: expression.term_count(),
            expression,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minor_id_validation() {
        assert!(MinorId::parse("14|12", 4).is_ok());
        assert!(matches!(MinorId::parse("-|-", 4), Err(PositivityError::BadMinor(..))));
        assert!(matches!(MinorId::parse("5|1", 4), Err(PositivityError::BadMinor(..))));
        assert!(matches!(MinorId::parse("1|12", 4), Err(PositivityError::Label(_))));
    }
}
