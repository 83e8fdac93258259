//! Verification outcomes. Every failed sweep carries a minimal witness:
//! where the identity broke and what the two sides evaluated to.

use std::fmt;

/// A violated identity, pinned to the basis tuple that broke it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// The identity and the basis tuple it was evaluated on.
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    pub fn new(
        location: impl Into<String>,
        lhs: impl fmt::Display,
        rhs: impl fmt::Display,
    ) -> Self {
        Counterexample {
            location: location.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: lhs = {} ; rhs = {}",
            self.location, self.lhs, self.rhs
        )
    }
}

pub type CheckResult = Result<(), Counterexample>;
