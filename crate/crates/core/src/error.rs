use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by constructors, decision procedures and verifiers.
///
/// `EquivalenceViolation` and the other `*Violation` variants raised by the
/// verifiers mean a checked biconditional failed on a validated input. They
/// are reported, never swallowed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("carrier of {0} elements exceeds the supported capacity of 128")]
    TooLarge(usize),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("lattice is not distributive: {0}")]
    NotDistributive(String),
    #[error("lattice is not a frame: {0}")]
    NotAFrame(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("not a filter: {0}")]
    NotAFilter(String),
    #[error("ideal and filter are not disjoint (common element `{0}`)")]
    NotDisjoint(String),
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("space is not T0: points `{0}` and `{1}` are topologically indistinguishable")]
    NotT0(String, String),
    #[error("space is not spectral: {0}")]
    NotSpectral(String),
    #[error("support axiom ({clause}) violated: {witness}")]
    AxiomViolation { clause: String, witness: String },
    #[error("invalid tensor system ({invariant}): {witness}")]
    InvalidSystem { invariant: String, witness: String },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("tensor system is not additive")]
    NotAdditive,
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("equivalence violated ({check}): {witness}")]
    EquivalenceViolation { check: String, witness: String },
}

impl Error {
    pub(crate) fn violation(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::EquivalenceViolation {
            check: check.into(),
            witness: witness.into(),
        }
    }

    /// True for the error kinds that signal a failed internal biconditional.
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::EquivalenceViolation { .. })
    }
}
