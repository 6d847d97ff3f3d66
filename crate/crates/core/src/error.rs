use thiserror::Error;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or rejected input.
    Validation,
    /// The algorithm refused or failed to finish.
    Algorithm,
    /// Two independent computations disagree.
    Mismatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported Lie type {lie_type} with rank {rank}")]
    InvalidRank { lie_type: char, rank: usize },
    #[error("cannot parse Lie type from {0:?}")]
    BadLieType(String),
    #[error("letter {letter} is outside [1, {rank}]")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("node {node} is outside [1, {rank}]")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("word has length {got}, the longest element has length {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("word is not a reduced expression of the longest element")]
    NotLongestElement,
    #[error("cannot parse word {0:?}")]
    BadWord(String),
    #[error("no position k maps alpha_{node} onto itself (internal inconsistency)")]
    SourceNotFound { node: usize },
    #[error("position {position} has no later occurrence of its letter")]
    NoNextOccurrence { position: usize },
    #[error("position {position} is outside [1, {len}]")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("slot counts differ: {left} vs {right}")]
    SlotMismatch { left: usize, right: usize },
    #[error("cannot parse monomial or polynomial {0:?}")]
    BadMonomial(String),
    #[error("cannot parse linear form {0:?}")]
    BadLinearForm(String),
    #[error(
        "node {node} is neither minuscule nor backed by an adapted word; pass force to run anyway"
    )]
    NotMinusculeNotAdapted { node: usize },
    #[error("no expansion possible from sink {sink} which is not the lowest term")]
    StuckSink { sink: String },
    #[error("decoration graph did not finish within {max_rounds} rounds")]
    NonTermination { max_rounds: usize },
    #[error(
        "node {node} is not minuscule; the graph carries the monomial set but not the coefficients"
    )]
    NonMinusculeCoefficients { node: usize },
    #[error("weight orbit is not minuscule: pairing {pairing} found")]
    NotMinuscule { pairing: i64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("monomial {monomial} arises from {count} trails")]
    MultiplicityViolation { monomial: String, count: usize },
    #[error("cannot tropicalize the zero polynomial")]
    EmptyPolynomial,
    #[error("no strategy can handle node {node}; pass force to use conjectural results")]
    IncompleteCover { node: usize },
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("monomial is not highest weight: eps_{node} = {eps}")]
    HighestWeightViolation { node: usize, eps: i64 },
    #[error("crystal exceeded the cap of {cap} vertices")]
    CapExceeded { cap: usize },
    #[error("invalid p-choice: {0}")]
    BadPChoice(String),
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error("strategy {strategy} does not apply to node {node}: {reason}")]
    StrategyNotApplicable {
        strategy: String,
        node: usize,
        reason: String,
    },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture {name} is malformed: {reason}")]
    BadFixture { name: String, reason: String },
    #[error("verification failed for word {word}: {reason}")]
    VerificationMismatch { word: String, reason: String },
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidRank { .. } => "invalid_rank",
            Error::BadLieType(_) => "bad_lie_type",
            Error::LetterOutOfRange { .. } => "letter_out_of_range",
            Error::NodeOutOfRange { .. } => "node_out_of_range",
            Error::WrongLength { .. } => "wrong_length",
            Error::NotLongestElement => "not_longest_element",
            Error::BadWord(_) => "bad_word",
            Error::SourceNotFound { .. } => "source_not_found",
            Error::NoNextOccurrence { .. } => "no_next_occurrence",
            Error::PositionOutOfRange { .. } => "position_out_of_range",
            Error::SlotMismatch { .. } => "slot_mismatch",
            Error::BadMonomial(_) => "bad_monomial",
            Error::BadLinearForm(_) => "bad_linear_form",
            Error::NotMinusculeNotAdapted { .. } => "not_minuscule_not_adapted",
            Error::StuckSink { .. } => "stuck_sink",
            Error::NonTermination { .. } => "non_termination",
            Error::NonMinusculeCoefficients { .. } => "non_minuscule_coefficients",
            Error::NotMinuscule { .. } => "not_minuscule",
            Error::InternalInconsistency(_) => "internal_inconsistency",
            Error::MultiplicityViolation { .. } => "multiplicity_violation",
            Error::EmptyPolynomial => "empty_polynomial",
            Error::IncompleteCover { .. } => "incomplete_cover",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::HighestWeightViolation { .. } => "highest_weight_violation",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::BadPChoice(_) => "bad_p_choice",
            Error::UnknownStrategy(_) => "unknown_strategy",
            Error::StrategyNotApplicable { .. } => "strategy_not_applicable",
            Error::UnknownFixture(_) => "unknown_fixture",
            Error::BadFixture { .. } => "bad_fixture",
            Error::VerificationMismatch { .. } => "verification_mismatch",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NotMinusculeNotAdapted { .. }
            | Error::StuckSink { .. }
            | Error::NonTermination { .. }
            | Error::NonMinusculeCoefficients { .. }
            | Error::IncompleteCover { .. }
            | Error::CapExceeded { .. }
            | Error::SourceNotFound { .. }
            | Error::InternalInconsistency(_) => ErrorClass::Algorithm,
            Error::MultiplicityViolation { .. } | Error::VerificationMismatch { .. } => {
                ErrorClass::Mismatch
            }
            _ => ErrorClass::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
