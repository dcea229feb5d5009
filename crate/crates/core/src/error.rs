use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid Γ configuration: {0}")]
    InvalidGamma(String),
    #[error("invalid scale map: {0}")]
    InvalidScaleMap(String),
    #[error("level {level} outside subquotient range [{m}, {n}]")]
    LevelOutOfRange { level: u32, m: u32, n: u32 },
    #[error("central term not allowed under the {0} rule")]
    CentralTerm(&'static str),
    #[error("homogeneous component at degree {0} is zero")]
    EmptyComponent(String),
    #[error("element is zero")]
    ZeroElement,
    #[error("γ must be nonzero")]
    ZeroGamma,
    #[error("β = {0} lies in the support of x")]
    BetaInSupport(String),
    #[error("missing derivation image for {0}")]
    MissingImage(String),
    #[error("not a derivation: {0}")]
    NotADerivation(String),
    #[error("additivity fails: {0}")]
    InconsistentAdditivity(String),
    #[error("truncation too shallow: need order {needed}, have {available}")]
    TruncationTooShallow { needed: u32, available: u32 },
    #[error("automorphisms act on W, but the element has a central term")]
    CentralTermPresent,
    #[error("outside the stored window: {0}")]
    OutOfWindow(String),
    #[error("Γ configuration has no unit element")]
    MissingUnit,
    #[error(
        "inconsistent central charge: {from_two} from the (2,-2) pair, {from_three} from (3,-3)"
    )]
    InconsistentC {
        from_two: String,
        from_three: String,
    },
    #[error("not a 2-cocycle: {0}")]
    NotACocycle(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("JSON: {0}")]
    Json(String),
    #[error("I/O: {0}")]
    Io(String),
}

impl Error {
    /// Stable name of the variant, used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::InvalidGamma(_) => "InvalidGamma",
            Error::InvalidScaleMap(_) => "InvalidScaleMap",
            Error::LevelOutOfRange { .. } => "LevelOutOfRange",
            Error::CentralTerm(_) => "CentralTerm",
            Error::EmptyComponent(_) => "EmptyComponent",
            Error::ZeroElement => "ZeroElement",
            Error::ZeroGamma => "ZeroGamma",
            Error::BetaInSupport(_) => "BetaInSupport",
            Error::MissingImage(_) => "MissingImage",
            Error::NotADerivation(_) => "NotADerivation",
            Error::InconsistentAdditivity(_) => "InconsistentAdditivity",
            Error::TruncationTooShallow { .. } => "TruncationTooShallow",
            Error::CentralTermPresent => "CentralTermPresent",
            Error::OutOfWindow(_) => "OutOfWindow",
            Error::MissingUnit => "MissingUnit",
            Error::InconsistentC { .. } => "InconsistentC",
            Error::NotACocycle(_) => "NotACocycle",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::InvalidWindow(_) => "InvalidWindow",
            Error::Json(_) => "Json",
            Error::Io(_) => "Io",
        }
    }

    /// Whether the error says the input failed a mathematical check, as
    /// opposed to being malformed.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::NotADerivation(_)
                | Error::InconsistentAdditivity(_)
                | Error::NotACocycle(_)
                | Error::InconsistentC { .. }
        )
    }
}
