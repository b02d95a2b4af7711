use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("bad reduction at p = {p}: {reason}")]
    BadReduction { p: u64, reason: String },

    /// A count or L-polynomial violated the Hasse-Weil bound. Always a bug
    /// upstream of the check, never a property of the curve.
    #[error("Weil bound violated at p = {p}: {detail}")]
    WeilViolation { p: u64, detail: String },

    #[error("unknown Sato-Tate group `{0}`")]
    UnknownGroup(String),

    #[error("genus mismatch: expected {expected}, found {found}")]
    GenusMismatch { expected: u8, found: u8 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("group closure exceeds {0} elements")]
    GroupTooLarge(usize),
}
