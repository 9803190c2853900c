use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Syntax error in a text form, with a byte position into the input.
    Parse { pos: usize, msg: String },
    /// A label that is not part of the session alphabet.
    UnknownLabel(String),
    /// A label occurring twice in an alphabet declaration.
    DuplicateLabel(String),
    /// A label violating the `[A-Za-z][A-Za-z0-9_]*` shape.
    BadLabel(String),
    /// Grafting map length does not match the number of root branches.
    ArityMismatch { expected: usize, got: usize },
    /// A vertex address that does not resolve in the receiving tree.
    InvalidAddress(String),
    /// A degree-0 tree used as a star-product operand in strict mode.
    DegreeZeroOperand,
    /// An expression leaf with no assigned generator tree.
    UnassignedLabel(String),
    /// Input expected to be homogeneous of a single positive degree.
    NotHomogeneous,
    /// The right-hand side lies outside the row span.
    NoSolution,
    /// An evaluation block was singular or inconsistent; this would
    /// contradict the freeness of the tree algebra, so callers must abort.
    SolveFailure(String),
    /// The step budget of the generation recursion ran out.
    FuelExhausted,
    /// A Laurent polynomial that is not a valid SL2 character.
    NotACharacter(String),
    /// An expression that is not a normal-form monomial.
    NotNormalForm(String),
    /// An index outside its documented range.
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            Error::UnknownLabel(l) => write!(f, "unknown label `{l}`"),
            Error::DuplicateLabel(l) => write!(f, "duplicate label `{l}`"),
            Error::BadLabel(l) => write!(f, "malformed label `{l}`"),
            Error::ArityMismatch { expected, got } => {
                write!(f, "grafting map has {got} targets, tree has {expected} root branches")
            }
            Error::InvalidAddress(a) => write!(f, "vertex address {a} not present in tree"),
            Error::DegreeZeroOperand => {
                write!(f, "degree-0 tree is not a valid star-product operand in strict mode")
            }
            Error::UnassignedLabel(l) => write!(f, "no generator tree assigned to label `{l}`"),
            Error::NotHomogeneous => write!(f, "input must be homogeneous of degree >= 1"),
            Error::NoSolution => write!(f, "no solution: right-hand side outside row span"),
            Error::SolveFailure(d) => write!(f, "evaluation block solve failed: {d}"),
            Error::FuelExhausted => write!(f, "fuel exhausted before the decomposition closed"),
            Error::NotACharacter(r) => write!(f, "not an SL2 character: {r}"),
            Error::NotNormalForm(e) => write!(f, "expression is not in normal form: {e}"),
            Error::OutOfRange(m) => write!(f, "argument out of range: {m}"),
        }
    }
}

impl std::error::Error for Error {}
