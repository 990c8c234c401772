//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Graph file does not parse.
    MalformedFile(String),
    /// A color class is not a valid matching (repeated node, missing node,
    /// self-pair, or out-of-range id).
    InvalidMatching(String),
    /// Node count is odd.
    OddNodeCount(usize),
    /// Operation requires a closed (vacuum) graph but external legs are present.
    OpenGraph,
    /// Bubble operations require a connected bubble.
    DisconnectedBubble,
    /// A melon handed to `contract_melon` is no longer present in the graph.
    StaleMelon,
    /// Reduction only supports tetrahedron and pillow bubbles.
    UnsupportedBubble(String),
    /// Enumeration request exceeds the configured budget.
    BudgetExceeded(String),
    /// The two degree formulas disagree. Indicates an implementation bug.
    InternalInconsistency(String),
    /// The cubic has no sign change on the expected bracket.
    NoBracket(String),
    /// Exponent fits need positive coefficients.
    NonPositiveInput,
    /// Exponent fits need a minimum number of consecutive coefficients.
    InsufficientData(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedFile(m) => write!(f, "malformed graph file: {m}"),
            Error::InvalidMatching(m) => write!(f, "invalid matching: {m}"),
            Error::OddNodeCount(n) => write!(f, "odd node count: {n}"),
            Error::OpenGraph => write!(f, "operation requires a closed graph"),
            Error::DisconnectedBubble => write!(f, "bubble is not connected"),
            Error::StaleMelon => write!(f, "melon is no longer present in the graph"),
            Error::UnsupportedBubble(m) => write!(f, "unsupported bubble: {m}"),
            Error::BudgetExceeded(m) => write!(f, "budget exceeded: {m}"),
            Error::InternalInconsistency(m) => write!(f, "internal inconsistency: {m}"),
            Error::NoBracket(m) => write!(f, "no bracket: {m}"),
            Error::NonPositiveInput => write!(f, "coefficients must be strictly positive"),
            Error::InsufficientData(n) => {
                write!(f, "need at least {n} consecutive coefficients")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
