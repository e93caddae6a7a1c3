use thiserror::Error;

use crate::game::{FormationRule, Link};

/// Errors raised by the analysis library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("player {player} is outside 1..={n}")]
    PlayerOutOfRange { player: u32, n: usize },

    #[error("a link needs two distinct endpoints, got {0} twice")]
    SelfLink(u32),

    #[error("need at least {min} players, got {n}")]
    TooFewPlayers { n: usize, min: usize },

    #[error("player counts disagree: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("link cost must be positive, got {0}")]
    NonPositiveAlpha(String),

    #[error("graph is disconnected; bridge structure is undefined")]
    Disconnected,

    #[error("link {0} is not present in the graph")]
    MissingLink(Link),

    #[error("graph has no links")]
    NoLinks,

    #[error("invalid link distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid bridge-tree path: {0}")]
    InvalidPath(String),

    #[error("n = {n} exceeds the cap of {cap} for {what}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("this operation requires {expected} link formation")]
    WrongRule { expected: FormationRule },

    #[error("invalid fixture: {0}")]
    InvalidFixture(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
