use alloc::boxed::Box;
use alloc::string::String;

use crate::coalition::Coalition;
use crate::constructions::ConcavityWitness;
use crate::model::ValidationError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("coalition must be nonempty")]
    EmptyCoalition,
    #[error("coalition {coalition:?} references players outside 1..={players}")]
    CoalitionOutOfRange { coalition: Coalition, players: usize },
    #[error("{players} players exceeds the cap of {cap}")]
    TooManyPlayers { players: usize, cap: usize },
    #[error(
        "instance too large for enumeration: {units} demand units over {periods} periods \
         (limits {max_units} units, {max_periods} periods)"
    )]
    OracleTooLarge {
        units: u64,
        periods: usize,
        max_units: u64,
        max_periods: usize,
    },
    #[error("player sets differ: {left:?} vs {right:?}")]
    PlayerMismatch {
        left: alloc::vec::Vec<String>,
        right: alloc::vec::Vec<String>,
    },
    #[error("allocation has {found} entries, expected {expected}")]
    AllocationLength { expected: usize, found: usize },
    #[error("game table has {found} entries, expected {expected}")]
    IncompleteGame { expected: usize, found: usize },
    #[error("game is not simple: c({coalition:?}) is neither 0 nor 1")]
    NotSimple { coalition: Coalition },
    #[error("game is not 0-monotone: normalized value rises from {smaller:?} to {larger:?}")]
    NotZeroMonotone { smaller: Coalition, larger: Coalition },
    #[error("game has no veto player")]
    NoVetoPlayer,
    #[error("game is not concave: {0}")]
    NotConcave(Box<ConcavityWitness>),
    #[error("game has a negative value at {coalition:?}")]
    NegativeValue { coalition: Coalition },
    #[error("relabeling is not a bijection: {reason}")]
    InvalidRelabeling { reason: &'static str },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
