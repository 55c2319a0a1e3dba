use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size {0} is outside the supported range {1}..={2}")]
    SizeOutOfRange(usize, usize, usize),
    #[error("initial lattice M_{j} needs 2 <= j <= {max}")]
    BadInitial { j: usize, max: usize },
    #[error("cover digraph has a cycle")]
    Cyclic,
    #[error("arc {0} -> {1} is implied by a longer path, so it is not a cover")]
    NotCoverRelation(usize, usize),
    #[error("poset has {tops} maximal and {bottoms} minimal elements")]
    NotBounded { tops: usize, bottoms: usize },
    #[error("arc {0} -> {1} references a vertex outside 0..{2}")]
    BadVertex(usize, usize, usize),
    #[error("malformed digraph6 record {record:?}: {reason}")]
    Digraph6 { record: String, reason: &'static str },
    #[error("duplicate record {0:?}")]
    DuplicateRecord(String),
    #[error("vertical-indecomposable count missing for n = {0}")]
    MissingCount(usize),
    #[error("count overflow at n = {0}")]
    Overflow(usize),
    #[error("oracle supports n <= {max}, got {n}")]
    OracleTooLarge { n: usize, max: usize },
    #[error("empty group: {0}")]
    Empty(&'static str),
    #[error("conflicting options: {0}")]
    Conflict(&'static str),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
