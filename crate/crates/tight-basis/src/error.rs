use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex set covers every vertex; nothing remains")]
    EmptyRemainder,
    #[error("vertex set does not induce a dicut")]
    NotADicut,
    #[error("dicut is trivial")]
    TrivialDicut,
    #[error("family member crosses the contracted shore")]
    FamilyCrossing,
    #[error("family member {0:?} does not induce a dicut")]
    NonDicutMember(Vec<usize>),
    #[error("no tight dijoin exists")]
    Infeasible,
    #[error("crossing number {lambda} outside [{min}, {max}]")]
    OutOfRange { lambda: usize, min: usize, max: usize },
    #[error("pins leave no admissible set")]
    EmptyConstrainedLattice,
    #[error("digraft is not tight dijoin-covered")]
    NotCovered,
    #[error("dijoin does not cross the dicut exactly once")]
    CrossingNotOne,
    #[error("dijoins disagree on the dicut")]
    MismatchedCrossing,
    #[error("glued basis failed verification")]
    GlueVerificationFailed,
    #[error("digraft is not elementary")]
    NotElementary,
    #[error("digraft is not robust")]
    NotRobust,
    #[error("|S| != |T|")]
    Imbalanced,
    #[error("separating-to-contractible loop exceeded {0} steps")]
    LoopBoundExceeded(usize),
    #[error("good-dicut chain exceeded {0} steps")]
    ChainBoundExceeded(usize),
    #[error("digraft is not a brick")]
    NotBrick,
    #[error("dijoin crosses the dicut {0} times, expected 2")]
    BadCrossing(usize),
    #[error("graph is not 2-edge-connected")]
    NotTwoEdgeConnected,
    #[error("gcd condition fails")]
    GcdConditionFailed,
    #[error("instance has {size} elements, cap is {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("no tight orientation with the requested parity")]
    NoSolution,
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
