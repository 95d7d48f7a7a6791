use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("order matrix is {rows}x{cols}, expected {size}x{size}")]
    BadMatrixShape {
        rows: usize,
        cols: usize,
        size: usize,
    },

    #[error("order is not reflexive at {0}")]
    NotReflexive(usize),

    #[error("order is not transitive: {0} <= {1} <= {2} but {0} !<= {2}")]
    NotTransitive(usize, usize, usize),

    #[error("map table has length {got}, domain has size {expected}")]
    BadTableLength { got: usize, expected: usize },

    #[error("map is not monotone: {0} <= {1} but images {2} !<= {3}")]
    NotMonotone(usize, usize, usize, usize),

    #[error("{0}: domain/codomain mismatch")]
    Mismatch(&'static str),

    #[error("relation is not an ideal: ({x}, {y}) present but weakened pair ({x2}, {y2}) missing")]
    NotIdeal {
        x: usize,
        y: usize,
        x2: usize,
        y2: usize,
    },

    #[error("relation is not an endo-relation")]
    NotEndo,

    #[error("relation is not a congruence")]
    NotCongruence,

    #[error("ideal pair is not an adjunction")]
    NotAdjunction,

    #[error("adjoint reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quantale axiom violated: {0}")]
    Quantale(String),

    #[error("V-category axiom violated: {0}")]
    VCat(String),

    #[error("V-functor axiom violated: {0}")]
    VFunctor(String),

    #[error("group axiom violated: {0}")]
    Group(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
