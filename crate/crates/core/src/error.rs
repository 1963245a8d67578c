use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cap `{cap}` exceeded (limit {limit})")]
    CapExceeded { cap: &'static str, limit: usize },
    #[error("braid index {index} out of range for a tuple of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("tuple is not product-one")]
    NotProductOne,
    #[error("element {0} is not in the class set c")]
    EntryOutsideC(String),
    #[error("element {0} is not in the group H")]
    HNotContaining(String),
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("residues {0:?} do not form a subgroup of the units")]
    NotAUnitSubgroup(Vec<u64>),
    #[error("{k} is not a unit modulo {modulus}")]
    NotAUnit { k: u64, modulus: u64 },
    #[error("power {k} of {element} leaves the class set c")]
    PowerLeavesC { element: String, k: u64 },
    #[error("monodromy group is not abelian")]
    NotAbelian,
    #[error("class set does not generate the group")]
    CDoesNotGenerate,
    #[error("class set is not closed under conjugation")]
    CNotConjugationClosed,
    #[error("coset enumeration did not close within {0} cosets")]
    CosetLimitExceeded(usize),
    #[error("invariants belong to different covers")]
    CoverMismatch,
    #[error("group order overflows 128 bits")]
    OrderOverflow,
}

impl Error {
    /// True for errors caused by a resource limit rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::CosetLimitExceeded(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
