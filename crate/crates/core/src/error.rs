use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed structure-constant table: {0}")]
    InvalidTable(String),
    #[error("multiplication is not commutative: e{i}*e{j} != e{j}*e{i} at coordinate {l}")]
    NonCommutative { i: usize, j: usize, l: usize },
    #[error("multiplication is not associative: (e{i}*e{j})*e{m} != e{i}*(e{j}*e{m})")]
    NonAssociative { i: usize, j: usize, m: usize },
    #[error("basis element {unit} is not a unit: e{unit}*e{j} != e{j}")]
    NoUnit { unit: usize, j: usize },
    #[error("algebra is not local with residue field k: {0}")]
    NotLocal(String),
    #[error("algebra dimension {dim} exceeds the cap {cap}")]
    DimensionOverflow { dim: usize, cap: usize },
    #[error("modules or ideals live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("isomorphism test inconclusive: {0}")]
    Inconclusive(String),
    #[error("minor size {size} exceeds the cap {cap}")]
    MinorSizeOverflow { size: usize, cap: usize },
    #[error("algebra is not Gorenstein (socle dimension {socle_dim})")]
    NotGorenstein { socle_dim: usize },
    #[error("matrix is not an endomorphism of the module")]
    NotEndomorphism,
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("partitions live over different rings k[t]/(t^{0}) and k[t]/(t^{1})")]
    AmbientMismatch(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("poset size {size} exceeds the cap {cap}")]
    SizeOverflow { size: usize, cap: usize },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
}
