use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, LatticeError>;

/// Everything that can go wrong in the library. Every variant carries a stable
/// machine-readable code (see [`LatticeError::code`]) that the batch tool emits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("gram matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("lattice is degenerate (det = 0)")]
    Degenerate,

    #[error("zero vector is not allowed here")]
    ZeroVector,

    #[error("rows are linearly dependent over the rationals")]
    LinearlyDependent,

    #[error("not a dual-lattice element")]
    NotDualElement,

    #[error("vector is not in the lattice spanned by the basis")]
    NotInSpan,

    #[error("invalid Mukai setup: {0}")]
    InvalidSetup(String),

    #[error("empty moduli: expected dimension v^2 + 2 = {dimension} is negative")]
    EmptyModuli { dimension: BigInt },

    #[error("{what} is not primitive")]
    NotPrimitive { what: &'static str },

    #[error("{what} is not isotropic (square {square})")]
    NotIsotropic { what: &'static str, square: BigInt },

    #[error("v^2 = {square} is too small (need v^2 >= {minimum})")]
    SquareTooSmall { square: BigInt, minimum: i64 },

    #[error("wrong pairing: (a, v) = {found}, need v^2/2 = {expected}")]
    WrongPairing {
        expected: BigRational,
        found: BigInt,
    },

    #[error("totally isotropic plane: the induced form vanishes identically")]
    TotallyIsotropic,

    #[error("sublattice does not contain v")]
    NotPointed,

    #[error("sublattice has rank {0}, need 2")]
    NotRankTwo(usize),

    #[error("sublattice is not of P-type")]
    NotPType,

    #[error("partition does not sum to v")]
    PartitionSumMismatch,

    #[error("partition is empty")]
    EmptyPartition,

    #[error("invalid polarization proxy h: {0}")]
    InvalidPolarization(&'static str),

    #[error("search box has {points} points, limit is {limit}")]
    SearchBoxTooLarge { points: u128, limit: u128 },
}

impl LatticeError {
    pub fn code(&self) -> &'static str {
        match self {
            LatticeError::DimensionMismatch { .. } => "dimension_mismatch",
            LatticeError::NotSquare { .. } => "not_square",
            LatticeError::NotSymmetric { .. } => "not_symmetric",
            LatticeError::Degenerate => "degenerate_lattice",
            LatticeError::ZeroVector => "zero_vector",
            LatticeError::LinearlyDependent => "linearly_dependent",
            LatticeError::NotDualElement => "not_dual_element",
            LatticeError::NotInSpan => "not_in_span",
            LatticeError::InvalidSetup(_) => "invalid_setup",
            LatticeError::EmptyModuli { .. } => "empty_moduli",
            LatticeError::NotPrimitive { .. } => "not_primitive",
            LatticeError::NotIsotropic { .. } => "not_isotropic",
            LatticeError::SquareTooSmall { .. } => "square_too_small",
            LatticeError::WrongPairing { .. } => "wrong_pairing",
            LatticeError::TotallyIsotropic => "totally_isotropic",
            LatticeError::NotPointed => "not_pointed",
            LatticeError::NotRankTwo(_) => "not_rank_two",
            LatticeError::NotPType => "not_p_type",
            LatticeError::PartitionSumMismatch => "partition_sum_mismatch",
            LatticeError::EmptyPartition => "empty_partition",
            LatticeError::InvalidPolarization(_) => "invalid_polarization",
            LatticeError::SearchBoxTooLarge { .. } => "search_box_too_large",
        }
    }
}
