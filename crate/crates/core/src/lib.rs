//! Exact lattice arithmetic behind the numerical classification of
//! lagrangian planes on hyperkähler manifolds of generalised Kummer type.
//!
//! - [`lattice`]: integral lattices, Hermite/Smith normal forms, saturation,
//!   orthogonal complements and discriminant groups.
//! - [`mukai`]: the algebraic Mukai lattice of an abelian surface.
//! - [`ptype`]: rank-2 pointed sublattices and the P-type condition.
//! - [`moduli`]: line classes, the Mori-cone candidate scan and the
//!   Jordan–Hölder / ext¹ bookkeeping.
//!
//! Everything is arbitrary precision; there is no floating point anywhere.

pub mod error;
pub mod lattice;
pub mod moduli;
pub mod mukai;
pub mod ptype;

pub use error::{LatticeError, Result};
pub use lattice::{
    hermite_normal_form, integer_kernel, is_primitive, pair, saturate, smith_normal_form,
    DiscriminantGroup, IntMatrix, IntVector, IntegralLattice, RatVector, SnfResult, Sublattice,
};
pub use moduli::{
    classify_line_class, contraction_budget, jh_feasibility, line_class_from_wall_side,
    line_class_square, mori_candidates, theta_dual, LineClass, LineVerdict, MoriCandidate,
    PartitionReport, Projection, WallSide,
};
pub use mukai::{MukaiSetup, MukaiVector};
pub use ptype::{
    construct_p_type, enumerate_p_type, is_p_type, isotropic_classes, p_type_decomposition,
    IsotropicCensus, PTypeDecomposition, PointedSublattice,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
