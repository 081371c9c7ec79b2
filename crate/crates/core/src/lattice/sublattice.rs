use num_bigint::BigInt;
use num_traits::One;

use super::matrix::{rational_coordinates, IntMatrix, IntVector, RatVector};
use super::normal_form::{hermite_normal_form, smith_normal_form};
use crate::error::{LatticeError, Result};

/// A sublattice of `ℤ^n` given by linearly independent integer rows.
///
/// The stored basis is always in row Hermite normal form, so two sublattices
/// are equal exactly when their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Sublattice {
    pub fn new(ambient_rank: usize, rows: &[IntVector]) -> Result<Self> {
        Self::from_matrix(ambient_rank, IntMatrix::from_vectors(rows, ambient_rank)?)
    }

    pub fn from_matrix(ambient_rank: usize, rows: IntMatrix) -> Result<Self> {
        if rows.rows() > 0 && rows.cols() != ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: ambient_rank,
                found: rows.cols(),
            });
        }
        if rows.rows() > ambient_rank {
            return Err(LatticeError::LinearlyDependent);
        }
        let basis = if rows.rows() == 0 {
            IntMatrix::zeros(0, ambient_rank)
        } else {
            hermite_normal_form(&rows)
        };
        if basis.rows() != rows.rows() {
            return Err(LatticeError::LinearlyDependent);
        }
        Ok(Sublattice {
            ambient_rank,
            basis,
        })
    }

    /// The whole ambient lattice.
    pub fn full(ambient_rank: usize) -> Self {
        Sublattice {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Hermite-normalized basis rows.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<IntVector> {
        self.basis.row_vectors()
    }

    /// Coefficients of x with respect to the basis rows, if x is in the rational span.
    pub fn coordinates(&self, x: &RatVector) -> Option<RatVector> {
        if x.len() != self.ambient_rank {
            return None;
        }
        rational_coordinates(&self.basis, x)
    }

    /// Integer coefficients of x, if x lies in the sublattice itself.
    pub fn integer_coordinates(&self, x: &IntVector) -> Option<IntVector> {
        self.coordinates(&x.to_rational())?.to_integral()
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.integer_coordinates(x).is_some()
    }

    /// Maps sublattice coordinates back to ambient coordinates.
    pub fn to_ambient(&self, coeffs: &IntVector) -> IntVector {
        let mut out = IntVector::zeros(self.ambient_rank);
        for (i, c) in coeffs.0.iter().enumerate() {
            out = out.add(&self.basis.row_vector(i).scale(c));
        }
        out
    }

    /// (S ⊗ ℚ) ∩ ℤ^n.
    pub fn saturate(&self) -> Sublattice {
        let k = self.rank();
        if k == 0 {
            return self.clone();
        }
        // B = U⁻¹ D V⁻¹ and the first k rows of V⁻¹ span the rational row space.
        let snf = smith_normal_form(&self.basis);
        let rows: Vec<IntVector> = (0..k).map(|i| snf.v_inverse().row_vector(i)).collect();
        Sublattice::new(self.ambient_rank, &rows)
            .expect("rows of a unimodular matrix are independent")
    }

    /// [saturate(S) : S], the product of the invariant factors of the basis.
    pub fn saturation_index(&self) -> BigInt {
        smith_normal_form(&self.basis)
            .diagonal()
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation_index().is_one()
    }

    /// True when every basis row of `other` lies in `self`.
    pub fn contains_sublattice(&self, other: &Sublattice) -> bool {
        other.basis_vectors().iter().all(|b| self.contains(b))
    }
}

/// Free-function form of [`Sublattice::saturate`].
pub fn saturate(s: &Sublattice) -> Sublattice {
    s.saturate()
}
