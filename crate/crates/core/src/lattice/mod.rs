//! Exact linear algebra over integral lattices.
//!
//! A lattice is `ℤ^rank` with an integer symmetric Gram matrix. Vectors are
//! coordinate tuples in that fixed basis and every computation is exact.

#![allow(clippy::needless_range_loop)]

mod matrix;
mod normal_form;
mod sublattice;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use matrix::{IntMatrix, IntVector, RatVector};
pub use normal_form::{hermite_normal_form, integer_kernel, smith_normal_form, SnfResult};
pub use sublattice::{saturate, Sublattice};

use crate::error::{LatticeError, Result};

/// `ℤ^rank` with a symmetric integer bilinear form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegralLattice {
    gram: IntMatrix,
}

impl IntegralLattice {
    /// Accepts any symmetric Gram matrix, degenerate ones included.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(LatticeError::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if gram.rows() == 0 {
            return Err(LatticeError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if let Some((row, col)) = gram.first_asymmetry() {
            return Err(LatticeError::NotSymmetric { row, col });
        }
        Ok(IntegralLattice { gram })
    }

    /// Like [`IntegralLattice::new`] but also rejects `det(gram) = 0`.
    pub fn nondegenerate(gram: IntMatrix) -> Result<Self> {
        let l = Self::new(gram)?;
        l.require_nondegenerate()?;
        Ok(l)
    }

    /// The hyperbolic plane U.
    pub fn hyperbolic_plane() -> Self {
        IntegralLattice {
            gram: IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
        }
    }

    /// Orthogonal sum of `k` copies of U.
    pub fn hyperbolic(k: usize) -> Self {
        let mut gram = IntMatrix::zeros(0, 0);
        for _ in 0..k {
            gram = gram.direct_sum(&Self::hyperbolic_plane().gram);
        }
        IntegralLattice { gram }
    }

    /// Rank-1 lattice ⟨d⟩.
    pub fn rank_one(d: BigInt) -> Self {
        IntegralLattice {
            gram: IntMatrix::diagonal(&[d]),
        }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let d: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
        IntegralLattice {
            gram: IntMatrix::diagonal(&d),
        }
    }

    pub fn direct_sum(&self, other: &IntegralLattice) -> IntegralLattice {
        IntegralLattice {
            gram: self.gram.direct_sum(&other.gram),
        }
    }

    /// U³ ⊕ ⟨−2n−2⟩, the second cohomology lattice of a Kummer-type manifold of dimension 2n.
    pub fn kummer_bbf(n: u64) -> Self {
        let d: BigInt = -(BigInt::from(n) * 2u32 + 2u32);
        Self::hyperbolic(3).direct_sum(&Self::rank_one(d))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant().expect("gram is square")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub(crate) fn require_nondegenerate(&self) -> Result<()> {
        if self.is_nondegenerate() {
            Ok(())
        } else {
            Err(LatticeError::Degenerate)
        }
    }

    /// True when every diagonal Gram entry is even, i.e. x² ∈ 2ℤ for all x.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len == self.rank() {
            Ok(())
        } else {
            Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                found: len,
            })
        }
    }

    /// xᵀ · gram · y.
    pub fn pair(&self, x: &IntVector, y: &IntVector) -> Result<BigInt> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        Ok(self.pair_unchecked(x, y))
    }

    pub(crate) fn pair_unchecked(&self, x: &IntVector, y: &IntVector) -> BigInt {
        let mut total = BigInt::zero();
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let row: BigInt = self
                .gram
                .row(i)
                .iter()
                .zip(&y.0)
                .map(|(g, yj)| g * yj)
                .sum();
            total += xi * row;
        }
        total
    }

    pub fn square(&self, x: &IntVector) -> Result<BigInt> {
        self.pair(x, x)
    }

    /// The bilinear form extended to rational vectors.
    pub fn pair_rational(&self, x: &RatVector, y: &RatVector) -> Result<BigRational> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let mut total = BigRational::zero();
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let mut row = BigRational::zero();
            for (g, yj) in self.gram.row(i).iter().zip(&y.0) {
                if !g.is_zero() {
                    row += yj * g;
                }
            }
            total += xi * row;
        }
        Ok(total)
    }

    /// The functional `e_i ↦ (x, e_i)`, i.e. `gram · x`.
    pub fn dual_image(&self, x: &IntVector) -> Result<IntVector> {
        self.gram.apply(x)
    }

    /// Signature `(positive, negative, zero)` by exact congruence diagonalization.
    pub fn signature(&self) -> (usize, usize, usize) {
        signature(&self.gram)
    }

    /// gcd of { (x, e_i) } over the basis, i.e. the positive generator of (x, L).
    pub fn divisibility(&self, x: &IntVector) -> Result<BigInt> {
        self.check_len(x.len())?;
        if x.is_zero() {
            return Err(LatticeError::ZeroVector);
        }
        self.require_nondegenerate()?;
        Ok(self.dual_image(x)?.content())
    }

    /// gcd of the coordinates is 1.
    pub fn is_primitive(&self, x: &IntVector) -> Result<bool> {
        self.check_len(x.len())?;
        is_primitive(x)
    }

    /// The saturated sublattice of vectors orthogonal to every basis row of `s`.
    pub fn orthogonal_complement(&self, s: &Sublattice) -> Result<Sublattice> {
        self.check_len(s.ambient_rank())?;
        self.require_nondegenerate()?;
        // Rows of B·G are the functionals x ↦ (b, x).
        let functionals = s.basis().mul(&self.gram)?;
        Sublattice::from_matrix(self.rank(), integer_kernel(&functionals))
    }

    /// Convenience: the orthogonal complement of a single vector.
    pub fn orthogonal_complement_of(&self, x: &IntVector) -> Result<Sublattice> {
        let s = Sublattice::new(self.rank(), std::slice::from_ref(x))?;
        self.orthogonal_complement(&s)
    }

    /// Λ*/Λ via the Smith normal form of the Gram matrix.
    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        self.require_nondegenerate()?;
        let snf = smith_normal_form(&self.gram);
        Ok(DiscriminantGroup::from_factors(snf.invariant_factors()))
    }

    /// Smallest k ≥ 1 with k·x ∈ L, for x in the dual lattice L* (given in
    /// rational coordinates with respect to the lattice basis).
    pub fn order_in_discriminant(&self, x: &RatVector) -> Result<BigInt> {
        self.check_len(x.len())?;
        self.require_nondegenerate()?;
        if !self.is_dual_element(x) {
            return Err(LatticeError::NotDualElement);
        }
        Ok(x.denominator_lcm())
    }

    /// True iff (x, e_i) ∈ ℤ for every basis vector e_i.
    pub fn is_dual_element(&self, x: &RatVector) -> bool {
        (0..self.rank()).all(|i| {
            let s: BigRational = self
                .gram
                .row(i)
                .iter()
                .zip(&x.0)
                .map(|(g, xi)| xi * g)
                .fold(BigRational::zero(), |acc, t| acc + t);
            s.is_integer()
        })
    }

    /// The lattice induced on a sublattice: gram `B · G · Bᵀ`.
    pub fn restrict(&self, s: &Sublattice) -> Result<IntegralLattice> {
        self.check_len(s.ambient_rank())?;
        let b = s.basis();
        let g = b.mul(&self.gram)?.mul(&b.transpose())?;
        IntegralLattice::new(g)
    }
}

/// Free (bare) pair on an explicit lattice, matching the operation table.
pub fn pair(l: &IntegralLattice, x: &IntVector, y: &IntVector) -> Result<BigInt> {
    l.pair(x, y)
}

/// gcd of coordinates is 1. The zero vector is rejected.
pub fn is_primitive(x: &IntVector) -> Result<bool> {
    if x.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(x.content().is_one())
}

/// The finite abelian group Λ*/Λ, recorded by its invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscriminantGroup {
    invariant_factors: Vec<BigInt>,
    order: BigInt,
}

impl DiscriminantGroup {
    fn from_factors(invariant_factors: Vec<BigInt>) -> Self {
        let order = invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d);
        DiscriminantGroup {
            invariant_factors,
            order,
        }
    }

    /// Factors > 1, each dividing the next.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }
}

fn signature(gram: &IntMatrix) -> (usize, usize, usize) {
    let n = gram.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            gram.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = ((k + 1)..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = ((k + 1)..n).find(|&j| !a[k][j].is_zero()) {
                // e_k ← e_k + e_j gives diagonal entry 2·a[k][j] ≠ 0.
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[k][c] += t;
                }
                for row in a.iter_mut() {
                    let t = row[j].clone();
                    row[k] += t;
                }
            } else {
                zero += 1;
                k += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in k..n {
                let t = &a[k][c] * &f;
                a[i][c] -= t;
            }
            for row in a.iter_mut() {
                let t = &row[k] * &f;
                row[i] -= t;
            }
        }
        k += 1;
    }
    (pos, neg, zero)
}
