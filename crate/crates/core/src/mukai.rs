//! The algebraic Mukai lattice `H⁰ ⊕ NS ⊕ H⁴` of an abelian surface.
//!
//! Coordinates are `(r, c, s)` with `c` in a fixed Néron–Severi basis. The
//! pairing is `(v, w) = c·c′ − r·s′ − s·r′`, so the ambient Gram matrix is
//! `[[0, 0, −1], [0, NS, 0], [−1, 0, 0]]`. For abelian surfaces `√Td = 1` and
//! the Mukai vector of a sheaf is simply `(rank, c₁, ch₂)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{LatticeError, Result};
use crate::lattice::{IntMatrix, IntVector, IntegralLattice};

/// A vector `(r, c, s)` of the algebraic Mukai lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MukaiVector {
    pub r: BigInt,
    pub c: Vec<BigInt>,
    pub s: BigInt,
}

impl MukaiVector {
    pub fn new(r: BigInt, c: Vec<BigInt>, s: BigInt) -> Self {
        MukaiVector { r, c, s }
    }

    pub fn from_i64(r: i64, c: &[i64], s: i64) -> Self {
        MukaiVector {
            r: r.into(),
            c: c.iter().map(|&x| x.into()).collect(),
            s: s.into(),
        }
    }

    /// Ambient coordinates `(r, c₁, …, c_ρ, s)`.
    pub fn to_vector(&self) -> IntVector {
        let mut coords = Vec::with_capacity(self.c.len() + 2);
        coords.push(self.r.clone());
        coords.extend(self.c.iter().cloned());
        coords.push(self.s.clone());
        IntVector(coords)
    }

    /// Inverse of [`MukaiVector::to_vector`]; needs at least two coordinates.
    pub fn from_vector(x: &IntVector) -> Result<Self> {
        let n = x.len();
        if n < 3 {
            return Err(LatticeError::DimensionMismatch {
                expected: 3,
                found: n,
            });
        }
        Ok(MukaiVector {
            r: x.0[0].clone(),
            c: x.0[1..n - 1].to_vec(),
            s: x.0[n - 1].clone(),
        })
    }
}

impl From<&MukaiVector> for IntVector {
    fn from(v: &MukaiVector) -> Self {
        v.to_vector()
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_vector())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum SetupKind {
    /// NS of signature (1, ρ−1): an honest algebraic Mukai lattice.
    Algebraic,
    /// NS = U³: the full lattice H*(A, ℤ) ≅ U⁴.
    Full,
}

/// A Néron–Severi lattice together with the Mukai lattice built on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MukaiSetup {
    ns_gram: IntMatrix,
    ambient: IntegralLattice,
    kind: SetupKind,
}

impl MukaiSetup {
    /// Validates that `ns_gram` is symmetric, even and of signature (1, ρ−1).
    pub fn new(ns_gram: IntMatrix) -> Result<Self> {
        let ns = IntegralLattice::new(ns_gram.clone())?;
        if !ns.is_even() {
            return Err(LatticeError::InvalidSetup(
                "Néron–Severi lattice is not even".into(),
            ));
        }
        let rho = ns.rank();
        let sig = ns.signature();
        if sig != (1, rho - 1, 0) {
            return Err(LatticeError::InvalidSetup(format!(
                "Néron–Severi signature must be (1, {}), found ({}, {}) with {} null directions",
                rho - 1,
                sig.0,
                sig.1,
                sig.2
            )));
        }
        Ok(Self::build(ns_gram, SetupKind::Algebraic))
    }

    /// NS = ⟨2d⟩, given `two_d` = 2d > 0.
    pub fn ns_rank_one(two_d: BigInt) -> Result<Self> {
        if !two_d.is_positive() {
            return Err(LatticeError::InvalidSetup(
                "polarization square must be positive".into(),
            ));
        }
        Self::new(IntMatrix::diagonal(&[two_d]))
    }

    /// The full Mukai lattice U⁴, with U³ in the middle slot.
    pub fn kummer_mukai() -> Self {
        Self::build(
            IntegralLattice::hyperbolic(3).gram().clone(),
            SetupKind::Full,
        )
    }

    fn build(ns_gram: IntMatrix, kind: SetupKind) -> Self {
        let rho = ns_gram.rows();
        let n = rho + 2;
        let mut gram = IntMatrix::zeros(n, n);
        gram[(0, n - 1)] = -BigInt::one();
        gram[(n - 1, 0)] = -BigInt::one();
        for i in 0..rho {
            for j in 0..rho {
                gram[(i + 1, j + 1)] = ns_gram[(i, j)].clone();
            }
        }
        let ambient = IntegralLattice::new(gram).expect("block gram is symmetric");
        MukaiSetup {
            ns_gram,
            ambient,
            kind,
        }
    }

    /// ρ, the Picard rank (6 for the full preset).
    pub fn rho(&self) -> usize {
        self.ns_gram.rows()
    }

    pub fn ns_gram(&self) -> &IntMatrix {
        &self.ns_gram
    }

    pub fn ambient(&self) -> &IntegralLattice {
        &self.ambient
    }

    pub fn is_full_lattice(&self) -> bool {
        self.kind == SetupKind::Full
    }

    fn check(&self, v: &MukaiVector) -> Result<()> {
        if v.c.len() == self.rho() {
            Ok(())
        } else {
            Err(LatticeError::DimensionMismatch {
                expected: self.rho(),
                found: v.c.len(),
            })
        }
    }

    /// Reads ambient coordinates back into a Mukai vector for this setup.
    pub fn vector(&self, x: &IntVector) -> Result<MukaiVector> {
        self.ambient.check_len(x.len())?;
        MukaiVector::from_vector(x)
    }

    /// c·c′ − r·s′ − s·r′.
    pub fn mukai_pair(&self, v: &MukaiVector, w: &MukaiVector) -> Result<BigInt> {
        self.check(v)?;
        self.check(w)?;
        let mut cc = BigInt::default();
        for i in 0..self.rho() {
            for j in 0..self.rho() {
                cc += &v.c[i] * &self.ns_gram[(i, j)] * &w.c[j];
            }
        }
        Ok(cc - &v.r * &w.s - &v.s * &w.r)
    }

    pub fn square(&self, v: &MukaiVector) -> Result<BigInt> {
        self.mukai_pair(v, v)
    }

    /// χ(E, F) = −(v(E), v(F)).
    pub fn euler_pairing(&self, v: &MukaiVector, w: &MukaiVector) -> Result<BigInt> {
        Ok(-self.mukai_pair(v, w)?)
    }

    /// `v(E) = ch(E)·√Td(S)`; on an abelian surface this is `(rank, c₁, ch₂)` verbatim.
    pub fn mukai_vector_from_chern(
        &self,
        rank: BigInt,
        c1: Vec<BigInt>,
        ch2: BigInt,
    ) -> Result<MukaiVector> {
        let v = MukaiVector {
            r: rank,
            c: c1,
            s: ch2,
        };
        self.check(&v)?;
        Ok(v)
    }

    /// v² + 2, the dimension of the moduli space of stable objects with vector v.
    pub fn moduli_dimension(&self, v: &MukaiVector) -> Result<BigInt> {
        let dimension: BigInt = self.square(v)? + 2u32;
        if dimension.is_negative() {
            return Err(LatticeError::EmptyModuli { dimension });
        }
        Ok(dimension)
    }

    /// v² − 2 = 2n, the dimension of the Albanese fibre (a generalised Kummer).
    pub fn kummer_dimension(&self, v: &MukaiVector) -> Result<BigInt> {
        let v2 = self.square(v)?;
        if !v.to_vector().content().is_one() {
            return Err(LatticeError::NotPrimitive {
                what: "Mukai vector v",
            });
        }
        if v2 < BigInt::from(6) {
            return Err(LatticeError::SquareTooSmall {
                square: v2,
                minimum: 6,
            });
        }
        Ok(v2 - 2)
    }

    /// n with dim K = 2n, i.e. n = v²/2 − 1.
    pub fn kummer_n(&self, v: &MukaiVector) -> Result<BigInt> {
        let (n, rem) = self.kummer_dimension(v)?.div_rem(&BigInt::from(2));
        debug_assert!(rem == BigInt::default(), "Mukai lattice is even");
        Ok(n)
    }
}
