//! Numerics of line classes on Kummer-type moduli spaces.
//!
//! `H²(M, ℤ)` is modelled as `v⊥` inside the Mukai lattice and `H₂(M, ℤ)` as
//! its dual, so the dual Mukai homomorphism θ∨ is the orthogonal projection
//! `a ↦ a − ((a, v)/v²)·v`. A line in a lagrangian plane has class `R` with
//! `(R, R) = −(n+1)/2` and `2R ∈ H²`, where `2n = v² − 2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{LatticeError, Result};
use crate::lattice::{IntVector, IntegralLattice, RatVector, Sublattice};
use crate::ptype::{construct_p_type, p_type_decomposition, scan_box, PointedSublattice};

/// A rational class `R ∈ v⊥ ⊗ ℚ` with its square and its order in the
/// discriminant group of `v⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineClass {
    pub v: IntVector,
    pub r: RatVector,
    pub square: BigRational,
    pub disc_order: BigInt,
}

impl LineClass {
    /// 2R, when it is integral.
    pub fn doubled(&self) -> Option<IntVector> {
        self.r
            .scale(&BigRational::from_integer(2.into()))
            .to_integral()
    }

    pub fn neg(&self) -> LineClass {
        LineClass {
            v: self.v.clone(),
            r: self.r.neg(),
            square: self.square.clone(),
            disc_order: self.disc_order.clone(),
        }
    }
}

/// Precomputed `v⊥` for repeated projections against the same `v`.
pub struct Projection<'a> {
    ambient: &'a IntegralLattice,
    v: IntVector,
    v2: BigInt,
    perp: Sublattice,
    perp_lattice: IntegralLattice,
}

impl<'a> Projection<'a> {
    pub fn new(ambient: &'a IntegralLattice, v: &IntVector) -> Result<Self> {
        ambient.check_len(v.len())?;
        let v2 = ambient.pair_unchecked(v, v);
        if !v2.is_positive() {
            return Err(LatticeError::SquareTooSmall {
                square: v2,
                minimum: 1,
            });
        }
        let perp = ambient.orthogonal_complement_of(v)?;
        let perp_lattice = ambient.restrict(&perp)?;
        Ok(Projection {
            ambient,
            v: v.clone(),
            v2,
            perp,
            perp_lattice,
        })
    }

    /// The lattice `v⊥` (the model of `H²(M, ℤ)`).
    pub fn perp(&self) -> &Sublattice {
        &self.perp
    }

    pub fn perp_lattice(&self) -> &IntegralLattice {
        &self.perp_lattice
    }

    /// `a − ((a, v)/v²)·v`, exactly.
    pub fn project(&self, a: &IntVector) -> Result<RatVector> {
        self.ambient.check_len(a.len())?;
        let coeff = BigRational::new(self.ambient.pair_unchecked(a, &self.v), self.v2.clone());
        Ok(a.to_rational().sub(&self.v.to_rational().scale(&coeff)))
    }

    /// Builds the [`LineClass`] of an arbitrary rational vector of `v⊥ ⊗ ℚ`.
    pub fn line_class(&self, r: RatVector) -> Result<LineClass> {
        let coords = self.perp.coordinates(&r).ok_or(LatticeError::NotInSpan)?;
        let disc_order = self.perp_lattice.order_in_discriminant(&coords)?;
        let square = self.ambient.pair_rational(&r, &r)?;
        Ok(LineClass {
            v: self.v.clone(),
            r,
            square,
            disc_order,
        })
    }

    pub fn theta_dual(&self, a: &IntVector) -> Result<LineClass> {
        self.line_class(self.project(a)?)
    }
}

/// θ∨(a): the orthogonal projection of `a` onto `v⊥`.
pub fn theta_dual(ambient: &IntegralLattice, v: &IntVector, a: &IntVector) -> Result<LineClass> {
    Projection::new(ambient, v)?.theta_dual(a)
}

/// `a² − (a, v)²/v²`.
pub fn line_class_square(
    ambient: &IntegralLattice,
    v: &IntVector,
    a: &IntVector,
) -> Result<BigRational> {
    ambient.check_len(v.len())?;
    ambient.check_len(a.len())?;
    let v2 = ambient.pair_unchecked(v, v);
    if !v2.is_positive() {
        return Err(LatticeError::SquareTooSmall {
            square: v2,
            minimum: 1,
        });
    }
    let av = ambient.pair_unchecked(a, v);
    Ok(BigRational::from_integer(ambient.pair_unchecked(a, a)) - BigRational::new(&av * &av, v2))
}

/// Outcome of [`classify_line_class`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineVerdict {
    pub line_class: LineClass,
    /// `n = v²/2 − 1`, so the Kummer fibre has dimension `2n`.
    pub n: BigInt,
    /// `(R, R) = −(n+1)/2`.
    pub square_ok: bool,
    /// `2R` is integral, i.e. the discriminant order divides 2.
    pub torsion_ok: bool,
    /// `a² = 0` and `|(a, v)| = v²/2`.
    pub isotropic_witness_ok: bool,
    /// The P-type lattice rebuilt from `±a`, when the numeric checks pass.
    pub lattice: Option<PointedSublattice>,
    /// Why the lattice could not be rebuilt, if it could not.
    pub lattice_error: Option<LatticeError>,
}

impl LineVerdict {
    pub fn numeric_ok(&self) -> bool {
        self.square_ok && self.torsion_ok && self.isotropic_witness_ok
    }

    /// Every numeric check passed and a P-type lattice was recovered.
    pub fn is_lagrangian(&self) -> bool {
        self.numeric_ok() && self.lattice.is_some()
    }
}

fn require_kummer_v(ambient: &IntegralLattice, v: &IntVector) -> Result<BigInt> {
    ambient.check_len(v.len())?;
    if !v.content().is_one() {
        return Err(LatticeError::NotPrimitive { what: "v" });
    }
    let v2 = ambient.pair_unchecked(v, v);
    if v2 < BigInt::from(6) {
        return Err(LatticeError::SquareTooSmall {
            square: v2,
            minimum: 6,
        });
    }
    Ok(v2)
}

fn classify_with(proj: &Projection<'_>, v2: &BigInt, a: &IntVector) -> Result<LineVerdict> {
    let ambient = proj.ambient;
    let v = &proj.v;
    let line_class = proj.theta_dual(a)?;
    let n = v2 / 2 - 1;
    let target = -BigRational::new(&n + 1, BigInt::from(2));
    let square_ok = line_class.square == target;
    let torsion_ok = line_class.doubled().is_some();
    let av = ambient.pair_unchecked(a, v);
    let isotropic_witness_ok = ambient.pair_unchecked(a, a).is_zero() && &av.abs() * 2 == *v2;
    let (mut lattice, mut lattice_error) = (None, None);
    if square_ok && torsion_ok && isotropic_witness_ok {
        let signed = if av.is_negative() { a.neg() } else { a.clone() };
        match construct_p_type(ambient, v, &signed) {
            Ok(h) => lattice = Some(h),
            Err(e) => lattice_error = Some(e),
        }
    }
    Ok(LineVerdict {
        line_class,
        n,
        square_ok,
        torsion_ok,
        isotropic_witness_ok,
        lattice,
        lattice_error,
    })
}

/// Checks the line-class criterion for `R = θ∨(a)` and, when it holds,
/// rebuilds the P-type lattice `saturate(span{±a, v ∓ a})`.
///
/// Extremality in the Mori cone is not decided here; see [`mori_candidates`].
pub fn classify_line_class(
    ambient: &IntegralLattice,
    v: &IntVector,
    a: &IntVector,
) -> Result<LineVerdict> {
    let v2 = require_kummer_v(ambient, v)?;
    ambient.check_len(a.len())?;
    classify_with(&Projection::new(ambient, v)?, &v2, a)
}

/// One generator θ∨(a) of the Mori-cone description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoriCandidate {
    pub a: IntVector,
    pub line_class: LineClass,
    /// [`LineVerdict::is_lagrangian`] for this `a`.
    pub lagrangian: bool,
}

/// Integral `a` in the box with `a² ≥ 0`, `|(a, v)| ≤ v²/2` and `(θ∨(a), h) > 0`,
/// sorted by `a`. `h ∈ v⊥` with `h² > 0` stands in for the polarization.
///
/// Positive-cone generators are not produced.
pub fn mori_candidates(
    ambient: &IntegralLattice,
    v: &IntVector,
    h: &IntVector,
    bound: u32,
) -> Result<Vec<MoriCandidate>> {
    let v2 = require_kummer_v(ambient, v)?;
    ambient.check_len(h.len())?;
    if !ambient.pair_unchecked(h, v).is_zero() {
        return Err(LatticeError::InvalidPolarization(
            "h is not orthogonal to v",
        ));
    }
    if !ambient.pair_unchecked(h, h).is_positive() {
        return Err(LatticeError::InvalidPolarization("h^2 must be positive"));
    }
    let proj = Projection::new(ambient, v)?;
    let hits = scan_box(ambient.rank(), bound, |a| {
        if ambient.pair_unchecked(a, a).is_negative() || ambient.pair_unchecked(a, v).abs() * 2 > v2
        {
            return None;
        }
        // h ⊥ v, so (θ∨(a), h) = (a, h).
        if !ambient.pair_unchecked(a, h).is_positive() {
            return None;
        }
        classify_with(&proj, &v2, a).ok()
    })?;
    Ok(hits
        .into_iter()
        .map(|(a, verdict)| MoriCandidate {
            a,
            lagrangian: verdict.is_lagrangian(),
            line_class: verdict.line_class,
        })
        .collect())
}

/// Numerical bookkeeping for a partition `v = Σ aᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub parts: Vec<IntVector>,
    pub m: usize,
    /// Σ aᵢ².
    pub square_sum: BigInt,
    /// Σ aᵢ² + 2m ≤ v² + 2.
    pub jh_ok: bool,
    /// Σ ext¹(Aᵢ, Aᵢ) = Σ (aᵢ² + 2).
    pub ext1_total: BigInt,
    /// Σ ext¹(Aᵢ, Aᵢ) ≤ 4, the codimension of the Kummer fibre.
    pub ext1_budget_ok: bool,
    /// (a₁, a₂) = ext¹(A₁, A₂), two-part partitions only.
    pub ext1_cross: Option<BigInt>,
    /// n = (a₁, a₂) − 1, two-part partitions only.
    pub n: Option<BigInt>,
    /// 2n = v² − 2, two-part partitions only.
    pub dimension_identity_ok: Option<bool>,
}

/// Codimension of the Kummer fibre inside the moduli space.
pub const KUMMER_CODIMENSION: i64 = 4;

fn partition_report(
    ambient: &IntegralLattice,
    v: &IntVector,
    parts: &[IntVector],
) -> Result<PartitionReport> {
    ambient.check_len(v.len())?;
    if parts.is_empty() {
        return Err(LatticeError::EmptyPartition);
    }
    let mut sum = IntVector::zeros(ambient.rank());
    for p in parts {
        ambient.check_len(p.len())?;
        sum = sum.add(p);
    }
    if &sum != v {
        return Err(LatticeError::PartitionSumMismatch);
    }
    let m = parts.len();
    let v2 = ambient.pair_unchecked(v, v);
    let square_sum: BigInt = parts.iter().map(|p| ambient.pair_unchecked(p, p)).sum();
    let jh_ok = &square_sum + 2 * m <= &v2 + 2;
    let ext1_total = &square_sum + 2 * m;
    let ext1_budget_ok = ext1_total <= BigInt::from(KUMMER_CODIMENSION);
    let (ext1_cross, n, dimension_identity_ok) = if m == 2 {
        let cross = ambient.pair_unchecked(&parts[0], &parts[1]);
        let n = &cross - BigInt::one();
        let ok = &n * 2 == &v2 - 2;
        (Some(cross), Some(n), Some(ok))
    } else {
        (None, None, None)
    };
    Ok(PartitionReport {
        parts: parts.to_vec(),
        m,
        square_sum,
        jh_ok,
        ext1_total,
        ext1_budget_ok,
        ext1_cross,
        n,
        dimension_identity_ok,
    })
}

/// Dimension count for Jordan–Hölder factors: Σ aᵢ² + 2m ≤ v² + 2.
pub fn jh_feasibility(
    ambient: &IntegralLattice,
    v: &IntVector,
    parts: &[IntVector],
) -> Result<PartitionReport> {
    partition_report(ambient, v, parts)
}

/// The ext¹ budget of a contracted S-equivalence class, for primitive parts.
pub fn contraction_budget(
    ambient: &IntegralLattice,
    v: &IntVector,
    parts: &[IntVector],
) -> Result<PartitionReport> {
    let report = partition_report(ambient, v, parts)?;
    for p in parts {
        if p.is_zero() || !p.content().is_one() {
            return Err(LatticeError::NotPrimitive {
                what: "partition part",
            });
        }
    }
    Ok(report)
}

/// Which side of the wall W_H the line class is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WallSide {
    Plus,
    Minus,
}

/// θ∨(s) on the plus side, θ∨(t) = −θ∨(s) on the minus side, for `v = s + t`.
pub fn line_class_from_wall_side(h: &PointedSublattice, side: WallSide) -> Result<LineClass> {
    let d = p_type_decomposition(h)?;
    let proj = Projection::new(h.ambient(), h.v())?;
    match side {
        WallSide::Plus => proj.theta_dual(&d.s),
        WallSide::Minus => proj.theta_dual(&d.t),
    }
}
