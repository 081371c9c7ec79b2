//! Rank-2 pointed sublattices and the P-type condition.
//!
//! A rank-2 saturated sublattice `H` containing `v` is of P-type when the
//! smallest `|(a, v)|` over primitive isotropic `a ∈ H` equals `v²/2`. Such an
//! `H` splits as `v = s + t` with `s`, `t` primitive isotropic and
//! `(s, v) = (t, v) = v²/2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{LatticeError, Result};
use crate::lattice::{IntMatrix, IntVector, IntegralLattice, Sublattice};

/// A rank-2 saturated sublattice of an ambient lattice, together with a
/// distinguished vector `v` lying in it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointedSublattice {
    ambient: IntegralLattice,
    v: IntVector,
    sublattice: Sublattice,
    gram2: IntMatrix,
}

impl PointedSublattice {
    /// Saturates the span of `rows`, which must have rank 2 and contain `v`.
    pub fn new(ambient: &IntegralLattice, v: &IntVector, rows: &[IntVector]) -> Result<Self> {
        ambient.check_len(v.len())?;
        for r in rows {
            ambient.check_len(r.len())?;
        }
        let span = Sublattice::new(ambient.rank(), rows)?;
        if span.rank() != 2 {
            return Err(LatticeError::NotRankTwo(span.rank()));
        }
        let sublattice = span.saturate();
        if !sublattice.contains(v) {
            return Err(LatticeError::NotPointed);
        }
        let gram2 = ambient.restrict(&sublattice)?.gram().clone();
        Ok(PointedSublattice {
            ambient: ambient.clone(),
            v: v.clone(),
            sublattice,
            gram2,
        })
    }

    /// The saturation of span{v, w}.
    pub fn spanned_by(ambient: &IntegralLattice, v: &IntVector, w: &IntVector) -> Result<Self> {
        Self::new(ambient, v, &[v.clone(), w.clone()])
    }

    pub fn ambient(&self) -> &IntegralLattice {
        &self.ambient
    }

    pub fn v(&self) -> &IntVector {
        &self.v
    }

    pub fn sublattice(&self) -> &Sublattice {
        &self.sublattice
    }

    /// Hermite-normalized 2 × rank basis.
    pub fn basis(&self) -> &IntMatrix {
        self.sublattice.basis()
    }

    /// Induced 2 × 2 Gram matrix `B · G · Bᵀ`.
    pub fn gram2(&self) -> &IntMatrix {
        &self.gram2
    }

    pub fn v_square(&self) -> BigInt {
        self.ambient.pair_unchecked(&self.v, &self.v)
    }
}

/// The primitive isotropic classes of a rank-2 lattice, one per isotropic
/// line, each sign-normalized (first nonzero ambient coordinate positive)
/// and sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsotropicCensus {
    classes: Vec<IntVector>,
    local: Vec<IntVector>,
}

impl IsotropicCensus {
    /// Classes in ambient coordinates.
    pub fn classes(&self) -> &[IntVector] {
        &self.classes
    }

    /// The same classes in coordinates of the sublattice basis.
    pub fn sublattice_coordinates(&self) -> &[IntVector] {
        &self.local
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// `v = s + t` with `s`, `t` primitive isotropic and `(s, v) = (t, v) = v²/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PTypeDecomposition {
    pub s: IntVector,
    pub t: IntVector,
}

impl PTypeDecomposition {
    /// Gram matrix in the basis (s, t): `[[0, (s,t)], [(s,t), 0]]`.
    pub fn gram(&self, ambient: &IntegralLattice) -> IntMatrix {
        let basis = IntMatrix::from_vectors(&[self.s.clone(), self.t.clone()], ambient.rank())
            .expect("decomposition vectors live in the ambient");
        basis
            .mul(ambient.gram())
            .and_then(|bg| bg.mul(&basis.transpose()))
            .expect("shapes agree")
    }

    /// (s, t) = n + 1 where 2n = v² − 2.
    pub fn cross_pairing(&self, ambient: &IntegralLattice) -> BigInt {
        ambient.pair_unchecked(&self.s, &self.t)
    }
}

/// Isotropic directions of `αx² + 2βxy + γy²`, as primitive integer pairs.
fn isotropic_directions(alpha: &BigInt, beta: &BigInt, gamma: &BigInt) -> Result<Vec<IntVector>> {
    if alpha.is_zero() && beta.is_zero() && gamma.is_zero() {
        return Err(LatticeError::TotallyIsotropic);
    }
    let mut dirs: Vec<IntVector> = Vec::new();
    if alpha.is_zero() {
        // y·(2βx + γy) = 0
        dirs.push(IntVector(vec![BigInt::one(), BigInt::zero()]));
        if !beta.is_zero() {
            dirs.push(IntVector(vec![-gamma, beta * 2]));
        }
    } else {
        let disc = beta * beta - alpha * gamma;
        if disc.is_negative() {
            return Ok(Vec::new());
        }
        let root = disc.sqrt();
        if &root * &root != disc {
            return Ok(Vec::new());
        }
        dirs.push(IntVector(vec![-beta + &root, alpha.clone()]));
        if !root.is_zero() {
            dirs.push(IntVector(vec![-beta - &root, alpha.clone()]));
        }
    }
    Ok(dirs.into_iter().map(|d| d.primitive_part()).collect())
}

/// Primitive isotropic classes of `H` by the closed form: a rational isotropic
/// line exists iff `β² − αγ` is a perfect square, and there are at most two.
pub fn isotropic_classes(h: &PointedSublattice) -> Result<IsotropicCensus> {
    let g = h.gram2();
    let dirs = isotropic_directions(&g[(0, 0)], &g[(0, 1)], &g[(1, 1)])?;
    let mut pairs: Vec<(IntVector, IntVector)> = dirs
        .into_iter()
        .map(|local| {
            let ambient = h.sublattice.to_ambient(&local);
            let canonical = ambient.sign_normalized();
            let local = if canonical == ambient {
                local
            } else {
                local.neg()
            };
            (canonical, local)
        })
        .collect();
    pairs.sort();
    pairs.dedup_by(|a, b| a.0 == b.0);
    let (classes, local) = pairs.into_iter().unzip();
    Ok(IsotropicCensus { classes, local })
}

fn require_positive_primitive_v(h: &PointedSublattice) -> Result<BigInt> {
    let v2 = h.v_square();
    if !v2.is_positive() {
        return Err(LatticeError::SquareTooSmall {
            square: v2,
            minimum: 1,
        });
    }
    if !h.v.content().is_one() {
        return Err(LatticeError::NotPrimitive { what: "v" });
    }
    Ok(v2)
}

/// `v²/2 = min |(a, v)|` over the census; an empty census is never P-type.
pub fn is_p_type(h: &PointedSublattice) -> Result<bool> {
    let v2 = require_positive_primitive_v(h)?;
    let census = isotropic_classes(h)?;
    let min = census
        .classes()
        .iter()
        .map(|a| h.ambient.pair_unchecked(a, &h.v).abs())
        .min();
    Ok(min.is_some_and(|m| m * 2u32 == v2))
}

/// Splits `v = s + t` for a P-type `H`.
///
/// `s` is taken from the census: classes whose normalized sign already pairs
/// positively with `v` come first, ties are broken lexicographically, and the
/// chosen class is then signed so that `(s, v) > 0`.
pub fn p_type_decomposition(h: &PointedSublattice) -> Result<PTypeDecomposition> {
    if !is_p_type(h)? {
        return Err(LatticeError::NotPType);
    }
    let v2 = h.v_square();
    let census = isotropic_classes(h)?;
    let mut candidates: Vec<(bool, IntVector)> = census
        .classes()
        .iter()
        .filter_map(|a| {
            let p = h.ambient.pair_unchecked(a, &h.v);
            (p.abs() * 2 == v2).then(|| {
                let flipped = p.is_negative();
                (flipped, if flipped { a.neg() } else { a.clone() })
            })
        })
        .collect();
    candidates.sort();
    let s = candidates.swap_remove(0).1;
    let t = h.v.sub(&s);
    Ok(PTypeDecomposition { s, t })
}

/// The saturation of span{a, v − a}, checked to be of P-type by construction.
pub fn construct_p_type(
    ambient: &IntegralLattice,
    v: &IntVector,
    a: &IntVector,
) -> Result<PointedSublattice> {
    ambient.check_len(v.len())?;
    ambient.check_len(a.len())?;
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
    if !a.content().is_one() {
        return Err(LatticeError::NotPrimitive { what: "a" });
    }
    let a2 = ambient.pair_unchecked(a, a);
    if !a2.is_zero() {
        return Err(LatticeError::NotIsotropic {
            what: "a",
            square: a2,
        });
    }
    let av = ambient.pair_unchecked(a, v);
    if &av * 2 != v2 {
        return Err(LatticeError::WrongPairing {
            expected: half(&v2),
            found: av,
        });
    }
    let t = v.sub(a);
    // An imprimitive complement t = m·t̂ would put (t̂, v) = v²/(2m) below the minimum.
    if !t.content().is_one() {
        return Err(LatticeError::NotPrimitive { what: "v - a" });
    }
    PointedSublattice::new(ambient, v, &[a.clone(), t])
}

pub(crate) fn half(x: &BigInt) -> num_rational::BigRational {
    num_rational::BigRational::new(x.clone(), BigInt::from(2))
}

/// Largest coordinate box the enumerations will walk.
pub const MAX_BOX_POINTS: u128 = 50_000_000;

/// Iterates the integer box `[−bound, bound]^rank` in parallel. Hits come
/// back sorted by the box vector, independent of scheduling.
pub(crate) fn scan_box<T, F>(rank: usize, bound: u32, f: F) -> Result<Vec<(IntVector, T)>>
where
    T: Send,
    F: Fn(&IntVector) -> Option<T> + Sync,
{
    if bound == 0 {
        return Ok(Vec::new());
    }
    let side = 2 * bound as u64 + 1;
    let points = (side as u128).checked_pow(rank as u32).unwrap_or(u128::MAX);
    if points > MAX_BOX_POINTS {
        return Err(LatticeError::SearchBoxTooLarge {
            points,
            limit: MAX_BOX_POINTS,
        });
    }
    let total = points as u64;
    let mut hits: Vec<(IntVector, T)> = (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut coords = vec![BigInt::zero(); rank];
            for slot in coords.iter_mut().rev() {
                let (q, r) = idx.div_rem(&side);
                *slot = BigInt::from(r as i64 - bound as i64);
                idx = q;
            }
            let x = IntVector(coords);
            f(&x).map(|t| (x, t))
        })
        .collect();
    hits.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(hits)
}

/// All P-type lattices `saturate(span{a, v − a})` for primitive isotropic `a`
/// in the coordinate box `[−bound, bound]^rank` with `(a, v) = v²/2`.
///
/// The result is deduplicated on the Hermite basis and sorted by it.
pub fn enumerate_p_type(
    ambient: &IntegralLattice,
    v: &IntVector,
    bound: u32,
) -> Result<Vec<PointedSublattice>> {
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
    let hits = scan_box(ambient.rank(), bound, |a| {
        if !ambient.pair_unchecked(a, a).is_zero() || ambient.pair_unchecked(a, v) * 2 != v2 {
            return None;
        }
        construct_p_type(ambient, v, a).ok()
    })?;
    let unique: BTreeMap<IntMatrix, PointedSublattice> = hits
        .into_iter()
        .map(|(_, h)| (h.basis().clone(), h))
        .collect();
    Ok(unique.into_values().collect())
}
