//! Surface intersection lattices and exact divisor arithmetic.
//!
//! A [`SurfaceLattice`] is the numerical shadow of a projective surface:
//! a symmetric integer Gram matrix of pairings between named irreducible
//! curve classes, with non-negative off-diagonal entries (distinct
//! irreducible curves meet non-negatively) and an optional vector of
//! canonical pairings. Divisors are exact rational coefficient vectors over
//! that curve basis.
//!
//! Basis classes are treated as reduced irreducible curves; composite
//! classes built from them are linear-algebra objects only.

use std::fmt;
use std::ops::{Add, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::linalg;
use crate::rational::{denominator_lcm, Rat};

/// Violations of the lattice and divisor invariants.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("gram matrix is not square: row {row} has {len} entries, expected {rank}")]
    NotSquare { row: usize, len: usize, rank: usize },
    #[error("gram matrix is not symmetric: gram[{i}][{j}] = {a} but gram[{j}][{i}] = {b}")]
    NotSymmetric { i: usize, j: usize, a: i64, b: i64 },
    #[error("off-diagonal entries must be >= 0: gram[{i}][{j}] = {value}")]
    NegativeOffDiagonal { i: usize, j: usize, value: i64 },
    #[error("expected {rank} curve names, found {found}")]
    CurveNameCount { rank: usize, found: usize },
    #[error("curve names must be non-empty")]
    EmptyCurveName,
    #[error("curve names must be distinct: `{name}` repeats")]
    DuplicateCurveName { name: String },
    #[error("k_dot must have length {rank}, found {found}")]
    KDotLength { rank: usize, found: usize },
    #[error("divisor has {found} coefficients, lattice rank is {rank}")]
    DimensionMismatch { rank: usize, found: usize },
    #[error("adjunction needs c2 + kc even, got c2 = {c2}, kc = {kc}")]
    GenusParity { c2: i64, kc: i64 },
    #[error("adjunction gives a negative genus for c2 = {c2}, kc = {kc}")]
    NegativeGenus { c2: i64, kc: i64 },
}

/// Intersection lattice of a modeled surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceLattice {
    gram: Vec<Vec<i64>>,
    curve_names: Vec<String>,
    k_dot: Option<Vec<i64>>,
}

impl SurfaceLattice {
    /// Validates and builds a lattice.
    ///
    /// `gram` must be square and symmetric with non-negative off-diagonal
    /// entries; `curve_names` must be distinct, non-empty identifiers, one
    /// per row; `k_dot`, when given, must have one pairing per curve.
    pub fn new(
        gram: Vec<Vec<i64>>,
        curve_names: Vec<String>,
        k_dot: Option<Vec<i64>>,
    ) -> Result<Self, LatticeError> {
        let rank = gram.len();
        if rank == 0 {
            return Err(LatticeError::ZeroRank);
        }
        for (row, entries) in gram.iter().enumerate() {
            if entries.len() != rank {
                return Err(LatticeError::NotSquare { row, len: entries.len(), rank });
            }
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric { i, j, a: gram[i][j], b: gram[j][i] });
                }
                if gram[i][j] < 0 {
                    return Err(LatticeError::NegativeOffDiagonal { i, j, value: gram[i][j] });
                }
            }
        }
        if curve_names.len() != rank {
            return Err(LatticeError::CurveNameCount { rank, found: curve_names.len() });
        }
        for (i, name) in curve_names.iter().enumerate() {
            if name.is_empty() {
                return Err(LatticeError::EmptyCurveName);
            }
            if curve_names[..i].contains(name) {
                return Err(LatticeError::DuplicateCurveName { name: name.clone() });
            }
        }
        if let Some(k) = &k_dot {
            if k.len() != rank {
                return Err(LatticeError::KDotLength { rank, found: k.len() });
            }
        }
        Ok(Self { gram, curve_names, k_dot })
    }

    /// Skips validation. Only for exercising the engine's invalid-lattice
    /// error paths from tests.
    #[cfg(test)]
    pub(crate) fn new_unchecked(gram: Vec<Vec<i64>>, curve_names: Vec<String>) -> Self {
        Self { gram, curve_names, k_dot: None }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Pairing `C_i · C_j` of two basis curves.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    pub fn curve_names(&self) -> &[String] {
        &self.curve_names
    }

    pub fn curve_name(&self, i: usize) -> &str {
        &self.curve_names[i]
    }

    pub fn k_dot(&self) -> Option<&[i64]> {
        self.k_dot.as_deref()
    }

    /// Indices of the declared negative curves (`C_i² < 0`).
    pub fn negative_curves(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.gram[i][i] < 0).collect()
    }

    /// Exact intersection pairing `u · v = uᵀ · gram · v`.
    pub fn pair(&self, u: &DivisorQ, v: &DivisorQ) -> Result<Rat, LatticeError> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut total = Rat::zero();
        for (j, vj) in v.coeffs.iter().enumerate() {
            if !vj.is_zero() {
                total += self.pair_basis(u, j) * vj;
            }
        }
        Ok(total)
    }

    /// Pairing of `u` with the basis curve `C_j`. Length is the caller's
    /// responsibility.
    pub(crate) fn pair_basis(&self, u: &DivisorQ, j: usize) -> Rat {
        u.coeffs
            .iter()
            .zip(&self.gram)
            .map(|(ui, row)| ui * Rat::from_integer(row[j]))
            .sum()
    }

    pub(crate) fn check_len(&self, d: &DivisorQ) -> Result<(), LatticeError> {
        if d.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch { rank: self.rank(), found: d.len() });
        }
        Ok(())
    }

    pub(crate) fn principal_submatrix(&self, subset: &[usize]) -> Vec<Vec<i64>> {
        subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.gram[i][j]).collect())
            .collect()
    }

    /// Inertia of the intersection form, computed exactly.
    pub fn signature(&self) -> Signature {
        signature_of(&self.gram)
    }

    /// True iff the principal submatrix on `subset` is negative definite.
    ///
    /// Checked through the sign alternation of leading principal minors;
    /// the empty subset is vacuously negative definite. Panics on an
    /// out-of-range index.
    pub fn is_negative_definite(&self, subset: &[usize]) -> bool {
        let mut idx: Vec<usize> = subset.to_vec();
        idx.sort_unstable();
        idx.dedup();
        for &i in &idx {
            assert!(i < self.rank(), "curve index {i} out of range for rank {}", self.rank());
        }
        let minors = linalg::leading_principal_minors(&self.principal_submatrix(&idx));
        if minors.len() != idx.len() {
            return false;
        }
        minors
            .iter()
            .enumerate()
            .all(|(k, &m)| if k % 2 == 0 { m < 0 } else { m > 0 })
    }

    /// Signature-(1, rank−1) test; carries the exact determinant.
    ///
    /// A lattice that fails is still a perfectly good quadratic form, but it
    /// cannot be the full intersection lattice of a surface, so downstream
    /// results are flagged not surface-realizable rather than rejected.
    pub fn hodge_index_check(&self) -> HodgeVerdict {
        let signature = self.signature();
        let pass = signature == Signature { n_pos: 1, n_neg: self.rank() - 1, n_zero: 0 };
        HodgeVerdict { pass, determinant: linalg::determinant(&self.gram), signature }
    }
}

/// Inertia of any symmetric integer matrix, computed exactly.
///
/// Congruence diagonalization over the rationals with symmetric pivoting;
/// a zero diagonal pivot with a nonzero partner is resolved by the standard
/// symmetric move `e_i ← e_i + e_j`, which works over Q. Unlike the lattice
/// constructor this places no sign condition on the off-diagonal, so it also
/// serves matrices produced by unimodular congruence.
pub fn signature_of(gram: &[Vec<i64>]) -> Signature {
    let n = gram.len();
    let mut a: Vec<Vec<Rat>> = gram
        .iter()
        .map(|row| row.iter().map(|&x| Rat::from_integer(x)).collect())
        .collect();
    let mut sig = Signature { n_pos: 0, n_neg: 0, n_zero: 0 };
    for i in 0..n {
        if a[i][i].is_zero() {
            match (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                None => {
                    // row i vanishes on the trailing block: radical direction
                    sig.n_zero += 1;
                    continue;
                }
                Some(j) if !a[j][j].is_zero() => {
                    a.swap(i, j);
                    for row in a.iter_mut() {
                        row.swap(i, j);
                    }
                }
                Some(j) => {
                    // hyperbolic pair: e_i ← e_i + e_j makes a[i][i] = 2·a[i][j]
                    for k in i..n {
                        let t = a[j][k];
                        a[i][k] += t;
                    }
                    for k in i..n {
                        let t = a[k][j];
                        a[k][i] += t;
                    }
                }
            }
        }
        let d = a[i][i];
        debug_assert!(!d.is_zero());
        if d > Rat::zero() {
            sig.n_pos += 1;
        } else {
            sig.n_neg += 1;
        }
        for r in i + 1..n {
            for c in i + 1..n {
                let adj = a[r][i] * a[i][c] / d;
                a[r][c] -= adj;
            }
        }
    }
    debug_assert_eq!(sig.n_pos + sig.n_neg + sig.n_zero, n);
    sig
}

/// Inertia of a quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

/// Outcome of [`SurfaceLattice::hodge_index_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeVerdict {
    pub pass: bool,
    pub determinant: i128,
    pub signature: Signature,
}

/// Exact rational divisor over a lattice's curve basis.
///
/// Coefficients are always reduced with positive denominator. Effectiveness
/// (all coefficients ≥ 0) is a property of a context, not of the type; use
/// [`DivisorQ::is_effective`] where it matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorQ {
    coeffs: Vec<Rat>,
}

impl DivisorQ {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self { coeffs: coeffs.iter().map(|&c| Rat::from_integer(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        Self { coeffs: vec![Rat::zero(); rank] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|c| *c >= Rat::zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> u64 {
        denominator_lcm(&self.coeffs)
    }

    pub fn scaled(&self, t: Rat) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * t).collect() }
    }
}

impl Add for &DivisorQ {
    type Output = DivisorQ;
    fn add(self, rhs: &DivisorQ) -> DivisorQ {
        assert_eq!(self.len(), rhs.len(), "divisor length mismatch");
        DivisorQ::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorQ {
    type Output = DivisorQ;
    fn sub(self, rhs: &DivisorQ) -> DivisorQ {
        assert_eq!(self.len(), rhs.len(), "divisor length mismatch");
        DivisorQ::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for DivisorQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Arithmetic genus from adjunction: `g = 1 + (C² + K·C)/2`.
///
/// An odd `c2 + kc` or a negative genus signals a curve class that no
/// irreducible curve can realize.
pub fn genus_from_adjunction(c2: i64, kc: i64) -> Result<i64, LatticeError> {
    let s = c2 + kc;
    if s % 2 != 0 {
        return Err(LatticeError::GenusParity { c2, kc });
    }
    let g = 1 + s / 2;
    if g < 0 {
        return Err(LatticeError::NegativeGenus { c2, kc });
    }
    Ok(g)
}

/// True iff `0 < −c2 ≤ 2g − 2`, the negativity window left open for a
/// negative curve of genus `g` on a surface whose fibers are all smooth
/// multiples.
pub fn negativity_bound_check(c2: i64, g: i64) -> bool {
    0 < -c2 && -c2 <= 2 * g - 2
}
