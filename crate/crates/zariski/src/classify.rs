//! Rank-2 classification helpers: candidate K3 intersection forms, generated
//! ruled and elliptic-section lattices, the third-negative-curve consistency
//! check, and a determinant probe for negative definite curve configurations.
//!
//! The K3 classifier works at lattice level only: it decides whether a form
//! satisfies the numerical constraints, not whether an actual surface
//! realizes it, so its output is a *candidate* form.

use thiserror::Error;

use crate::lattice::SurfaceLattice;
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("operation requires rank 2, lattice has rank {rank}")]
    NotRankTwo { rank: usize },
    #[error("operation requires both basis curves negative")]
    CurvesNotBothNegative,
    #[error("candidate class has {found} coefficients, lattice rank is {rank}")]
    Dimension { rank: usize, found: usize },
    #[error("curve index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("duplicate curve index {index} in subset")]
    DuplicateIndex { index: usize },
    #[error("subset {subset:?} is not negative definite")]
    SubsetNotNegativeDefinite { subset: Vec<usize> },
}

/// The individual constraints a rank-2 K3 candidate form must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct K3Verdicts {
    /// `a ∈ {0, −2}`.
    pub a_in_family: bool,
    /// `b + a` is a positive even integer.
    pub parity_positivity: bool,
    /// `det [[a,b],[b,−2]] < 0`, the rank-2 shape of the Hodge index theorem.
    pub hodge: bool,
    /// `C² | b` for each negative diagonal entry.
    pub divisibility: bool,
}

/// A candidate rank-2 K3 intersection form `[[a, b], [b, −2]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct K3FormR2 {
    pub a: i64,
    pub b: i64,
    pub verdicts: K3Verdicts,
    pub valid: bool,
}

/// Evaluates the candidate form `[[a, b], [b, −2]]` against all four
/// constraints.
pub fn classify_k3_rank2(a: i64, b: i64) -> K3FormR2 {
    let sum = a + b;
    let det = a * -2 - b * b;
    let mut divisibility = true;
    for diag in [a, -2] {
        if diag < 0 && b % diag != 0 {
            divisibility = false;
        }
    }
    let verdicts = K3Verdicts {
        a_in_family: a == 0 || a == -2,
        parity_positivity: sum > 0 && sum % 2 == 0,
        hodge: det < 0,
        divisibility,
    };
    let valid =
        verdicts.a_in_family && verdicts.parity_positivity && verdicts.hodge && verdicts.divisibility;
    K3FormR2 { a, b, verdicts, valid }
}

/// All valid candidate forms with `0 < b ≤ max_b`, ordered by
/// (`a` descending, `b` ascending). Nothing beyond filtering
/// [`classify_k3_rank2`] over the rectangle.
pub fn enumerate_k3_rank2(max_b: i64) -> Vec<K3FormR2> {
    let mut out = Vec::new();
    for a in [0, -2] {
        for b in 1..=max_b {
            let form = classify_k3_rank2(a, b);
            if form.valid {
                out.push(form);
            }
        }
    }
    out
}

/// The lattice of a candidate K3 form: `[[a, b], [b, −2]]` over curves
/// `C1, C2`. Requires `b ≥ 0` so the off-diagonal convention holds.
pub fn k3_form_lattice(a: i64, b: i64) -> SurfaceLattice {
    assert!(b >= 0, "off-diagonal b must be non-negative");
    SurfaceLattice::new(
        vec![vec![a, b], vec![b, -2]],
        vec!["C1".to_owned(), "C2".to_owned()],
        Some(vec![0, 0]),
    )
    .expect("K3 candidate form is a valid lattice")
}

/// Lattice of a geometrically ruled surface with invariant `e ≥ 1`:
/// section `C0` with `C0² = −e`, fiber `f` with `f² = 0`, `C0·f = 1`.
pub fn ruled_lattice(e: i64) -> SurfaceLattice {
    assert!(e >= 1, "ruled invariant e must be positive");
    SurfaceLattice::new(
        vec![vec![-e, 1], vec![1, 0]],
        vec!["C0".to_owned(), "f".to_owned()],
        None,
    )
    .expect("ruled lattice is valid by construction")
}

/// Lattice spanned by a section `C` and fiber `f` of a relatively minimal
/// elliptic fibration with `χ(O) = chi ≥ 1`: `C² = −chi`, `f² = 0`, `C·f = 1`.
///
/// Integral decompositions on this lattice force `chi = 1`; since
/// `χ = 1 − q + p_g`, that is the same as `q = p_g` for the fibration
/// (reported as a note, never computed here).
pub fn elliptic_section_lattice(chi: i64) -> SurfaceLattice {
    assert!(chi >= 1, "chi must be positive");
    SurfaceLattice::new(
        vec![vec![-chi, 1], vec![1, 0]],
        vec!["C".to_owned(), "f".to_owned()],
        None,
    )
    .expect("elliptic section lattice is valid by construction")
}

/// How a candidate third curve class sits against two negative curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThirdCurveOutcome {
    /// Proportional to a basis curve: nothing new.
    ExistingNegativeCurve { index: usize },
    /// Non-negative self-intersection: not a negative curve, consistent.
    ConsistentNonNegative { self_intersection: i64 },
    /// Inside the cone spanned by the two curves with negative square:
    /// such a class pairs negatively with a basis curve, so it cannot be a
    /// third irreducible curve.
    ImpossibleThirdCurve { self_intersection: i64, violated_pairings: Vec<(usize, i64)> },
    /// Outside the cone spanned by the two curves: not effective in this
    /// model.
    OutsideEffectiveCone,
}

/// Classifies an integer class `v3` on a rank-2 lattice whose two basis
/// curves are both negative. The two declared curves span the effective
/// cone, so membership is read off the basis coefficients directly.
pub fn third_negative_curve_check(
    l: &SurfaceLattice,
    v3: &[i64],
) -> Result<ThirdCurveOutcome, ClassifyError> {
    if l.rank() != 2 {
        return Err(ClassifyError::NotRankTwo { rank: l.rank() });
    }
    if l.entry(0, 0) >= 0 || l.entry(1, 1) >= 0 {
        return Err(ClassifyError::CurvesNotBothNegative);
    }
    if v3.len() != 2 {
        return Err(ClassifyError::Dimension { rank: 2, found: v3.len() });
    }
    let (x, y) = (v3[0], v3[1]);
    if x != 0 && y == 0 {
        return Ok(ThirdCurveOutcome::ExistingNegativeCurve { index: 0 });
    }
    if x == 0 && y != 0 {
        return Ok(ThirdCurveOutcome::ExistingNegativeCurve { index: 1 });
    }

    let pairing = |i: usize| l.entry(i, 0) * x + l.entry(i, 1) * y;
    let self_intersection = x * pairing(0) + y * pairing(1);
    if self_intersection >= 0 {
        return Ok(ThirdCurveOutcome::ConsistentNonNegative { self_intersection });
    }
    if x > 0 && y > 0 {
        let violated_pairings: Vec<(usize, i64)> =
            (0..2).map(|i| (i, pairing(i))).filter(|&(_, v)| v < 0).collect();
        debug_assert!(!violated_pairings.is_empty());
        return Ok(ThirdCurveOutcome::ImpossibleThirdCurve { self_intersection, violated_pairings });
    }
    Ok(ThirdCurveOutcome::OutsideEffectiveCone)
}

/// Determinant of a negative definite curve configuration, compared against
/// `(−1)^k`. Exploratory: the comparison, not a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterminantCheck {
    pub determinant: i128,
    pub expected: i128,
    pub matches: bool,
}

pub fn determinant_question_check(
    l: &SurfaceLattice,
    subset: &[usize],
) -> Result<DeterminantCheck, ClassifyError> {
    let mut seen = vec![false; l.rank()];
    for &i in subset {
        if i >= l.rank() {
            return Err(ClassifyError::IndexOutOfRange { index: i, rank: l.rank() });
        }
        if seen[i] {
            return Err(ClassifyError::DuplicateIndex { index: i });
        }
        seen[i] = true;
    }
    let mut idx = subset.to_vec();
    idx.sort_unstable();
    if !l.is_negative_definite(&idx) {
        return Err(ClassifyError::SubsetNotNegativeDefinite { subset: idx });
    }
    let determinant = linalg::determinant(&l.principal_submatrix(&idx));
    let expected = if idx.len().is_multiple_of(2) { 1 } else { -1 };
    Ok(DeterminantCheck { determinant, expected, matches: determinant == expected })
}
