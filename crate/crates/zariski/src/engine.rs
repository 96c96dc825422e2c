//! Zariski decompositions of effective divisors and the integrality
//! diagnostics built on them.
//!
//! The decomposition writes an effective divisor uniquely as `D = P + N`
//! where `P` pairs non-negatively with every declared curve, `N` is
//! effective with negative definite support, and `P` is orthogonal to each
//! component of `N`. [`zariski_decompose`] computes it by the growing-support
//! iteration; [`oracle_decompose`] re-derives it by brute force over
//! candidate supports so the two routes can be checked against each other.
//!
//! On top of the decomposition sit the denominator diagnostics: grid scans
//! ([`d1_scan`]) that decide whether every integer divisor up to a bound
//! decomposes integrally, the rank-2 closed form and divisibility criterion
//! for a negative curve, and the exact denominator supremum when a rank-2
//! lattice has a single negative curve.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::lattice::{DivisorQ, Signature, SurfaceLattice};
use crate::linalg;
use crate::rational::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("divisor has {found} coefficients, lattice rank is {rank}")]
    Dimension { rank: usize, found: usize },
    #[error("divisor is not effective: coefficient {index} is {value}")]
    NotEffective { index: usize, value: Rat },
    #[error("growing support {support:?} is not negative definite; lattice data is invalid")]
    SupportNotNegativeDefinite { support: Vec<usize> },
    #[error("support iteration exceeded the lattice rank; lattice data is invalid")]
    IterationLimitExceeded,
    #[error("negative part solved to a negative coefficient; lattice data is invalid")]
    NegativePartCoefficient,
    #[error("brute-force search found no valid decomposition")]
    OracleNoCandidate,
    #[error("brute-force search found {count} distinct decompositions")]
    OracleAmbiguous { count: usize },
    #[error("brute-force search handles at most {max} divisor components, got {found}")]
    OracleSupportTooLarge { max: usize, found: usize },
    #[error("operation requires rank 2, lattice has rank {rank}")]
    NotRankTwo { rank: usize },
    #[error("first basis curve must be negative, C1² = {self_intersection}")]
    FirstCurveNotNegative { self_intersection: i64 },
    #[error("closed form needs D·C1 < 0, got {value}")]
    DivisorNotNegativeOnFirstCurve { value: Rat },
    #[error("closed form does not apply: the rank-2 form is negative definite")]
    FormNegativeDefinite,
    #[error("multiplicities must be positive, got {value} at index {index}")]
    NonPositiveMultiplicity { index: usize, value: i64 },
    #[error("expected exactly one negative curve, found {found}")]
    SingleNegativeCurveRequired { found: usize },
    #[error("not a fiber configuration: {detail}")]
    NotFiber { detail: String },
}

/// A Zariski decomposition `D = P + N`.
///
/// Structural equality compares every field, including the diagnostic ones;
/// use [`ZariskiResult::same_decomposition`] to compare two routes to the
/// same decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiResult {
    /// Nef part: pairs ≥ 0 with every declared curve.
    pub p: DivisorQ,
    /// Negative part: effective, negative definite support, `P`-orthogonal.
    pub n: DivisorQ,
    /// Sorted indices of the curves carrying a positive coefficient of `N`.
    pub support: Vec<usize>,
    /// lcm of the reduced coefficient denominators of `N`.
    pub denominator: u64,
    /// Support-growth rounds the iteration needed (0 when `D` was already nef).
    pub iterations: usize,
    /// Copied from the lattice's Hodge index verdict.
    pub realizable: bool,
}

impl ZariskiResult {
    /// Equality of the decomposition itself: `P`, `N`, support, denominator.
    /// Diagnostic fields (`iterations`) are not part of the comparison.
    pub fn same_decomposition(&self, other: &ZariskiResult) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.support == other.support
            && self.denominator == other.denominator
    }
}

/// Outcome of a denominator scan over an integer divisor grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    /// Largest Zariski denominator seen on the grid.
    pub max_denominator: u64,
    /// Lexicographically smallest integer divisor attaining it.
    pub witness: DivisorQ,
    /// True iff every decomposition on the grid was integral.
    pub d1_verdict: bool,
    /// The grid bound `M`: coefficients ranged over `[0, M]`.
    pub grid_bound: u32,
    /// `max(−C_i²)` over the declared negative curves, 0 when there are none.
    pub b_observed: u64,
}

/// Verdict for one negative curve against one other curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityCheck {
    pub negative_curve: usize,
    pub other: usize,
    pub self_intersection: i64,
    pub pairing: i64,
    pub divides: bool,
}

/// Per-negative-curve divisibility verdicts.
///
/// For every negative curve `C` and every other basis curve `E` whose pair
/// spans a non negative definite sublattice, an integral decomposition
/// theory forces `C² | C·E`. `all_divide` is the necessary condition for
/// integral decompositions; a failing pair on a very-general blow-up of the
/// plane would falsify the SHGH expectation that all negative curves are
/// (−1)-rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub checks: Vec<DivisibilityCheck>,
    pub all_divide: bool,
    pub shgh_falsified: bool,
}

/// Fiber-configuration verdict: see [`fiber_semidefinite_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCheck {
    /// Signature is `(0, rank−1, 1)`: negative semidefinite with the radical
    /// spanned by the fiber class.
    pub semidefinite: bool,
    /// `(F − m₁C₁)²`, present when rank ≥ 2.
    pub truncated_self_intersection: Option<i64>,
    /// `C₁²`.
    pub first_curve_self_intersection: i64,
    pub pass: bool,
}

fn check_effective(l: &SurfaceLattice, d: &DivisorQ) -> Result<(), EngineError> {
    l.check_len(d)
        .map_err(|_| EngineError::Dimension { rank: l.rank(), found: d.len() })?;
    for (index, c) in d.coeffs().iter().enumerate() {
        if c.is_negative() {
            return Err(EngineError::NotEffective { index, value: *c });
        }
    }
    Ok(())
}

/// Solves `pair(N, C_j) = pair(D, C_j)` for `N` supported on `support`.
fn support_solution(
    l: &SurfaceLattice,
    support: &[usize],
    d: &DivisorQ,
) -> Option<Vec<Rat>> {
    let rhs: Vec<Rat> = support.iter().map(|&j| l.pair_basis(d, j)).collect();
    linalg::solve(&l.principal_submatrix(support), &rhs)
}

fn divisor_on_support(rank: usize, support: &[usize], coeffs: &[Rat]) -> DivisorQ {
    let mut full = vec![Rat::zero(); rank];
    for (&i, &c) in support.iter().zip(coeffs) {
        full[i] = c;
    }
    DivisorQ::new(full)
}

fn positive_support(n: &DivisorQ) -> Vec<usize> {
    (0..n.len()).filter(|&i| n.coeff(i) > Rat::zero()).collect()
}

fn build_result(
    l: &SurfaceLattice,
    d: &DivisorQ,
    n: DivisorQ,
    iterations: usize,
) -> Result<ZariskiResult, EngineError> {
    if n.coeffs().iter().any(|c| c.is_negative()) {
        return Err(EngineError::NegativePartCoefficient);
    }
    let p = d - &n;
    let support = positive_support(&n);
    let denominator = n.denominator();
    Ok(ZariskiResult {
        p,
        n,
        support,
        denominator,
        iterations,
        realizable: l.hodge_index_check().pass,
    })
}

/// Zariski decomposition of an effective divisor by the growing-support
/// iteration.
///
/// Starting from the empty support, each round solves for the unique `N`
/// supported on the current set with `(D − N)·C_j = 0` there, then adds every
/// declared curve that still pairs negatively with `D − N`. On a valid
/// lattice the support stays negative definite and grows at most `rank`
/// times; violations report the lattice as invalid rather than looping.
pub fn zariski_decompose(l: &SurfaceLattice, d: &DivisorQ) -> Result<ZariskiResult, EngineError> {
    check_effective(l, d)?;
    let rank = l.rank();
    let mut support: Vec<usize> = Vec::new();
    let mut n = DivisorQ::zero(rank);
    let mut iterations = 0usize;
    loop {
        let p = d - &n;
        let mut grew = false;
        for c in 0..rank {
            if !support.contains(&c) && l.pair_basis(&p, c).is_negative() {
                support.push(c);
                grew = true;
            }
        }
        if !grew {
            break;
        }
        if iterations == rank {
            return Err(EngineError::IterationLimitExceeded);
        }
        iterations += 1;
        support.sort_unstable();
        if !l.is_negative_definite(&support) {
            return Err(EngineError::SupportNotNegativeDefinite { support });
        }
        let coeffs = support_solution(l, &support, d)
            .expect("negative definite support system is nonsingular");
        n = divisor_on_support(rank, &support, &coeffs);
    }
    build_result(l, d, n, iterations)
}

const ORACLE_MAX_SUPPORT: usize = 20;

/// Independent brute-force decomposition.
///
/// Enumerates every subset of `supp(D)`, solves the orthogonality system on
/// each negative definite one, keeps the candidates with `N ≥ 0` and `D − N`
/// nef against all declared curves, and insists exactly one decomposition
/// survives. Exponential in the support size; meant for verification, not
/// production paths.
pub fn oracle_decompose(l: &SurfaceLattice, d: &DivisorQ) -> Result<ZariskiResult, EngineError> {
    check_effective(l, d)?;
    let rank = l.rank();
    let supp_d: Vec<usize> = d.support();
    if supp_d.len() > ORACLE_MAX_SUPPORT {
        return Err(EngineError::OracleSupportTooLarge {
            max: ORACLE_MAX_SUPPORT,
            found: supp_d.len(),
        });
    }

    let mut candidates: Vec<DivisorQ> = Vec::new();
    'subsets: for mask in 0u32..(1 << supp_d.len()) {
        let subset: Vec<usize> = supp_d
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, &i)| i)
            .collect();
        if !l.is_negative_definite(&subset) {
            continue;
        }
        let coeffs = support_solution(l, &subset, d)
            .expect("negative definite support system is nonsingular");
        if coeffs.iter().any(|c| c.is_negative()) {
            continue;
        }
        let n = divisor_on_support(rank, &subset, &coeffs);
        let p = d - &n;
        for j in 0..rank {
            if l.pair_basis(&p, j).is_negative() {
                continue 'subsets;
            }
        }
        // distinct supports can pad the same decomposition with zeros
        if !candidates.contains(&n) {
            candidates.push(n);
        }
    }

    match candidates.len() {
        0 => Err(EngineError::OracleNoCandidate),
        1 => build_result(l, d, candidates.pop().expect("len checked"), 0),
        count => Err(EngineError::OracleAmbiguous { count }),
    }
}

/// Closed-form rank-2 decomposition of `D = m₁C₁ + m₂C₂` when `C₁` is
/// negative, the form is not negative definite, and `D·C₁ < 0`:
///
/// ```text
/// D = m₂·((C₁·C₂)/(−C₁²)·C₁ + C₂)  +  (m₁ − m₂·(C₁·C₂)/(−C₁²))·C₁
///            nef part P                    negative part N
/// ```
pub fn rank2_closed_form(
    l: &SurfaceLattice,
    m1: i64,
    m2: i64,
) -> Result<ZariskiResult, EngineError> {
    if l.rank() != 2 {
        return Err(EngineError::NotRankTwo { rank: l.rank() });
    }
    for (index, &value) in [m1, m2].iter().enumerate() {
        if value < 1 {
            return Err(EngineError::NonPositiveMultiplicity { index, value });
        }
    }
    let c1_sq = l.entry(0, 0);
    if c1_sq >= 0 {
        return Err(EngineError::FirstCurveNotNegative { self_intersection: c1_sq });
    }
    if l.is_negative_definite(&[0, 1]) {
        return Err(EngineError::FormNegativeDefinite);
    }
    let d = DivisorQ::from_integers(&[m1, m2]);
    let d_dot_c1 = l.pair_basis(&d, 0);
    if !d_dot_c1.is_negative() {
        return Err(EngineError::DivisorNotNegativeOnFirstCurve { value: d_dot_c1 });
    }

    let ratio = Rat::new(l.entry(0, 1), -c1_sq); // (C₁·C₂)/(−C₁²)
    let m2r = Rat::from_integer(m2);
    let p = DivisorQ::new(vec![m2r * ratio, m2r]);
    let n = DivisorQ::new(vec![Rat::from_integer(m1) - m2r * ratio, Rat::zero()]);
    debug_assert_eq!(&p + &n, d);
    let support = positive_support(&n);
    let denominator = n.denominator();
    Ok(ZariskiResult {
        p,
        n,
        support,
        denominator,
        iterations: 0,
        realizable: l.hodge_index_check().pass,
    })
}

/// Divisibility criterion `C² | C·E` for every negative curve `C` against
/// every other basis curve `E` spanning a non negative definite pair with it.
pub fn divisibility_criterion(l: &SurfaceLattice) -> DivisibilityReport {
    let mut checks = Vec::new();
    for i in l.negative_curves() {
        for j in 0..l.rank() {
            if j == i || l.is_negative_definite(&[i, j]) {
                continue;
            }
            let self_intersection = l.entry(i, i);
            let pairing = l.entry(i, j);
            checks.push(DivisibilityCheck {
                negative_curve: i,
                other: j,
                self_intersection,
                pairing,
                divides: pairing % self_intersection == 0,
            });
        }
    }
    let all_divide = checks.iter().all(|c| c.divides);
    DivisibilityReport { checks, all_divide, shgh_falsified: !all_divide }
}

/// Scans one slice of the grid (first coordinate fixed) in lexicographic
/// order; returns the slice's max denominator and its first witness.
fn scan_slice(l: &SurfaceLattice, bound: i64, first: i64) -> (u64, Vec<i64>) {
    let rank = l.rank();
    let mut digits = vec![0i64; rank];
    digits[0] = first;
    let mut best: (u64, Vec<i64>) = (0, Vec::new());
    loop {
        let d = DivisorQ::from_integers(&digits);
        let result = zariski_decompose(l, &d)
            .expect("effective integer divisor on a validated lattice must decompose");
        if result.denominator > best.0 {
            best = (result.denominator, digits.clone());
        }
        // odometer increment on digits[1..]
        let mut pos = rank;
        while pos > 1 {
            if digits[pos - 1] < bound {
                digits[pos - 1] += 1;
                break;
            }
            digits[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 1 {
            return best;
        }
    }
}

fn scan_report(l: &SurfaceLattice, grid_bound: u32, slices: Vec<(u64, Vec<i64>)>) -> ScanReport {
    let mut best: (u64, Vec<i64>) = (0, Vec::new());
    for slice in slices {
        if slice.0 > best.0 {
            best = slice;
        }
    }
    let b_observed = l
        .negative_curves()
        .into_iter()
        .map(|i| l.entry(i, i).unsigned_abs())
        .max()
        .unwrap_or(0);
    ScanReport {
        max_denominator: best.0,
        witness: DivisorQ::from_integers(&best.1),
        d1_verdict: best.0 == 1,
        grid_bound,
        b_observed,
    }
}

/// Decomposes every integer divisor with coefficients in `[0, grid_bound]`
/// and reports the largest denominator, its lexicographically smallest
/// witness, and the integrality verdict.
pub fn d1_scan(l: &SurfaceLattice, grid_bound: u32) -> ScanReport {
    assert!(grid_bound >= 1, "grid bound must be positive");
    let bound = i64::from(grid_bound);
    let slices = (0..=bound).map(|first| scan_slice(l, bound, first)).collect();
    scan_report(l, grid_bound, slices)
}

/// Same traversal as [`d1_scan`], with the first coordinate partitioned
/// across worker threads. The slice results are reduced in coordinate order,
/// so the report is identical to the sequential one.
pub fn d1_scan_parallel(l: &SurfaceLattice, grid_bound: u32) -> ScanReport {
    assert!(grid_bound >= 1, "grid bound must be positive");
    let bound = i64::from(grid_bound);
    let firsts: Vec<i64> = (0..=bound).collect();
    let slices: Vec<(u64, Vec<i64>)> = firsts
        .into_par_iter()
        .map(|first| scan_slice(l, bound, first))
        .collect();
    scan_report(l, grid_bound, slices)
}

/// Exact supremum of Zariski denominators on a rank-2 lattice with exactly
/// one negative curve `C`: `(−C²)/gcd(−C², C·E)` where `E` is the other
/// basis curve.
pub fn single_negative_denominator_bound(l: &SurfaceLattice) -> Result<u64, EngineError> {
    if l.rank() != 2 {
        return Err(EngineError::NotRankTwo { rank: l.rank() });
    }
    let negatives = l.negative_curves();
    if negatives.len() != 1 {
        return Err(EngineError::SingleNegativeCurveRequired { found: negatives.len() });
    }
    let i = negatives[0];
    let j = 1 - i;
    debug_assert!(!l.is_negative_definite(&[0, 1]));
    let p = l.entry(i, i).unsigned_abs();
    let q = l.entry(i, j).unsigned_abs();
    Ok(p / p.gcd(&q))
}

/// Checks that `mult` presents a fiber: with `F = Σ mᵢCᵢ`, demands `F² = 0`
/// and `F·Cᵢ = 0` for every curve, then verifies the form is negative
/// semidefinite with radical spanned by `F` and, at rank ≥ 2, that dropping
/// the first component leaves a strictly negative class.
pub fn fiber_semidefinite_check(
    l: &SurfaceLattice,
    mult: &[i64],
) -> Result<FiberCheck, EngineError> {
    let rank = l.rank();
    if mult.len() != rank {
        return Err(EngineError::Dimension { rank, found: mult.len() });
    }
    for (index, &value) in mult.iter().enumerate() {
        if value < 1 {
            return Err(EngineError::NonPositiveMultiplicity { index, value });
        }
    }

    let pair_int = |u: &[i64], j: usize| -> i64 {
        u.iter().zip(l.gram()).map(|(&ui, row)| ui * row[j]).sum()
    };
    let quad = |u: &[i64]| -> i64 { (0..rank).map(|j| u[j] * pair_int(u, j)).sum() };

    let f_sq = quad(mult);
    if f_sq != 0 {
        return Err(EngineError::NotFiber { detail: format!("F² = {f_sq}") });
    }
    for j in 0..rank {
        let fc = pair_int(mult, j);
        if fc != 0 {
            return Err(EngineError::NotFiber {
                detail: format!("F·{} = {fc}", l.curve_name(j)),
            });
        }
    }

    let semidefinite =
        l.signature() == Signature { n_pos: 0, n_neg: rank - 1, n_zero: 1 };
    let first_curve_self_intersection = l.entry(0, 0);
    let truncated_self_intersection = (rank >= 2).then(|| {
        let mut rest = mult.to_vec();
        rest[0] = 0;
        quad(&rest)
    });
    let pass = semidefinite
        && truncated_self_intersection.is_none_or(|t| t < 0 && first_curve_self_intersection < 0);
    Ok(FiberCheck {
        semidefinite,
        truncated_self_intersection,
        first_curve_self_intersection,
        pass,
    })
}
