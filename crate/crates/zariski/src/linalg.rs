//! Fraction-free exact linear algebra on small integer matrices.
//!
//! Everything runs Bareiss-style elimination in `i128`: intermediate entries
//! are minors of the input matrix, divisions are exact, and nothing is ever
//! rounded. Inputs are the small Gram matrices of this crate; arithmetic that
//! would leave `i128` panics instead of silently wrapping.

use num_rational::Ratio;

use crate::rational::Rat;

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("exact linear algebra overflowed i128")
}

/// One Bareiss update: `(target * pivot - row_lead * col_lead) / prev`.
fn bareiss_step(target: i128, pivot: i128, row_lead: i128, col_lead: i128, prev: i128) -> i128 {
    let num = mul(target, pivot)
        .checked_sub(mul(row_lead, col_lead))
        .expect("exact linear algebra overflowed i128");
    debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
    num / prev
}

fn to_wide(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect()
}

/// Leading principal minors `det(m[..k][..k])` for `k = 1..=n`.
///
/// Elimination without pivoting cannot continue past a zero pivot, so the
/// list stops right after the first zero minor. That is enough for
/// definiteness tests: a zero leading minor already rules definiteness out.
pub(crate) fn leading_principal_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let mut work = to_wide(m);
    let mut minors = Vec::with_capacity(n);
    let mut prev = 1i128;
    for k in 0..n {
        let pivot = work[k][k];
        minors.push(pivot);
        if pivot == 0 {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                work[i][j] = bareiss_step(work[i][j], pivot, work[i][k], work[k][j], prev);
            }
        }
        prev = pivot;
    }
    minors
}

/// Exact determinant of a square integer matrix (Bareiss with row pivoting).
pub(crate) fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut work = to_wide(m);
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if work[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| work[r][k] != 0) else {
                return 0;
            };
            work.swap(k, r);
            sign = -sign;
        }
        let pivot = work[k][k];
        for i in k + 1..n {
            for j in k + 1..n {
                work[i][j] = bareiss_step(work[i][j], pivot, work[i][k], work[k][j], prev);
            }
        }
        prev = pivot;
    }
    sign * work[n - 1][n - 1]
}

fn narrow(r: Ratio<i128>) -> Rat {
    let num = i64::try_from(*r.numer()).expect("rational solution overflowed i64");
    let den = i64::try_from(*r.denom()).expect("rational solution overflowed i64");
    Rat::new(num, den)
}

/// Solves `a · x = b` exactly over the rationals.
///
/// Denominators are cleared up front, the integer system is reduced by
/// fraction-free forward elimination, and back substitution reintroduces
/// rationals only at the end. Returns `None` when `a` is singular.
pub(crate) fn solve(a: &[Vec<i64>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert_eq!(b.len(), n, "system shape mismatch");
    if n == 0 {
        return Some(Vec::new());
    }

    let scale = crate::rational::denominator_lcm(b) as i128;
    let mut aug: Vec<Vec<i128>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut wide: Vec<i128> = row.iter().map(|&x| x as i128).collect();
            wide.push(mul(*rhs.numer() as i128, scale / *rhs.denom() as i128));
            wide
        })
        .collect();

    let mut prev = 1i128;
    for k in 0..n {
        let r = (k..n).find(|&r| aug[r][k] != 0)?;
        aug.swap(k, r);
        let pivot = aug[k][k];
        for i in k + 1..n {
            for j in k + 1..=n {
                aug[i][j] = bareiss_step(aug[i][j], pivot, aug[i][k], aug[k][j], prev);
            }
            aug[i][k] = 0;
        }
        prev = pivot;
    }

    let mut x = vec![Ratio::<i128>::default(); n];
    for i in (0..n).rev() {
        let mut acc = Ratio::from_integer(aug[i][n]);
        for j in i + 1..n {
            acc -= Ratio::from_integer(aug[i][j]) * x[j];
        }
        x[i] = acc / Ratio::from_integer(aug[i][i]);
    }
    Some(
        x.into_iter()
            .map(|xi| narrow(xi / Ratio::from_integer(scale)))
            .collect(),
    )
}
