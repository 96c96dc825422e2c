//! Shared helpers for the integration suites: an independent inertia oracle,
//! seeded random lattice generation, and the decomposition invariant checks.

#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use zariski::engine::ZariskiResult;
use zariski::io::{parse_lattice, LatticeFile};
use zariski::lattice::{DivisorQ, SurfaceLattice};
use zariski::Rat;

type Wide = Ratio<i128>;

/// Coefficients of `det(λI − A)`, lowest degree first, by Faddeev–LeVerrier.
/// Exact over the rationals; the result is integral for integer input.
pub fn characteristic_polynomial(a: &[Vec<i64>]) -> Vec<i128> {
    let n = a.len();
    let wide = |x: i64| Wide::from_integer(x as i128);
    let a_mat: Vec<Vec<Wide>> = a.iter().map(|r| r.iter().map(|&x| wide(x)).collect()).collect();

    let mut coeffs = vec![Wide::zero(); n + 1];
    coeffs[n] = Wide::one();
    // m starts as the identity; each round sets m ← A·m + c·I
    let mut m: Vec<Vec<Wide>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Wide::one() } else { Wide::zero() }).collect())
        .collect();
    for k in 1..=n {
        let mut am = vec![vec![Wide::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Wide::zero();
                for t in 0..n {
                    acc += a_mat[i][t] * m[t][j];
                }
                am[i][j] = acc;
            }
        }
        let trace: Wide = (0..n).map(|i| am[i][i]).sum();
        let c = -trace / Wide::from_integer(k as i128);
        coeffs[n - k] = c;
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "characteristic polynomial must be integral");
            c.to_integer()
        })
        .collect()
}

fn sign_variations(coeffs: &[i128]) -> usize {
    let mut variations = 0;
    let mut last = 0i128;
    for &c in coeffs.iter().filter(|&&c| c != 0) {
        if last != 0 && (c > 0) != (last > 0) {
            variations += 1;
        }
        last = c;
    }
    variations
}

/// Inertia `(n_pos, n_neg, n_zero)` of a symmetric integer matrix, read off
/// the characteristic polynomial with Descartes' rule of signs. All roots of
/// a symmetric matrix are real, so the sign-variation counts are exact.
pub fn charpoly_inertia(a: &[Vec<i64>]) -> (usize, usize, usize) {
    let coeffs = characteristic_polynomial(a);
    let zeros = coeffs.iter().take_while(|&&c| c == 0).count();
    let reduced = &coeffs[zeros..];
    let positive = sign_variations(reduced);
    let mirrored: Vec<i128> = reduced
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
        .collect();
    let negative = sign_variations(&mirrored);
    (positive, negative, zeros)
}

pub fn lattice(gram: Vec<Vec<i64>>) -> SurfaceLattice {
    let names = (1..=gram.len()).map(|i| format!("C{i}")).collect();
    SurfaceLattice::new(gram, names, None).unwrap()
}

/// Random symmetric Gram matrix with the given diagonal and off-diagonal
/// ranges. With `off.0 >= 0` the result is a valid lattice.
pub fn random_gram(
    rng: &mut StdRng,
    rank: usize,
    diag: (i64, i64),
    off: (i64, i64),
) -> Vec<Vec<i64>> {
    let mut gram = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        gram[i][i] = rng.gen_range(diag.0..=diag.1);
        for j in i + 1..rank {
            let v = rng.gen_range(off.0..=off.1);
            gram[i][j] = v;
            gram[j][i] = v;
        }
    }
    gram
}

pub fn random_lattice(rng: &mut StdRng, rank: usize) -> SurfaceLattice {
    lattice(random_gram(rng, rank, (-6, 2), (0, 4)))
}

/// Walks every integer divisor with coefficients in `[0, max]` in
/// lexicographic order.
pub fn for_each_integer_divisor(rank: usize, max: i64, mut f: impl FnMut(&[i64])) {
    let mut digits = vec![0i64; rank];
    loop {
        f(&digits);
        let mut pos = rank;
        while pos > 0 {
            if digits[pos - 1] < max {
                digits[pos - 1] += 1;
                break;
            }
            digits[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
    }
}

fn basis_divisor(rank: usize, i: usize) -> DivisorQ {
    let mut coeffs = vec![0i64; rank];
    coeffs[i] = 1;
    DivisorQ::from_integers(&coeffs)
}

/// Verifies the defining conditions of a decomposition of `d`:
/// `P + N = D`, `N ≥ 0` with support exactly the positive coefficients,
/// `P·C ≥ 0` for every declared curve, `P·C = 0` on the support, support
/// negative definite, and the denominator recomputed from `N`.
pub fn check_decomposition_invariants(
    l: &SurfaceLattice,
    d: &DivisorQ,
    z: &ZariskiResult,
) -> Result<(), String> {
    if &(&z.p + &z.n) != d {
        return Err(format!("P + N != D for D = {d}"));
    }
    if !z.n.is_effective() {
        return Err(format!("N = {} is not effective", z.n));
    }
    let positive: Vec<usize> =
        (0..z.n.len()).filter(|&i| z.n.coeff(i) > Rat::zero()).collect();
    if positive != z.support {
        return Err(format!("support {:?} differs from positive coefficients {positive:?}", z.support));
    }
    if !l.is_negative_definite(&z.support) {
        return Err(format!("support {:?} is not negative definite", z.support));
    }
    for j in 0..l.rank() {
        let pairing = l.pair(&z.p, &basis_divisor(l.rank(), j)).map_err(|e| e.to_string())?;
        if pairing.is_negative() {
            return Err(format!("P·C_{j} = {pairing} < 0 for D = {d}"));
        }
        if z.support.contains(&j) && !pairing.is_zero() {
            return Err(format!("P·C_{j} = {pairing} != 0 on the support for D = {d}"));
        }
    }
    if z.denominator != z.n.denominator() {
        return Err(format!("denominator {} differs from lcm {}", z.denominator, z.n.denominator()));
    }
    Ok(())
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../lattices")
}

/// Loads the bundled lattice corpus, sorted by file name.
pub fn load_corpus() -> Vec<(String, LatticeFile)> {
    let mut entries: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .expect("lattice corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).expect("readable corpus file");
            let file = parse_lattice(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (p.file_name().unwrap().to_string_lossy().into_owned(), file)
        })
        .collect()
}
