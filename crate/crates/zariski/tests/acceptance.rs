//! Acceptance suite. Each test runs one criterion end to end, prints one
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`),
//! and fails loudly with the first violation.

mod common;

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;

use zariski::classify::{
    classify_k3_rank2, elliptic_section_lattice, enumerate_k3_rank2, k3_form_lattice,
    ruled_lattice, third_negative_curve_check, ThirdCurveOutcome,
};
use zariski::engine::{
    d1_scan, d1_scan_parallel, divisibility_criterion, fiber_semidefinite_check, oracle_decompose,
    single_negative_denominator_bound, zariski_decompose, EngineError, ZariskiResult,
};
use zariski::io::scan_report_value;
use zariski::lattice::{negativity_bound_check, DivisorQ, SurfaceLattice};

fn criterion(name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("[acceptance] {name}: PASS"),
        Err(msg) => {
            println!("[acceptance] {name}: FAIL ({msg})");
            panic!("{name}: {msg}");
        }
    }
}

fn within(budget: Duration, start: Instant, name: &str) -> Result<(), String> {
    let elapsed = start.elapsed();
    if elapsed > budget {
        return Err(format!("{name} took {elapsed:?}, budget {budget:?}"));
    }
    Ok(())
}

/// Deterministic generator shared by criteria 1 and 2.
fn randomized_cases(
    mut visit: impl FnMut(&SurfaceLattice, &DivisorQ, &ZariskiResult) -> Result<(), String>,
) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(0x5eed_2a15);
    for case in 0..1000usize {
        let rank = 2 + case % 3;
        let l = common::random_lattice(&mut rng, rank);
        let mut failure: Option<String> = None;
        common::for_each_integer_divisor(rank, 3, |coeffs| {
            if failure.is_some() {
                return;
            }
            let d = DivisorQ::from_integers(coeffs);
            match zariski_decompose(&l, &d) {
                Ok(z) => {
                    if let Err(msg) = visit(&l, &d, &z) {
                        failure = Some(format!("case {case}, gram {:?}: {msg}", l.gram()));
                    }
                }
                Err(e) => failure = Some(format!("case {case}: decompose failed: {e}")),
            }
        });
        if let Some(msg) = failure {
            return Err(msg);
        }
    }
    Ok(())
}

#[test]
fn criterion_1_oracle_equivalence() {
    criterion("criterion 1 (oracle equivalence, 1000 random lattices)", || {
        let start = Instant::now();
        randomized_cases(|l, d, z| {
            let brute = oracle_decompose(l, d).map_err(|e| format!("oracle failed: {e}"))?;
            if !z.same_decomposition(&brute) {
                return Err(format!(
                    "D = {d}: engine (P {}, N {}) vs oracle (P {}, N {})",
                    z.p, z.n, brute.p, brute.n
                ));
            }
            Ok(())
        })?;
        within(Duration::from_secs(60), start, "oracle equivalence sweep")
    });
}

#[test]
fn criterion_2_decomposition_invariants() {
    criterion("criterion 2 (decomposition invariant suite)", || {
        randomized_cases(common::check_decomposition_invariants)
    });
}

#[test]
fn criterion_3_divisibility_iff_integral_scan() {
    criterion("criterion 3 (rank-2 divisibility criterion, both directions)", || {
        let start = Instant::now();
        for p in 1..=6i64 {
            for q in 0..=6i64 {
                for r in [0i64, 2] {
                    let l = common::lattice(vec![vec![-p, q], vec![q, r]]);
                    let scan = d1_scan(&l, 50);
                    let div = divisibility_criterion(&l);
                    if scan.d1_verdict != div.all_divide {
                        return Err(format!(
                            "gram [[-{p},{q}],[{q},{r}]]: scan d1 = {}, divisibility = {}",
                            scan.d1_verdict, div.all_divide
                        ));
                    }
                }
            }
        }
        within(Duration::from_secs(30), start, "divisibility sweep")
    });
}

#[test]
fn criterion_4_ruled_surfaces() {
    criterion("criterion 4 (ruled lattices integral exactly at e = 1)", || {
        for e in 1..=10i64 {
            let l = ruled_lattice(e);
            let verdict = d1_scan(&l, 20).d1_verdict;
            if verdict != (e == 1) {
                return Err(format!("e = {e}: d1 = {verdict}"));
            }
            let bound = single_negative_denominator_bound(&l)
                .map_err(|err| format!("bound failed for e = {e}: {err}"))?;
            if bound != e as u64 {
                return Err(format!("e = {e}: bound = {bound}"));
            }
            let attained = d1_scan(&l, e as u32).max_denominator;
            if attained != bound {
                return Err(format!("e = {e}: scan at M = e reached {attained}, bound {bound}"));
            }
            let larger = d1_scan(&l, e as u32 + 5).max_denominator;
            if larger != bound {
                return Err(format!("e = {e}: scan at M = e+5 reached {larger}, bound {bound}"));
            }
        }
        let scan = d1_scan(&ruled_lattice(2), 10);
        if scan.witness != DivisorQ::from_integers(&[1, 1]) || scan.max_denominator != 2 {
            return Err(format!(
                "e = 2: witness {} with denominator {}",
                scan.witness, scan.max_denominator
            ));
        }
        Ok(())
    });
}

#[test]
fn criterion_5_k3_family() {
    criterion("criterion 5 (rank-2 K3 family enumeration and scans)", || {
        let start = Instant::now();
        let got: Vec<(i64, i64)> = enumerate_k3_rank2(20).iter().map(|f| (f.a, f.b)).collect();
        let mut expected: Vec<(i64, i64)> = (1..=10).map(|k| (0, 2 * k)).collect();
        expected.extend((2..=10).map(|k| (-2, 2 * k)));
        if got != expected {
            return Err(format!("enumeration mismatch: {got:?}"));
        }
        for form in enumerate_k3_rank2(20) {
            if !form.verdicts.hodge || !form.verdicts.divisibility {
                return Err(format!("({}, {}) misses hodge/divisibility", form.a, form.b));
            }
            let scan = d1_scan(&k3_form_lattice(form.a, form.b), 25);
            if scan.max_denominator != 1 {
                return Err(format!(
                    "({}, {}): max denominator {} at witness {}",
                    form.a, form.b, scan.max_denominator, scan.witness
                ));
            }
        }
        within(Duration::from_secs(10), start, "K3 family sweep")
    });
}

#[test]
fn criterion_6_elliptic_sections() {
    criterion("criterion 6 (elliptic section lattices integral exactly at chi = 1)", || {
        for chi in 1..=10i64 {
            let verdict = d1_scan(&elliptic_section_lattice(chi), 20).d1_verdict;
            if verdict != (chi == 1) {
                return Err(format!("chi = {chi}: d1 = {verdict}"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_7_fiber_components() {
    criterion("criterion 7 (fiber semidefiniteness and the genus bound)", || {
        let i2 = common::lattice(vec![vec![-2, 2], vec![2, -2]]);
        let check = fiber_semidefinite_check(&i2, &[1, 1]).map_err(|e| e.to_string())?;
        if !check.pass || check.truncated_self_intersection != Some(-2) {
            return Err(format!("I2 configuration: {check:?}"));
        }

        let i3 = common::lattice(vec![vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]]);
        let check = fiber_semidefinite_check(&i3, &[1, 1, 1]).map_err(|e| e.to_string())?;
        if !check.pass {
            return Err(format!("I3 configuration: {check:?}"));
        }

        let not_fiber = common::lattice(vec![vec![-2, 1], vec![1, -2]]);
        match fiber_semidefinite_check(&not_fiber, &[1, 1]) {
            Err(EngineError::NotFiber { .. }) => {}
            other => return Err(format!("expected NotFiber, got {other:?}")),
        }

        for g in 0..=8i64 {
            if negativity_bound_check(-2, g) != (g >= 2) {
                return Err(format!("negativity bound at g = {g}"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_8_third_negative_curve() {
    criterion("criterion 8 (third-curve classification on [[-2,4],[4,-2]])", || {
        let l = k3_form_lattice(-2, 4);
        match third_negative_curve_check(&l, &[1, 0]).map_err(|e| e.to_string())? {
            ThirdCurveOutcome::ExistingNegativeCurve { index: 0 } => {}
            other => return Err(format!("(1,0) classified as {other:?}")),
        }
        match third_negative_curve_check(&l, &[1, 1]).map_err(|e| e.to_string())? {
            ThirdCurveOutcome::ConsistentNonNegative { self_intersection: 4 } => {}
            other => return Err(format!("(1,1) classified as {other:?}")),
        }
        match third_negative_curve_check(&l, &[5, 1]).map_err(|e| e.to_string())? {
            ThirdCurveOutcome::ImpossibleThirdCurve { self_intersection: -12, violated_pairings }
                if violated_pairings == vec![(0, -6)] => {}
            other => return Err(format!("(5,1) classified as {other:?}")),
        }
        Ok(())
    });
}

#[test]
fn criterion_9_parallel_scan_determinism() {
    criterion("criterion 9 (parallel scans byte-identical on the corpus)", || {
        let corpus = common::load_corpus();
        if corpus.is_empty() {
            return Err("empty lattice corpus".to_owned());
        }
        for (file, lattice_file) in corpus {
            let sequential = d1_scan(&lattice_file.lattice, 30);
            let parallel = d1_scan_parallel(&lattice_file.lattice, 30);
            if sequential != parallel {
                return Err(format!("{file}: reports differ"));
            }
            let a = serde_json::to_string(&scan_report_value(&sequential)).expect("serializable");
            let b = serde_json::to_string(&scan_report_value(&parallel)).expect("serializable");
            if a != b {
                return Err(format!("{file}: rendered bytes differ"));
            }
        }
        Ok(())
    });
}

#[test]
fn frozen_worked_examples() {
    criterion("worked examples (frozen oracle values)", || {
        // [[-2,1],[1,0]], D = (1,1): N = C1/2, the minimal non-integral case
        let l = common::lattice(vec![vec![-2, 1], vec![1, 0]]);
        let z = zariski_decompose(&l, &DivisorQ::from_integers(&[1, 1]))
            .map_err(|e| e.to_string())?;
        let n_expect = DivisorQ::new(vec![zariski::rational::rat(1, 2), zariski::rational::rat(0, 1)]);
        if z.n != n_expect || z.denominator != 2 {
            return Err(format!("got N = {}, denominator {}", z.n, z.denominator));
        }

        // scan finds the same witness first
        let scan = d1_scan(&l, 10);
        if scan.witness != DivisorQ::from_integers(&[1, 1]) || scan.max_denominator != 2 {
            return Err(format!("scan witness {} max {}", scan.witness, scan.max_denominator));
        }

        // K3 boundary cases
        if !classify_k3_rank2(0, 2).valid
            || !classify_k3_rank2(-2, 4).valid
            || classify_k3_rank2(-2, 2).valid
            || classify_k3_rank2(0, 3).valid
        {
            return Err("K3 classifier boundary values drifted".to_owned());
        }
        Ok(())
    });
}
