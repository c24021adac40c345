//! Acceptance criteria, one test per criterion. Each test prints a single
//! `criterion N: PASS|FAIL ...` line before asserting.

mod common;

use std::time::{Duration, Instant};

use guesswork::closed_form::{polygon_trace_norm, polygon_value, polyhedron_reference};
use guesswork::score::{check_condition, evaluate_measurement, helstrom_measurement, is_decreasing, marginal};
use guesswork::score::{score_operator, value_from_trace_norm};
use guesswork::solver::{brute_force, default_starts, direction_sweep, symmetric_search, symmetric_search_with};
use guesswork::{solve, Ensemble, HermitianOperator, Method, Ordering, Polyhedron, SolveConfig, Status};

use common::*;

fn report(criterion: u32, pass: bool, detail: String) {
    println!("criterion {criterion}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

#[test]
fn criterion_01_small_polyhedra_by_brute_force() {
    let (worst, elapsed) = timed(|| {
        [Polyhedron::Tetrahedron, Polyhedron::Octahedron, Polyhedron::Cube]
            .into_iter()
            .map(|shape| {
                let e = Ensemble::polyhedron(shape);
                let found = brute_force(&e, 10).unwrap();
                let value = value_from_trace_norm(e.len(), found.trace_norm);
                (value - polyhedron_reference(e.len()).unwrap()).abs()
            })
            .fold(0.0, f64::max)
    });
    report(
        1,
        worst <= 1e-9 && elapsed < Duration::from_secs(10),
        format!("max deviation {worst:.3e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_02_icosahedron_by_pairing_enumeration() {
    let e = Ensemble::polyhedron(Polyhedron::Icosahedron);
    let (found, elapsed) = timed(|| symmetric_search_with(&e, false).unwrap());
    let value = value_from_trace_norm(12, found.trace_norm);
    let deviation = (value - polyhedron_reference(12).unwrap()).abs();
    let dedup = symmetric_search(&e).unwrap();
    report(
        2,
        deviation <= 1e-9
            && found.evaluated == 46080
            && (dedup.trace_norm - found.trace_norm).abs() <= 1e-12
            && elapsed < Duration::from_secs(60),
        format!("value {value:.12}, deviation {deviation:.3e}, {} orderings, {elapsed:?}", found.evaluated),
    );
}

#[test]
fn criterion_03_dodecahedron_by_direction_sweep() {
    let e = Ensemble::polyhedron(Polyhedron::Dodecahedron);
    let (found, elapsed) = timed(|| direction_sweep(&e, default_starts(20)).unwrap());
    let value = value_from_trace_norm(20, found.trace_norm);
    let reference = polyhedron_reference(20).unwrap();
    let deviation = (value - reference).abs();
    report(
        3,
        deviation <= 1e-9 && elapsed < Duration::from_secs(60),
        format!("value {value:.12}, reference {reference:.12}, deviation {deviation:.3e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_04_polygon_closed_forms() {
    let mut worst: f64 = 0.0;
    for k in 2..=8 {
        let e = Ensemble::polygon(k).unwrap();
        let brute = brute_force(&e, 10).unwrap().trace_norm;
        worst = worst.max((polygon_trace_norm(k).unwrap() - brute).abs());
        let s = solve(&e, Method::Brute, &SolveConfig::default()).unwrap();
        assert_eq!(s.status, Status::Certified);
        worst = worst.max((s.value - polygon_value(k).unwrap()).abs());
    }
    let pair = solve(&Ensemble::polygon(2).unwrap(), Method::Auto, &SolveConfig::default()).unwrap();
    let trine = solve(&Ensemble::polygon(3).unwrap(), Method::Auto, &SolveConfig::default()).unwrap();
    let trine_dev = (trine.value - (2.0 - 3f64.sqrt() / 3.0)).abs();
    report(
        4,
        worst <= 1e-9 && pair.value == 1.0 && trine_dev <= 1e-12,
        format!("max deviation {worst:.3e}, pair {}, trine deviation {trine_dev:.3e}", pair.value),
    );
}

/// Brute-force maximizer and its Helstrom-type measurement for each of the
/// 100 random ensembles.
fn random_optima() -> Vec<(Ensemble, Ordering)> {
    random_qubit_ensembles()
        .into_iter()
        .map(|e| {
            let n = brute_force(&e, 10).unwrap().ordering;
            (e, n)
        })
        .collect()
}

#[test]
fn criterion_05_certificate_at_trace_norm_maximizer() {
    let passed = random_optima()
        .iter()
        .filter(|(e, n)| check_condition(e, n, 1e-9, 10).unwrap())
        .count();
    report(5, passed == 100, format!("{passed}/100 certified"));
}

#[test]
fn criterion_06_marginal_is_decreasing() {
    let passed = random_optima()
        .iter()
        .filter(|(e, n)| {
            let m = helstrom_measurement(e, n).unwrap();
            is_decreasing(&marginal(e, &m).unwrap(), 1e-10)
        })
        .count();
    report(6, passed == 100, format!("{passed}/100 decreasing"));
}

#[test]
fn criterion_07_helstrom_measurement_attains_value() {
    let mut worst_value: f64 = 0.0;
    let mut worst_completeness: f64 = 0.0;
    let mut lowest_eigenvalue = f64::INFINITY;
    for (e, n) in random_optima() {
        let m = helstrom_measurement(&e, &n).unwrap();
        let norm = score_operator(&e, &n).unwrap().trace_norm();
        let g = evaluate_measurement(&e, &m).unwrap();
        worst_value = worst_value.max((g - value_from_trace_norm(e.len(), norm)).abs());
        worst_completeness = worst_completeness.max(m.completeness_deviation());
        lowest_eigenvalue = lowest_eigenvalue.min(m.min_eigenvalue());
    }
    report(
        7,
        worst_value <= 1e-10 && worst_completeness <= 1e-10 && lowest_eigenvalue >= -1e-10,
        format!(
            "value deviation {worst_value:.3e}, completeness {worst_completeness:.3e}, min eigenvalue {lowest_eigenvalue:.3e}"
        ),
    );
}

#[test]
fn criterion_08_reversal_antisymmetry() {
    let mut rng = rng(8);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let d = 2 + i % 2;
        let count = 2 + i % 7;
        let e = random_ensemble(&mut rng, d, count);
        let n = random_ordering(&mut rng, count);
        let forward = score_operator(&e, &n).unwrap();
        let backward = score_operator(&e, &n.reversed()).unwrap();
        worst = worst.max(backward.max_abs_diff(&-&forward));
    }
    report(8, worst <= 1e-12, format!("max entry deviation {worst:.3e} over 1000 pairs"));
}

#[test]
fn criterion_09_trace_norm_minimality_and_pinching() {
    let mut rng = rng(9);
    let mut worst_gap = f64::INFINITY;
    let mut worst_equality: f64 = 0.0;
    let mut worst_pinch_trace: f64 = 0.0;
    let mut pinch_feasible = true;
    for i in 0..100 {
        let d = 2 + i % 2;
        let a = random_hermitian(&mut rng, d);
        let abs = a.abs();
        let feasible = |x: &HermitianOperator| x.psd_geq(&a, 1e-10).unwrap() && x.psd_geq(&-&a, 1e-10).unwrap();
        assert!(feasible(&abs));
        worst_equality = worst_equality.max((abs.trace() - a.trace_norm()).abs());
        for j in 0..100 {
            let scale = [0.0, 1e-6, 1e-2, 1.0][j % 4];
            let x = &abs + &(&random_psd(&mut rng, d) * scale);
            assert!(feasible(&x));
            worst_gap = worst_gap.min(x.trace() - a.trace_norm());
            let pinched = a.pinch(&x).unwrap();
            worst_pinch_trace = worst_pinch_trace.max((pinched.trace() - x.trace()).abs());
            pinch_feasible &= feasible(&pinched);
        }
    }
    report(
        9,
        worst_gap >= -1e-10 && worst_equality <= 1e-10 && worst_pinch_trace <= 1e-12 && pinch_feasible,
        format!(
            "min Tr X - Tr|A| {worst_gap:.3e}, equality deviation {worst_equality:.3e}, pinch trace {worst_pinch_trace:.3e}, pinch feasible {pinch_feasible}"
        ),
    );
}

#[test]
fn criterion_10_sweep_matches_brute_force() {
    let mut built_in: Vec<Ensemble> = (2..=8).map(|k| Ensemble::polygon(k).unwrap()).collect();
    built_in.extend(
        [Polyhedron::Tetrahedron, Polyhedron::Octahedron, Polyhedron::Cube]
            .into_iter()
            .map(Ensemble::polyhedron),
    );
    let all: Vec<Ensemble> = built_in.into_iter().chain(random_qubit_ensembles()).collect();
    let mut worst: f64 = 0.0;
    for e in &all {
        let sweep = direction_sweep(e, default_starts(e.len())).unwrap();
        let brute = brute_force(e, 10).unwrap();
        worst = worst.max((sweep.trace_norm - brute.trace_norm).abs());
    }
    report(10, worst <= 1e-10, format!("max deviation {worst:.3e} over {} ensembles", all.len()));
}

#[test]
fn criterion_11_identical_states() {
    let mut rng = rng(11);
    let mut pass = true;
    for count in 2..=6 {
        let state = HermitianOperator::from_bloch(1.0, bloch_in_ball(&mut rng).to_array());
        let e = Ensemble::identical_states(&state, count).unwrap();
        for _ in 0..10 {
            let n = random_ordering(&mut rng, count);
            pass &= score_operator(&e, &n).unwrap().max_abs_diff(&HermitianOperator::zeros(2)) == 0.0;
        }
        let s = solve(&e, Method::Auto, &SolveConfig::default()).unwrap();
        pass &= s.status == Status::Certified && s.value == (count as f64 + 1.0) / 2.0;
        let half = &HermitianOperator::identity(2) * 0.5;
        let elements = s.measurement.elements();
        pass &= elements.len() == 2
            && elements[0].0 == s.ordering
            && elements[1].0 == s.ordering.reversed()
            && elements.iter().all(|(_, op)| op.max_abs_diff(&half) == 0.0);
    }
    report(11, pass, "E = 0, G = (|M|+1)/2 exactly, elements I/2 on {n*, reversed n*}".into());
}
