//! Guesswork functionals: the score operator `E_M(n)`, the joint and marginal
//! rank distributions of a measurement, the guesswork itself, the two-outcome
//! Helstrom-type measurement and the optimality certificate.
//!
//! For any measurement `N` the guesswork decomposes as
//!
//! ```text
//! G(q_{M,N}) = (|M| + 1) / 2 + 1/2 * sum_n Tr[E_M(n) N(n)]
//! ```
//!
//! so minimizing it is a trace-norm problem over orderings whenever some
//! `n*` has `|E_M(n*)| >= E_M(n)` for every `n`.

use crate::ensemble::{Ensemble, Measurement, Ordering};
use crate::enumerate::{rank_coefficient, walk_orderings, DenseKernel, MinShifted, QubitKernel, ScoreKernel};
use crate::error::{Error, Result};
use crate::operator::{HermitianOperator, ZERO_TOL};

/// Default limit on `|M|` for checks that enumerate all `|M|!` orderings.
pub const DEFAULT_CAP: usize = 10;
/// Default PSD tolerance for the certificate.
pub const DEFAULT_CONDITION_TOL: f64 = 1e-9;
/// Negative probabilities down to this are treated as rounding.
pub const PROBABILITY_CLAMP: f64 = 1e-12;

/// `E_M(n) = sum_t (2t - |M| - 1) M(n(t))`, summed over mirrored rank pairs
/// as `c_t (M(n(t)) - M(n(|M| + 1 - t)))` so that equal operators cancel
/// exactly and reversal flips the sign exactly.
pub fn score_operator(ensemble: &Ensemble, ordering: &Ordering) -> Result<HermitianOperator> {
    ensemble.check_ordering(ordering)?;
    let n = ensemble.len();
    let ranks = ordering.as_slice();
    let mut e = HermitianOperator::zeros(ensemble.dim());
    for low in 0..n / 2 {
        let high = n - 1 - low;
        let diff = ensemble.operator(ranks[high]) - ensemble.operator(ranks[low]);
        e.add_scaled(rank_coefficient(high, n), &diff);
    }
    Ok(e)
}

/// Checks `E_M(reversed n) = -E_M(n)` entrywise to 1e-12.
pub fn reversal_antisymmetry_check(ensemble: &Ensemble, ordering: &Ordering) -> Result<bool> {
    let e = score_operator(ensemble, ordering)?;
    let r = score_operator(ensemble, &ordering.reversed())?;
    Ok(r.max_abs_diff(&-&e) <= 1e-12)
}

fn check_measurement(ensemble: &Ensemble, measurement: &Measurement) -> Result<()> {
    if measurement.dim() != ensemble.dim() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.dim(),
            found: measurement.dim(),
        });
    }
    for (o, _) in measurement.elements() {
        ensemble.check_ordering(o)?;
    }
    Ok(())
}

/// `p_{M,N}(n, t) = Tr[M(n(t)) N(n)]`; zero for orderings outside the
/// measurement's support.
pub fn joint_probability(ensemble: &Ensemble, measurement: &Measurement, ordering: &Ordering, rank: usize) -> Result<f64> {
    ensemble.check_ordering(ordering)?;
    let message = ordering.message_at(rank)?;
    Ok(measurement
        .element(ordering)
        .map_or(0.0, |element| ensemble.operator(message).trace_product(element)))
}

/// `q_{M,N}(t) = sum_n p_{M,N}(n, t)`, indexed from rank 1.
pub fn marginal(ensemble: &Ensemble, measurement: &Measurement) -> Result<Vec<f64>> {
    check_measurement(ensemble, measurement)?;
    let mut q = vec![0.0; ensemble.len()];
    for (ordering, element) in measurement.elements() {
        for (t, &m) in ordering.as_slice().iter().enumerate() {
            q[t] += ensemble.operator(m).trace_product(element);
        }
    }
    for p in &mut q {
        if *p < 0.0 && *p >= -PROBABILITY_CLAMP {
            *p = 0.0;
        }
    }
    Ok(q)
}

/// `G(q) = sum_t t q(t)` for a probability vector over ranks `1..=len`.
pub fn guesswork(q: &[f64]) -> Result<f64> {
    let total: f64 = q.iter().sum();
    if q.iter().any(|&p| p.is_nan() || p < -PROBABILITY_CLAMP) || total.is_nan() || (total - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { total });
    }
    Ok(q.iter().enumerate().map(|(t, &p)| (t + 1) as f64 * p).sum())
}

/// `G(q_{M,N})`, an upper bound on the minimum guesswork.
pub fn evaluate_measurement(ensemble: &Ensemble, measurement: &Measurement) -> Result<f64> {
    guesswork(&marginal(ensemble, measurement)?)
}

/// Two-outcome measurement on `{n*, reversed n*}`:
/// `N(n*) = {E < 0} + {E = 0}/2` and `N(reversed n*) = {E > 0} + {E = 0}/2`
/// with `E = E_M(n*)`.
pub fn helstrom_measurement(ensemble: &Ensemble, n_star: &Ordering) -> Result<Measurement> {
    let e = score_operator(ensemble, n_star)?;
    let split = e.spectral_projectors(ZERO_TOL);
    let half_kernel = &split.zero * 0.5;
    let reversed = n_star.reversed();
    if &reversed == n_star {
        return Ok(Measurement::trivial(ensemble.dim(), n_star.clone()));
    }
    Measurement::new(
        ensemble.dim(),
        vec![
            (n_star.clone(), &split.negative + &half_kernel),
            (reversed, &split.positive + &half_kernel),
        ],
    )
}

/// `(|M| + 1)/2 - ||E_M(n*)||_1 / 2`. Equals the minimum guesswork when the
/// certificate holds at `n_star`.
pub fn certified_value(ensemble: &Ensemble, n_star: &Ordering) -> Result<f64> {
    let norm = score_operator(ensemble, n_star)?.trace_norm();
    Ok(value_from_trace_norm(ensemble.len(), norm))
}

pub fn value_from_trace_norm(messages: usize, trace_norm: f64) -> f64 {
    (messages as f64 + 1.0) / 2.0 - trace_norm / 2.0
}

/// Whether `q(t) >= q(t + 1) - tol` for every `t`.
pub fn is_decreasing(q: &[f64], tol: f64) -> bool {
    q.windows(2).all(|w| w[0] >= w[1] - tol)
}

fn check_cap(ensemble: &Ensemble, cap: usize) -> Result<()> {
    if ensemble.len() > cap {
        return Err(Error::CapExceeded {
            size: ensemble.len(),
            cap,
        });
    }
    Ok(())
}

fn min_shifted<K: ScoreKernel>(kernel: &K, n: usize, reference: &HermitianOperator) -> f64
where
    K::Acc: Sync,
{
    let visitor = MinShifted {
        kernel,
        reference: kernel.lift(reference),
    };
    walk_orderings(kernel, n, true, &visitor)
        .into_iter()
        .map(|(m, _)| m)
        .fold(f64::INFINITY, f64::min)
}

/// `min over all n of lambda_min(reference - E_M(n))`, using
/// `E_M(reversed n) = -E_M(n)` to visit half the orderings.
fn min_over_orderings(ensemble: &Ensemble, reference: &HermitianOperator) -> f64 {
    let n = ensemble.len();
    if ensemble.dim() == 2 {
        min_shifted(&QubitKernel::new(ensemble.operators()), n, reference)
    } else {
        min_shifted(&DenseKernel::new(ensemble.dim(), ensemble.operators()), n, reference)
    }
}

/// The certificate: `|E_M(n*)| >= E_M(n)` (to `tol`) for every ordering
/// `n`. Enumerates all `|M|!` orderings, so `|M|` must not exceed `cap`.
pub fn check_condition(ensemble: &Ensemble, n_star: &Ordering, tol: f64, cap: usize) -> Result<bool> {
    check_cap(ensemble, cap)?;
    let reference = score_operator(ensemble, n_star)?.abs();
    Ok(min_over_orderings(ensemble, &reference) >= -tol)
}

/// Weak-duality lower bound from the feasible point `Lambda = lambda_min I`,
/// where `lambda_min` is the smallest eigenvalue of any `E_M(n)`.
pub fn dual_lower_bound(ensemble: &Ensemble, cap: usize) -> Result<f64> {
    check_cap(ensemble, cap)?;
    let lambda_min = min_over_orderings(ensemble, &HermitianOperator::zeros(ensemble.dim()));
    let n = ensemble.len() as f64;
    let bound = (n + 1.0) / 2.0 + ensemble.dim() as f64 * lambda_min / 2.0;
    Ok(bound.max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::BlochVector;

    fn poles() -> Ensemble {
        Ensemble::uniform_qubit(&[
            BlochVector::new(0.0, 0.0, 1.0).unwrap(),
            BlochVector::new(0.0, 0.0, -1.0).unwrap(),
        ])
        .unwrap()
    }

    fn identical(count: usize) -> Ensemble {
        Ensemble::identical_states(&HermitianOperator::from_bloch(1.0, [0.3, 0.1, -0.5]), count).unwrap()
    }

    fn id(n: usize) -> Ordering {
        Ordering::identity(n)
    }

    #[test]
    fn score_operator_examples() {
        let e = score_operator(&poles(), &id(2)).unwrap();
        assert!(e.max_abs_diff(&HermitianOperator::diag(&[-0.5, 0.5])) < 1e-15);
        let z = score_operator(&identical(4), &Ordering::new(vec![2, 0, 3, 1]).unwrap()).unwrap();
        assert!(z.max_abs_diff(&HermitianOperator::zeros(2)) < 1e-15);
        assert!(score_operator(&poles(), &id(3)).is_err());
    }

    #[test]
    fn antisymmetry_examples() {
        assert!(reversal_antisymmetry_check(&poles(), &id(2)).unwrap());
        assert!(reversal_antisymmetry_check(&identical(3), &id(3)).unwrap());
    }

    #[test]
    fn probabilities_for_poles() {
        let m = poles();
        let n = helstrom_measurement(&m, &id(2)).unwrap();
        assert!((joint_probability(&m, &n, &id(2), 1).unwrap() - 0.5).abs() < 1e-15);
        let q = marginal(&m, &n).unwrap();
        assert!((q[0] - 1.0).abs() < 1e-15 && q[1].abs() < 1e-15);
        assert!(matches!(
            joint_probability(&m, &n, &id(2), 3),
            Err(Error::RankOutOfRange { .. })
        ));

        // outside the support
        let trivial = Measurement::trivial(2, id(2));
        assert_eq!(joint_probability(&m, &trivial, &id(2).reversed(), 1).unwrap(), 0.0);
        assert!((evaluate_measurement(&m, &trivial).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn trivial_measurement_marginal_is_priors_in_order() {
        let m = Ensemble::polygon(3).unwrap();
        let o = Ordering::new(vec![1, 2, 0]).unwrap();
        let q = marginal(&m, &Measurement::trivial(2, o.clone())).unwrap();
        for t in 1..=3 {
            let expected = m.operator(o.message_at(t).unwrap()).trace();
            assert!((q[t - 1] - expected).abs() < 1e-15);
            assert!((joint_probability(&m, &Measurement::trivial(2, o.clone()), &o, t).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn identical_states_marginal_is_uniform() {
        let m = identical(3);
        let n = helstrom_measurement(&m, &id(3)).unwrap();
        for p in marginal(&m, &n).unwrap() {
            assert!((p - 1.0 / 3.0).abs() < 1e-15);
        }
        for (_, e) in n.elements() {
            assert!(e.max_abs_diff(&(&HermitianOperator::identity(2) * 0.5)) < 1e-15);
        }
    }

    #[test]
    fn guesswork_examples() {
        assert_eq!(guesswork(&[1.0, 0.0]).unwrap(), 1.0);
        assert!((guesswork(&[1.0 / 3.0; 3]).unwrap() - 2.0).abs() < 1e-15);
        assert!((guesswork(&[0.5, 0.3, 0.2]).unwrap() - 1.7).abs() < 1e-15);
        assert!(matches!(guesswork(&[0.5, 0.3]), Err(Error::NotNormalized { .. })));
        assert!(guesswork(&[1.5, -0.5]).is_err());
    }

    #[test]
    fn helstrom_for_poles() {
        let n = helstrom_measurement(&poles(), &id(2)).unwrap();
        assert!(n.element(&id(2)).unwrap().max_abs_diff(&HermitianOperator::diag(&[1.0, 0.0])) < 1e-15);
        assert!(n
            .element(&id(2).reversed())
            .unwrap()
            .max_abs_diff(&HermitianOperator::diag(&[0.0, 1.0]))
            < 1e-15);
    }

    #[test]
    fn single_message_measurement_is_identity() {
        let m = Ensemble::uniform_qubit(&[BlochVector::new(0.0, 0.0, 0.0).unwrap()]).unwrap();
        let n = helstrom_measurement(&m, &id(1)).unwrap();
        assert_eq!(n.elements().len(), 1);
        assert_eq!(evaluate_measurement(&m, &n).unwrap(), 1.0);
        assert_eq!(certified_value(&m, &id(1)).unwrap(), 1.0);
    }

    #[test]
    fn condition_examples() {
        assert!(check_condition(&poles(), &id(2), 1e-10, DEFAULT_CAP).unwrap());
        let trine = Ensemble::polygon(3).unwrap();
        let norms: Vec<f64> = [vec![0, 1, 2], vec![1, 0, 2], vec![0, 2, 1]]
            .into_iter()
            .map(|v| score_operator(&trine, &Ordering::new(v).unwrap()).unwrap().trace_norm())
            .collect();
        // every trine ordering is optimal up to symmetry; make a worse ensemble
        assert!(norms.iter().all(|&x| (x - norms[0]).abs() < 1e-12));
        let skewed = Ensemble::uniform_qubit(&[
            BlochVector::new(1.0, 0.0, 0.0).unwrap(),
            BlochVector::new(0.9, 0.0, 0.1).unwrap(),
            BlochVector::new(-1.0, 0.0, 0.0).unwrap(),
        ])
        .unwrap();
        // ranks 1 and 3 get the extreme coefficients; putting the near-equal
        // pair there is suboptimal
        let bad = Ordering::new(vec![0, 2, 1]).unwrap();
        let good = Ordering::new(vec![2, 1, 0]).unwrap();
        assert!(!check_condition(&skewed, &bad, 1e-9, DEFAULT_CAP).unwrap());
        assert!(check_condition(&skewed, &good, 1e-9, DEFAULT_CAP).unwrap());
        assert!(matches!(
            check_condition(&Ensemble::polygon(11).unwrap(), &id(11), 1e-9, DEFAULT_CAP),
            Err(Error::CapExceeded { size: 11, cap: 10 })
        ));
    }

    #[test]
    fn certified_value_examples() {
        assert!((certified_value(&poles(), &id(2)).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(certified_value(&identical(5), &id(5)).unwrap(), 3.0);
    }

    #[test]
    fn decreasing_examples() {
        assert!(is_decreasing(&[0.5, 0.3, 0.2], 1e-10));
        assert!(!is_decreasing(&[0.3, 0.5, 0.2], 1e-10));
        assert!(is_decreasing(&[0.2, 0.2, 0.2], 1e-10));
    }

    #[test]
    fn dual_bound_examples() {
        assert!((dual_lower_bound(&poles(), DEFAULT_CAP).unwrap() - 1.0).abs() < 1e-15);
        assert!((dual_lower_bound(&identical(4), DEFAULT_CAP).unwrap() - 2.5).abs() < 1e-14);
        let trine = Ensemble::polygon(3).unwrap();
        let lb = dual_lower_bound(&trine, DEFAULT_CAP).unwrap();
        assert!(lb <= certified_value(&trine, &id(3)).unwrap() + 1e-12);
    }

    #[test]
    fn qutrit_path_uses_dense_kernel() {
        let ops = vec![
            ("a".to_string(), HermitianOperator::diag(&[0.5, 0.0, 0.0])),
            ("b".to_string(), HermitianOperator::diag(&[0.0, 0.3, 0.0])),
            ("c".to_string(), HermitianOperator::diag(&[0.0, 0.0, 0.2])),
        ];
        let m = Ensemble::new(3, ops).unwrap();
        // Orthogonal states are perfectly distinguishable (G_min = 1), but
        // with unequal priors no single ordering certifies that.
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let n = Ordering::new(perm.to_vec()).unwrap();
            assert!(!check_condition(&m, &n, 1e-9, DEFAULT_CAP).unwrap());
        }
        // E(0,2,1) = diag(-1, 0.6, 0)
        let n = Ordering::new(vec![0, 2, 1]).unwrap();
        assert!((score_operator(&m, &n).unwrap().trace_norm() - 1.6).abs() < 1e-12);
        let meas = helstrom_measurement(&m, &n).unwrap();
        assert!((evaluate_measurement(&m, &meas).unwrap() - 1.2).abs() < 1e-12);
        assert!((dual_lower_bound(&m, DEFAULT_CAP).unwrap() - 1.0).abs() < 1e-12);
    }
}
