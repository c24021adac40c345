use crate::ensemble::{Ensemble, Ordering};
use crate::enumerate::{
    pair_items, reduce_best, walk_orderings, walk_paired_orderings, DenseKernel, MaxNorm, QubitKernel, ScoreKernel,
};
use crate::error::{Error, Result};

use super::SearchResult;

/// Trace-norm maximizer over all orderings, visiting one ordering of each
/// reversal pair.
pub fn brute_force(ensemble: &Ensemble, cap: usize) -> Result<SearchResult> {
    brute_force_with(ensemble, cap, true)
}

/// [`brute_force`] with reversal deduplication switchable.
pub fn brute_force_with(ensemble: &Ensemble, cap: usize, dedup: bool) -> Result<SearchResult> {
    let n = ensemble.len();
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    fn run<K: ScoreKernel>(kernel: &K, n: usize, dedup: bool) -> SearchResult {
        let (best, evaluated) = reduce_best(walk_orderings(kernel, n, dedup, &MaxNorm(kernel)));
        SearchResult {
            ordering: Ordering::from_vec_unchecked(best.ordering),
            trace_norm: best.norm,
            evaluated,
        }
    }
    Ok(if ensemble.dim() == 2 {
        run(&QubitKernel::new(ensemble.operators()), n, dedup)
    } else {
        run(&DenseKernel::new(ensemble.dim(), ensemble.operators()), n, dedup)
    })
}

/// Trace-norm maximizer over orderings that place antipodal partners at
/// mirrored ranks `t` and `|M| + 1 - t`: `|M|!!` candidates, or half that
/// with reversal deduplication.
pub fn symmetric_search(ensemble: &Ensemble) -> Result<SearchResult> {
    symmetric_search_with(ensemble, true)
}

pub fn symmetric_search_with(ensemble: &Ensemble, dedup: bool) -> Result<SearchResult> {
    let partner = ensemble.central_pairing().ok_or(Error::NoPairing)?;
    let pairs: Vec<(usize, usize)> = partner
        .iter()
        .enumerate()
        .filter(|&(m, &p)| m < p)
        .map(|(m, &p)| (m, p))
        .collect();
    fn run<K: ScoreKernel>(kernel: &K, pairs: &[(usize, usize)], dedup: bool) -> SearchResult {
        let (best, evaluated) = reduce_best(walk_paired_orderings(kernel, pairs, dedup, &MaxNorm(kernel)));
        SearchResult {
            ordering: Ordering::from_vec_unchecked(best.ordering),
            trace_norm: best.norm,
            evaluated,
        }
    }
    let items = pair_items(ensemble.operators(), &pairs);
    Ok(if ensemble.dim() == 2 {
        run(&QubitKernel::new(&items), &pairs, dedup)
    } else {
        run(&DenseKernel::new(ensemble.dim(), &items), &pairs, dedup)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::Polyhedron;

    #[test]
    fn brute_force_examples() {
        let pair = brute_force(&Ensemble::polygon(2).unwrap(), 10).unwrap();
        assert!((pair.trace_norm - 1.0).abs() < 1e-15);
        assert_eq!(pair.evaluated, 1);

        // 3! enumeration of the trine, frozen from an independent sweep over
        // explicit 2x2 matrices: 2/sqrt(3)
        let trine = brute_force(&Ensemble::polygon(3).unwrap(), 10).unwrap();
        assert!((trine.trace_norm - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(trine.evaluated, 3);

        let square = brute_force(&Ensemble::polygon(4).unwrap(), 10).unwrap();
        assert!((square.trace_norm - 2.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(square.evaluated, 12);

        assert!(matches!(
            brute_force(&Ensemble::polygon(5).unwrap(), 4),
            Err(Error::CapExceeded { size: 5, cap: 4 })
        ));
    }

    #[test]
    fn dedup_agrees_with_full_enumeration() {
        for k in 2..=6 {
            let e = Ensemble::polygon(k).unwrap();
            let a = brute_force_with(&e, 10, true).unwrap();
            let b = brute_force_with(&e, 10, false).unwrap();
            assert_eq!(a.ordering, b.ordering);
            assert!((a.trace_norm - b.trace_norm).abs() < 1e-14);
        }
    }

    #[test]
    fn symmetric_matches_brute_on_octahedron() {
        let e = Ensemble::polyhedron(Polyhedron::Octahedron);
        let s = symmetric_search(&e).unwrap();
        let b = brute_force(&e, 10).unwrap();
        assert_eq!(s.evaluated, 24);
        assert_eq!(symmetric_search_with(&e, false).unwrap().evaluated, 48);
        assert!((s.trace_norm - b.trace_norm).abs() < 1e-12);
        assert!((s.trace_norm - 35f64.sqrt() / 3.0).abs() < 1e-12);
        assert!(matches!(
            symmetric_search(&Ensemble::polyhedron(Polyhedron::Tetrahedron)),
            Err(Error::NoPairing)
        ));
        assert!(matches!(symmetric_search(&Ensemble::polygon(5).unwrap()), Err(Error::NoPairing)));
    }
}
