//! Direction sweep for uniform qubit ensembles.
//!
//! With `M(m) = (I + r_m.sigma) / (2|M|)` the score operator is
//! `w(n).sigma / (2|M|)` where `w(n) = sum_t (2t - |M| - 1) r_{n(t)}`, so its
//! trace norm is `|w(n)| / |M|`. For a fixed unit direction `u`, the
//! ordering maximizing `<w(n), u>` sorts messages by ascending `<r_m, u>`
//! (rank coefficients increase with `t`). Alternating that sort with
//! `u <- w / |w|` never decreases `|w|` and stops at a fixed point; the
//! global maximizer is the fixed point of every `u` in its sort cell, so
//! enough well-spread starts find it.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ensemble::{Ensemble, Ordering};
use crate::enumerate::{rank_coefficient, Best, TIE_TOL};
use crate::error::{Error, Result};

use super::SearchResult;

const MAX_ITERATIONS: usize = 256;

/// Default number of grid directions for `messages` messages.
pub fn default_starts(messages: usize) -> usize {
    1000.max(50 * messages)
}

/// `count` nearly uniform unit vectors on the sphere.
pub fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / count as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * i as f64;
            [rho * phi.cos(), rho * phi.sin(), z]
        })
        .collect()
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: &[f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

struct Sweep {
    vectors: Vec<[f64; 3]>,
    coeffs: Vec<f64>,
}

impl Sweep {
    fn new(vectors: Vec<[f64; 3]>) -> Self {
        let n = vectors.len();
        Self {
            coeffs: (0..n).map(|p| rank_coefficient(p, n)).collect(),
            vectors,
        }
    }

    fn w(&self, order: &[usize]) -> [f64; 3] {
        let mut w = [0.0; 3];
        for (c, &m) in self.coeffs.iter().zip(order) {
            for (wk, rk) in w.iter_mut().zip(&self.vectors[m]) {
                *wk += c * rk;
            }
        }
        w
    }

    /// Messages by ascending projection on `u`, ties by index.
    fn sorted(&self, u: &[f64; 3], order: &mut Vec<usize>) {
        let keys: Vec<f64> = self.vectors.iter().map(|r| dot(r, u)).collect();
        order.clear();
        order.extend(0..self.vectors.len());
        order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]).then(a.cmp(&b)));
    }

    /// Sort-and-renormalize from `u` until `|w|` stops increasing.
    fn ascend(&self, start: [f64; 3]) -> (Vec<usize>, f64, u64) {
        let mut u = start;
        let mut order = Vec::with_capacity(self.vectors.len());
        self.sorted(&u, &mut order);
        let mut w = self.w(&order);
        let mut best = norm(&w);
        let mut evaluated = 1;
        let mut next = Vec::with_capacity(order.len());
        for _ in 0..MAX_ITERATIONS {
            if best == 0.0 {
                break;
            }
            u = w.map(|x| x / best);
            self.sorted(&u, &mut next);
            if next == order {
                break;
            }
            let w_next = self.w(&next);
            let n_next = norm(&w_next);
            evaluated += 1;
            if n_next <= best {
                break;
            }
            std::mem::swap(&mut order, &mut next);
            w = w_next;
            best = n_next;
        }
        (order, best, evaluated)
    }

    fn canonical(order: Vec<usize>) -> Vec<usize> {
        match (order.first(), order.last()) {
            (Some(a), Some(b)) if a > b => order.into_iter().rev().collect(),
            _ => order,
        }
    }

    fn run(&self, seeds: &[[f64; 3]]) -> (Best, u64) {
        let m = self.vectors.len() as f64;
        let runs: Vec<(Vec<usize>, f64, u64)> = seeds.par_iter().map(|&u| self.ascend(u)).collect();
        let mut best = Best::default();
        let mut evaluated = 0;
        for (order, w, e) in runs {
            evaluated += e;
            best.consider(w / m, &Self::canonical(order));
        }
        (best, evaluated)
    }
}

/// Multi-start direction sweep over `starts` Fibonacci-sphere directions
/// plus every Bloch vector. Requires a qubit ensemble with uniform traces.
pub fn direction_sweep(ensemble: &Ensemble, starts: usize) -> Result<SearchResult> {
    let vectors = ensemble.uniform_bloch_vectors().ok_or(Error::NotQubitUniform)?;
    let sweep = Sweep::new(vectors);
    let mut seeds = fibonacci_sphere(starts);
    for r in &sweep.vectors {
        let n = norm(r);
        if n > 1e-12 {
            seeds.push(r.map(|x| x / n));
        }
    }
    if seeds.is_empty() {
        seeds.push([0.0, 0.0, 1.0]);
    }
    let (best, evaluated) = sweep.run(&seeds);
    Ok(SearchResult {
        ordering: Ordering::from_vec_unchecked(best.ordering),
        trace_norm: best.norm,
        evaluated,
    })
}

/// Compares a sweep result against `samples` pseudo-random orderings
/// (fixed seed). For uniform qubit ensembles the certificate at `n*` holds
/// against `n` exactly when `||E(n*)||_1 >= ||E(n)||_1`; any sampled
/// violation seeds a further ascent. Returns the possibly improved result
/// and the number of violations found.
pub fn spot_certify(ensemble: &Ensemble, result: SearchResult, samples: usize) -> Result<(SearchResult, usize)> {
    let vectors = ensemble.uniform_bloch_vectors().ok_or(Error::NotQubitUniform)?;
    let sweep = Sweep::new(vectors);
    let m = sweep.vectors.len() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6775_6573_7377_6f72);
    let mut best = Best {
        norm: result.trace_norm,
        ordering: result.ordering.as_slice().to_vec(),
    };
    let mut evaluated = result.evaluated;
    let mut violations = 0;
    let mut perm: Vec<usize> = (0..sweep.vectors.len()).collect();
    for _ in 0..samples {
        perm.shuffle(&mut rng);
        let w = sweep.w(&perm);
        evaluated += 1;
        if norm(&w) / m > best.norm + TIE_TOL {
            violations += 1;
            let (best_run, e) = sweep.run(&[w.map(|x| x / norm(&w))]);
            evaluated += e;
            best.consider(best_run.norm, &best_run.ordering);
        }
    }
    Ok((
        SearchResult {
            ordering: Ordering::from_vec_unchecked(best.ordering),
            trace_norm: best.norm,
            evaluated,
        },
        violations,
    ))
}
