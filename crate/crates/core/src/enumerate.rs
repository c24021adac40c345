//! Depth-first enumeration of orderings with incremental score operators.
//!
//! The score operator of an ordering is a weighted sum over ranks, so a
//! depth-first walk that fixes one rank per level only adds one term per
//! node. Work is split into independent units by the first decision (the
//! rank-1 message, or the outermost pair for centrally symmetric search);
//! units run in parallel and their results come back in unit order, so any
//! reduction over them is deterministic regardless of thread count.

use rayon::prelude::*;

use crate::operator::{HermitianOperator, Qubit2};

/// Trace norms closer than this count as ties.
pub const TIE_TOL: f64 = 1e-12;

/// Integer rank coefficient `2t - |M| - 1` for 0-based position `pos`.
#[inline]
pub(crate) fn rank_coefficient(pos: usize, n: usize) -> f64 {
    (2 * pos as i64 + 1 - n as i64) as f64
}

/// Accumulates `sum_k coeff_k * item_k` for a fixed list of item operators.
pub(crate) trait ScoreKernel: Sync {
    type Acc: Clone + Send;

    fn zero(&self) -> Self::Acc;
    fn accumulate(&self, src: &Self::Acc, coeff: f64, item: usize, dst: &mut Self::Acc);
    fn trace_norm(&self, acc: &Self::Acc) -> f64;
    /// Smallest eigenvalue of `reference + sign * acc`.
    fn shifted_min_eigenvalue(&self, reference: &Self::Acc, acc: &Self::Acc, sign: f64) -> f64;
    fn lift(&self, op: &HermitianOperator) -> Self::Acc;
}

pub(crate) struct QubitKernel {
    items: Vec<Qubit2>,
}

impl QubitKernel {
    pub fn new(items: &[HermitianOperator]) -> Self {
        Self {
            items: items.iter().map(Qubit2::of).collect(),
        }
    }
}

impl ScoreKernel for QubitKernel {
    type Acc = Qubit2;

    fn zero(&self) -> Qubit2 {
        Qubit2::default()
    }

    #[inline]
    fn accumulate(&self, src: &Qubit2, coeff: f64, item: usize, dst: &mut Qubit2) {
        let it = &self.items[item];
        dst.a = src.a + coeff * it.a;
        dst.c = src.c + coeff * it.c;
        dst.b = src.b + it.b * coeff;
    }

    #[inline]
    fn trace_norm(&self, acc: &Qubit2) -> f64 {
        let mean = 0.5 * (acc.a + acc.c);
        let hd = 0.5 * (acc.a - acc.c);
        let r = (hd * hd + acc.b.norm_sqr()).sqrt();
        2.0 * mean.abs().max(r)
    }

    #[inline]
    fn shifted_min_eigenvalue(&self, reference: &Qubit2, acc: &Qubit2, sign: f64) -> f64 {
        let q = Qubit2 {
            a: reference.a + sign * acc.a,
            c: reference.c + sign * acc.c,
            b: reference.b + acc.b * sign,
        };
        q.mean() - q.radius()
    }

    fn lift(&self, op: &HermitianOperator) -> Qubit2 {
        Qubit2::of(op)
    }
}

pub(crate) struct DenseKernel {
    dim: usize,
    items: Vec<HermitianOperator>,
}

impl DenseKernel {
    pub fn new(dim: usize, items: &[HermitianOperator]) -> Self {
        Self {
            dim,
            items: items.to_vec(),
        }
    }
}

impl ScoreKernel for DenseKernel {
    type Acc = HermitianOperator;

    fn zero(&self) -> HermitianOperator {
        HermitianOperator::zeros(self.dim)
    }

    fn accumulate(&self, src: &HermitianOperator, coeff: f64, item: usize, dst: &mut HermitianOperator) {
        dst.assign_add_scaled(src, coeff, &self.items[item]);
    }

    fn trace_norm(&self, acc: &HermitianOperator) -> f64 {
        acc.trace_norm()
    }

    fn shifted_min_eigenvalue(&self, reference: &HermitianOperator, acc: &HermitianOperator, sign: f64) -> f64 {
        let mut m = reference.clone();
        m.add_scaled(sign, acc);
        m.min_eigenvalue()
    }

    fn lift(&self, op: &HermitianOperator) -> HermitianOperator {
        op.clone()
    }
}

/// Running maximum of the trace norm with a deterministic tie-break: among
/// norms within [`TIE_TOL`], the lexicographically smallest message
/// sequence wins.
#[derive(Debug, Clone, PartialEq)]
pub struct Best {
    pub norm: f64,
    pub ordering: Vec<usize>,
}

impl Default for Best {
    fn default() -> Self {
        Self {
            norm: f64::NEG_INFINITY,
            ordering: Vec::new(),
        }
    }
}

impl Best {
    /// Cheap pre-filter before building a candidate ordering.
    #[inline]
    pub fn admits(&self, norm: f64) -> bool {
        norm >= self.norm - TIE_TOL
    }

    pub fn consider(&mut self, norm: f64, ordering: &[usize]) {
        let better = norm > self.norm + TIE_TOL
            || (norm >= self.norm - TIE_TOL && ordering < self.ordering.as_slice());
        if better || self.ordering.is_empty() {
            self.norm = norm;
            self.ordering.clear();
            self.ordering.extend_from_slice(ordering);
        }
    }

    pub fn merge(&mut self, other: &Best) {
        if !other.ordering.is_empty() {
            self.consider(other.norm, &other.ordering);
        }
    }
}

/// Per-unit state of a search: a reducer plus a leaf counter.
pub(crate) trait LeafVisitor<A>: Sync {
    type State: Send;

    fn init(&self) -> Self::State;
    fn visit(&self, state: &mut Self::State, acc: &A, ordering: &[usize]);
}

struct Walk<'a, K: ScoreKernel, V: LeafVisitor<K::Acc>> {
    kernel: &'a K,
    visitor: &'a V,
    state: V::State,
    n: usize,
    perm: Vec<usize>,
    accs: Vec<K::Acc>,
    leaves: u64,
}

/// Visits every ordering of `n` messages whose score operator is built from
/// `kernel` items indexed by message. With `dedup`, only orderings whose
/// rank-1 message index is below the rank-`n` message index are visited
/// (one of each reversal pair). Returns one `(state, leaves)` per unit, in
/// unit order.
pub(crate) fn walk_orderings<K, V>(kernel: &K, n: usize, dedup: bool, visitor: &V) -> Vec<(V::State, u64)>
where
    K: ScoreKernel,
    V: LeafVisitor<K::Acc>,
{
    assert!((1..=64).contains(&n));
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut w = Walk {
                kernel,
                visitor,
                state: visitor.init(),
                n,
                perm: vec![0; n],
                accs: vec![kernel.zero(); n + 1],
                leaves: 0,
            };
            w.perm[0] = first;
            let (lo, hi) = w.accs.split_at_mut(1);
            kernel.accumulate(&lo[0], rank_coefficient(0, n), first, &mut hi[0]);
            w.descend(1, 1u64 << first, first, dedup);
            (w.state, w.leaves)
        })
        .collect()
}

impl<K: ScoreKernel, V: LeafVisitor<K::Acc>> Walk<'_, K, V> {
    fn descend(&mut self, depth: usize, used: u64, first: usize, dedup: bool) {
        if depth == self.n {
            self.leaves += 1;
            self.visitor.visit(&mut self.state, &self.accs[depth], &self.perm);
            return;
        }
        let coeff = rank_coefficient(depth, self.n);
        let last = depth + 1 == self.n;
        for m in 0..self.n {
            if used >> m & 1 == 1 || (dedup && last && m < first) {
                continue;
            }
            self.perm[depth] = m;
            let (lo, hi) = self.accs.split_at_mut(depth + 1);
            self.kernel.accumulate(&lo[depth], coeff, m, &mut hi[0]);
            self.descend(depth + 1, used | 1u64 << m, first, dedup);
        }
    }
}

/// Kernel items for a pairing search: item `2p + o` is `M(x) - M(y)` for
/// pair `p` in orientation `o` (`x` at the low rank).
pub(crate) fn pair_items(operators: &[HermitianOperator], pairs: &[(usize, usize)]) -> Vec<HermitianOperator> {
    pairs
        .iter()
        .flat_map(|&(a, b)| [&operators[a] - &operators[b], &operators[b] - &operators[a]])
        .collect()
}

struct PairWalk<'a, K: ScoreKernel, V: LeafVisitor<K::Acc>> {
    kernel: &'a K,
    visitor: &'a V,
    state: V::State,
    n: usize,
    pairs: &'a [(usize, usize)],
    perm: Vec<usize>,
    accs: Vec<K::Acc>,
    leaves: u64,
}

/// Visits orderings in which ranks `t` and `n + 1 - t` always hold the two
/// members of one pair. The kernel must be built from [`pair_items`].
pub(crate) fn walk_paired_orderings<K, V>(
    kernel: &K,
    pairs: &[(usize, usize)],
    dedup: bool,
    visitor: &V,
) -> Vec<(V::State, u64)>
where
    K: ScoreKernel,
    V: LeafVisitor<K::Acc>,
{
    let slots = pairs.len();
    let n = 2 * slots;
    assert!((1..=32).contains(&slots));
    let orientations = if dedup { 1 } else { 2 };
    let units: Vec<(usize, usize)> = (0..slots)
        .flat_map(|p| (0..orientations).map(move |o| (p, o)))
        .collect();
    units
        .into_par_iter()
        .map(|(p, o)| {
            let mut w = PairWalk {
                kernel,
                visitor,
                state: visitor.init(),
                n,
                pairs,
                perm: vec![0; n],
                accs: vec![kernel.zero(); slots + 1],
                leaves: 0,
            };
            w.place(0, p, o);
            w.descend(1, 1u64 << p);
            (w.state, w.leaves)
        })
        .collect()
}

impl<K: ScoreKernel, V: LeafVisitor<K::Acc>> PairWalk<'_, K, V> {
    #[inline]
    fn place(&mut self, slot: usize, p: usize, o: usize) {
        let (a, b) = self.pairs[p];
        let (low, high) = if o == 0 { (a, b) } else { (b, a) };
        self.perm[slot] = low;
        self.perm[self.n - 1 - slot] = high;
        let (lo, hi) = self.accs.split_at_mut(slot + 1);
        self.kernel
            .accumulate(&lo[slot], rank_coefficient(slot, self.n), 2 * p + o, &mut hi[0]);
    }

    fn descend(&mut self, slot: usize, used: u64) {
        if slot == self.pairs.len() {
            self.leaves += 1;
            self.visitor.visit(&mut self.state, &self.accs[slot], &self.perm);
            return;
        }
        for p in 0..self.pairs.len() {
            if used >> p & 1 == 1 {
                continue;
            }
            for o in 0..2 {
                self.place(slot, p, o);
                self.descend(slot + 1, used | 1u64 << p);
            }
        }
    }
}

/// Keeps the trace-norm maximizer.
pub(crate) struct MaxNorm<'a, K>(pub &'a K);

impl<K: ScoreKernel> LeafVisitor<K::Acc> for MaxNorm<'_, K> {
    type State = Best;

    fn init(&self) -> Best {
        Best::default()
    }

    #[inline]
    fn visit(&self, best: &mut Best, acc: &K::Acc, ordering: &[usize]) {
        let norm = self.0.trace_norm(acc);
        if best.admits(norm) {
            best.consider(norm, ordering);
        }
    }
}

/// Tracks `min over visited n of lambda_min(reference + s * E(n))` for both
/// signs `s = +-1`. With `reference = 0` this is the smallest eigenvalue over
/// `E(n)` and `E(reversed n) = -E(n)`.
pub(crate) struct MinShifted<'a, K: ScoreKernel> {
    pub kernel: &'a K,
    pub reference: K::Acc,
}

impl<K: ScoreKernel> LeafVisitor<K::Acc> for MinShifted<'_, K>
where
    K::Acc: Sync,
{
    type State = f64;

    fn init(&self) -> f64 {
        f64::INFINITY
    }

    #[inline]
    fn visit(&self, min: &mut f64, acc: &K::Acc, _ordering: &[usize]) {
        let lo = self
            .kernel
            .shifted_min_eigenvalue(&self.reference, acc, -1.0)
            .min(self.kernel.shifted_min_eigenvalue(&self.reference, acc, 1.0));
        if lo < *min {
            *min = lo;
        }
    }
}

/// Reduces per-unit maxima in unit order.
pub(crate) fn reduce_best(units: Vec<(Best, u64)>) -> (Best, u64) {
    let mut best = Best::default();
    let mut leaves = 0;
    for (b, l) in units {
        best.merge(&b);
        leaves += l;
    }
    (best, leaves)
}
