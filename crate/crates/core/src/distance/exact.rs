//! Exact distances by shortest-path search over the permutation graph.
//!
//! Vertices are the `n!` permutations, edges are transpositions of two rank
//! positions with their (non-negative) weight. Relabeling candidates commutes
//! with position transpositions, so `d(p, s) = d(e, p⁻¹∘s)` and a single
//! search from the identity yields the distance between every pair.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::weights::{TranspositionWeights, WeightVector};
use crate::error::{Error, Result};
use crate::permutation::{check_same_len, lehmer, Ranking};

/// Largest `n` for which exact search is attempted unless overridden.
pub const EXACT_CAP: usize = 9;

/// Hard ceiling: indices and bitmasks are sized for this.
const MAX_N: usize = 12;

/// Which transpositions the search may use.
#[derive(Debug, Clone, PartialEq)]
pub enum MoveSet {
    Adjacent(WeightVector),
    General(TranspositionWeights),
}

impl MoveSet {
    pub fn n(&self) -> usize {
        match self {
            MoveSet::Adjacent(w) => w.n(),
            MoveSet::General(phi) => phi.n(),
        }
    }

    fn edges(&self) -> Vec<(usize, usize, f64)> {
        match self {
            MoveSet::Adjacent(w) => (0..w.n() - 1)
                .map(|k| (k, k + 1, w.as_slice()[k]))
                .collect(),
            MoveSet::General(phi) => {
                let n = phi.n();
                let mut out = Vec::new();
                for a in 0..n {
                    for b in (a + 1)..n {
                        let x = phi.get(a + 1, b + 1);
                        if x.is_finite() {
                            out.push((a, b, x));
                        }
                    }
                }
                out
            }
        }
    }
}

#[derive(PartialEq)]
struct Entry {
    cost: f64,
    idx: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.idx.cmp(&self.idx))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(MAX_N) {
        Err(Error::ExactCapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Dijkstra from `source`; stops early once `target` is settled.
fn search(n: usize, source: &[u8], target: Option<usize>, moves: &MoveSet) -> Vec<f64> {
    let edges = moves.edges();
    let mut dist = vec![f64::INFINITY; lehmer::factorial(n)];
    let mut done = vec![false; dist.len()];
    let mut heap = BinaryHeap::new();
    let src = lehmer::rank(source);
    dist[src] = 0.0;
    heap.push(Entry {
        cost: 0.0,
        idx: src,
    });
    let mut state = vec![0u8; n];
    while let Some(Entry { cost, idx }) = heap.pop() {
        if done[idx] {
            continue;
        }
        done[idx] = true;
        if Some(idx) == target {
            break;
        }
        lehmer::unrank(idx, &mut state);
        for &(a, b, w) in &edges {
            state.swap(a, b);
            let next = lehmer::rank(&state);
            state.swap(a, b);
            let c = cost + w;
            if !done[next] && c < dist[next] {
                dist[next] = c;
                heap.push(Entry { cost: c, idx: next });
            }
        }
    }
    dist
}

fn pair_distance(p: &Ranking, s: &Ranking, moves: &MoveSet, cap: usize) -> Result<f64> {
    check_same_len(p.len(), s.len())?;
    check_same_len(moves.n(), p.len())?;
    let n = p.len();
    check_cap(n, cap)?;
    let mut rel = vec![0u8; n];
    p.relative_zero_based(s, &mut rel);
    let dist = search(n, &rel, Some(0), moves);
    Ok(dist[0])
}

/// Minimum total weight of adjacent swaps turning `p` into `s`.
pub fn weighted_kendall_exact(p: &Ranking, s: &Ranking, w: &WeightVector) -> Result<f64> {
    weighted_kendall_exact_capped(p, s, w, EXACT_CAP)
}

pub fn weighted_kendall_exact_capped(
    p: &Ranking,
    s: &Ranking,
    w: &WeightVector,
    cap: usize,
) -> Result<f64> {
    pair_distance(p, s, &MoveSet::Adjacent(w.clone()), cap)
}

/// Minimum total weight of position transpositions `(a b)` turning `p` into `s`.
pub fn weighted_transposition_exact(
    p: &Ranking,
    s: &Ranking,
    phi: &TranspositionWeights,
) -> Result<f64> {
    weighted_transposition_exact_capped(p, s, phi, EXACT_CAP)
}

pub fn weighted_transposition_exact_capped(
    p: &Ranking,
    s: &Ranking,
    phi: &TranspositionWeights,
    cap: usize,
) -> Result<f64> {
    pair_distance(p, s, &MoveSet::General(phi.clone()), cap)
}

/// Distances from the identity to every permutation, for repeated queries.
#[derive(Debug, Clone)]
pub struct ExactTable {
    n: usize,
    dist: Vec<f64>,
}

impl ExactTable {
    pub fn build(moves: &MoveSet, cap: usize) -> Result<Self> {
        let n = moves.n();
        check_cap(n, cap)?;
        let identity: Vec<u8> = (0..n as u8).collect();
        Ok(ExactTable {
            n,
            dist: search(n, &identity, None, moves),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distance(&self, p: &Ranking, s: &Ranking) -> Result<f64> {
        check_same_len(self.n, p.len())?;
        check_same_len(self.n, s.len())?;
        let mut rel = [0u8; MAX_N];
        let rel = &mut rel[..self.n];
        p.relative_zero_based(s, rel);
        Ok(self.dist[lehmer::rank(rel)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::tests::arb_ranking;
    use proptest::prelude::*;

    fn r(v: &[usize]) -> Ranking {
        Ranking::new(v.to_vec()).unwrap()
    }

    fn wv(w: &[f64]) -> WeightVector {
        WeightVector::new(w.to_vec()).unwrap()
    }

    /// Independent check: Bellman-Ford style relaxation over explicit
    /// `Vec<usize>` states until nothing changes.
    fn relaxation_oracle(p: &[usize], s: &[usize], phi: &dyn Fn(usize, usize) -> f64) -> f64 {
        use std::collections::HashMap;
        let n = p.len();
        let mut states: Vec<Vec<usize>> = vec![p.to_vec()];
        let mut index = HashMap::new();
        index.insert(p.to_vec(), 0usize);
        let mut i = 0;
        while i < states.len() {
            for a in 0..n {
                for b in (a + 1)..n {
                    let mut t = states[i].clone();
                    t.swap(a, b);
                    if !index.contains_key(&t) {
                        index.insert(t.clone(), states.len());
                        states.push(t);
                    }
                }
            }
            i += 1;
        }
        let mut d = vec![f64::INFINITY; states.len()];
        d[0] = 0.0;
        loop {
            let mut changed = false;
            for u in 0..states.len() {
                if d[u].is_infinite() {
                    continue;
                }
                for a in 0..n {
                    for b in (a + 1)..n {
                        let w = phi(a + 1, b + 1);
                        if !w.is_finite() {
                            continue;
                        }
                        let mut t = states[u].clone();
                        t.swap(a, b);
                        let v = index[&t];
                        if d[u] + w < d[v] {
                            d[v] = d[u] + w;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        d[index[s]]
    }

    #[test]
    fn weighted_kendall_examples() {
        let p = r(&[1, 2, 3, 4, 5]);
        assert_eq!(
            weighted_kendall_exact(&p, &p, &wv(&[3., 1., 4., 1.])).unwrap(),
            0.0
        );
        assert_eq!(
            weighted_kendall_exact(&p, &r(&[2, 1, 3, 4, 5]), &wv(&[1., 0., 0., 0.])).unwrap(),
            1.0
        );
        assert_eq!(
            weighted_kendall_exact(&p, &r(&[5, 2, 3, 4, 1]), &wv(&[0., 1., 0., 0.])).unwrap(),
            1.0
        );
    }

    #[test]
    fn weighted_transposition_examples() {
        let cayley = TranspositionWeights::uniform(3).unwrap();
        let p = r(&[3, 1, 2]);
        assert_eq!(weighted_transposition_exact(&p, &p, &cayley).unwrap(), 0.0);
        assert_eq!(
            weighted_transposition_exact(&r(&[2, 1, 3]), &r(&[1, 2, 3]), &cayley).unwrap(),
            1.0
        );
        let phi = TranspositionWeights::from_matrix(&[
            vec![0., 1., 5.],
            vec![1., 0., 1.],
            vec![5., 1., 0.],
        ])
        .unwrap();
        assert_eq!(
            weighted_transposition_exact(&r(&[3, 2, 1]), &r(&[1, 2, 3]), &phi).unwrap(),
            3.0
        );
    }

    #[test]
    fn oracle_agrees_on_frozen_examples() {
        let w = [0., 1., 0., 0.];
        let phi = |a: usize, b: usize| if b == a + 1 { w[a - 1] } else { f64::INFINITY };
        // one swap across the costly boundary carries both 1 and 5 over it
        assert_eq!(
            relaxation_oracle(&[1, 2, 3, 4, 5], &[5, 2, 3, 4, 1], &phi),
            1.0
        );
        let phi3 = |a: usize, b: usize| if (a, b) == (1, 3) { 5.0 } else { 1.0 };
        assert_eq!(relaxation_oracle(&[3, 2, 1], &[1, 2, 3], &phi3), 3.0);
    }

    #[test]
    fn cap_is_enforced() {
        let e = Ranking::identity(10).unwrap();
        assert_eq!(
            weighted_kendall_exact(&e, &e, &WeightVector::uniform(10)),
            Err(Error::ExactCapExceeded {
                n: 10,
                cap: EXACT_CAP
            })
        );
        assert!(weighted_kendall_exact_capped(
            &Ranking::identity(4).unwrap(),
            &Ranking::identity(4).unwrap(),
            &WeightVector::uniform(4),
            3
        )
        .is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let e3 = Ranking::identity(3).unwrap();
        let e4 = Ranking::identity(4).unwrap();
        assert!(matches!(
            weighted_kendall_exact(&e3, &e4, &WeightVector::uniform(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(weighted_kendall_exact(&e3, &e3, &WeightVector::uniform(4)).is_err());
    }

    #[test]
    fn cayley_is_n_minus_cycles() {
        fn cycles(p: &Ranking) -> usize {
            let n = p.len();
            let mut seen = vec![false; n + 1];
            let mut c = 0;
            for start in 1..=n {
                if !seen[start] {
                    c += 1;
                    let mut x = start;
                    while !seen[x] {
                        seen[x] = true;
                        x = p.candidate_at(x);
                    }
                }
            }
            c
        }
        for n in 1..=5 {
            let phi = TranspositionWeights::uniform(n).unwrap();
            let table = ExactTable::build(&MoveSet::General(phi), EXACT_CAP).unwrap();
            let e = Ranking::identity(n).unwrap();
            let mut buf = vec![0u8; n];
            for i in 0..lehmer::factorial(n) {
                lehmer::unrank(i, &mut buf);
                let p = Ranking::from_zero_based(&buf);
                assert_eq!(table.distance(&e, &p).unwrap(), (n - cycles(&p)) as f64);
            }
        }
    }

    proptest! {
        #[test]
        fn search_matches_relaxation_oracle(
            p in arb_ranking(2..=5),
            seed in prop::collection::vec(0u8..4, 10),
            general in any::<bool>(),
        ) {
            let n = p.len();
            let s = Ranking::identity(n).unwrap();
            if general {
                let phi = TranspositionWeights::from_fn(n, |a, b| {
                    let x = seed[(a + 2 * b) % 10];
                    if x == 3 { f64::INFINITY } else { x as f64 }
                }).unwrap();
                let got = weighted_transposition_exact(&p, &s, &phi).unwrap();
                let want = relaxation_oracle(p.seq(), s.seq(), &|a, b| phi.get(a, b));
                prop_assert_eq!(got, want);
            } else {
                let w = WeightVector::new(seed[..n - 1].iter().map(|&x| x as f64).collect()).unwrap();
                let got = weighted_kendall_exact(&p, &s, &w).unwrap();
                let want = relaxation_oracle(p.seq(), s.seq(), &|a, b| {
                    if b == a + 1 { w.get(a) } else { f64::INFINITY }
                });
                prop_assert_eq!(got, want);
            }
        }

        #[test]
        fn table_matches_pair_search(
            p in arb_ranking(5..=5),
            s in arb_ranking(5..=5),
            w in prop::collection::vec(0u8..3, 4),
        ) {
            let w = WeightVector::new(w.into_iter().map(f64::from).collect()).unwrap();
            let table = ExactTable::build(&MoveSet::Adjacent(w.clone()), EXACT_CAP).unwrap();
            prop_assert_eq!(table.distance(&p, &s).unwrap(), weighted_kendall_exact(&p, &s, &w).unwrap());
        }
    }
}
