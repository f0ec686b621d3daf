//! Markov-chain aggregation: candidates are states, votes define transition
//! probabilities towards better-ranked candidates, and the aggregate orders
//! candidates by stationary probability.
//!
//! Three unweighted chains built from the `α` counts are provided alongside
//! the weighted `β` chain, whose transition strength towards a better-ranked
//! candidate grows with the swap weights separating the two ranks. Absorbing
//! candidates are peeled off and the chain is rebuilt on the rest.

use serde::{Deserialize, Serialize};

use crate::aggregate::{AggregationResult, Diagnostics, PeelRound};
use crate::distance::{Metric, Objective, WeightVector};
use crate::error::{Error, Result};
use crate::permutation::{check_same_len, Ranking, VoteProfile};

/// Row sums must be within this of 1.
pub const ROW_SUM_TOLERANCE: f64 = 1e-12;
/// A state is absorbing when its self-transition is within this of 1.
pub const ABSORBING_TOLERANCE: f64 = 1e-12;
/// Largest accepted `‖xP − x‖∞` for a stationary vector.
pub const STATIONARY_TOLERANCE: f64 = 1e-9;
/// Iteration stops early once the residual drops below this.
const STATIONARY_TARGET: f64 = 1e-13;
const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    n: usize,
    p: Vec<f64>,
}

impl TransitionMatrix {
    pub fn new(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidSize(0));
        }
        let mut p = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            check_same_len(n, row.len())?;
            if row.iter().any(|x| !(0.0..=1.0).contains(x)) {
                return Err(Error::InvalidWeights(format!(
                    "row {} has an entry outside [0, 1]",
                    i + 1
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(Error::InvalidWeights(format!(
                    "row {} sums to {sum}, not 1",
                    i + 1
                )));
            }
            p.extend_from_slice(row);
        }
        Ok(TransitionMatrix { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Probability of moving from state `i` to state `j` (0-based).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.p[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.p.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// States whose self-transition probability is 1.
    pub fn absorbing_states(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.get(i, i) >= 1.0 - ABSORBING_TOLERANCE)
            .collect()
    }

    fn left_multiply(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (o, &pij) in out.iter_mut().zip(self.row(i)) {
                *o += xi * pij;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryDistribution {
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Stationary vector reached from the uniform distribution.
///
/// Iterates the lazy chain `(I + P) / 2`, which has the same stationary
/// vectors as `P` but is aperiodic, so periodic chains converge too.
pub fn stationary(p: &TransitionMatrix) -> Result<StationaryDistribution> {
    let n = p.n;
    let mut x = vec![1.0 / n as f64; n];
    let mut xp = vec![0.0; n];
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        p.left_multiply(&x, &mut xp);
        residual = x
            .iter()
            .zip(&xp)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if residual < STATIONARY_TARGET {
            break;
        }
        for (a, b) in x.iter_mut().zip(&xp) {
            *a = 0.5 * (*a + b);
        }
        let total: f64 = x.iter().sum();
        x.iter_mut().for_each(|a| *a /= total);
        iterations += 1;
    }
    if residual >= STATIONARY_TOLERANCE {
        return Err(Error::NoConvergence {
            iterations,
            residual,
        });
    }
    Ok(StationaryDistribution {
        x,
        residual,
        iterations,
    })
}

/// `α[i][j]` (0-based): number of votes ranking candidate `j+1` at least as
/// high as candidate `i+1`.
pub fn alpha_counts(profile: &VoteProfile) -> Vec<Vec<usize>> {
    let n = profile.n();
    let mut alpha = vec![vec![0usize; n]; n];
    for v in profile {
        for i in 1..=n {
            for j in 1..=n {
                if v.rank_of(j) <= v.rank_of(i) {
                    alpha[i - 1][j - 1] += 1;
                }
            }
        }
    }
    alpha
}

/// One vote restricted to the surviving candidates: `(local index, rank)`
/// pairs sorted by rank. Ranks are the vote's original ranks, so they may
/// have gaps after peeling.
type Positioned = Vec<(usize, usize)>;

fn restrict(profile: &VoteProfile, alive: &[usize]) -> Vec<Positioned> {
    profile
        .iter()
        .map(|v| {
            let mut out: Positioned = alive
                .iter()
                .enumerate()
                .map(|(local, &c)| (local, v.rank_of(c)))
                .collect();
            out.sort_by_key(|&(_, r)| r);
            out
        })
        .collect()
}

fn average(rows: Vec<f64>, k: usize, m: usize) -> TransitionMatrix {
    let p = rows.into_iter().map(|x| x / m as f64).collect();
    TransitionMatrix { n: k, p }
}

fn case1(votes: &[Positioned], k: usize) -> TransitionMatrix {
    let mut reach = vec![false; k * k];
    for v in votes {
        for (r, &(i, _)) in v.iter().enumerate() {
            for &(j, _) in &v[..=r] {
                reach[i * k + j] = true;
            }
        }
    }
    let mut p = vec![0.0; k * k];
    for i in 0..k {
        let row = &reach[i * k..(i + 1) * k];
        let count = row.iter().filter(|&&b| b).count() as f64;
        for j in 0..k {
            if row[j] {
                p[i * k + j] = 1.0 / count;
            }
        }
    }
    TransitionMatrix { n: k, p }
}

fn case2(votes: &[Positioned], k: usize) -> TransitionMatrix {
    let mut acc = vec![0.0; k * k];
    for v in votes {
        for (r, &(i, _)) in v.iter().enumerate() {
            let share = 1.0 / (r + 1) as f64;
            for &(j, _) in &v[..=r] {
                acc[i * k + j] += share;
            }
        }
    }
    average(acc, k, votes.len())
}

fn case3(votes: &[Positioned], k: usize) -> TransitionMatrix {
    let mut acc = vec![0.0; k * k];
    let step = 1.0 / k as f64;
    for v in votes {
        for (r, &(i, _)) in v.iter().enumerate() {
            for &(j, _) in &v[..r] {
                acc[i * k + j] += step;
            }
            acc[i * k + i] += 1.0 - r as f64 * step;
        }
    }
    average(acc, k, votes.len())
}

/// β weights for one positioned vote, indexed by local candidate index.
fn beta_positioned(v: &Positioned, k: usize, w: &WeightVector) -> Vec<f64> {
    let ws = w.as_slice();
    let mut beta = vec![0.0; k * k];
    for &(i, ri) in v {
        // best[l] = max over l' in [l, ri) of w(l':ri) / (ri - l')
        let mut best = vec![0.0f64; ri];
        let mut suffix = 0.0;
        let mut running = f64::NEG_INFINITY;
        for l in (1..ri).rev() {
            suffix += ws[l - 1];
            running = running.max(suffix / (ri - l) as f64);
            best[l] = running;
        }
        for &(j, rj) in v {
            if rj < ri {
                beta[i * k + j] = best[rj];
            }
        }
    }
    for &(i, ri) in v {
        beta[i * k + i] = v
            .iter()
            .filter(|&&(_, r)| r > ri)
            .fold(0.0, |acc, &(l, _)| acc + beta[l * k + i]);
    }
    beta
}

/// `β[i][j]` (0-based) for a single vote.
pub fn beta_matrix(vote: &Ranking, w: &WeightVector) -> Result<Vec<Vec<f64>>> {
    check_same_len(w.n(), vote.len())?;
    let n = vote.len();
    let positioned: Positioned = (0..n).map(|c| (c, vote.rank_of(c + 1))).collect();
    let flat = beta_positioned(&positioned, n, w);
    Ok(flat.chunks(n).map(<[f64]>::to_vec).collect())
}

fn weighted(votes: &[Positioned], k: usize, w: &WeightVector) -> TransitionMatrix {
    let mut acc = vec![0.0; k * k];
    for v in votes {
        let beta = beta_positioned(v, k, w);
        for i in 0..k {
            let row = &beta[i * k..(i + 1) * k];
            let total: f64 = row.iter().sum();
            if total > 0.0 {
                for j in 0..k {
                    acc[i * k + j] += row[j] / total;
                }
            } else {
                acc[i * k + i] += 1.0;
            }
        }
    }
    average(acc, k, votes.len())
}

/// Which transition rule drives the chain.
#[derive(Debug, Clone, PartialEq)]
pub enum Chain {
    /// Uniform over every candidate some voter ranks at least as high.
    Case1,
    /// Per vote, uniform over the candidates ranked at least as high; averaged.
    Case2,
    /// Per vote, move to each better candidate with probability `1/n`; averaged.
    Case3,
    /// Per vote, proportional to the swap-weight derived `β`; averaged.
    Weighted(WeightVector),
}

impl Chain {
    pub fn name(&self) -> &'static str {
        match self {
            Chain::Case1 => "mc1",
            Chain::Case2 => "mc2",
            Chain::Case3 => "mc3",
            Chain::Weighted(_) => "mc",
        }
    }

    fn build(&self, profile: &VoteProfile, alive: &[usize]) -> TransitionMatrix {
        let votes = restrict(profile, alive);
        let k = alive.len();
        match self {
            Chain::Case1 => case1(&votes, k),
            Chain::Case2 => case2(&votes, k),
            Chain::Case3 => case3(&votes, k),
            Chain::Weighted(w) => weighted(&votes, k, w),
        }
    }

    /// Transition matrix over all candidates of `profile`.
    pub fn transitions(&self, profile: &VoteProfile) -> Result<TransitionMatrix> {
        if let Chain::Weighted(w) = self {
            profile.check_n(w.n())?;
        }
        let alive: Vec<usize> = (1..=profile.n()).collect();
        Ok(self.build(profile, &alive))
    }
}

pub fn transitions_case1(profile: &VoteProfile) -> TransitionMatrix {
    Chain::Case1.transitions(profile).expect("unweighted chain")
}

pub fn transitions_case2(profile: &VoteProfile) -> TransitionMatrix {
    Chain::Case2.transitions(profile).expect("unweighted chain")
}

pub fn transitions_case3(profile: &VoteProfile) -> TransitionMatrix {
    Chain::Case3.transitions(profile).expect("unweighted chain")
}

pub fn transitions_weighted(profile: &VoteProfile, w: &WeightVector) -> Result<TransitionMatrix> {
    Chain::Weighted(w.clone()).transitions(profile)
}

fn mean_rank(profile: &VoteProfile, c: usize) -> f64 {
    profile.iter().map(|v| v.rank_of(c) as f64).sum::<f64>() / profile.m() as f64
}

fn order_by_mean_rank(profile: &VoteProfile, cands: &mut [usize]) {
    cands.sort_by(|&a, &b| {
        mean_rank(profile, a)
            .total_cmp(&mean_rank(profile, b))
            .then(a.cmp(&b))
    });
}

/// Ranks candidates by stationary probability (descending, ties by id),
/// peeling absorbing candidates first and re-running the chain on the rest.
/// Peeled candidates keep their original ranks in every vote, so the
/// weighted chain keeps applying `w` to the same rank positions.
pub fn mc_aggregate(
    profile: &VoteProfile,
    chain: &Chain,
    objective: &Objective,
) -> Result<AggregationResult> {
    if let Chain::Weighted(w) = chain {
        profile.check_n(w.n())?;
    }
    let mut alive: Vec<usize> = (1..=profile.n()).collect();
    let mut order = Vec::with_capacity(profile.n());
    let mut rounds = Vec::new();
    while !alive.is_empty() {
        let p = chain.build(profile, &alive);
        let x = stationary(&p)?.x;
        let mut absorbing: Vec<usize> = if alive.len() > 1 {
            p.absorbing_states().into_iter().map(|i| alive[i]).collect()
        } else {
            Vec::new()
        };
        rounds.push(PeelRound {
            candidates: alive.clone(),
            stationary: x.clone(),
            absorbing: absorbing.clone(),
        });
        if absorbing.is_empty() || absorbing.len() == alive.len() {
            let mut rest: Vec<(usize, f64)> = alive.iter().copied().zip(x).collect();
            if absorbing.is_empty() {
                rest.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
                order.extend(rest.into_iter().map(|(c, _)| c));
            } else {
                order_by_mean_rank(profile, &mut absorbing);
                order.extend(absorbing);
            }
            break;
        }
        order_by_mean_rank(profile, &mut absorbing);
        alive.retain(|c| !absorbing.contains(c));
        order.extend(absorbing);
    }
    let ranking = Ranking::new(order)?;
    AggregationResult::evaluate(
        chain.name(),
        ranking,
        profile,
        objective,
        Diagnostics::Markov {
            chain: chain.name().to_string(),
            rounds,
        },
    )
}

/// Weighted chain scored by the exact weighted Kendall distance.
pub fn mc_aggregate_weighted(profile: &VoteProfile, w: &WeightVector) -> Result<AggregationResult> {
    mc_aggregate(
        profile,
        &Chain::Weighted(w.clone()),
        &Objective::new(Metric::WeightedKendall(w.clone())),
    )
}
