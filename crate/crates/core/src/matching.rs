//! Aggregation by minimum-weight bipartite matching on the generalized
//! footrule, and greedy adjacent-swap descent started from it.

use crate::aggregate::{with_space, AggregationResult, DescentStep, Diagnostics};
use crate::distance::{Objective, PathTable};
use crate::error::{Error, Result};
use crate::permutation::{Ranking, VoteProfile};

/// `C[i][j]`: cost of placing candidate `j` at rank `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    c: Vec<f64>,
}

impl CostMatrix {
    pub fn new(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidSize(0));
        }
        let mut c = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidCost(format!(
                    "matrix is not square: row of length {} in a {n}-row matrix",
                    row.len()
                )));
            }
            for &x in row {
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidCost(format!(
                        "entries must be finite and non-negative, got {x}"
                    )));
                }
            }
            c.extend_from_slice(row);
        }
        Ok(CostMatrix { n, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cost of candidate `j` at rank `i`, both 1-based.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.c[(i - 1) * self.n + (j - 1)]
    }

    /// Total cost of the placement described by `ranking`.
    pub fn cost_of(&self, ranking: &Ranking) -> f64 {
        (1..=self.n)
            .map(|i| self.get(i, ranking.candidate_at(i)))
            .sum()
    }
}

/// `C[i][j] = Σ_l f(i, σ_l⁻¹(j))`.
pub fn build_cost_matrix(profile: &VoteProfile, f: &PathTable) -> Result<CostMatrix> {
    profile.check_n(f.n())?;
    if !f.is_finite() {
        return Err(Error::InvalidCost(
            "path table has unreachable position pairs".into(),
        ));
    }
    let n = profile.n();
    let mut c = vec![0.0; n * n];
    for i in 1..=n {
        for j in 1..=n {
            c[(i - 1) * n + (j - 1)] = profile.iter().map(|v| f.get(i, v.rank_of(j))).sum();
        }
    }
    Ok(CostMatrix { n, c })
}

/// Minimum cost of a perfect matching (Hungarian method with potentials,
/// O(n³)); `row_of[j]` receives the row matched to column `j` (1-based).
fn hungarian(n: usize, a: impl Fn(usize, usize) -> f64, row_of: &mut [usize]) {
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut way = vec![0usize; n + 1];
    row_of.iter_mut().for_each(|r| *r = 0);
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = a(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
}

/// Minimum cost of assigning `rows` to `cols` (same length) in `cost`.
fn sub_assignment_cost(cost: &CostMatrix, rows: &[usize], cols: &[usize]) -> f64 {
    let k = rows.len();
    if k == 0 {
        return 0.0;
    }
    let mut row_of = vec![0usize; k + 1];
    hungarian(k, |i, j| cost.get(rows[i - 1], cols[j - 1]), &mut row_of);
    (1..=k)
        .map(|j| cost.get(rows[row_of[j] - 1], cols[j - 1]))
        .sum()
}

/// Minimum-cost perfect matching of ranks to candidates. Among optimal
/// matchings the lexicographically smallest ranking is returned, so the
/// answer does not depend on solver internals. Returns the ranking and its
/// cost.
pub fn min_cost_assignment(cost: &CostMatrix) -> (Ranking, f64) {
    let n = cost.n;
    let all: Vec<usize> = (1..=n).collect();
    let optimum = sub_assignment_cost(cost, &all, &all);
    let slack = 1e-9 * optimum.abs().max(1.0);
    let mut free: Vec<usize> = all.clone();
    let mut fixed = 0.0;
    let mut seq = Vec::with_capacity(n);
    for i in 1..=n {
        let rest_rows: Vec<usize> = ((i + 1)..=n).collect();
        let mut chosen = None;
        for (idx, &j) in free.iter().enumerate() {
            let rest_cols: Vec<usize> = free.iter().copied().filter(|&c| c != j).collect();
            let total = fixed + cost.get(i, j) + sub_assignment_cost(cost, &rest_rows, &rest_cols);
            if total <= optimum + slack {
                chosen = Some(idx);
                break;
            }
        }
        // rounding could in principle reject every column; fall back to the cheapest completion
        let idx = chosen.unwrap_or_else(|| {
            (0..free.len())
                .min_by(|&x, &y| {
                    let c = |idx: usize| {
                        let j = free[idx];
                        let rest: Vec<usize> = free.iter().copied().filter(|&c| c != j).collect();
                        cost.get(i, j) + sub_assignment_cost(cost, &rest_rows, &rest)
                    };
                    c(x).total_cmp(&c(y))
                })
                .expect("a free column remains")
        });
        let j = free.remove(idx);
        fixed += cost.get(i, j);
        seq.push(j);
    }
    let ranking = Ranking::new(seq).expect("matching is a permutation");
    let total = cost.cost_of(&ranking);
    (ranking, total)
}

/// Median under the generalized footrule `D` of `objective`'s metric, found
/// exactly by matching. The reported objective is the exact distance when
/// `n` is within the exact cap and the `D` bound otherwise.
pub fn aggregate_matching(
    profile: &VoteProfile,
    objective: &Objective,
) -> Result<AggregationResult> {
    with_space(profile, objective, |profile, objective| {
        let f = objective.path_table(profile.n())?;
        let cost = build_cost_matrix(profile, &f)?;
        let (ranking, assignment_cost) = min_cost_assignment(&cost);
        AggregationResult::evaluate(
            "matching",
            ranking,
            profile,
            objective,
            Diagnostics::Matching { assignment_cost },
        )
    })
}

/// Greedy adjacent-swap descent. Each step moves to the best strictly
/// improving neighbour (lowest swap index on ties) and stops at a local
/// minimum. Starts from the matching aggregate unless `start` is given.
pub fn bmls(
    profile: &VoteProfile,
    objective: &Objective,
    start: Option<Ranking>,
) -> Result<AggregationResult> {
    if let Some(s) = &start {
        profile.check_n(s.len())?;
    }
    let start = match (start, objective.space()) {
        (Some(s), crate::distance::Space::Elements) => Some(s.invert()),
        (s, _) => s,
    };
    with_space(profile, objective, |profile, objective| {
        let start = match start {
            Some(s) => s,
            None => aggregate_matching(profile, objective)?.ranking,
        };
        let (eval, exact) = objective.exact_or_bound(profile.n());
        let start_objective = eval.cumulative(&start, profile)?.cumulative;
        let mut current = start.clone();
        let mut current_obj = start_objective;
        let mut steps = Vec::new();
        loop {
            let mut best: Option<(usize, Ranking, f64)> = None;
            for k in 1..profile.n() {
                let cand = current.swap_adjacent(k)?;
                let obj = eval.cumulative(&cand, profile)?.cumulative;
                if obj < current_obj && best.as_ref().is_none_or(|(_, _, b)| obj < *b) {
                    best = Some((k, cand, obj));
                }
            }
            match best {
                Some((k, next, obj)) => {
                    steps.push(DescentStep {
                        swap: k,
                        objective: obj,
                    });
                    current = next;
                    current_obj = obj;
                }
                None => break,
            }
        }
        AggregationResult::evaluate(
            "bmls",
            current,
            profile,
            objective,
            Diagnostics::Descent {
                start,
                start_objective,
                steps,
                surrogate: !exact,
            },
        )
    })
}
