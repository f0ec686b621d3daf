//! Distances between rankings and the cumulative aggregation objective.

mod exact;
mod weights;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use exact::{
    weighted_kendall_exact, weighted_kendall_exact_capped, weighted_transposition_exact,
    weighted_transposition_exact_capped, ExactTable, MoveSet, EXACT_CAP,
};
pub use weights::{
    path_table_from_adjacent, path_table_general, prefix_weight, PathTable, TranspositionWeights,
    WeightVector,
};

use crate::error::{Error, Result};
use crate::permutation::{check_same_len, Ranking, VoteProfile};

/// Number of candidate pairs ordered differently by `p` and `s`.
pub fn kendall_tau(p: &Ranking, s: &Ranking) -> Result<u64> {
    check_same_len(p.len(), s.len())?;
    let n = p.len();
    let mut count = 0u64;
    for a in 0..n {
        for b in (a + 1)..n {
            // p ranks p.seq[a] before p.seq[b]; count when s disagrees
            if s.rank_of(p.seq()[a]) > s.rank_of(p.seq()[b]) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `Σ_c |p⁻¹(c) − s⁻¹(c)|`.
pub fn spearman_footrule(p: &Ranking, s: &Ranking) -> Result<u64> {
    check_same_len(p.len(), s.len())?;
    Ok(p.pos()
        .iter()
        .zip(s.pos())
        .map(|(&a, &b)| a.abs_diff(b) as u64)
        .sum())
}

/// Generalized footrule `D(p, s) = Σ_c f(p⁻¹(c), s⁻¹(c))`: every candidate
/// pays the cheapest path between its two ranks.
pub fn generalized_footrule(p: &Ranking, s: &Ranking, f: &PathTable) -> Result<f64> {
    check_same_len(p.len(), s.len())?;
    check_same_len(f.n(), p.len())?;
    Ok(p.pos()
        .iter()
        .zip(s.pos())
        .map(|(&a, &b)| f.get(a, b))
        .sum())
}

/// Lifts a rank-space distance to element space by comparing inverses, so
/// weights attach to candidates instead of positions.
pub fn element_space<T>(d: impl Fn(&Ranking, &Ranking) -> T) -> impl Fn(&Ranking, &Ranking) -> T {
    move |p, s| d(&p.invert(), &s.invert())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    #[default]
    Ranks,
    Elements,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Metric {
    /// Exact weighted Kendall distance (shortest path over adjacent swaps).
    WeightedKendall(WeightVector),
    /// Exact weighted transposition distance.
    WeightedTransposition(TranspositionWeights),
    /// Generalized footrule `D` over a path table.
    GeneralizedFootrule(PathTable),
    KendallTau,
    SpearmanFootrule,
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::WeightedKendall(_) => "weighted-kendall",
            Metric::WeightedTransposition(_) => "weighted-transposition",
            Metric::GeneralizedFootrule(_) => "generalized-footrule",
            Metric::KendallTau => "kendall-tau",
            Metric::SpearmanFootrule => "spearman-footrule",
        }
    }

    /// Whether evaluating this metric needs a search over `n!` states.
    pub fn needs_search(&self) -> bool {
        matches!(
            self,
            Metric::WeightedKendall(_) | Metric::WeightedTransposition(_)
        )
    }

    /// The generalized footrule bound paired with a search-based metric.
    pub fn footrule_bound(&self) -> Option<Metric> {
        match self {
            Metric::WeightedKendall(w) => {
                Some(Metric::GeneralizedFootrule(path_table_from_adjacent(w)))
            }
            Metric::WeightedTransposition(phi) => {
                Some(Metric::GeneralizedFootrule(path_table_general(phi)))
            }
            _ => None,
        }
    }

    fn n(&self) -> Option<usize> {
        match self {
            Metric::WeightedKendall(w) => Some(w.n()),
            Metric::WeightedTransposition(phi) => Some(phi.n()),
            Metric::GeneralizedFootrule(f) => Some(f.n()),
            Metric::KendallTau | Metric::SpearmanFootrule => None,
        }
    }
}

/// Result of evaluating `Σ_l d(p, σ_l)` over a profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveValue {
    pub cumulative: f64,
    pub average: f64,
}

/// A metric bound to a space and an exact-search cap. Search-based metrics
/// build their distance table once on first use.
#[derive(Debug)]
pub struct Objective {
    metric: Metric,
    space: Space,
    exact_cap: usize,
    table: OnceLock<ExactTable>,
}

impl Clone for Objective {
    fn clone(&self) -> Self {
        Objective {
            metric: self.metric.clone(),
            space: self.space,
            exact_cap: self.exact_cap,
            table: self.table.clone(),
        }
    }
}

impl Objective {
    pub fn new(metric: Metric) -> Self {
        Objective {
            metric,
            space: Space::Ranks,
            exact_cap: EXACT_CAP,
            table: OnceLock::new(),
        }
    }

    pub fn with_space(mut self, space: Space) -> Self {
        self.space = space;
        self
    }

    pub fn with_exact_cap(mut self, cap: usize) -> Self {
        self.exact_cap = cap;
        self.table = OnceLock::new();
        self
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn exact_cap(&self) -> usize {
        self.exact_cap
    }

    /// True if this objective can be evaluated for rankings of size `n`.
    pub fn supports(&self, n: usize) -> bool {
        !self.metric.needs_search() || n <= self.exact_cap
    }

    /// The objective itself when evaluable at size `n`, otherwise its
    /// generalized-footrule bound. The flag is `true` for the exact case.
    pub fn exact_or_bound(&self, n: usize) -> (Objective, bool) {
        if self.supports(n) {
            return (self.clone(), true);
        }
        let bound = self
            .metric
            .footrule_bound()
            .expect("only search-based metrics can be unsupported");
        (
            Objective::new(bound)
                .with_space(self.space)
                .with_exact_cap(self.exact_cap),
            false,
        )
    }

    fn table(&self) -> Result<&ExactTable> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let moves = match &self.metric {
            Metric::WeightedKendall(w) => MoveSet::Adjacent(w.clone()),
            Metric::WeightedTransposition(phi) => MoveSet::General(phi.clone()),
            _ => unreachable!("table requested for a closed-form metric"),
        };
        let built = ExactTable::build(&moves, self.exact_cap)?;
        Ok(self.table.get_or_init(|| built))
    }

    fn rank_space_distance(&self, p: &Ranking, s: &Ranking) -> Result<f64> {
        if let Some(n) = self.metric.n() {
            check_same_len(n, p.len())?;
        }
        match &self.metric {
            Metric::WeightedKendall(_) | Metric::WeightedTransposition(_) => {
                if p.len() > self.exact_cap {
                    return Err(Error::ExactCapExceeded {
                        n: p.len(),
                        cap: self.exact_cap,
                    });
                }
                self.table()?.distance(p, s)
            }
            Metric::GeneralizedFootrule(f) => generalized_footrule(p, s, f),
            Metric::KendallTau => kendall_tau(p, s).map(|x| x as f64),
            Metric::SpearmanFootrule => spearman_footrule(p, s).map(|x| x as f64),
        }
    }

    pub fn distance(&self, p: &Ranking, s: &Ranking) -> Result<f64> {
        match self.space {
            Space::Ranks => self.rank_space_distance(p, s),
            Space::Elements => element_space(|a, b| self.rank_space_distance(a, b))(p, s),
        }
    }

    pub fn cumulative(&self, p: &Ranking, profile: &VoteProfile) -> Result<ObjectiveValue> {
        profile.check_n(p.len())?;
        let mut total = 0.0;
        match self.space {
            Space::Ranks => {
                for v in profile {
                    total += self.rank_space_distance(p, v)?;
                }
            }
            Space::Elements => {
                let p = p.invert();
                for v in profile {
                    total += self.rank_space_distance(&p, &v.invert())?;
                }
            }
        }
        Ok(ObjectiveValue {
            cumulative: total,
            average: total / profile.m() as f64,
        })
    }

    /// Path table whose generalized footrule bounds (or equals) this metric.
    pub fn path_table(&self, n: usize) -> Result<PathTable> {
        if let Some(k) = self.metric.n() {
            check_same_len(k, n)?;
        }
        Ok(match &self.metric {
            Metric::WeightedKendall(w) => path_table_from_adjacent(w),
            Metric::WeightedTransposition(phi) => path_table_general(phi),
            Metric::GeneralizedFootrule(f) => f.clone(),
            Metric::KendallTau => path_table_from_adjacent(&WeightVector::uniform(n)),
            Metric::SpearmanFootrule => path_table_general(&TranspositionWeights::footrule(n)?),
        })
    }
}

/// `Σ_l d(p, σ_l)` together with its average over the `m` votes.
pub fn cumulative_objective(
    p: &Ranking,
    profile: &VoteProfile,
    objective: &Objective,
) -> Result<ObjectiveValue> {
    objective.cumulative(p, profile)
}
