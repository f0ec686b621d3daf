//! Output of every aggregation method.

use serde::{Deserialize, Serialize};

use crate::distance::{Objective, Space};
use crate::error::Result;
use crate::permutation::{Ranking, VoteProfile};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregationResult {
    pub method: String,
    pub ranking: Ranking,
    pub cumulative: f64,
    pub average: f64,
    /// `false` when `cumulative` is the generalized-footrule bound rather
    /// than the exact distance.
    pub exact: bool,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostics {
    None,
    Matching {
        assignment_cost: f64,
    },
    Descent {
        start: Ranking,
        start_objective: f64,
        steps: Vec<DescentStep>,
        /// Descent ran on the footrule bound because `n` exceeds the exact cap.
        surrogate: bool,
    },
    Markov {
        chain: String,
        rounds: Vec<PeelRound>,
    },
    Exhaustive {
        evaluated: usize,
        ties: usize,
    },
    BestInput {
        vote_index: usize,
    },
    Scores {
        scores: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentStep {
    /// Ranks `swap` and `swap + 1` were exchanged.
    pub swap: usize,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeelRound {
    /// Candidates still in play, ascending.
    pub candidates: Vec<usize>,
    /// Stationary probability of each entry of `candidates`.
    pub stationary: Vec<f64>,
    /// Candidates found absorbing and removed after this round.
    pub absorbing: Vec<usize>,
}

impl AggregationResult {
    /// Scores `ranking` against `profile`, using the exact objective when the
    /// size allows and the footrule bound otherwise.
    pub fn evaluate(
        method: impl Into<String>,
        ranking: Ranking,
        profile: &VoteProfile,
        objective: &Objective,
        diagnostics: Diagnostics,
    ) -> Result<Self> {
        let (eval, exact) = objective.exact_or_bound(profile.n());
        let value = eval.cumulative(&ranking, profile)?;
        Ok(AggregationResult {
            method: method.into(),
            ranking,
            cumulative: value.cumulative,
            average: value.average,
            exact,
            diagnostics,
        })
    }
}

/// Runs a rank-space method on the inverted profile and inverts its answer,
/// which is how element-space aggregation reduces to rank-space aggregation.
pub(crate) fn with_space<F>(
    profile: &VoteProfile,
    objective: &Objective,
    run: F,
) -> Result<AggregationResult>
where
    F: FnOnce(&VoteProfile, &Objective) -> Result<AggregationResult>,
{
    match objective.space() {
        Space::Ranks => run(profile, objective),
        Space::Elements => {
            let inverted = VoteProfile::new(profile.iter().map(Ranking::invert).collect())?;
            let rank_obj = objective.clone().with_space(Space::Ranks);
            let mut out = run(&inverted, &rank_obj)?;
            out.ranking = out.ranking.invert();
            if let Diagnostics::Descent { start, .. } = &mut out.diagnostics {
                *start = start.invert();
            }
            Ok(out)
        }
    }
}
