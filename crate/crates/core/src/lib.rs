//! Weighted transposition distances between rankings and rank aggregation
//! under them.
//!
//! Distances charge a non-negative weight per transposition of two rank
//! positions, so disagreements near the top of a list can cost more than
//! disagreements near the bottom. Aggregation looks for the ranking with the
//! smallest total distance to a profile of votes:
//!
//! * [`baselines::exhaustive_opt`] searches all `n!` rankings;
//! * [`matching::aggregate_matching`] solves the generalized-footrule
//!   relaxation exactly with a bipartite matching, within a constant factor
//!   of the optimum;
//! * [`matching::bmls`] refines any start by greedy adjacent swaps;
//! * [`markov::mc_aggregate`] ranks by the stationary distribution of a
//!   chain whose transitions reflect the swap weights.
//!
//! ```
//! use weighted_rank_agg::prelude::*;
//!
//! let profile = weighted_rank_agg::fixtures::table1_profile();
//! let w = WeightVector::new(vec![1.0, 1.0, 1.0, 1.0]).unwrap();
//! let objective = Objective::new(Metric::WeightedKendall(w));
//! let opt = exhaustive_opt(&profile, &objective).unwrap();
//! assert_eq!(opt.ranking.seq(), &[2, 3, 4, 5, 1]);
//! assert_eq!(opt.cumulative, 26.0);
//! ```

pub mod aggregate;
pub mod baselines;
pub mod cli;
pub mod distance;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod markov;
pub mod matching;
pub mod permutation;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::aggregate::{AggregationResult, Diagnostics};
    pub use crate::baselines::{best_input_vote, borda, exhaustive_opt, plurality};
    pub use crate::distance::{
        cumulative_objective, generalized_footrule, kendall_tau, path_table_from_adjacent,
        path_table_general, spearman_footrule, weighted_kendall_exact,
        weighted_transposition_exact, Metric, Objective, PathTable, Space, TranspositionWeights,
        WeightVector,
    };
    pub use crate::io::{expand_weights, parse_votes, Layout, WeightSpec};
    pub use crate::markov::{mc_aggregate, mc_aggregate_weighted, stationary, Chain};
    pub use crate::matching::{aggregate_matching, bmls};
    pub use crate::permutation::{Ranking, VoteProfile};
}
