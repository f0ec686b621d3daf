//! Exhaustive optimum and classical baselines.

use crate::aggregate::{with_space, AggregationResult, Diagnostics};
use crate::distance::Objective;
use crate::error::{Error, Result};
use crate::permutation::{lehmer, Ranking, VoteProfile};

/// Largest `n` searched exhaustively unless overridden.
pub const OPT_CAP: usize = 8;

/// Global minimizer of the cumulative objective over all `n!` rankings;
/// the lexicographically smallest one among ties.
pub fn exhaustive_opt(profile: &VoteProfile, objective: &Objective) -> Result<AggregationResult> {
    exhaustive_opt_capped(profile, objective, OPT_CAP)
}

pub fn exhaustive_opt_capped(
    profile: &VoteProfile,
    objective: &Objective,
    cap: usize,
) -> Result<AggregationResult> {
    let n = profile.n();
    if n > cap {
        return Err(Error::ExactCapExceeded { n, cap });
    }
    with_space(profile, objective, |profile, objective| {
        let total = lehmer::factorial(n);
        let mut buf = vec![0u8; n];
        let mut best: Option<(Ranking, f64)> = None;
        let mut ties = 0usize;
        // Lehmer order is lexicographic, so the first minimum found wins ties
        for idx in 0..total {
            lehmer::unrank(idx, &mut buf);
            let cand = Ranking::from_zero_based(&buf);
            let value = objective.cumulative(&cand, profile)?.cumulative;
            match &best {
                Some((_, b)) if value > *b => {}
                Some((_, b)) if value == *b => ties += 1,
                _ => {
                    best = Some((cand, value));
                    ties = 1;
                }
            }
        }
        let (ranking, _) = best.expect("at least one permutation");
        AggregationResult::evaluate(
            "opt",
            ranking,
            profile,
            objective,
            Diagnostics::Exhaustive {
                evaluated: total,
                ties,
            },
        )
    })
}

/// The input vote with the smallest cumulative distance to all votes
/// (earliest vote on ties).
pub fn best_input_vote(profile: &VoteProfile, objective: &Objective) -> Result<AggregationResult> {
    let (eval, _) = objective.exact_or_bound(profile.n());
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in profile.iter().enumerate() {
        let value = eval.cumulative(v, profile)?.cumulative;
        if best.is_none_or(|(_, b)| value < b) {
            best = Some((i, value));
        }
    }
    let (index, _) = best.expect("profile is non-empty");
    AggregationResult::evaluate(
        "best-input",
        profile.votes()[index].clone(),
        profile,
        objective,
        Diagnostics::BestInput {
            vote_index: index + 1,
        },
    )
}

fn order_by_score(scores: &[f64]) -> Ranking {
    let mut cands: Vec<usize> = (1..=scores.len()).collect();
    cands.sort_by(|&a, &b| scores[b - 1].total_cmp(&scores[a - 1]).then(a.cmp(&b)));
    Ranking::new(cands).expect("sorted candidate ids form a permutation")
}

/// Number of first-place votes per candidate.
pub fn plurality_scores(profile: &VoteProfile) -> Vec<f64> {
    let mut scores = vec![0.0; profile.n()];
    for v in profile {
        scores[v.top() - 1] += 1.0;
    }
    scores
}

/// `Σ_votes (n − rank)` per candidate.
pub fn borda_scores(profile: &VoteProfile) -> Vec<f64> {
    let n = profile.n();
    let mut scores = vec![0.0; n];
    for v in profile {
        for c in 1..=n {
            scores[c - 1] += (n - v.rank_of(c)) as f64;
        }
    }
    scores
}

/// Candidates by descending first-place count, ties by ascending id.
pub fn plurality(profile: &VoteProfile) -> Ranking {
    order_by_score(&plurality_scores(profile))
}

/// Candidates by descending Borda score, ties by ascending id.
pub fn borda(profile: &VoteProfile) -> Ranking {
    order_by_score(&borda_scores(profile))
}

pub fn plurality_result(profile: &VoteProfile, objective: &Objective) -> Result<AggregationResult> {
    let scores = plurality_scores(profile);
    AggregationResult::evaluate(
        "plurality",
        order_by_score(&scores),
        profile,
        objective,
        Diagnostics::Scores { scores },
    )
}

pub fn borda_result(profile: &VoteProfile, objective: &Objective) -> Result<AggregationResult> {
    let scores = borda_scores(profile);
    AggregationResult::evaluate(
        "borda",
        order_by_score(&scores),
        profile,
        objective,
        Diagnostics::Scores { scores },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{Metric, WeightVector};
    use crate::fixtures::table1_profile;
    use proptest::prelude::*;

    fn kendall(w: &[f64]) -> Objective {
        Objective::new(Metric::WeightedKendall(
            WeightVector::new(w.to_vec()).unwrap(),
        ))
    }

    #[test]
    fn opt_table1() {
        let profile = table1_profile();
        let res = exhaustive_opt(&profile, &kendall(&[1., 1., 1., 1.])).unwrap();
        assert_eq!(res.ranking.seq(), &[2, 3, 4, 5, 1]);
        assert_eq!(res.cumulative, 26.0);
        let res = exhaustive_opt(&profile, &kendall(&[1., 0., 0., 0.])).unwrap();
        assert_eq!(res.ranking.top(), 1);
        assert_eq!(res.cumulative, 8.0);
        assert!((res.average - 0.7273).abs() < 5e-4);
    }

    #[test]
    fn opt_identical_votes() {
        let v = Ranking::new(vec![3, 1, 2, 4]).unwrap();
        let profile = VoteProfile::new(vec![v.clone(); 3]).unwrap();
        let res = exhaustive_opt(&profile, &kendall(&[1., 2., 3.])).unwrap();
        assert_eq!(res.ranking, v);
        assert_eq!(res.cumulative, 0.0);
    }

    #[test]
    fn opt_cap() {
        let profile = VoteProfile::new(vec![Ranking::identity(9).unwrap()]).unwrap();
        assert!(matches!(
            exhaustive_opt(&profile, &Objective::new(Metric::KendallTau)),
            Err(Error::ExactCapExceeded { n: 9, cap: 8 })
        ));
    }

    #[test]
    fn best_input_examples() {
        let profile = table1_profile();
        let res = best_input_vote(&profile, &kendall(&[1., 1., 1., 1.])).unwrap();
        assert_eq!(res.ranking.seq(), &[2, 3, 4, 5, 1]);
        assert_eq!(res.cumulative, 26.0);
        assert_eq!(res.diagnostics, Diagnostics::BestInput { vote_index: 4 });

        let single = VoteProfile::from_seqs([vec![2, 1, 3]]).unwrap();
        let res = best_input_vote(&single, &kendall(&[1., 1.])).unwrap();
        assert_eq!(res.ranking.seq(), &[2, 1, 3]);
        assert_eq!(res.cumulative, 0.0);
    }

    #[test]
    fn plurality_and_borda_examples() {
        let profile = table1_profile();
        assert_eq!(plurality(&profile).top(), 1);
        assert_eq!(borda(&profile).top(), 2);

        let single = VoteProfile::from_seqs([vec![3, 1, 2]]).unwrap();
        assert_eq!(plurality(&single).top(), 3);
        assert_eq!(borda(&single).seq(), &[3, 1, 2]);

        let tie = VoteProfile::from_seqs([vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(plurality(&tie).seq(), &[1, 2]);
        assert_eq!(borda(&tie).seq(), &[1, 2]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn scores_are_anonymous(
            seqs in prop::collection::vec(Just((1..=5usize).collect::<Vec<_>>()).prop_shuffle(), 1..9),
            rot in 0usize..9,
        ) {
            let profile = VoteProfile::from_seqs(seqs.clone()).unwrap();
            let mut shuffled = seqs;
            let k = rot % shuffled.len();
            shuffled.rotate_left(k);
            shuffled.reverse();
            let other = VoteProfile::from_seqs(shuffled).unwrap();
            prop_assert_eq!(plurality(&profile), plurality(&other));
            prop_assert_eq!(borda(&profile), borda(&other));
        }

        #[test]
        fn opt_bounds_best_input(
            seqs in prop::collection::vec(Just((1..=5usize).collect::<Vec<_>>()).prop_shuffle(), 1..8),
            w in prop::collection::vec(1u8..5, 4),
        ) {
            let profile = VoteProfile::from_seqs(seqs).unwrap();
            let obj = Objective::new(Metric::WeightedKendall(
                WeightVector::new(w.into_iter().map(f64::from).collect()).unwrap()));
            let opt = exhaustive_opt(&profile, &obj).unwrap().cumulative;
            let best = best_input_vote(&profile, &obj).unwrap().cumulative;
            prop_assert!(opt <= best);
            prop_assert!(best <= 2.0 * opt);
            for res in [
                crate::matching::aggregate_matching(&profile, &obj).unwrap(),
                crate::matching::bmls(&profile, &obj, None).unwrap(),
                crate::markov::mc_aggregate(&profile, &crate::markov::Chain::Case2, &obj).unwrap(),
                plurality_result(&profile, &obj).unwrap(),
                borda_result(&profile, &obj).unwrap(),
            ] {
                prop_assert!(opt <= res.cumulative);
            }
        }
    }
}
