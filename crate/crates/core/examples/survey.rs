//! A 12-item, 100-respondent synthetic survey. Exact distances are out of
//! reach at this size, so methods are compared on the footrule bound.
//!
//!     cargo run --release --example survey

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weighted_rank_agg::baselines::{borda_result, plurality_result};
use weighted_rank_agg::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, m) = (12, 100);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let mut hidden: Vec<usize> = (1..=n).collect();
    hidden.shuffle(&mut rng);
    let hidden = Ranking::new(hidden)?;
    let votes = (0..m)
        .map(|_| {
            let mut r = hidden.clone();
            for _ in 0..rng.gen_range(0..12) {
                r = r.swap_adjacent(rng.gen_range(1..n)).unwrap();
            }
            r
        })
        .collect();
    let profile = VoteProfile::new(votes)?;

    // Respondents care most about the top of the list.
    let w = expand_weights(&WeightSpec::Geometric(0.75), n)?;
    let objective = Objective::new(Metric::WeightedKendall(w.clone()));

    let results = [
        aggregate_matching(&profile, &objective)?,
        bmls(&profile, &objective, None)?,
        mc_aggregate(&profile, &Chain::Weighted(w), &objective)?,
        borda_result(&profile, &objective)?,
        plurality_result(&profile, &objective)?,
    ];
    println!("hidden consensus {hidden}");
    for r in &results {
        let bound = if r.exact { "" } else { " (footrule bound)" };
        println!(
            "{:<10} {}  average {:.4}{bound}  Kendall to hidden {}",
            r.method,
            r.ranking,
            r.average,
            kendall_tau(&r.ranking, &hidden)?
        );
    }
    Ok(())
}
