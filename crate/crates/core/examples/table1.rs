//! The 11-vote benchmark: exhaustive optimum, local search and the
//! weighted chain for each weight vector.
//!
//!     cargo run --example table1

use weighted_rank_agg::fixtures::{table1_profile, TABLE1_EXPECTED, TABLE1_WEIGHTS};
use weighted_rank_agg::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let profile = table1_profile();
    println!("{} votes over {} candidates", profile.m(), profile.n());
    for (w, expected) in TABLE1_WEIGHTS.iter().zip(TABLE1_EXPECTED) {
        let w = WeightVector::new(w.to_vec())?;
        let objective = Objective::new(Metric::WeightedKendall(w.clone()));
        let rows = [
            (exhaustive_opt(&profile, &objective)?, expected.opt),
            (bmls(&profile, &objective, None)?, expected.bmls),
            (mc_aggregate_weighted(&profile, &w)?, expected.mc),
        ];
        println!("w = {:?}", w.as_slice());
        for (res, want) in rows {
            println!(
                "  {:<5} {}  average {:.4}  expected {want:.4}",
                res.method, res.ranking, res.average
            );
        }
    }
    Ok(())
}
