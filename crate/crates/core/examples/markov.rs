//! Markov chain aggregation, including peeling of absorbing candidates.
//!
//!     cargo run --example markov

use weighted_rank_agg::fixtures::table1_profile;
use weighted_rank_agg::markov::{beta_matrix, transitions_weighted};
use weighted_rank_agg::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let profile = table1_profile();

    let w = WeightVector::new(vec![1.0, 1.0, 0.0, 0.0])?;
    let first = &profile.votes()[0];
    println!("beta for vote {first} under w = {:?}:", w.as_slice());
    for row in beta_matrix(first, &w)? {
        println!(
            "  {}",
            row.iter()
                .map(|b| format!("{b:.3}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }

    let chain = transitions_weighted(&profile, &w)?;
    let pi = stationary(&chain)?;
    println!("stationary {:.4?} (residual {:.1e})", pi.x, pi.residual);

    // w = [0,1,0,0] makes candidate 2 absorbing; it is ranked first and
    // the chain is rebuilt on the rest.
    let w = WeightVector::new(vec![0.0, 1.0, 0.0, 0.0])?;
    let res = mc_aggregate_weighted(&profile, &w)?;
    if let Diagnostics::Markov { rounds, .. } = &res.diagnostics {
        for (k, round) in rounds.iter().enumerate() {
            println!(
                "round {k}: candidates {:?} stationary {:.4?} absorbing {:?}",
                round.candidates, round.stationary, round.absorbing
            );
        }
    }
    println!("ranking {} average {:.4}", res.ranking, res.average);

    // Unweighted chains for comparison.
    let objective = Objective::new(Metric::KendallTau);
    for chain in [Chain::Case1, Chain::Case2, Chain::Case3] {
        let res = mc_aggregate(&profile, &chain, &objective)?;
        println!(
            "{:<4} {} average Kendall {:.4}",
            chain.name(),
            res.ranking,
            res.average
        );
    }
    Ok(())
}
