//! Footrule matching and the local search that refines it.
//!
//!     cargo run --example matching

use weighted_rank_agg::fixtures::table1_profile;
use weighted_rank_agg::matching::{build_cost_matrix, min_cost_assignment};
use weighted_rank_agg::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let profile = table1_profile();
    let w = WeightVector::new(vec![1.0, 1.0, 0.0, 0.0])?;

    let cost = build_cost_matrix(&profile, &path_table_from_adjacent(&w))?;
    println!("cost matrix C[candidate][rank]:");
    for i in 1..=cost.n() {
        let row: Vec<String> = (1..=cost.n())
            .map(|j| format!("{:>3}", cost.get(i, j)))
            .collect();
        println!("  {i}: {}", row.join(" "));
    }
    let (ranking, total) = min_cost_assignment(&cost);
    println!("min-cost assignment {ranking}, footrule total {total}");

    let objective = Objective::new(Metric::WeightedKendall(w));
    let matched = aggregate_matching(&profile, &objective)?;
    println!(
        "matching: {} average {:.4}",
        matched.ranking, matched.average
    );

    let refined = bmls(&profile, &objective, None)?;
    if let Diagnostics::Descent {
        start,
        start_objective,
        steps,
        ..
    } = &refined.diagnostics
    {
        println!("bmls from {start} ({start_objective})");
        for step in steps {
            println!(
                "  swap ranks {}/{} -> {}",
                step.swap,
                step.swap + 1,
                step.objective
            );
        }
    }
    println!("bmls: {} average {:.4}", refined.ranking, refined.average);

    // Any starting point works; descent only ever improves.
    let start = Ranking::new(vec![5, 4, 3, 2, 1])?;
    let from_reverse = bmls(&profile, &objective, Some(start))?;
    println!(
        "bmls from reverse: {} average {:.4}",
        from_reverse.ranking, from_reverse.average
    );
    Ok(())
}
