//! Exhaustive optimum and the simple baselines on a small profile.
//!
//!     cargo run --example baselines

use weighted_rank_agg::baselines::{borda_scores, plurality_scores};
use weighted_rank_agg::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "\
        # four voters, four candidates
        1 2 3 4
        2 1 3 4
        2 3 1 4
        4 1 2 3
    ";
    let profile = parse_votes(text, Layout::Rows)?;
    let w = expand_weights(&"geometric:0.5".parse()?, profile.n())?;
    let objective = Objective::new(Metric::WeightedKendall(w));

    let opt = exhaustive_opt(&profile, &objective)?;
    println!(
        "opt         {} cumulative {:.4}",
        opt.ranking, opt.cumulative
    );
    if let Diagnostics::Exhaustive { evaluated, ties } = opt.diagnostics {
        println!("            {evaluated} rankings checked, {ties} optimal");
    }

    let best = best_input_vote(&profile, &objective)?;
    println!(
        "best input  {} cumulative {:.4}",
        best.ranking, best.cumulative
    );

    println!(
        "plurality   {} scores {:?}",
        plurality(&profile),
        plurality_scores(&profile)
    );
    println!(
        "borda       {} scores {:?}",
        borda(&profile),
        borda_scores(&profile)
    );
    for r in [plurality(&profile), borda(&profile)] {
        println!(
            "  {r}: cumulative {:.4}",
            cumulative_objective(&r, &profile, &objective)?.cumulative
        );
    }
    Ok(())
}
