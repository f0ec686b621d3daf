//! Exact weighted distances next to their footrule bounds.
//!
//!     cargo run --example distances

use weighted_rank_agg::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Ranking::new(vec![1, 2, 3, 4, 5])?;
    let s = Ranking::new(vec![5, 2, 3, 4, 1])?;

    println!("p = {p}, s = {s}");
    println!("Kendall tau       {}", kendall_tau(&p, &s)?);
    println!("Spearman footrule {}", spearman_footrule(&p, &s)?);

    for w in [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [1.0, 0.5, 0.25, 0.125],
    ] {
        let w = WeightVector::new(w.to_vec())?;
        let d = weighted_kendall_exact(&p, &s, &w)?;
        let bound = generalized_footrule(&p, &s, &path_table_from_adjacent(&w))?;
        println!(
            "w = {:?}: d = {d}, D = {bound} (D/2 <= d <= 2D)",
            w.as_slice()
        );
    }

    // Transpositions of arbitrary pairs, cheaper near the top.
    let phi = TranspositionWeights::from_fn(5, |i, j| 1.0 / (i.min(j) as f64))?;
    let d = weighted_transposition_exact(&p, &s, &phi)?;
    let bound = generalized_footrule(&p, &s, &path_table_general(&phi))?;
    println!("transposition weights 1/min(i,j): d = {d:.4}, D = {bound:.4}");

    // The same metric applied to candidate labels instead of positions.
    let w = WeightVector::new(vec![1.0, 0.0, 0.0, 0.0])?;
    let ranks = Objective::new(Metric::WeightedKendall(w.clone()));
    let elements = Objective::new(Metric::WeightedKendall(w)).with_space(Space::Elements);
    println!(
        "w = [1,0,0,0]: rank space {}, element space {}",
        ranks.distance(&p, &s)?,
        elements.distance(&p, &s)?
    );
    Ok(())
}
