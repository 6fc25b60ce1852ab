//! Shifting the moment map off a strictly semistable model.

use moment_strata::model::WeightedModel;
use moment_strata::perturbation::{propose_epsilon, refinement_report};

fn main() -> moment_strata::Result<()> {
    let model = WeightedModel::p1_power(4);
    let eps = propose_epsilon(&model)?;
    println!("epsilon = {}", eps.vector);

    let report = refinement_report(&model, &eps.vector)?;
    for parent in report.parents() {
        let fiber: Vec<String> = report.fiber(parent).iter().map(|b| b.to_string()).collect();
        println!("{parent} <- {}", fiber.join(", "));
    }
    println!("bijection: {}", report.is_bijection());
    Ok(())
}
