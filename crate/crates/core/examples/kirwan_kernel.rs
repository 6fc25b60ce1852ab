//! Relations in the quotient cohomology from the unstable strata.

use moment_strata::kirwan::{betti_table, kernel_ideal, lemma_ee_check, lemma_ff_check, Group, Presentation, Target};
use moment_strata::model::WeightedModel;

fn main() -> moment_strata::Result<()> {
    let model = WeightedModel::binary_forms(5);
    for group in [Group::Torus, Group::Sl2] {
        let pres = Presentation::new(&model, group)?;
        let kernel = kernel_ideal(&pres, group, Target::Semistable, 10)?;
        println!("{group:?}: Betti {:?}", betti_table(&pres, &kernel)?);
        for fam in kernel.generator_families(&pres)? {
            println!("  {}: {}", fam.label, fam.generators.join(", "));
        }
    }

    let pres = Presentation::new(&model, Group::Sl2)?;
    println!(
        "D times SL(2) kernel = anti-invariant torus kernel: {}",
        lemma_ff_check(&pres, 8)?.failing_degrees.is_empty()
    );
    let pres = Presentation::new(&model, Group::Torus)?;
    println!(
        "vanishing-class kernel = Thom-Gysin kernel: {}",
        lemma_ee_check(&pres, 8)?.failing_degrees.is_empty()
    );

    // strictly semistable SL(2) model, stable target
    let pres = Presentation::new(&WeightedModel::p1_power(4), Group::Sl2)?;
    let kernel = kernel_ideal(&pres, Group::Sl2, Target::Stable, 8)?;
    println!(
        "(P_1)^4 stable target, kernel dims {:?}",
        (0..=8).step_by(2).map(|d| kernel.dim(d)).collect::<Vec<_>>()
    );
    Ok(())
}
