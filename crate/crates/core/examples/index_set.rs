//! Index set of the binary quintics and the stratum of a few points.

use moment_strata::exact::q;
use moment_strata::model::WeightedModel;

fn main() -> moment_strata::Result<()> {
    let model = WeightedModel::binary_forms(5);
    println!("{model}");
    for idx in model.index_set()? {
        let norm = model.form().norm_sq(&idx.beta);
        print!("beta {} |beta|^2 {}", idx.beta, norm);
        for c in model.z_components(&idx.beta).iter().filter(|_| !idx.beta.is_zero()) {
            print!("  codim {}", model.codim(&idx.beta, c));
        }
        println!();
    }

    // x^5 + x^4 y: only the two top weights occur
    let point = vec![vec![q(1), q(1), q(0), q(0), q(0), q(0)]];
    let profile = model.support_of_point(&point)?;
    println!("{profile} -> {}", model.classify(&profile)?.beta);

    let generic = vec![(1..=6).map(q).collect::<Vec<_>>()];
    let profile = model.support_of_point(&generic)?;
    println!(
        "{profile} semistable {} stable {}",
        model.is_semistable(&profile)?,
        model.is_stable(&profile)?
    );
    Ok(())
}
