//! Intersection pairings on quotients by localization and residues.

use moment_strata::kirwan::{Group, Presentation};
use moment_strata::model::WeightedModel;
use moment_strata::residue::{betti_by_pairing, kernel_by_pairing, pairing};

fn main() -> moment_strata::Result<()> {
    let model = WeightedModel::binary_forms(3);
    let pres = Presentation::new(&model, Group::Torus)?;
    for (eta, zeta) in [("1", "1"), ("z", "z"), ("z", "a"), ("a", "a")] {
        let v = pairing(&pres, &pres.parse(eta)?, &pres.parse(zeta)?)?;
        println!("<{eta}, {zeta}> raw {} normalized {}", v.raw, v.normalized);
    }
    let k = kernel_by_pairing(&pres, 2)?;
    println!(
        "degree 2: ambient {} rank {} kernel {}",
        k.ambient,
        k.pairing_rank,
        k.dim()
    );

    let pres = Presentation::new(&WeightedModel::binary_forms(5), Group::Sl2)?;
    println!("P_5 // SL(2) Betti by pairing {:?}", betti_by_pairing(&pres, 6)?);
    Ok(())
}
