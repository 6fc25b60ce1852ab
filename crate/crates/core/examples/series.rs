//! Equivariant series of the semistable set and quotient Betti numbers.

use moment_strata::model::WeightedModel;
use moment_strata::series::{
    perfection_check, quotient_poincare_polynomial, semistable_series, sl2_quotient_polynomial,
};

fn main() -> moment_strata::Result<()> {
    let trunc = 24;
    for n in [3, 5, 7] {
        let model = WeightedModel::binary_forms(n);
        println!("P_{n}: P_T(ss) = {}", semistable_series(&model, trunc)?);
        println!("  torus quotient  {}", quotient_poincare_polynomial(&model, trunc)?);
        println!("  SL(2) quotient  {}", sl2_quotient_polynomial(&model, trunc)?);
    }

    let cube = WeightedModel::p1_power(3);
    println!("(P_1)^3 torus quotient {}", quotient_poincare_polynomial(&cube, trunc)?);
    println!("perfect: {}", perfection_check(&cube, trunc)?.holds);

    // even n has strictly semistable points
    match quotient_poincare_polynomial(&WeightedModel::p1_power(4), trunc) {
        Ok(p) => println!("unexpected {p}"),
        Err(e) => println!("(P_1)^4: {e}"),
    }
    Ok(())
}
