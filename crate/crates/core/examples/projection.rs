//! Nearest point of a weight polytope to the origin, with its certificate.

use moment_strata::exact::projection::{closest_point_to_origin, origin_in_hull};
use moment_strata::{BilinearForm, LieVector};

fn main() -> moment_strata::Result<()> {
    let form = BilinearForm::identity(2);
    let pts: Vec<LieVector> = [[2, 1], [1, 3], [4, 2]]
        .iter()
        .map(|p| LieVector::from_ints(p))
        .collect();
    let cert = closest_point_to_origin(&pts, &form)?;
    println!("beta = {}", cert.beta);
    println!("support = {:?}", cert.support);
    println!("verified: {}", cert.verify(&pts, &form));

    // same points in the SL(3) trace form
    let trace = BilinearForm::sl3_trace_form();
    let cert = closest_point_to_origin(&pts, &trace)?;
    println!("trace-form beta = {}", cert.beta);

    let square: Vec<LieVector> = [[1, 1], [-1, 1], [1, -1], [-1, -1]]
        .iter()
        .map(|p| LieVector::from_ints(p))
        .collect();
    println!("origin in square: {}", origin_in_hull(&square, &form)?);
    Ok(())
}
