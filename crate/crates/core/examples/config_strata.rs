//! Labels of point configurations on the line and in the plane.

use moment_strata::config::{classify, Config, Family};

fn show(name: &str, config: &Config, family: Family) -> moment_strata::Result<()> {
    let c = classify(config, family)?;
    println!(
        "{name:<28} {:<16} {:<16} ss={} s={}",
        c.refined, c.coarse, c.semistable, c.stable
    );
    Ok(())
}

fn main() -> moment_strata::Result<()> {
    let pair = Config::p1(&[Some(0), Some(0), None, None]);
    show("two double points", &pair, Family::P1)?;
    show(
        "double point + 2 others",
        &Config::p1(&[Some(0), Some(0), Some(1), None]),
        Family::P1,
    )?;
    show(
        "x^2 (x^2 - y^2)",
        &Config::p1(&[Some(0), Some(0), Some(1), Some(-1)]),
        Family::Binary,
    )?;
    show(
        "triple root",
        &Config::p1(&[Some(0), Some(0), Some(0), Some(5)]),
        Family::P1,
    )?;

    let generic = Config::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3], &[2, -1, 5]])?;
    show("six general points", &generic, Family::P2)?;
    let collinear = Config::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[1, 2, 0], &[0, 0, 1], &[1, 1, 1]])?;
    show("four on a line", &collinear, Family::P2)?;
    let doubled = Config::from_ints(&[&[1, 0, 0], &[1, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])?;
    show("triple point", &doubled, Family::P2)?;
    Ok(())
}
