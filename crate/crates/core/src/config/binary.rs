//! Binary forms of degree `n = 2m` as multisets of roots in `P_1`. A root
//! `[u : v]` contributes the factor `v t - u`.

use num_traits::{One, Zero};

use super::p1::require_p1;
use super::{Config, ProjPoint, StratumLabel};
use crate::error::{Error, Result};
use crate::exact::{q, Rational};

/// Coefficients `a_0..a_n` of `prod (v t - u)`.
fn expand(roots: &[ProjPoint]) -> Vec<Rational> {
    let mut a = vec![Rational::one()];
    for r in roots {
        let (u, v) = (&r.coords()[0], &r.coords()[1]);
        let mut next = vec![Rational::zero(); a.len() + 1];
        for (i, c) in a.iter().enumerate() {
            next[i] -= c * u;
            next[i + 1] += c * v;
        }
        a = next;
    }
    a
}

fn binomial(n: u32, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * q((n - i) as i64) / q((i + 1) as i64))
}

/// The unique root of multiplicity exactly `n/2` when the other roots do not
/// all coincide.
fn half_root(config: &Config) -> Option<&ProjPoint> {
    let n = config.len();
    let mult = config.multiplicities();
    if n % 2 != 0 || mult.len() == 2 {
        return None;
    }
    let mut half = mult.iter().filter(|(_, &c)| 2 * c == n);
    match (half.next(), half.next()) {
        (Some((p, _)), None) => Some(*p),
        _ => None,
    }
}

/// Moves the half-multiplicity root to `0`, then applies the unipotent
/// substitution `t -> t / (1 + s t)` fixing `0` that kills `a_{m+1}`. Returns
/// the coefficients `a_m..a_{2m}` of the result.
pub fn normalized_coefficients(config: &Config) -> Result<Option<Vec<Rational>>> {
    require_p1(config)?;
    let Some(p) = half_root(config) else {
        return Ok(None);
    };
    let m = (config.len() / 2) as u32;
    let (u, v) = (&p.coords()[0], &p.coords()[1]);
    let to_zero = if v.is_zero() {
        vec![vec![q(0), q(1)], vec![q(1), q(0)]]
    } else {
        vec![vec![v.clone(), -u], vec![q(0), q(1)]]
    };
    let moved = config.transform(&to_zero)?;
    let a = expand(moved.points());
    let mu = m as usize;
    if a[..mu].iter().any(|x| !x.is_zero()) || a[mu].is_zero() {
        return Err(Error::PartitionViolation(
            "root did not move to 0 with multiplicity n/2".into(),
        ));
    }
    let s = -&a[mu + 1] / (q(m as i64) * &a[mu]);
    let b = (m..=2 * m)
        .map(|i| {
            (m..=i)
                .map(|j| &a[j as usize] * binomial(2 * m - j, i - j) * num_traits::pow(s.clone(), (i - j) as usize))
                .sum()
        })
        .collect();
    Ok(Some(b))
}

/// `k = min { i - m : a_i != 0, i > m }` after normalization.
pub fn binary_k_invariant(config: &Config) -> Result<Option<u32>> {
    let Some(b) = normalized_coefficients(config)? else {
        return Ok(None);
    };
    match b.iter().enumerate().skip(1).find(|(_, x)| !x.is_zero()) {
        Some((k, _)) => Ok(Some(k as u32)),
        None => Err(Error::PartitionViolation(
            "normalized form is a monomial, so the other roots coincide".into(),
        )),
    }
}

/// Refined label of the binary form with the given roots.
pub fn classify_binary_form(config: &Config) -> Result<StratumLabel> {
    require_p1(config)?;
    let n = config.len();
    let j = config.max_multiplicity();
    if 2 * j > n {
        return Ok(StratumLabel::Morse(2 * j as i64 - n as i64));
    }
    if 2 * j < n {
        return Ok(StratumLabel::Stable);
    }
    if config.multiplicities().len() == 2 {
        return Ok(StratumLabel::Tilde);
    }
    let k = binary_k_invariant(config)?.expect("a single root of multiplicity n/2");
    Ok(StratumLabel::BinaryTilde { k })
}
