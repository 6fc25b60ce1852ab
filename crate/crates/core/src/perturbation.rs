//! Shifting the moment map by a small generic `eps` and comparing the refined
//! stratification with the original one.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{LieVector, Rational};
use crate::model::{SupportProfile, WeightedModel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Epsilon {
    pub vector: LieVector,
    pub genericity_certified: bool,
}

/// The model with every profile's weight sums shifted by `-eps`.
pub fn shifted_model(model: &WeightedModel, eps: &LieVector) -> Result<WeightedModel> {
    model.shifted_by(eps)
}

/// A profile of the shifted model that is semistable but not stable.
pub fn genericity_witness(model: &WeightedModel, eps: &LieVector) -> Result<Option<SupportProfile>> {
    let shifted = shifted_model(model, eps)?;
    let profiles = shifted.canonical_profiles();
    let bad: Vec<Option<SupportProfile>> = profiles
        .into_par_iter()
        .map(|p| -> Result<Option<SupportProfile>> {
            Ok((shifted.is_semistable(&p)? && !shifted.is_stable(&p)?).then_some(p))
        })
        .collect::<Result<_>>()?;
    Ok(bad.into_iter().flatten().min())
}

pub fn is_generic(model: &WeightedModel, eps: &LieVector) -> Result<bool> {
    Ok(genericity_witness(model, eps)?.is_none())
}

const PRIME_BUDGET: usize = 24;

fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| n > 1 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// First `eps = (1/M, 1/M^2, ..., 1/M^r)` with `M` prime, `M >= 97`, that is
/// generic and shorter than half of every nonzero index.
pub fn propose_epsilon(model: &WeightedModel) -> Result<Epsilon> {
    let form = model.form();
    let index = model.index_betas()?;
    let min_norm = index.iter().filter(|b| !b.is_zero()).map(|b| form.norm_sq(b)).min();
    let full = model.full_profile();
    if model.is_semistable(&full)? && !model.is_stable(&full)? {
        // the full profile has the largest hull; if it has no interior, no point is stable
        return Err(Error::NoGenericEpsilon {
            reason: "semistable points exist but 0 is never an interior point of a weight hull".into(),
            witness: full.to_string(),
        });
    }
    let mut last_witness = String::new();
    for m in primes_from(97).take(PRIME_BUDGET) {
        let mut coords = Vec::with_capacity(model.rank());
        let mut pow = Rational::from_integer(m.into());
        for _ in 0..model.rank() {
            coords.push(pow.recip());
            pow *= Rational::from_integer(m.into());
        }
        let eps = LieVector(coords);
        if let Some(b) = &min_norm {
            if form.norm_sq(&eps) * Rational::from_integer(4.into()) >= *b {
                continue;
            }
        }
        match genericity_witness(model, &eps)? {
            None => {
                return Ok(Epsilon {
                    vector: eps,
                    genericity_certified: true,
                })
            }
            Some(w) => last_witness = w.to_string(),
        }
    }
    Err(Error::NoGenericEpsilon {
        reason: format!("no prime among the first {PRIME_BUDGET} from 97 gave a generic shift"),
        witness: last_witness,
    })
}

/// Checks a user-supplied `eps` and wraps it.
pub fn certify(model: &WeightedModel, eps: LieVector) -> Result<Epsilon> {
    match genericity_witness(model, &eps)? {
        None => Ok(Epsilon {
            vector: eps,
            genericity_certified: true,
        }),
        Some(w) => Err(Error::NoGenericEpsilon {
            reason: format!("eps {eps} is not generic"),
            witness: w.to_string(),
        }),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinementEntry {
    pub eps_beta: LieVector,
    pub parent: LieVector,
    pub profiles: usize,
    pub example_profile: SupportProfile,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinementReport {
    pub epsilon: LieVector,
    pub entries: Vec<RefinementEntry>,
}

impl RefinementReport {
    /// The perturbed indices lying over `parent`.
    pub fn fiber(&self, parent: &LieVector) -> Vec<&LieVector> {
        self.entries
            .iter()
            .filter(|e| &e.parent == parent)
            .map(|e| &e.eps_beta)
            .collect()
    }

    pub fn parents(&self) -> Vec<&LieVector> {
        let mut p: Vec<&LieVector> = self.entries.iter().map(|e| &e.parent).collect();
        p.sort();
        p.dedup();
        p
    }

    pub fn is_bijection(&self) -> bool {
        self.parents().len() == self.entries.len()
    }
}

/// Map from each perturbed index to the unperturbed index of the same
/// profiles; fails if some perturbed stratum meets two unperturbed ones.
pub fn refinement_report(model: &WeightedModel, eps: &LieVector) -> Result<RefinementReport> {
    certify(model, eps.clone())?;
    let shifted = shifted_model(model, eps)?;
    let profiles = model.profiles();
    let pairs: Vec<(LieVector, LieVector)> = profiles
        .par_iter()
        .map(|p| Ok((shifted.classify_beta(p)?, model.classify_beta(p)?)))
        .collect::<Result<_>>()?;
    let mut map: BTreeMap<LieVector, (LieVector, usize, usize)> = BTreeMap::new();
    for (i, (eb, parent)) in pairs.into_iter().enumerate() {
        match map.get_mut(&eb) {
            None => {
                map.insert(eb, (parent, 1, i));
            }
            Some((known, count, first)) => {
                if *known != parent {
                    return Err(Error::RefinementViolation {
                        first: profiles[*first].to_string(),
                        second: profiles[i].to_string(),
                        first_parent: known.to_string(),
                        second_parent: parent.to_string(),
                    });
                }
                *count += 1;
            }
        }
    }
    let mut entries: Vec<RefinementEntry> = map
        .into_iter()
        .map(|(eps_beta, (parent, profiles_n, first))| RefinementEntry {
            eps_beta,
            parent,
            profiles: profiles_n,
            example_profile: profiles[first].clone(),
        })
        .collect();
    entries.sort_by(|a, b| a.parent.cmp(&b.parent).then_with(|| a.eps_beta.cmp(&b.eps_beta)));
    Ok(RefinementReport {
        epsilon: eps.clone(),
        entries,
    })
}
