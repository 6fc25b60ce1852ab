use super::{Config, StratumLabel};
use crate::error::{Error, Result};

pub(super) fn require_p1(config: &Config) -> Result<()> {
    if config.dim() != 1 {
        return Err(Error::InvalidInput("expected points of P_1".into()));
    }
    Ok(())
}

/// Coarse label from the largest coincidence: `S_{2j-n}` if `j > n/2`.
pub fn morse_label_p1(config: &Config) -> Result<StratumLabel> {
    require_p1(config)?;
    let (n, j) = (config.len() as i64, config.max_multiplicity() as i64);
    Ok(StratumLabel::Morse(if 2 * j > n { 2 * j - n } else { 0 }))
}

/// Refined label of an ordered configuration in `(P_1)^n`.
pub fn classify_p1_tuple(config: &Config) -> Result<StratumLabel> {
    require_p1(config)?;
    let n = config.len();
    let mult = config.multiplicities();
    let j = config.max_multiplicity();
    if 2 * j > n {
        return Ok(StratumLabel::Morse(2 * j as i64 - n as i64));
    }
    if 2 * j == n {
        // the other half all equal means exactly two distinct points
        return Ok(if mult.len() == 2 {
            StratumLabel::Tilde
        } else {
            StratumLabel::TildeTwo
        });
    }
    Ok(StratumLabel::Stable)
}
