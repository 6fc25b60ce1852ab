//! Refined stratifications of point configurations: `SL(2)` on `(P_1)^n`,
//! binary forms of degree `n`, and `SL(3)` on `(P_2)^n`.

mod binary;
mod p1;
mod p2;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{format_rational, frac, q, Rational};
use crate::model::RationalEntry;

pub use binary::{binary_k_invariant, classify_binary_form, normalized_coefficients};
pub use p1::{classify_p1_tuple, morse_label_p1};
pub use p2::{classify_p2_tuple, destabilizing_flag, morse_label_p2, Flag, TorusCase};

/// A point of `P_1` or `P_2` with its first nonzero coordinate scaled to 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(Vec<Rational>);

impl ProjPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let Some(lead) = coords.iter().find(|x| !x.is_zero()).cloned() else {
            return Err(Error::InvalidInput("projective point with all coordinates zero".into()));
        };
        Ok(ProjPoint(coords.into_iter().map(|x| x / &lead).collect()))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        ProjPoint::new(coords.iter().map(|&x| q(x)).collect())
    }

    /// `[t : 1]` in `P_1`.
    pub fn affine(t: Rational) -> Self {
        ProjPoint::new(vec![t, Rational::one()]).expect("nonzero")
    }

    pub fn infinity() -> Self {
        ProjPoint(vec![Rational::one(), Rational::zero()])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// Dimension of the ambient projective space.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Image under the matrix `m` acting on column vectors.
    pub fn transform(&self, m: &[Vec<Rational>]) -> Result<Self> {
        ProjPoint::new(
            m.iter()
                .map(|row| row.iter().zip(&self.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn dot(&self, other: &ProjPoint) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Line through two distinct points of `P_2`, as a point of the dual plane.
    pub fn join(&self, other: &ProjPoint) -> Result<ProjPoint> {
        let (a, b) = (&self.0, &other.0);
        ProjPoint::new(vec![
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        ])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// An ordered configuration of points, all in `P_1` or all in `P_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    points: Vec<ProjPoint>,
}

impl Config {
    pub fn new(points: Vec<ProjPoint>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidInput("empty configuration".into()));
        };
        let d = first.dim();
        if !(1..=2).contains(&d) || points.iter().any(|p| p.dim() != d) {
            return Err(Error::InvalidInput(
                "configuration points must all lie in P_1 or all in P_2".into(),
            ));
        }
        Ok(Config { points })
    }

    pub fn from_ints(points: &[&[i64]]) -> Result<Self> {
        Config::new(points.iter().map(|p| ProjPoint::from_ints(p)).collect::<Result<_>>()?)
    }

    /// Points of `P_1` given by affine coordinates, `None` for infinity.
    pub fn p1(ts: &[Option<i64>]) -> Self {
        Config::new(
            ts.iter()
                .map(|t| t.map_or_else(ProjPoint::infinity, |t| ProjPoint::affine(q(t))))
                .collect(),
        )
        .expect("points of P_1")
    }

    /// JSON array of homogeneous coordinate arrays (integers or "p/q").
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<Vec<RationalEntry>> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("config file: {e}")))?;
        Config::new(
            raw.iter()
                .map(|p| ProjPoint::new(p.iter().map(RationalEntry::value).collect::<Result<_>>()?))
                .collect::<Result<_>>()?,
        )
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    /// Multiplicity of each distinct point.
    pub fn multiplicities(&self) -> BTreeMap<&ProjPoint, usize> {
        let mut m = BTreeMap::new();
        for p in &self.points {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities().values().copied().max().unwrap_or(0)
    }

    pub fn transform(&self, m: &[Vec<Rational>]) -> Result<Self> {
        if m.len() != self.dim() + 1 || m.iter().any(|r| r.len() != m.len()) {
            return Err(Error::InvalidInput(
                "matrix size does not match the configuration".into(),
            ));
        }
        Config::new(self.points.iter().map(|p| p.transform(m)).collect::<Result<_>>()?)
    }
}

/// Which classifier to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    P1,
    Binary,
    P2,
}

/// One of the torus one-parameter subgroups in the refined `SL(3)` labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubTorus {
    /// `(t, t, t^-2)`.
    T1,
    /// `(t^-2, t, t)`.
    T2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StratumLabel {
    /// Stable points, `(0)`.
    Stable,
    /// Half the points at `p`, the rest at `q`: `(T)`.
    Tilde,
    /// Half the points at `p`, the rest elsewhere and not all equal: `(T,2)`.
    TildeTwo,
    /// Binary forms with one root of multiplicity `n/2`: `(T,2k)`.
    BinaryTilde { k: u32 },
    /// Morse stratum `S_{2j-n}` of `(P_1)^n` or `P_n`.
    Morse(i64),
    /// Morse stratum of `(P_2)^n` labelled by its `Lie(U(3))` vector.
    P2Morse([Rational; 3]),
    /// Refined piece of a refinable unstable `SL(3)` stratum.
    P2Refined {
        beta: [Rational; 3],
        torus: Option<SubTorus>,
        three: bool,
    },
    /// `(T, beta)` with `beta` one of the four nonzero torus indices.
    TorusBeta(TorusCase),
    /// `(T1)`, `(T1,3)` or `(T1,-3)` for `shift` 0, 3, -3.
    T1 { shift: i8 },
}

impl StratumLabel {
    /// The Morse stratum containing this refined stratum, for `n` points of
    /// `P_dim`.
    pub fn coarsen(&self, n: usize, dim: usize) -> StratumLabel {
        let third = frac(n as i64, 3);
        let p2_semistable = || StratumLabel::P2Morse([third.clone(), third.clone(), third.clone()]);
        match self {
            StratumLabel::Stable | StratumLabel::Tilde if dim == 2 => p2_semistable(),
            StratumLabel::Stable | StratumLabel::Tilde | StratumLabel::TildeTwo | StratumLabel::BinaryTilde { .. } => {
                StratumLabel::Morse(0)
            }
            StratumLabel::Morse(b) => StratumLabel::Morse(*b),
            StratumLabel::P2Morse(b) | StratumLabel::P2Refined { beta: b, .. } => StratumLabel::P2Morse(b.clone()),
            StratumLabel::TorusBeta(_) | StratumLabel::T1 { .. } => p2_semistable(),
        }
    }

    pub fn is_semistable(&self, n: usize, dim: usize) -> bool {
        match self.coarsen(n, dim) {
            StratumLabel::Morse(b) => b == 0,
            StratumLabel::P2Morse(b) => b[0] == b[2],
            _ => unreachable!("coarse labels are Morse labels"),
        }
    }
}

fn fmt_triple(b: &[Rational; 3]) -> String {
    format!(
        "{},{},{}",
        format_rational(&b[0]),
        format_rational(&b[1]),
        format_rational(&b[2])
    )
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumLabel::Stable => write!(f, "(0)"),
            StratumLabel::Tilde => write!(f, "(T)"),
            StratumLabel::TildeTwo => write!(f, "(T,2)"),
            StratumLabel::BinaryTilde { k } => write!(f, "(T,{})", 2 * k),
            StratumLabel::Morse(b) => write!(f, "S_{{{b}}}"),
            StratumLabel::P2Morse(b) => write!(f, "S_{{({})}}", fmt_triple(b)),
            StratumLabel::P2Refined { beta, torus, three } => {
                write!(f, "({}", fmt_triple(beta))?;
                match torus {
                    Some(SubTorus::T1) => write!(f, ",T1")?,
                    Some(SubTorus::T2) => write!(f, ",T2")?,
                    None => {}
                }
                if *three {
                    write!(f, ",3")?;
                }
                write!(f, ")")
            }
            StratumLabel::TorusBeta(c) => write!(f, "(T,({}))", fmt_triple(&c.beta())),
            StratumLabel::T1 { shift: 0 } => write!(f, "(T1)"),
            StratumLabel::T1 { shift } => write!(f, "(T1,{shift})"),
        }
    }
}

impl Serialize for StratumLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Refined and coarse labels of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub refined: StratumLabel,
    pub coarse: StratumLabel,
    pub semistable: bool,
    pub stable: bool,
}

/// Runs the classifier of `family`, checks that the refined label coarsens
/// to the independently computed Morse label, and reports both.
pub fn classify(config: &Config, family: Family) -> Result<Classification> {
    let (n, dim) = (config.len(), config.dim());
    let (refined, coarse) = match family {
        Family::P1 => (classify_p1_tuple(config)?, morse_label_p1(config)?),
        Family::Binary => (classify_binary_form(config)?, morse_label_p1(config)?),
        Family::P2 => (classify_p2_tuple(config)?, morse_label_p2(config)?),
    };
    if refined.coarsen(n, dim) != coarse {
        return Err(Error::PartitionViolation(format!(
            "refined label {refined} coarsens to {}, but the Morse label is {coarse}",
            refined.coarsen(n, dim)
        )));
    }
    Ok(Classification {
        semistable: refined.is_semistable(n, dim),
        stable: refined == StratumLabel::Stable,
        refined,
        coarse,
    })
}
