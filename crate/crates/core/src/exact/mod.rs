//! Exact rational arithmetic, vectors in the Cartan subalgebra and invariant
//! bilinear forms. Nothing in this crate ever rounds.

pub mod linalg;
pub mod projection;

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator by `num-rational`.
pub type Rational = num_rational::BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Whitespace around the tokens is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }
}

pub(crate) mod rational_vec_serde {
    use super::*;

    pub fn serialize<S: Serializer>(x: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = x.iter().map(format_rational).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// An element of the Lie algebra `t ≅ Q^r` of the maximal torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieVector(pub Vec<Rational>);

impl LieVector {
    pub fn zero(rank: usize) -> Self {
        LieVector(vec![Rational::zero(); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        LieVector(v.iter().map(|&x| q(x)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LieVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl Index<usize> for LieVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &LieVector {
    type Output = LieVector;
    fn add(self, rhs: &LieVector) -> LieVector {
        LieVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LieVector {
    type Output = LieVector;
    fn sub(self, rhs: &LieVector) -> LieVector {
        LieVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LieVector {
    type Output = LieVector;
    fn neg(self) -> LieVector {
        LieVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LieVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(x))?;
        }
        write!(f, ")")
    }
}

impl Serialize for LieVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational_vec_serde::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for LieVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational_vec_serde::deserialize(d).map(LieVector)
    }
}

/// Rational positive-definite symmetric Gram matrix on `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    gram: Vec<Vec<Rational>>,
}

impl BilinearForm {
    pub fn identity(rank: usize) -> Self {
        let gram = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        BilinearForm { gram }
    }

    /// Validates symmetry and positive definiteness (Sylvester's criterion).
    pub fn new(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let r = gram.len();
        if gram.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidInput("Gram matrix is not square".into()));
        }
        for i in 0..r {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
                }
            }
        }
        for k in 1..=r {
            let minor: Vec<Vec<Rational>> = gram[..k].iter().map(|row| row[..k].to_vec()).collect();
            if !linalg::determinant(&minor).is_positive() {
                return Err(Error::InvalidInput(format!(
                    "Gram matrix is not positive definite (leading minor {k})"
                )));
            }
        }
        Ok(BilinearForm { gram })
    }

    /// The trace form `tr(XY)` on the Cartan of `sl(3)` in the coordinates
    /// `diag(x1, x2, -x1-x2)`.
    pub fn sl3_trace_form() -> Self {
        BilinearForm {
            gram: vec![vec![q(2), q(1)], vec![q(1), q(2)]],
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    pub fn inner(&self, a: &LieVector, b: &LieVector) -> Rational {
        self.inner_slices(&a.0, &b.0)
    }

    pub(crate) fn inner_slices(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() && !self.gram[i][j].is_zero() {
                    acc += ai * &self.gram[i][j] * bj;
                }
            }
        }
        acc
    }

    pub fn norm_sq(&self, a: &LieVector) -> Rational {
        self.inner(a, a)
    }

    /// True when `g^T G g = G` for the given linear map (matrix acting on
    /// column vectors).
    pub fn is_invariant_under(&self, g: &[Vec<Rational>]) -> bool {
        let r = self.rank();
        (0..r).all(|i| {
            (0..r).all(|j| {
                let mut acc = Rational::zero();
                for a in 0..r {
                    for b in 0..r {
                        acc += &g[a][i] * &self.gram[a][b] * &g[b][j];
                    }
                }
                acc == self.gram[i][j]
            })
        })
    }
}

impl Serialize for BilinearForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        for s in ["3", "-7/4", "0", "12/8"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
        assert_eq!(format_rational(&parse_rational("12/8").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("one").is_err());
    }

    #[test]
    fn form_validation() {
        assert!(BilinearForm::new(vec![vec![q(2), q(1)], vec![q(1), q(2)]]).is_ok());
        assert!(BilinearForm::new(vec![vec![q(1), q(2)], vec![q(2), q(1)]]).is_err());
        assert!(BilinearForm::new(vec![vec![q(1), q(0)], vec![q(1), q(1)]]).is_err());
        let f = BilinearForm::sl3_trace_form();
        // swap x1 <-> x3 = -x1-x2 acts as (x1, x2) -> (-x1-x2, x2)
        let g = vec![vec![q(-1), q(-1)], vec![q(0), q(1)]];
        assert!(f.is_invariant_under(&g));
        assert!(!BilinearForm::identity(2).is_invariant_under(&g));
    }
}
