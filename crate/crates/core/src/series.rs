//! Equivariant Poincaré series by the perfect-stratification recursion.
//!
//! `P_T(X) = P_T(X^ss) + sum_{beta != 0} sum_{Z} t^{codim} P_T(Z^ss)` where each
//! `Z^ss` is computed recursively as the semistable part of a shifted
//! submodel.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_rational, q, rational_vec_serde, LieVector, Rational};
use crate::model::{ModelKey, SupportProfile, WeightedModel, ZComponent};

pub const DEFAULT_TRUNCATION: usize = 40;

/// Power series in `t` known exactly in degrees `0..=truncation`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    #[serde(with = "rational_vec_serde")]
    coefficients: Vec<Rational>,
    truncation: usize,
}

impl TruncatedSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries {
            coefficients: vec![Rational::zero(); trunc + 1],
            truncation: trunc,
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coefficients[0] = Rational::one();
        s
    }

    /// A polynomial, truncated at `trunc`.
    pub fn from_coefficients(coeffs: &[Rational], trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        for (k, c) in coeffs.iter().enumerate().take(trunc + 1) {
            s.coefficients[k] = c.clone();
        }
        s
    }

    pub fn from_ints(coeffs: &[i64], trunc: usize) -> Self {
        let c: Vec<Rational> = coeffs.iter().map(|&x| q(x)).collect();
        Self::from_coefficients(&c, trunc)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coefficients.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        assert!(trunc <= self.truncation, "cannot extend a truncated series");
        TruncatedSeries {
            coefficients: self.coefficients[..=trunc].to_vec(),
            truncation: trunc,
        }
    }

    fn common(&self, other: &Self) -> usize {
        self.truncation.min(other.truncation)
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.common(other);
        let coefficients = (0..=d)
            .map(|k| &self.coefficients[k] + &other.coefficients[k])
            .collect();
        TruncatedSeries {
            coefficients,
            truncation: d,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.common(other);
        let coefficients = (0..=d)
            .map(|k| &self.coefficients[k] - &other.coefficients[k])
            .collect();
        TruncatedSeries {
            coefficients,
            truncation: d,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.common(other);
        let mut out = Self::zero(d);
        for i in 0..=d {
            if self.coefficients[i].is_zero() {
                continue;
            }
            for j in 0..=d - i {
                if !other.coefficients[j].is_zero() {
                    out.coefficients[i + j] += &self.coefficients[i] * &other.coefficients[j];
                }
            }
        }
        out
    }

    /// Multiplies by `t^k`, keeping the truncation degree `trunc`; `self`
    /// must be known up to `trunc - k`.
    pub fn shift(&self, k: usize, trunc: usize) -> Self {
        let mut out = Self::zero(trunc);
        for d in k..=trunc {
            out.coefficients[d] = self.coeff(d - k);
        }
        assert!(trunc < k || trunc - k <= self.truncation, "shift needs more terms");
        out
    }

    /// Divides by `1 - t^m`.
    pub fn div_one_minus(&self, m: usize) -> Self {
        assert!(m > 0);
        let mut c = self.coefficients.clone();
        for k in m..c.len() {
            let prev = c[k - m].clone();
            c[k] += prev;
        }
        TruncatedSeries {
            coefficients: c,
            truncation: self.truncation,
        }
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coefficients.iter().all(|c| !c.is_negative() && c.denom().is_one())
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    /// First degree where the two series differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let d = self.common(other);
        (0..=d).find(|&k| self.coefficients[k] != other.coefficients[k])
    }
}

fn format_terms(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&format_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", format_rational(&mag), mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // only even degrees occur, so the first unknown term sits at the next even degree
        let next = if self.truncation % 2 == 0 {
            self.truncation + 2
        } else {
            self.truncation + 1
        };
        write!(f, "{} (+ O(t^{next}))", format_terms(&self.coefficients))
    }
}

/// A finite polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polynomial {
    #[serde(with = "rational_vec_serde")]
    pub coefficients: Vec<Rational>,
}

impl Polynomial {
    pub fn from_ints(c: &[i64]) -> Self {
        Polynomial {
            coefficients: c.iter().map(|&x| q(x)).collect(),
        }
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coefficients;
        (0..c.len()).all(|k| c[k] == c[c.len() - 1 - k])
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(&self.coefficients))
    }
}

/// Ordinary Poincaré polynomial of the product of projective spaces.
pub fn ordinary_poincare(model: &WeightedModel, trunc: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(trunc);
    for f in model.factors() {
        let mut c = vec![Rational::zero(); 2 * (f.len() - 1) + 1];
        for k in 0..f.len() {
            c[2 * k] = Rational::one();
        }
        acc = acc.mul(&TruncatedSeries::from_coefficients(&c, trunc));
    }
    acc
}

pub fn model_equivariant_series(model: &WeightedModel, trunc: usize) -> TruncatedSeries {
    let mut s = ordinary_poincare(model, trunc);
    for _ in 0..model.rank() {
        s = s.div_one_minus(2);
    }
    s
}

/// One summand of the stratification: a nonzero index, a critical component
/// and the stratum piece's equivariant series.
#[derive(Clone, Debug, Serialize)]
pub struct StratumTerm {
    pub beta: LieVector,
    pub component: ZComponent,
    pub codim: usize,
    pub series: TruncatedSeries,
}

/// Memoizing evaluator for the semistable recursion. Safe to share across
/// threads: entries are pure functions of their keys.
#[derive(Default)]
pub struct SeriesEngine {
    memo: Mutex<HashMap<(ModelKey, usize), TruncatedSeries>>,
}

impl SeriesEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn semistable_series(&self, model: &WeightedModel, trunc: usize) -> Result<TruncatedSeries> {
        let key = (model.key(), trunc);
        if let Some(s) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(s.clone());
        }
        let mut s = model_equivariant_series(model, trunc);
        for term in self.unstable_terms(model, trunc)? {
            s = s.sub(&term.series.shift(term.codim, trunc));
        }
        self.memo.lock().expect("memo lock").insert(key, s.clone());
        Ok(s)
    }

    /// Every `(beta != 0, component)` summand whose codimension is at most
    /// `trunc`, with its series known to degree `trunc - codim`.
    pub fn unstable_terms(&self, model: &WeightedModel, trunc: usize) -> Result<Vec<StratumTerm>> {
        let mut out = Vec::new();
        for beta in model.index_betas()? {
            if beta.is_zero() {
                continue;
            }
            for comp in model.z_components(&beta) {
                let codim = model.codim(&beta, &comp);
                if codim > trunc {
                    continue;
                }
                let sub = model.descend(&beta, &comp)?;
                let series = self.semistable_series(&sub, trunc - codim)?;
                out.push(StratumTerm {
                    beta: beta.clone(),
                    component: comp,
                    codim,
                    series,
                });
            }
        }
        Ok(out)
    }
}

pub fn semistable_series(model: &WeightedModel, trunc: usize) -> Result<TruncatedSeries> {
    SeriesEngine::new().semistable_series(model, trunc)
}

/// First profile that is semistable but not stable, if any.
pub fn strictly_semistable_witness(model: &WeightedModel) -> Result<Option<SupportProfile>> {
    for p in model.canonical_profiles() {
        if model.is_semistable(&p)? && !model.is_stable(&p)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Complex dimension of the torus quotient when stabilizers are finite.
pub fn torus_quotient_dim(model: &WeightedModel) -> Option<usize> {
    model.complex_dim().checked_sub(model.rank())
}

/// Betti polynomial of `X//T` when semistable equals stable.
pub fn quotient_poincare_polynomial(model: &WeightedModel, trunc: usize) -> Result<Polynomial> {
    if let Some(w) = strictly_semistable_witness(model)? {
        return Err(Error::NotCoprimeStable { witness: w.to_string() });
    }
    let s = semistable_series(model, trunc)?;
    if s.is_zero() {
        return Ok(Polynomial {
            coefficients: Vec::new(),
        });
    }
    let d = torus_quotient_dim(model).unwrap_or(0);
    polynomial_part(&s, 2 * d, trunc)
}

fn polynomial_part(s: &TruncatedSeries, top: usize, trunc: usize) -> Result<Polynomial> {
    if trunc < top + 4 {
        return Err(Error::TruncationTooSmall {
            needed: top + 4,
            got: trunc,
        });
    }
    if let Some(k) = (top + 1..=trunc).find(|&k| !s.coeff(k).is_zero()) {
        return Err(Error::SeriesNotPolynomial { degree: k });
    }
    let mut c: Vec<Rational> = s.coefficients()[..=top].to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    Ok(Polynomial { coefficients: c })
}

fn check_sl2(model: &WeightedModel) -> Result<()> {
    if model.rank() != 1 {
        return Err(Error::RankMismatch {
            expected: 1,
            found: model.rank(),
        });
    }
    model
        .is_reflection_symmetric()
        .map_err(|factor| Error::AsymmetricWeights { factor })
}

/// `P_SL2(X^ss) = P(X)/(1-t^4) - sum_{beta>0} sum_Z t^{codim-2} P_T(Z^ss)`.
pub fn sl2_quotient_series(model: &WeightedModel, trunc: usize) -> Result<TruncatedSeries> {
    check_sl2(model)?;
    let engine = SeriesEngine::new();
    let mut s = ordinary_poincare(model, trunc).div_one_minus(4);
    for beta in model.index_betas()? {
        if !beta[0].is_positive() {
            continue;
        }
        for comp in model.z_components(&beta) {
            let codim = model.codim(&beta, &comp);
            let shift = codim
                .checked_sub(2)
                .ok_or_else(|| Error::InvalidInput(format!("component at {beta} has codimension below 2")))?;
            if shift > trunc {
                continue;
            }
            let sub = model.descend(&beta, &comp)?;
            let zs = engine.semistable_series(&sub, trunc - shift)?;
            s = s.sub(&zs.shift(shift, trunc));
        }
    }
    Ok(s)
}

/// Complex dimension of `X//SL(2)` when stabilizers are finite.
pub fn sl2_quotient_dim(model: &WeightedModel) -> Option<usize> {
    model.complex_dim().checked_sub(3)
}

/// Betti polynomial of `X//SL(2)`; needs semistable equal to stable.
pub fn sl2_quotient_polynomial(model: &WeightedModel, trunc: usize) -> Result<Polynomial> {
    check_sl2(model)?;
    if let Some(w) = strictly_semistable_witness(model)? {
        return Err(Error::NotCoprimeStable { witness: w.to_string() });
    }
    let s = sl2_quotient_series(model, trunc)?;
    if s.is_zero() {
        return Ok(Polynomial {
            coefficients: Vec::new(),
        });
    }
    polynomial_part(&s, 2 * sl2_quotient_dim(model).unwrap_or(0), trunc)
}

#[derive(Clone, Debug, Serialize)]
pub struct PerfectionReport {
    pub holds: bool,
    /// First degree where the additivity identity fails.
    pub witness_degree: Option<usize>,
    /// Stratum pieces whose codimension disagrees with the cell count.
    pub codim_mismatches: Vec<String>,
    /// Series with a negative or fractional coefficient.
    pub non_poincare: Vec<String>,
    /// Pieces with nonzero series but no profile, or the reverse.
    pub occupancy_mismatches: Vec<String>,
    pub strata_checked: usize,
}

/// Checks `P_T(X) = sum over all strata of t^codim P_T(stratum)` to degree
/// `trunc`, together with independent sanity checks on every summand: the
/// codimension recomputed from the dimensions of the profile cells in the
/// stratum piece, Poincaré-series positivity, and agreement between the
/// pieces that carry nonzero series and the pieces some profile lands in.
pub fn perfection_check(model: &WeightedModel, trunc: usize) -> Result<PerfectionReport> {
    let engine = SeriesEngine::new();
    let total = model_equivariant_series(model, trunc);
    let ss = engine.semistable_series(model, trunc)?;
    let terms = engine.unstable_terms(model, trunc)?;
    let mut sum = ss.clone();
    for t in &terms {
        sum = sum.add(&t.series.shift(t.codim, trunc));
    }
    let witness_degree = total.first_difference(&sum);

    // largest cell dimension of the profiles landing in each piece
    let mut cells: HashMap<(LieVector, ZComponent), usize> = HashMap::new();
    let mut ss_nonempty = false;
    for p in model.profiles() {
        let beta = model.classify_beta(&p)?;
        if beta.is_zero() {
            ss_nonempty = true;
            continue;
        }
        let comp = model.component_of_profile(&beta, &p);
        let dim: usize = p.0.iter().map(|s| s.len() - 1).sum();
        let e = cells.entry((beta, comp)).or_insert(0);
        *e = (*e).max(dim);
    }

    let mut codim_mismatches = Vec::new();
    let mut non_poincare = Vec::new();
    let mut occupancy_mismatches = Vec::new();
    if !ss.is_nonnegative_integral() {
        non_poincare.push(format!("semistable part: {ss}"));
    }
    if ss_nonempty != !ss.is_zero() || (ss_nonempty && !ss.coeff(0).is_one()) {
        occupancy_mismatches.push(format!("semistable part: {ss}"));
    }
    for t in &terms {
        let label = format!("beta {} component {:?}", t.beta, t.component.indices);
        if !t.series.is_nonnegative_integral() {
            non_poincare.push(label.clone());
        }
        match cells.get(&(t.beta.clone(), t.component.clone())) {
            Some(&dim) => {
                let expected = 2 * (model.complex_dim() - dim);
                if expected != t.codim {
                    codim_mismatches.push(format!("{label}: {} vs {expected}", t.codim));
                }
                if !t.series.coeff(0).is_one() {
                    occupancy_mismatches.push(format!("{label}: occupied but series {}", t.series));
                }
            }
            None => {
                if !t.series.is_zero() {
                    occupancy_mismatches.push(format!("{label}: empty but series {}", t.series));
                }
            }
        }
    }
    let holds = witness_degree.is_none()
        && codim_mismatches.is_empty()
        && non_poincare.is_empty()
        && occupancy_mismatches.is_empty();
    Ok(PerfectionReport {
        holds,
        witness_degree,
        codim_mismatches,
        non_poincare,
        occupancy_mismatches,
        strata_checked: terms.len() + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries, n: usize) -> Vec<i64> {
        (0..n)
            .map(|k| {
                let c = s.coeff(k);
                assert!(c.denom().is_one());
                i64::try_from(c.numer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn arithmetic() {
        let a = TruncatedSeries::from_ints(&[1, 0, 1], 6);
        let g = TruncatedSeries::one(6).div_one_minus(2);
        assert_eq!(ints(&g, 7), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(ints(&a.mul(&g), 7), vec![1, 0, 2, 0, 2, 0, 2]);
        assert_eq!(ints(&a.shift(2, 6), 7), vec![0, 0, 1, 0, 1, 0, 0]);
        assert_eq!(a.sub(&a).degree(), None);
    }

    #[test]
    fn display() {
        let s = TruncatedSeries::from_ints(&[1, 0, 2, 0, 1], 40);
        assert_eq!(s.to_string(), "1 + 2*t^2 + t^4 (+ O(t^42))");
        assert_eq!(TruncatedSeries::zero(4).to_string(), "0 (+ O(t^6))");
        assert_eq!(Polynomial::from_ints(&[1, 0, -3]).to_string(), "1 - 3*t^2");
    }

    #[test]
    fn model_series() {
        let pt = WeightedModel::rank_one(&[&[0]]);
        assert_eq!(ints(&model_equivariant_series(&pt, 6), 7), vec![1, 0, 1, 0, 1, 0, 1]);
        let p3 = WeightedModel::binary_forms(3);
        assert_eq!(
            ints(&model_equivariant_series(&p3, 8), 9),
            vec![1, 0, 2, 0, 3, 0, 4, 0, 4]
        );
    }

    #[test]
    fn semistable_series_small_cases() {
        let p1 = WeightedModel::p1_power(1);
        let s = semistable_series(&p1, 20).unwrap();
        assert_eq!(s, TruncatedSeries::one(20));
        let p3 = WeightedModel::binary_forms(3);
        assert_eq!(
            semistable_series(&p3, 20).unwrap(),
            TruncatedSeries::from_ints(&[1, 0, 2, 0, 1], 20)
        );
        // everything is unstable: X = S_1
        let m = WeightedModel::rank_one(&[&[1, 1]]);
        assert!(semistable_series(&m, 20).unwrap().is_zero());
    }

    #[test]
    fn quotient_polynomials() {
        let p3 = WeightedModel::binary_forms(3);
        assert_eq!(
            quotient_poincare_polynomial(&p3, 40).unwrap(),
            Polynomial::from_ints(&[1, 0, 2, 0, 1])
        );
        let p13 = WeightedModel::p1_power(3);
        let poly = quotient_poincare_polynomial(&p13, 40).unwrap();
        assert_eq!(poly, Polynomial::from_ints(&[1, 0, 4, 0, 1]));
        assert!(poly.is_palindromic());
        assert!(matches!(
            quotient_poincare_polynomial(&WeightedModel::p1_power(4), 40),
            Err(Error::NotCoprimeStable { .. })
        ));
        assert!(matches!(
            quotient_poincare_polynomial(&p3, 5),
            Err(Error::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn sl2_series() {
        let one = TruncatedSeries::one(30);
        assert_eq!(sl2_quotient_series(&WeightedModel::binary_forms(3), 30).unwrap(), one);
        assert_eq!(sl2_quotient_series(&WeightedModel::p1_power(3), 30).unwrap(), one);
        assert_eq!(
            sl2_quotient_series(&WeightedModel::p1_power(5), 30).unwrap(),
            TruncatedSeries::from_ints(&[1, 0, 5, 0, 1], 30)
        );
        assert_eq!(
            sl2_quotient_series(&WeightedModel::binary_forms(5), 30).unwrap(),
            TruncatedSeries::from_ints(&[1, 0, 1, 0, 1], 30)
        );
        let asym = WeightedModel::rank_one(&[&[2, -1]]);
        assert!(matches!(
            sl2_quotient_series(&asym, 10),
            Err(Error::AsymmetricWeights { factor: 0 })
        ));
    }

    #[test]
    fn perfection_small_models() {
        for m in [
            WeightedModel::binary_forms(3),
            WeightedModel::p1_power(4),
            WeightedModel::rank_one(&[&[0]]),
            WeightedModel::rank_one(&[&[2, 1, 1, -3]]),
        ] {
            let r = perfection_check(&m, 40).unwrap();
            assert!(r.holds, "{m}: {r:?}");
        }
    }
}
