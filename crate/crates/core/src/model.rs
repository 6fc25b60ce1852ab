//! Linearized torus actions on products of projective spaces, described by
//! the torus weights of each factor.
//!
//! A point's stratum is governed by its support profile: the indices of its
//! nonzero homogeneous coordinates in every factor. The weight polytope of the
//! product point is the hull of all cross-factor sums of supported weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::projection::{self, ProjectionCertificate};
use crate::exact::{parse_rational, q, rational_vec_serde, BilinearForm, LieVector, Rational};

/// Weyl group attached to a model, acting on `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeylGroup {
    Trivial,
    Sl2,
    Sl3TorusWeyl,
}

impl WeylGroup {
    /// Elements as matrices acting on column vectors, paired with their sign.
    pub fn elements(&self, rank: usize) -> Vec<(Vec<Vec<Rational>>, i32)> {
        let ident = |r: usize| -> Vec<Vec<Rational>> {
            (0..r)
                .map(|i| (0..r).map(|j| if i == j { q(1) } else { q(0) }).collect())
                .collect()
        };
        match self {
            WeylGroup::Trivial => vec![(ident(rank), 1)],
            WeylGroup::Sl2 => vec![(ident(1), 1), (vec![vec![q(-1)]], -1)],
            WeylGroup::Sl3TorusWeyl => {
                // x3 = -x1 - x2; each coordinate x_k as a row over (x1, x2)
                let coord = [vec![q(1), q(0)], vec![q(0), q(1)], vec![q(-1), q(-1)]];
                let perms: [([usize; 3], i32); 6] = [
                    ([0, 1, 2], 1),
                    ([1, 0, 2], -1),
                    ([2, 1, 0], -1),
                    ([0, 2, 1], -1),
                    ([1, 2, 0], 1),
                    ([2, 0, 1], 1),
                ];
                perms
                    .iter()
                    .map(|(p, s)| (vec![coord[p[0]].clone(), coord[p[1]].clone()], *s))
                    .collect()
            }
        }
    }

    pub fn order(&self) -> usize {
        match self {
            WeylGroup::Trivial => 1,
            WeylGroup::Sl2 => 2,
            WeylGroup::Sl3TorusWeyl => 6,
        }
    }
}

pub fn apply_matrix(m: &[Vec<Rational>], v: &LieVector) -> LieVector {
    LieVector(
        m.iter()
            .map(|row| row.iter().zip(v.coords()).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

/// Per factor, the indices of the nonzero coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SupportProfile(pub Vec<Vec<usize>>);

impl fmt::Display for SupportProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let inner: Vec<String> = s.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", inner.join(","))?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumIndex {
    pub beta: LieVector,
    pub certificate: ProjectionCertificate,
}

/// A connected component of the critical set at level `beta`: in factor `i`
/// the coordinates `indices[i]` attain the value `values[i]` of `<alpha, beta>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ZComponent {
    #[serde(with = "rational_vec_serde")]
    pub values: Vec<Rational>,
    pub indices: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelKey {
    gram: Vec<Vec<Rational>>,
    factors: Vec<Vec<LieVector>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedModel {
    rank: usize,
    form: BilinearForm,
    factors: Vec<Vec<LieVector>>,
    weyl: WeylGroup,
}

impl WeightedModel {
    pub fn new(form: BilinearForm, factors: Vec<Vec<LieVector>>, weyl: WeylGroup) -> Result<Self> {
        let rank = form.rank();
        if factors.is_empty() {
            return Err(Error::InvalidInput("model has no factors".into()));
        }
        for (i, f) in factors.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::InvalidInput(format!("factor {i} has no weights")));
            }
            for w in f {
                if w.rank() != rank {
                    return Err(Error::RankMismatch {
                        expected: rank,
                        found: w.rank(),
                    });
                }
            }
        }
        match weyl {
            WeylGroup::Sl2 if rank != 1 => return Err(Error::InvalidInput("sl2 Weyl action needs rank 1".into())),
            WeylGroup::Sl3TorusWeyl if rank != 2 => {
                return Err(Error::InvalidInput("sl3 Weyl action needs rank 2".into()))
            }
            _ => {}
        }
        for (g, _) in weyl.elements(rank) {
            if !form.is_invariant_under(&g) {
                return Err(Error::InvalidInput("form is not Weyl invariant".into()));
            }
        }
        Ok(WeightedModel {
            rank,
            form,
            factors,
            weyl,
        })
    }

    /// Rank one, identity form, integer weights per factor.
    pub fn rank_one(factors: &[&[i64]]) -> Self {
        let factors = factors
            .iter()
            .map(|f| f.iter().map(|&w| LieVector::from_ints(&[w])).collect())
            .collect();
        WeightedModel::new(BilinearForm::identity(1), factors, WeylGroup::Trivial)
            .expect("rank one integer model is valid")
    }

    /// `P_n` with the weights `n, n-2, ..., -n` of the maximal torus of `SL(2)`.
    pub fn binary_forms(n: usize) -> Self {
        let w: Vec<i64> = (0..=n).map(|j| n as i64 - 2 * j as i64).collect();
        WeightedModel::rank_one(&[&w])
    }

    /// `(P_1)^n` with weights `1, -1` on every factor.
    pub fn p1_power(n: usize) -> Self {
        let f: Vec<&[i64]> = vec![&[1, -1]; n];
        WeightedModel::rank_one(&f)
    }

    /// `(P_2)^n` under the maximal torus of `SL(3)` with the trace form.
    pub fn p2_power(n: usize) -> Self {
        let third = |a: i64, b: i64| LieVector(vec![crate::exact::frac(a, 3), crate::exact::frac(b, 3)]);
        let f = vec![third(2, -1), third(-1, 2), third(-1, -1)];
        WeightedModel::new(BilinearForm::sl3_trace_form(), vec![f; n], WeylGroup::Sl3TorusWeyl)
            .expect("trace form is Weyl invariant")
    }

    pub fn with_weyl(self, weyl: WeylGroup) -> Result<Self> {
        WeightedModel::new(self.form, self.factors, weyl)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn factors(&self) -> &[Vec<LieVector>] {
        &self.factors
    }

    pub fn weyl(&self) -> WeylGroup {
        self.weyl
    }

    /// Number of weight slots, i.e. the sum of factor sizes.
    pub fn slots(&self) -> usize {
        self.factors.iter().map(Vec::len).sum()
    }

    /// Complex dimension of the product of projective spaces.
    pub fn complex_dim(&self) -> usize {
        self.factors.iter().map(|f| f.len() - 1).sum()
    }

    pub fn key(&self) -> ModelKey {
        let mut factors: Vec<Vec<LieVector>> = self
            .factors
            .iter()
            .map(|f| {
                let mut f = f.clone();
                f.sort();
                f
            })
            .collect();
        factors.sort();
        ModelKey {
            gram: self.form.gram().to_vec(),
            factors,
        }
    }

    pub fn support_of_point(&self, coords: &[Vec<Rational>]) -> Result<SupportProfile> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidInput(format!(
                "point has {} factors, model has {}",
                coords.len(),
                self.factors.len()
            )));
        }
        let mut out = Vec::with_capacity(coords.len());
        for (i, (c, f)) in coords.iter().zip(&self.factors).enumerate() {
            if c.len() != f.len() {
                return Err(Error::InvalidInput(format!(
                    "factor {i} expects {} coordinates, got {}",
                    f.len(),
                    c.len()
                )));
            }
            let s: Vec<usize> = (0..c.len()).filter(|&k| !c[k].is_zero()).collect();
            if s.is_empty() {
                return Err(Error::ZeroVector { factor: i });
            }
            out.push(s);
        }
        Ok(SupportProfile(out))
    }

    fn check_profile(&self, p: &SupportProfile) -> Result<()> {
        if p.0.len() != self.factors.len() {
            return Err(Error::InvalidInput(format!(
                "profile {p} has the wrong number of factors"
            )));
        }
        for (i, (s, f)) in p.0.iter().zip(&self.factors).enumerate() {
            if s.is_empty() {
                return Err(Error::ZeroVector { factor: i });
            }
            if s.iter().any(|&k| k >= f.len()) {
                return Err(Error::InvalidInput(format!("profile {p} indexes past factor {i}")));
            }
        }
        Ok(())
    }

    /// All cross-factor sums of supported weights, deduplicated and sorted.
    pub fn minkowski_points(&self, p: &SupportProfile) -> Vec<LieVector> {
        let mut sums: BTreeSet<LieVector> = BTreeSet::new();
        sums.insert(LieVector::zero(self.rank));
        for (s, f) in p.0.iter().zip(&self.factors) {
            let mut next = BTreeSet::new();
            for x in &sums {
                for &k in s {
                    next.insert(x + &f[k]);
                }
            }
            sums = next;
        }
        sums.into_iter().collect()
    }

    pub fn full_profile(&self) -> SupportProfile {
        SupportProfile(self.factors.iter().map(|f| (0..f.len()).collect()).collect())
    }

    pub fn classify(&self, p: &SupportProfile) -> Result<StratumIndex> {
        self.check_profile(p)?;
        let cert = projection::closest_point_to_origin(&self.minkowski_points(p), &self.form)?;
        Ok(StratumIndex {
            beta: cert.beta.clone(),
            certificate: cert,
        })
    }

    /// The stratum index of a profile without its certificate.
    pub fn classify_beta(&self, p: &SupportProfile) -> Result<LieVector> {
        self.check_profile(p)?;
        projection::closest_beta(&self.minkowski_points(p), &self.form)
    }

    pub fn is_semistable(&self, p: &SupportProfile) -> Result<bool> {
        Ok(self.classify_beta(p)?.is_zero())
    }

    pub fn is_stable(&self, p: &SupportProfile) -> Result<bool> {
        self.check_profile(p)?;
        Ok(projection::origin_in_interior(&self.minkowski_points(p), self.rank))
    }

    /// Every support profile, in lexicographic order of per-factor subset masks.
    pub fn profiles(&self) -> Vec<SupportProfile> {
        let per: Vec<Vec<Vec<usize>>> = self.factors.iter().map(|f| nonempty_subsets(f.len())).collect();
        let mut out = vec![Vec::new()];
        for choices in &per {
            let mut next = Vec::with_capacity(out.len() * choices.len());
            for prefix in &out {
                for c in choices {
                    let mut p: Vec<Vec<usize>> = prefix.clone();
                    p.push(c.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(SupportProfile).collect()
    }

    /// One profile per orbit of the permutations of identical factors.
    pub fn canonical_profiles(&self) -> Vec<SupportProfile> {
        let mut groups: BTreeMap<Vec<LieVector>, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.factors.iter().enumerate() {
            groups.entry(f.clone()).or_default().push(i);
        }
        let mut out: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; self.factors.len()]];
        for (f, members) in &groups {
            let subsets = nonempty_subsets(f.len());
            let combos = multisets(subsets.len(), members.len());
            let mut next = Vec::with_capacity(out.len() * combos.len());
            for partial in &out {
                for combo in &combos {
                    let mut p = partial.clone();
                    for (&slot, &c) in members.iter().zip(combo) {
                        p[slot] = Some(subsets[c].clone());
                    }
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|p| SupportProfile(p.into_iter().map(|s| s.expect("every slot filled")).collect()))
            .collect()
    }

    /// The index set `B`, sorted by norm and then coordinates, each with the
    /// certificate of the first canonical profile that realizes it.
    pub fn index_set(&self) -> Result<Vec<StratumIndex>> {
        let profiles = self.canonical_profiles();
        let betas: Vec<LieVector> = profiles
            .par_iter()
            .map(|p| self.classify_beta(p))
            .collect::<Result<_>>()?;
        let mut first: BTreeMap<LieVector, usize> = BTreeMap::new();
        for (i, b) in betas.into_iter().enumerate() {
            first.entry(b).or_insert(i);
        }
        let mut out: Vec<StratumIndex> = first
            .into_values()
            .map(|i| self.classify(&profiles[i]))
            .collect::<Result<_>>()?;
        out.sort_by(|a, b| {
            self.form
                .norm_sq(&a.beta)
                .cmp(&self.form.norm_sq(&b.beta))
                .then_with(|| a.beta.cmp(&b.beta))
        });
        Ok(out)
    }

    pub fn index_betas(&self) -> Result<Vec<LieVector>> {
        Ok(self.index_set()?.into_iter().map(|s| s.beta).collect())
    }

    /// Per-factor value tuples `v_i in {<alpha_ik, beta>}` with
    /// `sum v_i = |beta|^2`.
    pub fn z_components(&self, beta: &LieVector) -> Vec<ZComponent> {
        let target = self.form.norm_sq(beta);
        let pairings: Vec<Vec<Rational>> = self
            .factors
            .iter()
            .map(|f| f.iter().map(|a| self.form.inner(a, beta)).collect())
            .collect();
        let values: Vec<Vec<Rational>> = pairings
            .iter()
            .map(|p| p.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        let m = values.len();
        let mut min_rest = vec![Rational::zero(); m + 1];
        let mut max_rest = vec![Rational::zero(); m + 1];
        for i in (0..m).rev() {
            min_rest[i] = &min_rest[i + 1] + &values[i][0];
            max_rest[i] = &max_rest[i + 1] + values[i].last().expect("nonempty");
        }
        let mut out = Vec::new();
        let mut chosen: Vec<Rational> = Vec::with_capacity(m);
        fn rec(
            i: usize,
            acc: Rational,
            target: &Rational,
            values: &[Vec<Rational>],
            min_rest: &[Rational],
            max_rest: &[Rational],
            chosen: &mut Vec<Rational>,
            out: &mut Vec<Vec<Rational>>,
        ) {
            if i == values.len() {
                if &acc == target {
                    out.push(chosen.clone());
                }
                return;
            }
            let need = target - &acc;
            if need < min_rest[i] || need > max_rest[i] {
                return;
            }
            for v in &values[i] {
                chosen.push(v.clone());
                rec(i + 1, &acc + v, target, values, min_rest, max_rest, chosen, out);
                chosen.pop();
            }
        }
        let mut tuples = Vec::new();
        rec(
            0,
            Rational::zero(),
            &target,
            &values,
            &min_rest,
            &max_rest,
            &mut chosen,
            &mut tuples,
        );
        for t in tuples {
            let indices = pairings
                .iter()
                .zip(&t)
                .map(|(p, v)| (0..p.len()).filter(|&k| &p[k] == v).collect())
                .collect();
            out.push(ZComponent { values: t, indices });
        }
        out
    }

    /// The component of `beta` containing the limit points of a profile:
    /// in each factor the minimal pairing over the support.
    pub fn component_of_profile(&self, beta: &LieVector, p: &SupportProfile) -> ZComponent {
        let values: Vec<Rational> =
            p.0.iter()
                .zip(&self.factors)
                .map(|(s, f)| {
                    s.iter()
                        .map(|&k| self.form.inner(&f[k], beta))
                        .min()
                        .expect("nonempty support")
                })
                .collect();
        let indices = self
            .factors
            .iter()
            .zip(&values)
            .map(|(f, v)| (0..f.len()).filter(|&k| &self.form.inner(&f[k], beta) == v).collect())
            .collect();
        ZComponent { values, indices }
    }

    /// Real codimension `2 #{(i,k) : <alpha_ik, beta> < v_i}` of the stratum
    /// piece flowing to `comp`.
    pub fn codim(&self, beta: &LieVector, comp: &ZComponent) -> usize {
        2 * self
            .factors
            .iter()
            .zip(&comp.values)
            .map(|(f, v)| f.iter().filter(|a| &self.form.inner(a, beta) < v).count())
            .sum::<usize>()
    }

    /// Torus model on the component `comp` with every weight shifted so that
    /// it pairs to zero with `beta`.
    pub fn shifted_submodel(&self, beta: &LieVector, comp: &ZComponent) -> Result<WeightedModel> {
        if beta.is_zero() {
            return Err(Error::InvalidInput("shifted submodel needs a nonzero beta".into()));
        }
        let nb = self.form.norm_sq(beta);
        let factors = comp
            .indices
            .iter()
            .zip(&comp.values)
            .zip(&self.factors)
            .map(|((idx, v), f)| {
                let shift = beta.scale(&(v / &nb));
                idx.iter().map(|&k| &f[k] - &shift).collect()
            })
            .collect();
        WeightedModel::new(self.form.clone(), factors, WeylGroup::Trivial)
    }

    /// Termination measure for recursive descent into shifted submodels:
    /// twice the slot count, plus one when 0 is outside the full weight hull.
    pub fn recursion_measure(&self) -> Result<usize> {
        let outside = !self.is_semistable(&self.full_profile())?;
        Ok(2 * self.slots() + usize::from(outside))
    }

    /// Submodel for recursion, asserting that the measure decreases.
    pub fn descend(&self, beta: &LieVector, comp: &ZComponent) -> Result<WeightedModel> {
        let sub = self.shifted_submodel(beta, comp)?;
        if sub.recursion_measure()? >= self.recursion_measure()? {
            return Err(Error::RecursionMeasure {
                submodel: format!("{sub}"),
            });
        }
        Ok(sub)
    }

    /// Image of a profile under a Weyl element that permutes every factor's
    /// weights; `None` when it does not.
    pub fn act_on_profile(&self, g: &[Vec<Rational>], p: &SupportProfile) -> Option<SupportProfile> {
        let mut out = Vec::with_capacity(p.0.len());
        for (s, f) in p.0.iter().zip(&self.factors) {
            let mut img = Vec::with_capacity(s.len());
            for &k in s {
                let w = apply_matrix(g, &f[k]);
                img.push(f.iter().position(|a| *a == w)?);
            }
            img.sort_unstable();
            img.dedup();
            out.push(img);
        }
        Some(SupportProfile(out))
    }

    /// Replaces the weights of the first factor by `alpha - eps`.
    pub fn shifted_by(&self, eps: &LieVector) -> Result<WeightedModel> {
        if eps.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: eps.rank(),
            });
        }
        let mut factors = self.factors.clone();
        for w in factors[0].iter_mut() {
            *w = &*w - eps;
        }
        WeightedModel::new(self.form.clone(), factors, WeylGroup::Trivial)
    }

    /// True when every weight multiset is symmetric under `alpha -> -alpha`
    /// (rank one only).
    pub fn is_reflection_symmetric(&self) -> std::result::Result<(), usize> {
        for (i, f) in self.factors.iter().enumerate() {
            let mut a: Vec<LieVector> = f.clone();
            let mut b: Vec<LieVector> = f.iter().map(|w| -w).collect();
            a.sort();
            b.sort();
            if a != b {
                return Err(i);
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("model file: {e}")))?;
        file.into_model()
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            rank: self.rank,
            form: Some(
                self.form
                    .gram()
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| RationalEntry::Text(crate::exact::format_rational(x)))
                            .collect()
                    })
                    .collect(),
            ),
            factors: self
                .factors
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|w| {
                            w.coords()
                                .iter()
                                .map(|x| RationalEntry::Text(crate::exact::format_rational(x)))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            weyl: Some(self.weyl),
        }
    }
}

impl fmt::Display for WeightedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            let ws: Vec<String> = fac.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", ws.join(" "))?;
        }
        write!(f, "]")
    }
}

fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|&k| mask >> k & 1 == 1).collect())
        .collect()
}

/// Nondecreasing sequences of length `len` over `0..n`.
fn multisets(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(n: usize, len: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for c in from..n {
            cur.push(c);
            rec(n, len, c, cur, out);
            cur.pop();
        }
    }
    rec(n, len, 0, &mut cur, &mut out);
    out
}

/// A rational in a model file: either `"p/q"` or a JSON integer.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalEntry {
    Text(String),
    Int(i64),
}

impl RationalEntry {
    pub fn value(&self) -> Result<Rational> {
        match self {
            RationalEntry::Text(s) => parse_rational(s),
            RationalEntry::Int(i) => Ok(q(*i)),
        }
    }
}

/// On-disk model description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<RationalEntry>>>,
    pub factors: Vec<Vec<Vec<RationalEntry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl: Option<WeylGroup>,
}

impl ModelFile {
    pub fn into_model(self) -> Result<WeightedModel> {
        let form = match self.form {
            None => BilinearForm::identity(self.rank),
            Some(rows) => {
                let gram = rows
                    .iter()
                    .map(|r| r.iter().map(RationalEntry::value).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                if gram.len() != self.rank {
                    return Err(Error::RankMismatch {
                        expected: self.rank,
                        found: gram.len(),
                    });
                }
                BilinearForm::new(gram)?
            }
        };
        let factors = self
            .factors
            .iter()
            .map(|f| {
                f.iter()
                    .map(|w| Ok(LieVector(w.iter().map(RationalEntry::value).collect::<Result<_>>()?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        WeightedModel::new(form, factors, self.weyl.unwrap_or(WeylGroup::Trivial))
    }
}

/// Whether `v` is positive in rank one; convenient for the `beta > 0` halves
/// of Weyl-folded sums.
pub fn is_positive_rank_one(v: &LieVector) -> bool {
    v.rank() == 1 && v[0].is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(v: &[&[usize]]) -> SupportProfile {
        SupportProfile(v.iter().map(|s| s.to_vec()).collect())
    }

    fn b(x: i64) -> LieVector {
        LieVector::from_ints(&[x])
    }

    #[test]
    fn supports() {
        let m = WeightedModel::p1_power(2);
        let p = m.support_of_point(&[vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap();
        assert_eq!(p, prof(&[&[0], &[1]]));
        let m3 = WeightedModel::binary_forms(3);
        let p = m3.support_of_point(&[vec![q(0), q(1), q(1), q(0)]]).unwrap();
        assert_eq!(p, prof(&[&[1, 2]]));
        assert!(matches!(
            m.support_of_point(&[vec![q(0), q(0)], vec![q(1), q(0)]]),
            Err(Error::ZeroVector { factor: 0 })
        ));
    }

    #[test]
    fn minkowski_sums() {
        let m = WeightedModel::p1_power(2);
        assert_eq!(m.minkowski_points(&prof(&[&[0], &[1]])), vec![b(0)]);
        assert_eq!(m.minkowski_points(&prof(&[&[0, 1], &[0]])), vec![b(0), b(2)]);
        let m3 = WeightedModel::p1_power(3);
        assert_eq!(m3.minkowski_points(&m3.full_profile()), vec![b(-3), b(-1), b(1), b(3)]);
    }

    #[test]
    fn classification_and_stability() {
        let m5 = WeightedModel::p1_power(5);
        let p = prof(&[&[0], &[0], &[0], &[0], &[1]]);
        assert_eq!(m5.classify(&p).unwrap().beta, b(3));
        let p = prof(&[&[0], &[0], &[0], &[1], &[1]]);
        assert_eq!(m5.classify(&p).unwrap().beta, b(1));
        let m3 = WeightedModel::binary_forms(3);
        assert_eq!(m3.classify(&prof(&[&[0, 1]])).unwrap().beta, b(1));

        let m4 = WeightedModel::p1_power(4);
        let p = prof(&[&[0], &[0], &[1], &[1]]);
        assert!(m4.is_semistable(&p).unwrap());
        assert!(!m4.is_stable(&p).unwrap());
        let m3 = WeightedModel::p1_power(3);
        // a torus-fixed point has a one-point weight set {1}
        let p = prof(&[&[0], &[0], &[1]]);
        assert!(!m3.is_semistable(&p).unwrap());
        let p = prof(&[&[0, 1], &[0], &[1]]);
        assert!(m3.is_semistable(&p).unwrap());
        assert!(m3.is_stable(&p).unwrap());
        let p = prof(&[&[0], &[0], &[0]]);
        assert!(!m3.is_semistable(&p).unwrap() && !m3.is_stable(&p).unwrap());
    }

    #[test]
    fn index_sets() {
        let betas = WeightedModel::binary_forms(3).index_betas().unwrap();
        assert_eq!(betas, vec![b(0), b(-1), b(1), b(-3), b(3)]);
        assert_eq!(
            WeightedModel::p1_power(1).index_betas().unwrap(),
            vec![b(0), b(-1), b(1)]
        );
        assert_eq!(
            WeightedModel::p1_power(2).index_betas().unwrap(),
            vec![b(0), b(-2), b(2)]
        );
    }

    #[test]
    fn canonical_profiles_cover_every_orbit() {
        let m = WeightedModel::p1_power(3);
        assert_eq!(m.profiles().len(), 27);
        // multisets of size 3 from 3 subsets
        assert_eq!(m.canonical_profiles().len(), 10);
    }

    #[test]
    fn components_and_codims() {
        let m3 = WeightedModel::binary_forms(3);
        let z = m3.z_components(&b(1));
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].indices, vec![vec![1]]);
        assert_eq!(m3.codim(&b(1), &z[0]), 4);
        let z3 = m3.z_components(&b(3));
        assert_eq!(m3.codim(&b(3), &z3[0]), 6);

        let m5 = WeightedModel::p1_power(5);
        let z = m5.z_components(&b(1));
        assert_eq!(z.len(), 10);
        assert!(z.iter().all(|c| m5.codim(&b(1), c) == 6));
    }

    #[test]
    fn shifted_submodels() {
        let m3 = WeightedModel::binary_forms(3);
        let z = &m3.z_components(&b(1))[0];
        let sub = m3.shifted_submodel(&b(1), z).unwrap();
        assert_eq!(sub.factors(), &[vec![b(0)]]);
        let m = WeightedModel::rank_one(&[&[1, 1]]);
        let z = &m.z_components(&b(1))[0];
        assert_eq!(m.shifted_submodel(&b(1), z).unwrap().factors(), &[vec![b(0), b(0)]]);
        assert!(m.shifted_submodel(&b(0), z).is_err());
        assert!(m.descend(&b(1), z).is_ok());
    }

    #[test]
    fn model_file_round_trip() {
        let text = r#"{"rank": 1, "factors": [[["3"], ["1"], ["-1"], ["-3"]]], "weyl": "sl2"}"#;
        let m = WeightedModel::from_json(text).unwrap();
        assert_eq!(m.weyl(), WeylGroup::Sl2);
        let again = serde_json::to_string(&m.to_file()).unwrap();
        assert_eq!(WeightedModel::from_json(&again).unwrap(), m);
        assert!(WeightedModel::from_json(r#"{"rank": 2, "factors": [[["1"]]]}"#).is_err());
    }

    #[test]
    fn sl3_weyl_permutes_p2_weights() {
        let m = WeightedModel::p2_power(1);
        for (g, _) in WeylGroup::Sl3TorusWeyl.elements(2) {
            let p = m.act_on_profile(&g, &m.full_profile()).unwrap();
            assert_eq!(p, m.full_profile());
        }
        assert_eq!(m.index_betas().unwrap().len(), 7);
    }
}
