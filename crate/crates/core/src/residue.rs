//! Rank-one residue pairings: fixed components of the torus, localization of
//! classes to them, and the kernel of the restriction map detected by pairing.
//!
//! On a component `F` with value `v_i` in factor `i`, `z_i` restricts to
//! `h_i - v_i a` with `h_i^{size_i} = 0`, so each base relation restricts to 0.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::ideal::Piece;
use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::exact::linalg::{left_nullspace, RowSpace};
use crate::exact::{q, rational_serde, rational_vec_serde, Rational};
use crate::kirwan::{Group, Presentation};
use crate::model::WeightedModel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedComponent {
    /// Per factor, the common weight value of the class.
    #[serde(with = "rational_vec_serde")]
    pub values: Vec<Rational>,
    /// Per factor, the weight indices attaining that value.
    pub indices: Vec<Vec<usize>>,
    #[serde(with = "rational_serde")]
    pub mu: Rational,
}

impl FixedComponent {
    pub fn sizes(&self) -> Vec<u32> {
        self.indices.iter().map(|c| c.len() as u32).collect()
    }

    /// Complex dimension of the component, a product of projective spaces.
    pub fn dim(&self) -> usize {
        self.indices.iter().map(|c| c.len() - 1).sum()
    }
}

/// All tuples of per-factor value classes, factor values in decreasing order.
pub fn fixed_components(model: &WeightedModel) -> Result<Vec<FixedComponent>> {
    if model.rank() != 1 {
        return Err(Error::RankMismatch {
            expected: 1,
            found: model.rank(),
        });
    }
    let classes: Vec<Vec<(Rational, Vec<usize>)>> = model
        .factors()
        .iter()
        .map(|f| {
            let mut by_value: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
            for (k, w) in f.iter().enumerate() {
                by_value.entry(w[0].clone()).or_default().push(k);
            }
            by_value.into_iter().rev().collect()
        })
        .collect();
    let mut out = vec![FixedComponent {
        values: vec![],
        indices: vec![],
        mu: Rational::zero(),
    }];
    for cls in &classes {
        let mut next = Vec::with_capacity(out.len() * cls.len());
        for fc in &out {
            for (v, idx) in cls {
                let mut c = fc.clone();
                c.values.push(v.clone());
                c.indices.push(idx.clone());
                c.mu += v;
                next.push(c);
            }
        }
        out = next;
    }
    Ok(out)
}

/// An element of `Q[h_1..h_m]/(h_i^{size_i}) [a, a^-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalClass {
    sizes: Vec<u32>,
    terms: BTreeMap<(Vec<u32>, i64), Rational>,
}

impl LocalClass {
    pub fn zero(sizes: &[u32]) -> Self {
        LocalClass {
            sizes: sizes.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(sizes: &[u32], h: Vec<u32>, a: i64, c: Rational) -> Self {
        let mut x = LocalClass::zero(sizes);
        x.add_term(h, a, c);
        x
    }

    pub fn one(sizes: &[u32]) -> Self {
        LocalClass::monomial(sizes, vec![0; sizes.len()], 0, Rational::one())
    }

    /// `h_i + c a`.
    pub fn linear(sizes: &[u32], i: usize, c: &Rational) -> Self {
        let mut h = vec![0; sizes.len()];
        let mut x = LocalClass::monomial(sizes, vec![0; sizes.len()], 1, c.clone());
        h[i] = 1;
        x.add_term(h, 0, Rational::one());
        x
    }

    /// `(h_i + c a)^{-1} = sum_{j < size_i} (-1)^j h_i^j c^{-j-1} a^{-j-1}`.
    pub fn inverse_linear(sizes: &[u32], i: usize, c: &Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidInput("inverting a nilpotent class".into()));
        }
        let mut x = LocalClass::zero(sizes);
        let mut cpow = c.recip();
        for j in 0..sizes[i] {
            let mut h = vec![0; sizes.len()];
            h[i] = j;
            let sign = if j % 2 == 0 { q(1) } else { q(-1) };
            x.add_term(h, -(j as i64) - 1, sign * &cpow);
            cpow /= c;
        }
        Ok(x)
    }

    fn add_term(&mut self, h: Vec<u32>, a: i64, c: Rational) {
        if c.is_zero() || h.iter().zip(&self.sizes).any(|(e, s)| e >= s) {
            return;
        }
        let key = (h, a);
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<u32>, i64), &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &LocalClass) -> LocalClass {
        let mut x = self.clone();
        for ((h, a), c) in &other.terms {
            x.add_term(h.clone(), *a, c.clone());
        }
        x
    }

    pub fn scale(&self, c: &Rational) -> LocalClass {
        let mut x = LocalClass::zero(&self.sizes);
        for ((h, a), v) in &self.terms {
            x.add_term(h.clone(), *a, v * c);
        }
        x
    }

    pub fn mul(&self, other: &LocalClass) -> LocalClass {
        let mut x = LocalClass::zero(&self.sizes);
        for ((h1, a1), c1) in &self.terms {
            for ((h2, a2), c2) in &other.terms {
                let h: Vec<u32> = h1.iter().zip(h2).map(|(x, y)| x + y).collect();
                x.add_term(h, a1 + a2, c1 * c2);
            }
        }
        x
    }

    pub fn pow(&self, e: u32) -> LocalClass {
        let mut x = LocalClass::one(&self.sizes);
        for _ in 0..e {
            x = x.mul(self);
        }
        x
    }

    /// Integration over the component: the coefficient of the top `h`
    /// monomial, as a Laurent polynomial in `a` (exponent to coefficient).
    pub fn integrate(&self) -> BTreeMap<i64, Rational> {
        let top: Vec<u32> = self.sizes.iter().map(|s| s - 1).collect();
        self.terms
            .iter()
            .filter(|((h, _), _)| *h == top)
            .map(|((_, a), c)| (*a, c.clone()))
            .collect()
    }

    /// Coefficient of `a^-1` after integration.
    pub fn residue(&self) -> Rational {
        self.integrate().remove(&-1).unwrap_or_else(Rational::zero)
    }
}

/// Substitutes `z_i -> h_i - v_i a` in a class of the presentation.
pub fn restrict_to_component(pres: &Presentation, class: &Poly, fc: &FixedComponent) -> LocalClass {
    let sizes = fc.sizes();
    let m = fc.values.len();
    let images: Vec<LocalClass> = fc
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| LocalClass::linear(&sizes, i, &-v))
        .collect();
    let a_var = pres.a_var();
    let mut out = LocalClass::zero(&sizes);
    for (mono, c) in class.terms() {
        let mut t = LocalClass::monomial(&sizes, vec![0; m], mono.0[a_var] as i64, c.clone());
        for (i, img) in images.iter().enumerate() {
            if mono.0[i] > 0 {
                t = t.mul(&img.pow(mono.0[i]));
            }
        }
        out = out.add(&t);
    }
    out
}

/// Equivariant Euler class of the normal bundle:
/// `prod_i prod_{b != v_i} (h_i + (b - v_i) a)^{mult(b)}`.
pub fn euler_class(model: &WeightedModel, fc: &FixedComponent) -> LocalClass {
    let sizes = fc.sizes();
    let mut e = LocalClass::one(&sizes);
    for (i, (f, v)) in model.factors().iter().zip(&fc.values).enumerate() {
        for w in f {
            if &w[0] != v {
                e = e.mul(&LocalClass::linear(&sizes, i, &(&w[0] - v)));
            }
        }
    }
    e
}

pub fn inverse_euler_class(model: &WeightedModel, fc: &FixedComponent) -> Result<LocalClass> {
    let sizes = fc.sizes();
    let mut e = LocalClass::one(&sizes);
    for (i, (f, v)) in model.factors().iter().zip(&fc.values).enumerate() {
        for w in f {
            if &w[0] != v {
                e = e.mul(&LocalClass::inverse_linear(&sizes, i, &(&w[0] - v))?);
            }
        }
    }
    Ok(e)
}

/// Constant making the pairing of `1` with `1` on a point quotient equal to
/// one: `-2` for the torus (fixed by `P_1` with weights `1, -1`), `1` for
/// `SL(2)` (fixed by `(P_1)^3`).
pub fn normalization(group: Group) -> Rational {
    match group {
        Group::Torus => q(-2),
        Group::Sl2 => q(1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingValue {
    #[serde(with = "rational_serde")]
    pub raw: Rational,
    #[serde(with = "rational_serde")]
    pub normalized: Rational,
}

/// Precomputed localization data for the components with `mu > 0`.
pub struct Localizer<'a> {
    pres: &'a Presentation,
    /// Each positive component with `D^e / e_F`.
    weights: Vec<(FixedComponent, LocalClass)>,
}

impl<'a> Localizer<'a> {
    pub fn new(pres: &'a Presentation) -> Result<Self> {
        let model = pres.model();
        if let Some(w) = crate::series::strictly_semistable_witness(model)? {
            return Err(Error::NotCoprimeStable { witness: w.to_string() });
        }
        let weights = fixed_components(model)?
            .into_iter()
            .filter(|f| f.mu.is_positive())
            .map(|f| {
                let mut inv = inverse_euler_class(model, &f)?;
                if pres.group() == Group::Sl2 {
                    let sizes = f.sizes();
                    inv = inv.mul(&LocalClass::monomial(&sizes, vec![0; sizes.len()], 2, q(4)));
                }
                Ok((f, inv))
            })
            .collect::<Result<_>>()?;
        Ok(Localizer { pres, weights })
    }

    pub fn components(&self) -> impl Iterator<Item = &FixedComponent> {
        self.weights.iter().map(|(f, _)| f)
    }

    fn restrictions(&self, class: &Poly) -> Vec<LocalClass> {
        self.weights
            .iter()
            .map(|(f, inv)| restrict_to_component(self.pres, class, f).mul(inv))
            .collect()
    }

    pub fn pairing(&self, eta: &Poly, zeta: &Poly) -> Rational {
        let prod = eta * zeta;
        self.restrictions(&prod).iter().map(LocalClass::residue).sum()
    }

    /// `M[i][j] = <rows_i, cols_j>`.
    pub fn matrix(&self, rows: &[Poly], cols: &[Poly]) -> Vec<Vec<Rational>> {
        let left: Vec<Vec<LocalClass>> = rows.par_iter().map(|p| self.restrictions(p)).collect();
        let right: Vec<Vec<LocalClass>> = cols
            .par_iter()
            .map(|p| {
                self.weights
                    .iter()
                    .map(|(f, _)| restrict_to_component(self.pres, p, f))
                    .collect()
            })
            .collect();
        left.par_iter()
            .map(|l| {
                right
                    .iter()
                    .map(|r| l.iter().zip(r).map(|(x, y)| x.mul(y).residue()).sum())
                    .collect()
            })
            .collect()
    }
}

/// Raw and normalized pairing of two classes.
pub fn pairing(pres: &Presentation, eta: &Poly, zeta: &Poly) -> Result<PairingValue> {
    let raw = Localizer::new(pres)?.pairing(eta, zeta);
    let normalized = &raw * normalization(pres.group());
    Ok(PairingValue { raw, normalized })
}

#[derive(Clone, Debug)]
pub struct PairingKernel {
    pub degree: u32,
    pub piece: Piece,
    /// Kernel, in coordinates of `piece`.
    pub space: RowSpace,
    /// Dimension of the ambient space (invariants for `SL(2)`).
    pub ambient: usize,
    pub pairing_rank: usize,
}

impl PairingKernel {
    pub fn dim(&self) -> usize {
        self.space.rank()
    }
}

/// Spanning vectors of the classes of a piece that `pres` pairs with
/// (invariant classes for `SL(2)`), in piece coordinates.
fn domain(pres: &Presentation, piece: &Piece) -> Vec<Vec<Rational>> {
    match pres.group() {
        Group::Torus => (0..piece.len())
            .map(|i| {
                let mut v = vec![Rational::zero(); piece.len()];
                v[i] = Rational::one();
                v
            })
            .collect(),
        Group::Sl2 => pres.invariant_space(piece).basis().cloned().collect(),
    }
}

/// Null space of the pairing between degree `d` and the complementary degree.
pub fn kernel_by_pairing(pres: &Presentation, d: u32) -> Result<PairingKernel> {
    if d % 2 != 0 {
        return Err(Error::InvalidInput(format!("degree {d} is odd")));
    }
    let loc = Localizer::new(pres)?;
    kernel_with(pres, &loc, d)
}

pub(crate) fn kernel_with(pres: &Presentation, loc: &Localizer, d: u32) -> Result<PairingKernel> {
    let n = pres.nvars();
    let piece = pres.piece(d / 2);
    let dom = domain(pres, &piece);
    let mut space = RowSpace::new(piece.len());
    let complement = pres.quotient_real_dim().and_then(|top| top.checked_sub(d as usize));
    let pairing_rank = match complement {
        None => {
            for v in &dom {
                space.insert(v.clone());
            }
            0
        }
        Some(c) => {
            let other = pres.piece((c / 2) as u32);
            let rows: Vec<Poly> = dom.iter().map(|v| piece.poly(n, v)).collect();
            let cols: Vec<Poly> = domain(pres, &other).iter().map(|v| other.poly(n, v)).collect();
            let m = loc.matrix(&rows, &cols);
            for y in left_nullspace(&m, cols.len()) {
                let mut v = vec![Rational::zero(); piece.len()];
                for (yi, di) in y.iter().zip(&dom) {
                    for (vj, dj) in v.iter_mut().zip(di) {
                        *vj += yi * dj;
                    }
                }
                space.insert(v);
            }
            dom.len() - space.rank()
        }
    };
    Ok(PairingKernel {
        degree: d,
        ambient: dom.len(),
        piece,
        space,
        pairing_rank,
    })
}

/// Betti numbers of the quotient in degrees `0, 2, .., max_degree` as ranks of
/// the pairing matrices.
pub fn betti_by_pairing(pres: &Presentation, max_degree: u32) -> Result<Vec<usize>> {
    let loc = Localizer::new(pres)?;
    (0..=max_degree)
        .step_by(2)
        .map(|d| Ok(kernel_with(pres, &loc, d)?.pairing_rank))
        .collect()
}

/// Coordinate vectors spanning the classes of `piece` whose restriction to
/// every component in `comps` vanishes.
pub fn vanishing_classes(pres: &Presentation, piece: &Piece, comps: &[&FixedComponent]) -> Vec<Vec<Rational>> {
    let restricted: Vec<Vec<LocalClass>> = piece
        .elements()
        .iter()
        .map(|b| comps.iter().map(|f| restrict_to_component(pres, b, f)).collect())
        .collect();
    let mut index: BTreeMap<(usize, Vec<u32>, i64), usize> = BTreeMap::new();
    for row in &restricted {
        for (j, r) in row.iter().enumerate() {
            for ((h, a), _) in r.terms() {
                let len = index.len();
                index.entry((j, h.clone(), *a)).or_insert(len);
            }
        }
    }
    let rows: Vec<Vec<Rational>> = restricted
        .iter()
        .map(|row| {
            let mut v = vec![Rational::zero(); index.len()];
            for (j, r) in row.iter().enumerate() {
                for ((h, a), c) in r.terms() {
                    v[index[&(j, h.clone(), *a)]] = c.clone();
                }
            }
            v
        })
        .collect();
    if rows.is_empty() {
        return vec![];
    }
    left_nullspace(&rows, index.len())
}
