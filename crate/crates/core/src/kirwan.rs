//! Presentations of `H*_T(X)` and `H*_SL2(X)` for rank-one models and the
//! kernels of the restriction maps to the semistable locus.
//!
//! `H*_T(X) = Q[z_1..z_m, a] / (prod_k (z_i + a_ik a))`. The torus kernel is
//! spanned by the Thom-Gysin lifts `eta * prod_{lower weights} (z_i + a_ik a)`;
//! the `SL(2)` kernel by their antisymmetrizations divided by `D = 2a`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::ideal::{span_rank, Piece, QuotientRing};
use crate::algebra::weyl::WeylAction;
use crate::algebra::{Poly, Ring};
use crate::error::{Error, Result};
use crate::exact::linalg::RowSpace;
use crate::exact::{q, LieVector, Rational};
use crate::model::{WeightedModel, WeylGroup, ZComponent};
use crate::residue;

pub const DEFAULT_MAX_DEGREE: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Torus,
    Sl2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    #[value(name = "ss")]
    Semistable,
    #[value(name = "s")]
    Stable,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    ring: Ring,
    model: WeightedModel,
    qr: QuotientRing,
    weyl: WeylAction,
    group: Group,
}

impl Presentation {
    /// Presentation of a rank-one model; `Sl2` needs weights symmetric under
    /// `a -> -a` in every factor.
    pub fn new(model: &WeightedModel, group: Group) -> Result<Self> {
        if model.rank() != 1 {
            return Err(Error::RankMismatch {
                expected: 1,
                found: model.rank(),
            });
        }
        if group == Group::Sl2 {
            model
                .is_reflection_symmetric()
                .map_err(|factor| Error::AsymmetricWeights { factor })?;
        }
        let m = model.factors().len();
        let mut names: Vec<String> = if m == 1 {
            vec!["z".into()]
        } else {
            (1..=m).map(|i| format!("z{i}")).collect()
        };
        names.push("a".into());
        let ring = Ring::new(names);
        let n = ring.nvars();
        let rels = model
            .factors()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let mut p = Poly::one(n);
                for w in f {
                    p = &p * &linear(n, i, &w[0]);
                }
                (i, p)
            })
            .collect();
        let qr = QuotientRing::new(n, rels)?;
        let weyl = match group {
            Group::Torus => WeylAction::trivial(n),
            Group::Sl2 => WeylAction::reflection(n, n - 1),
        };
        let model = model.clone().with_weyl(match group {
            Group::Torus => WeylGroup::Trivial,
            Group::Sl2 => WeylGroup::Sl2,
        })?;
        Ok(Presentation {
            ring,
            model,
            qr,
            weyl,
            group,
        })
    }

    /// `P_n` with the given rank-one weights, as a torus presentation.
    pub fn torus_pn(weights: &[Rational]) -> Result<Self> {
        let f = weights.iter().map(|w| LieVector(vec![w.clone()])).collect();
        let model = WeightedModel::new(crate::exact::BilinearForm::identity(1), vec![f], WeylGroup::Trivial)?;
        Presentation::new(&model, Group::Torus)
    }

    /// `(P_1)^n` under `SL(2)`: relations `z_i^2 - a^2`, Weyl group `a -> -a`.
    pub fn p1n(n: usize) -> Self {
        Presentation::new(&WeightedModel::p1_power(n), Group::Sl2).expect("symmetric weights")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn model(&self) -> &WeightedModel {
        &self.model
    }

    pub fn quotient_ring(&self) -> &QuotientRing {
        &self.qr
    }

    pub fn weyl(&self) -> &WeylAction {
        &self.weyl
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn a_var(&self) -> usize {
        self.nvars() - 1
    }

    pub fn base_relations(&self) -> &[Poly] {
        self.qr.relations()
    }

    /// Real dimension of `X`.
    pub fn real_dim(&self) -> usize {
        2 * self.model.complex_dim()
    }

    /// Real dimension of the quotient by the presentation's group.
    pub fn quotient_real_dim(&self) -> Option<usize> {
        let drop = match self.group {
            Group::Torus => 1,
            Group::Sl2 => 3,
        };
        self.model.complex_dim().checked_sub(drop).map(|d| 2 * d)
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        self.ring.parse(s)
    }

    pub fn format(&self, p: &Poly) -> String {
        self.ring.format(p)
    }

    /// The fundamental anti-invariant `D` (1 for the torus, `2a` for `SL(2)`).
    pub fn d_class(&self) -> Poly {
        match self.group {
            Group::Torus => Poly::one(self.nvars()),
            Group::Sl2 => Poly::var(self.nvars(), self.a_var()).scale(&q(2)),
        }
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.qr.normal_form(p)
    }

    /// `prod_i prod_{k : <alpha_ik, beta> < v_i} (z_i + a_ik a)`, the
    /// equivariant Euler class of the normal directions of the stratum piece.
    pub fn euler_product(&self, beta: &LieVector, comp: &ZComponent) -> Poly {
        let n = self.nvars();
        let form = self.model.form();
        let mut p = Poly::one(n);
        for (i, (f, v)) in self.model.factors().iter().zip(&comp.values).enumerate() {
            for w in f {
                if &form.inner(w, beta) < v {
                    p = &p * &linear(n, i, &w[0]);
                }
            }
        }
        p
    }

    /// Thom-Gysin lift `eta * euler_product(beta, comp)`.
    pub fn torus_tg_lift(&self, beta: &LieVector, comp: &ZComponent, eta: &Poly) -> Result<Poly> {
        if beta.is_zero() || !self.model.index_betas()?.contains(beta) {
            return Err(Error::BetaNotInIndexSet { beta: beta.to_string() });
        }
        if !self.model.z_components(beta).contains(comp) {
            return Err(Error::InvalidInput(format!(
                "component {:?} does not belong to {beta}",
                comp.indices
            )));
        }
        Ok(eta * &self.euler_product(beta, comp))
    }

    /// Reduces a class modulo the relations of the coordinate subspace
    /// spanned by `keep[i]` in every factor.
    pub fn restrict_to_subspace(&self, class: &Poly, keep: &[Vec<usize>]) -> Result<Poly> {
        let n = self.nvars();
        if keep.len() != self.model.factors().len() || keep.iter().any(Vec::is_empty) {
            return Err(Error::InvalidInput("keep set must be nonempty in every factor".into()));
        }
        let rels = self
            .model
            .factors()
            .iter()
            .zip(keep)
            .enumerate()
            .map(|(i, (f, ks))| {
                let mut p = Poly::one(n);
                for &k in ks {
                    p = &p * &linear(n, i, &f[k][0]);
                }
                (i, p)
            })
            .collect();
        Ok(QuotientRing::new(n, rels)?.normal_form(class))
    }

    /// Degree-`k` normal monomial basis (exponent degree).
    pub fn piece(&self, k: u32) -> Piece {
        self.qr.piece(k)
    }

    /// Weyl-invariant part of a piece, as a row space.
    pub fn invariant_space(&self, piece: &Piece) -> RowSpace {
        let mut s = RowSpace::new(piece.len());
        for b in piece.elements() {
            let v = self.weyl.symmetrize(&b);
            if !v.is_zero() {
                s.insert(piece.coords(&v));
            }
        }
        s
    }

    fn anti_over_d(&self, p: &Poly) -> Result<Poly> {
        self.weyl.antisymmetrize(p).divide_exact(&self.d_class())
    }
}

/// `z_i + w a` in `n` variables.
fn linear(n: usize, i: usize, w: &Rational) -> Poly {
    let mut p = Poly::var(n, i);
    p.add_term(crate::algebra::Mono::var(n, n - 1), w);
    p
}

/// Generator family of a kernel: a product `L` and the shift in exponent
/// degree between `eta` and the generator `g(eta)`.
#[derive(Clone, Debug)]
struct Family {
    label: String,
    product: Poly,
    /// Exponent degree of `g(eta)` minus that of `eta`.
    offset: i64,
}

/// Degreewise spanning data for `ker(H*_G(X) -> H*_G(X^ss))` or its stable
/// variant, up to `max_degree`.
#[derive(Clone, Debug)]
pub struct KernelIdeal {
    pub group: Group,
    pub target: Target,
    pub max_degree: u32,
    families: Vec<Family>,
    pieces: Vec<(Piece, RowSpace)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorFamily {
    pub label: String,
    /// Generators for `eta = 1` (and `eta = a` in the `SL(2)` case).
    pub generators: Vec<String>,
}

impl KernelIdeal {
    /// Kernel piece in cohomological degree `d`.
    pub fn space(&self, d: u32) -> &RowSpace {
        &self.pieces[(d / 2) as usize].1
    }

    pub fn piece(&self, d: u32) -> &Piece {
        &self.pieces[(d / 2) as usize].0
    }

    pub fn dim(&self, d: u32) -> usize {
        self.space(d).rank()
    }

    pub fn contains(&self, pres: &Presentation, p: &Poly) -> bool {
        let p = pres.normal_form(p);
        let Some(k) = p.homogeneous_degree() else {
            return p.is_zero();
        };
        match self.pieces.get(k as usize) {
            Some((piece, space)) => space.contains(&piece.coords(&p)),
            None => false,
        }
    }

    pub fn generator_families(&self, pres: &Presentation) -> Result<Vec<GeneratorFamily>> {
        let n = pres.nvars();
        self.families
            .iter()
            .map(|f| {
                let etas: Vec<Poly> = match self.group {
                    Group::Torus => vec![Poly::one(n)],
                    Group::Sl2 => vec![Poly::one(n), Poly::var(n, pres.a_var())],
                };
                let generators = etas
                    .iter()
                    .map(|eta| Ok(pres.format(&generator(pres, self.group, f, eta)?)))
                    .collect::<Result<_>>()?;
                Ok(GeneratorFamily {
                    label: f.label.clone(),
                    generators,
                })
            })
            .collect()
    }
}

fn generator(pres: &Presentation, group: Group, f: &Family, eta: &Poly) -> Result<Poly> {
    let lifted = pres.normal_form(&(eta * &f.product));
    match group {
        Group::Torus => Ok(lifted),
        Group::Sl2 => pres.anti_over_d(&lifted),
    }
}

fn families(pres: &Presentation, group: Group, target: Target) -> Result<Vec<Family>> {
    let model = pres.model();
    let mut out = Vec::new();
    for beta in model.index_betas()? {
        if beta.is_zero() || (group == Group::Sl2 && !beta[0].is_positive()) {
            continue;
        }
        for comp in model.z_components(&beta) {
            let lambda = model.codim(&beta, &comp) as i64 / 2;
            out.push(Family {
                label: format!("beta {beta} component {:?}", comp.indices),
                product: pres.euler_product(&beta, &comp),
                offset: if group == Group::Sl2 { lambda - 1 } else { lambda },
            });
        }
    }
    if target == Target::Stable {
        let ss_is_s = crate::series::strictly_semistable_witness(model)?.is_none();
        if !ss_is_s {
            if group != Group::Sl2 {
                return Err(Error::Unsupported(
                    "stable-target kernels are only implemented for SL(2) or when semistable equals stable".into(),
                ));
            }
            // fixed components at level 0, lifted with the normal directions
            // of weight below the component's value
            let n = pres.nvars();
            for fc in residue::fixed_components(model)? {
                if !fc.mu.is_zero() {
                    continue;
                }
                let mut p = Poly::one(n);
                let mut count = 0;
                for (i, (f, v)) in model.factors().iter().zip(&fc.values).enumerate() {
                    for w in f {
                        if &w[0] < v {
                            p = &p * &linear(n, i, &w[0]);
                            count += 1;
                        }
                    }
                }
                out.push(Family {
                    label: format!("level-0 component {:?}", fc.indices),
                    product: p,
                    offset: count - 1,
                });
            }
        }
    }
    Ok(out)
}

/// Spanning sets of the kernel in every even degree up to `max_degree`.
pub fn kernel_ideal(pres: &Presentation, group: Group, target: Target, max_degree: u32) -> Result<KernelIdeal> {
    if group == Group::Sl2 && pres.group() != Group::Sl2 {
        return Err(Error::InvalidInput("presentation has no SL(2) Weyl action".into()));
    }
    let fams = families(pres, group, target)?;
    let n = pres.nvars();
    let mut pieces = Vec::new();
    for k in 0..=max_degree / 2 {
        let piece = pres.piece(k);
        let mut space = RowSpace::new(piece.len());
        for f in &fams {
            let ek = k as i64 - f.offset;
            if ek < 0 {
                continue;
            }
            for eta in pres.qr.basis(ek as u32) {
                let g = generator(pres, group, f, &Poly::term(eta, q(1)))?;
                debug_assert_eq!(g.nvars(), n);
                if group == Group::Sl2 && !pres.weyl.is_invariant(&g) {
                    return Err(Error::InvalidInput(format!(
                        "generator {} is not Weyl invariant",
                        pres.format(&g)
                    )));
                }
                if !g.is_zero() {
                    space.insert(piece.coords(&g));
                }
            }
        }
        pieces.push((piece, space));
    }
    Ok(KernelIdeal {
        group,
        target,
        max_degree,
        families: fams,
        pieces,
    })
}

pub fn torus_kernel_ideal(pres: &Presentation, max_degree: u32) -> Result<KernelIdeal> {
    kernel_ideal(pres, Group::Torus, Target::Semistable, max_degree)
}

pub fn sl2_kernel_ideal(pres: &Presentation, target: Target, max_degree: u32) -> Result<KernelIdeal> {
    kernel_ideal(pres, Group::Sl2, target, max_degree)
}

/// `dim H^d` of the ring modulo the kernel, on invariants for `SL(2)`.
pub fn betti_from_presentation(pres: &Presentation, kernel: &KernelIdeal, d: u32) -> Result<usize> {
    if d > kernel.max_degree || d % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "degree {d} outside the kernel range 0..={}",
            kernel.max_degree
        )));
    }
    let piece = kernel.piece(d);
    let ambient = match kernel.group {
        Group::Torus => piece.len(),
        Group::Sl2 => pres.invariant_space(piece).rank(),
    };
    Ok(ambient - kernel.dim(d))
}

pub fn betti_table(pres: &Presentation, kernel: &KernelIdeal) -> Result<Vec<usize>> {
    (0..=kernel.max_degree)
        .step_by(2)
        .map(|d| betti_from_presentation(pres, kernel, d))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FfDegree {
    pub degree: u32,
    pub dim_d_times_kernel: usize,
    pub dim_anti_invariant_torus_kernel: usize,
    pub forward_membership: bool,
    pub backward_membership: bool,
    pub inverse_round_trip: bool,
}

impl FfDegree {
    pub fn holds(&self) -> bool {
        self.dim_d_times_kernel == self.dim_anti_invariant_torus_kernel
            && self.forward_membership
            && self.backward_membership
            && self.inverse_round_trip
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FfReport {
    pub degrees: Vec<FfDegree>,
    pub failing_degrees: Vec<u32>,
}

/// Multiplication by `D` maps the `SL(2)` kernel in degree `d` onto the
/// anti-invariant part of the torus kernel in degree `d + 2`.
pub fn lemma_ff_check(pres: &Presentation, max_degree: u32) -> Result<FfReport> {
    let g = sl2_kernel_ideal(pres, Target::Semistable, max_degree)?;
    let t = torus_kernel_ideal(pres, max_degree + 2)?;
    let n = pres.nvars();
    let dd = pres.d_class();
    let mut degrees = Vec::new();
    for d in (0..=max_degree).step_by(2) {
        let (gp, gs) = (g.piece(d), g.space(d));
        let (tp, ts) = (t.piece(d + 2), t.space(d + 2));
        let d_images: Vec<Poly> = gs.basis().map(|v| pres.normal_form(&(&gp.poly(n, v) * &dd))).collect();
        let anti: Vec<Poly> = ts.basis().map(|v| pres.weyl.antisymmetrize(&tp.poly(n, v))).collect();
        let mut anti_space = RowSpace::new(tp.len());
        for a in &anti {
            if !a.is_zero() {
                anti_space.insert(tp.coords(a));
            }
        }
        let forward = d_images
            .iter()
            .all(|p| ts.contains(&tp.coords(p)) && pres.weyl.is_anti_invariant(p));
        let mut backward = true;
        let mut round_trip = true;
        for u in &anti {
            if u.is_zero() {
                continue;
            }
            match pres.anti_over_d(u) {
                Ok(v) => {
                    backward &= gs.contains(&gp.coords(&v));
                    round_trip &= pres.normal_form(&(&v * &dd)) == *u;
                }
                Err(_) => {
                    backward = false;
                    round_trip = false;
                }
            }
        }
        for p in gs.basis().map(|v| gp.poly(n, v)) {
            let back = pres.anti_over_d(&pres.normal_form(&(&p * &dd)))?;
            round_trip &= back == p;
        }
        degrees.push(FfDegree {
            degree: d,
            dim_d_times_kernel: span_rank(tp, &d_images),
            dim_anti_invariant_torus_kernel: anti_space.rank(),
            forward_membership: forward,
            backward_membership: backward,
            inverse_round_trip: round_trip,
        });
    }
    let failing_degrees = degrees.iter().filter(|x| !x.holds()).map(|x| x.degree).collect();
    Ok(FfReport {
        degrees,
        failing_degrees,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EeDegree {
    pub degree: u32,
    pub dim_vanishing_kernel: usize,
    pub dim_thom_gysin_kernel: usize,
    pub same_span: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EeReport {
    pub degrees: Vec<EeDegree>,
    pub failing_degrees: Vec<u32>,
}

/// Classes vanishing on every fixed component of one sign of `mu`, plus
/// those vanishing on every component of the other sign, per degree.
pub fn lemma_ee_kernel(pres: &Presentation, max_degree: u32) -> Result<Vec<(Piece, RowSpace)>> {
    let model = pres.model();
    if let Some(w) = crate::series::strictly_semistable_witness(model)? {
        return Err(Error::NotCoprimeStable { witness: w.to_string() });
    }
    let comps = residue::fixed_components(model)?;
    let neg: Vec<_> = comps.iter().filter(|f| !f.mu.is_positive()).collect();
    let pos: Vec<_> = comps.iter().filter(|f| !f.mu.is_negative()).collect();
    let mut out = Vec::new();
    for k in 0..=max_degree / 2 {
        let piece = pres.piece(k);
        let mut space = RowSpace::new(piece.len());
        for side in [&neg, &pos] {
            for v in residue::vanishing_classes(pres, &piece, side) {
                space.insert(v);
            }
        }
        out.push((piece, space));
    }
    Ok(out)
}

/// Compares [`lemma_ee_kernel`] with the Thom-Gysin torus kernel.
pub fn lemma_ee_check(pres: &Presentation, max_degree: u32) -> Result<EeReport> {
    let ee = lemma_ee_kernel(pres, max_degree)?;
    let tg = torus_kernel_ideal(pres, max_degree)?;
    let mut degrees = Vec::new();
    for (k, (_, space)) in ee.iter().enumerate() {
        let d = 2 * k as u32;
        let ts = tg.space(d);
        let same =
            space.rank() == ts.rank() && space.basis().all(|v| ts.contains(v)) && ts.basis().all(|v| space.contains(v));
        degrees.push(EeDegree {
            degree: d,
            dim_vanishing_kernel: space.rank(),
            dim_thom_gysin_kernel: ts.rank(),
            same_span: same,
        });
    }
    let failing_degrees = degrees.iter().filter(|x| !x.same_span).map(|x| x.degree).collect();
    Ok(EeReport {
        degrees,
        failing_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ideal::graded_piece_dim;

    fn b(x: i64) -> LieVector {
        LieVector::from_ints(&[x])
    }

    #[test]
    fn presentations() {
        let p = Presentation::torus_pn(&[q(1), q(-1)]).unwrap();
        assert_eq!(p.format(&p.base_relations()[0]), "z^2 - a^2");
        let p = Presentation::torus_pn(&[q(0), q(0)]).unwrap();
        assert_eq!(p.format(&p.base_relations()[0]), "z^2");
        let p = Presentation::p1n(4);
        assert_eq!(p.base_relations().len(), 4);
        assert_eq!(p.real_dim(), 8);
        let p = Presentation::p1n(3);
        let rels = p.base_relations().to_vec();
        assert_eq!(graded_piece_dim(4, &rels, &[], 2).unwrap(), 4);
        assert_eq!(p.piece(1).len(), 4);
    }

    #[test]
    fn lifts() {
        let p = Presentation::new(&WeightedModel::binary_forms(3), Group::Torus).unwrap();
        let comp = &p.model().z_components(&b(3))[0];
        let lift = p.torus_tg_lift(&b(3), comp, &Poly::one(2)).unwrap();
        assert_eq!(lift, p.parse("(z+a)*(z-a)*(z-3*a)").unwrap());
        assert!(matches!(
            p.torus_tg_lift(&b(2), comp, &Poly::one(2)),
            Err(Error::BetaNotInIndexSet { .. })
        ));
        let p4 = Presentation::p1n(4);
        let comp = p4
            .model()
            .z_components(&b(-2))
            .into_iter()
            .find(|c| c.values[3] == q(-2))
            .unwrap();
        let lift = p4.torus_tg_lift(&b(-2), &comp, &Poly::one(5)).unwrap();
        assert_eq!(lift, p4.parse("(z1+a)*(z2+a)*(z3+a)").unwrap());
    }

    #[test]
    fn lifts_restrict_as_thom_classes() {
        let p = Presentation::new(&WeightedModel::binary_forms(3), Group::Torus).unwrap();
        let beta = b(1);
        let comp = &p.model().z_components(&beta)[0];
        let eta = p.parse("z + 2*a").unwrap();
        let lift = p.torus_tg_lift(&beta, comp, &eta).unwrap();
        // lower weights of beta = 1 are -1 and -3 (indices 2 and 3)
        assert!(p.restrict_to_subspace(&lift, &[vec![2, 3]]).unwrap().is_zero());
        let on_z = p.restrict_to_subspace(&lift, &comp.indices).unwrap();
        let expected = p
            .restrict_to_subspace(&(&eta * &p.euler_product(&beta, comp)), &comp.indices)
            .unwrap();
        assert_eq!(on_z, expected);
        assert!(p
            .restrict_to_subspace(&p.base_relations()[0], &[vec![0]])
            .unwrap()
            .is_zero());
        assert_eq!(p.restrict_to_subspace(&Poly::one(2), &[vec![1]]).unwrap(), Poly::one(2));
    }

    #[test]
    fn torus_betti_numbers() {
        let p = Presentation::torus_pn(&[q(1), q(-1)]).unwrap();
        let k = torus_kernel_ideal(&p, 8).unwrap();
        assert_eq!(betti_table(&p, &k).unwrap(), vec![1, 0, 0, 0, 0]);
        let p = Presentation::new(&WeightedModel::binary_forms(3), Group::Torus).unwrap();
        let k = torus_kernel_ideal(&p, 12).unwrap();
        assert_eq!(betti_table(&p, &k).unwrap(), vec![1, 2, 1, 0, 0, 0, 0]);
        let k0 = torus_kernel_ideal(&p, 0).unwrap();
        assert_eq!(k0.dim(0), 0);
    }

    #[test]
    fn torus_kernel_is_the_ideal_span() {
        for model in [
            WeightedModel::binary_forms(3),
            WeightedModel::binary_forms(5),
            WeightedModel::p1_power(3),
        ] {
            let p = Presentation::new(&model, Group::Torus).unwrap();
            let k = torus_kernel_ideal(&p, 10).unwrap();
            let n = p.nvars();
            let gens: Vec<Poly> = k
                .families
                .iter()
                .map(|f| generator(&p, Group::Torus, f, &Poly::one(n)).unwrap())
                .collect();
            for d in (0..=10).step_by(2) {
                let span = p.quotient_ring().ideal_span(&gens, k.piece(d), |x| x);
                assert_eq!(span.rank(), k.dim(d));
                assert!(span.basis().all(|v| k.space(d).contains(v)));
            }
        }
    }

    #[test]
    fn sl2_betti_numbers() {
        let p = Presentation::new(&WeightedModel::binary_forms(3), Group::Sl2).unwrap();
        let k = sl2_kernel_ideal(&p, Target::Semistable, 12).unwrap();
        assert_eq!(betti_table(&p, &k).unwrap(), vec![1, 0, 0, 0, 0, 0, 0]);
        let p = Presentation::p1n(5);
        let k = sl2_kernel_ideal(&p, Target::Semistable, 8).unwrap();
        assert_eq!(betti_table(&p, &k).unwrap(), vec![1, 5, 1, 0, 0]);
    }

    #[test]
    fn stable_target_for_even_configurations() {
        let p = Presentation::p1n(4);
        let ss = sl2_kernel_ideal(&p, Target::Semistable, 8).unwrap();
        let st = sl2_kernel_ideal(&p, Target::Stable, 8).unwrap();
        let fams = st.generator_families(&p).unwrap();
        assert!(fams.iter().any(|f| f.label.starts_with("level-0")));
        for d in (0..=8).step_by(2) {
            assert!(st.dim(d) >= ss.dim(d));
        }
        let pt = Presentation::new(&WeightedModel::p1_power(4), Group::Torus).unwrap();
        assert!(matches!(
            kernel_ideal(&pt, Group::Torus, Target::Stable, 4),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn lemma_ff_small() {
        let p = Presentation::new(&WeightedModel::binary_forms(3), Group::Sl2).unwrap();
        let r = lemma_ff_check(&p, 8).unwrap();
        assert!(r.failing_degrees.is_empty(), "{r:?}");
        assert_eq!(r.degrees[0].dim_d_times_kernel, 0);
    }

    #[test]
    fn lemma_ee_small() {
        let p = Presentation::torus_pn(&[q(1), q(-1)]).unwrap();
        let ee = lemma_ee_kernel(&p, 2).unwrap();
        assert_eq!(ee[0].1.rank(), 0);
        assert_eq!(ee[1].1.rank(), 2);
        let span = &ee[1].1;
        assert!(span.contains(&ee[1].0.coords(&p.parse("z + a").unwrap())));
        assert!(span.contains(&ee[1].0.coords(&p.parse("z - a").unwrap())));
        let r = lemma_ee_check(
            &Presentation::new(&WeightedModel::binary_forms(3), Group::Torus).unwrap(),
            12,
        )
        .unwrap();
        assert!(r.failing_degrees.is_empty(), "{r:?}");
    }
}
