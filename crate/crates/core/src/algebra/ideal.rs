//! Degreewise linear algebra for homogeneous ideals.

use std::collections::HashMap;

use num_traits::One;

use super::{monomials, Mono, Poly};
use crate::error::{Error, Result};
use crate::exact::linalg::RowSpace;
use crate::exact::Rational;

/// Dimension of the degree-`d` piece of `Q[x]/(relations + ideal)`, by row
/// reduction over all degree-`d` monomials. `d` is cohomological (even).
pub fn graded_piece_dim(nvars: usize, relations: &[Poly], ideal: &[Poly], d: u32) -> Result<usize> {
    if d % 2 != 0 {
        return Err(Error::InvalidInput(format!("degree {d} is odd")));
    }
    let k = d / 2;
    let basis = monomials(nvars, k);
    let index: HashMap<Mono, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut space = RowSpace::new(basis.len());
    for g in relations.iter().chain(ideal) {
        let Some(dg) = g.homogeneous_degree() else {
            if g.is_zero() {
                continue;
            }
            return Err(Error::InvalidInput("generator is not homogeneous".into()));
        };
        if dg > k {
            continue;
        }
        for m in monomials(nvars, k - dg) {
            space.insert(g.mul_mono(&m).coords(&index, basis.len()));
        }
    }
    Ok(basis.len() - space.rank())
}

#[derive(Clone, Debug)]
struct Rule {
    var: usize,
    exp: u32,
    /// `var^exp` is congruent to this.
    tail: Poly,
}

/// `Q[x]` modulo relations each monic in its own variable and otherwise
/// involving only variables that no relation reduces. Such relations have
/// coprime leading powers, so reduction to exponents below `exp` in every
/// reduced variable is a normal form.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    nvars: usize,
    rules: Vec<Rule>,
    bound: Vec<Option<u32>>,
    relations: Vec<Poly>,
}

impl QuotientRing {
    pub fn new(nvars: usize, relations: Vec<(usize, Poly)>) -> Result<Self> {
        let mut bound = vec![None; nvars];
        for (v, _) in &relations {
            if bound[*v].is_some() {
                return Err(Error::InvalidInput(format!("two relations reduce variable {v}")));
            }
            bound[*v] = Some(0);
        }
        let mut rules = Vec::new();
        for (v, rel) in &relations {
            let exp = rel.terms().map(|(m, _)| m.0[*v]).max().unwrap_or(0);
            let mut lead = Mono::one(nvars);
            lead.0[*v] = exp;
            let top: Vec<_> = rel.terms().filter(|(m, _)| m.0[*v] == exp).collect();
            if exp == 0 || top.len() != 1 || *top[0].0 != lead || !top[0].1.is_one() {
                return Err(Error::InvalidInput(format!("relation is not monic in variable {v}")));
            }
            for (m, _) in rel.terms() {
                for (u, &e) in m.0.iter().enumerate() {
                    if u != *v && e > 0 && bound[u].is_some() {
                        return Err(Error::InvalidInput("relations share reduced variables".into()));
                    }
                }
            }
            bound[*v] = Some(exp);
            let tail = &Poly::term(lead, Rational::one()) - rel;
            rules.push(Rule { var: *v, exp, tail });
        }
        Ok(QuotientRing {
            nvars,
            rules,
            bound,
            relations: relations.into_iter().map(|(_, p)| p).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn is_normal(&self, m: &Mono) -> bool {
        m.0.iter().zip(&self.bound).all(|(e, b)| b.is_none_or(|b| *e < b))
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        let mut work: Vec<(Mono, Rational)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = work.pop() {
            match self.rules.iter().find(|r| m.0[r.var] >= r.exp) {
                None => out.add_term(m, &c),
                Some(r) => {
                    let mut rest = m.clone();
                    rest.0[r.var] -= r.exp;
                    for (t, x) in r.tail.terms() {
                        work.push((t.mul(&rest), x * &c));
                    }
                }
            }
        }
        out
    }

    /// Normal monomials of exponent degree `k`, largest first.
    pub fn basis(&self, k: u32) -> Vec<Mono> {
        monomials(self.nvars, k)
            .into_iter()
            .filter(|m| self.is_normal(m))
            .collect()
    }

    pub fn piece(&self, k: u32) -> Piece {
        let basis = self.basis(k);
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Piece { k, basis, index }
    }

    /// Span in degree `k` of the ideal generated by `gens`, each generator
    /// multiple passed through `map` (e.g. a Weyl projector) before it is
    /// recorded.
    pub fn ideal_span(&self, gens: &[Poly], piece: &Piece, map: impl Fn(Poly) -> Poly) -> RowSpace {
        let mut space = RowSpace::new(piece.len());
        for g in gens {
            let g = self.normal_form(g);
            let Some(dg) = g.homogeneous_degree() else {
                continue;
            };
            if dg > piece.k {
                continue;
            }
            for b in self.basis(piece.k - dg) {
                let v = map(self.normal_form(&g.mul_mono(&b)));
                if !v.is_zero() {
                    space.insert(piece.coords(&v));
                }
            }
        }
        space
    }
}

/// A graded piece of a quotient ring with its normal monomial basis.
#[derive(Clone, Debug)]
pub struct Piece {
    pub k: u32,
    pub basis: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl Piece {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn coords(&self, p: &Poly) -> Vec<Rational> {
        p.coords(&self.index, self.basis.len())
    }

    pub fn poly(&self, nvars: usize, v: &[Rational]) -> Poly {
        Poly::from_coords(nvars, &self.basis, v)
    }

    /// The basis monomials as polynomials.
    pub fn elements(&self) -> Vec<Poly> {
        self.basis
            .iter()
            .map(|m| Poly::term(m.clone(), Rational::one()))
            .collect()
    }
}

/// Rank of a family of polynomials inside a piece.
pub fn span_rank(piece: &Piece, polys: &[Poly]) -> usize {
    let mut s = RowSpace::new(piece.len());
    for p in polys {
        if !p.is_zero() {
            s.insert(piece.coords(p));
        }
    }
    s.rank()
}
