use num_traits::Zero;

use super::Poly;
use crate::error::{Error, Result};
use crate::exact::{q, Rational};

/// A finite group acting by linear substitutions of the variables, with a
/// sign character.
#[derive(Clone, Debug)]
pub struct WeylAction {
    nvars: usize,
    /// `mats[w][i][j]`: coefficient of variable `j` in the image of variable `i`.
    mats: Vec<Vec<Vec<Rational>>>,
    signs: Vec<i32>,
    images: Vec<Vec<Poly>>,
}

impl WeylAction {
    /// Validates closure under composition, the identity and multiplicative
    /// signs.
    pub fn new(nvars: usize, elements: Vec<(Vec<Vec<Rational>>, i32)>) -> Result<Self> {
        let identity: Vec<Vec<Rational>> = (0..nvars)
            .map(|i| (0..nvars).map(|j| if i == j { q(1) } else { q(0) }).collect())
            .collect();
        let find = |m: &Vec<Vec<Rational>>| elements.iter().position(|(e, _)| e == m);
        match find(&identity) {
            Some(i) if elements[i].1 == 1 => {}
            _ => return Err(Error::InvalidInput("Weyl action lacks the identity".into())),
        }
        for (g, sg) in &elements {
            if g.len() != nvars || g.iter().any(|r| r.len() != nvars) {
                return Err(Error::InvalidInput("Weyl element has the wrong shape".into()));
            }
            for (h, sh) in &elements {
                let prod = compose(g, h);
                match find(&prod) {
                    Some(k) if elements[k].1 == sg * sh => {}
                    _ => {
                        return Err(Error::InvalidInput(
                            "Weyl action is not a group with a character".into(),
                        ))
                    }
                }
            }
        }
        let images = elements
            .iter()
            .map(|(m, _)| {
                m.iter()
                    .map(|row| {
                        let mut p = Poly::zero(nvars);
                        for (j, c) in row.iter().enumerate() {
                            if !c.is_zero() {
                                p.add_term(super::Mono::var(nvars, j), c);
                            }
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        let (mats, signs) = elements.into_iter().unzip();
        Ok(WeylAction {
            nvars,
            mats,
            signs,
            images,
        })
    }

    pub fn trivial(nvars: usize) -> Self {
        let id = (0..nvars)
            .map(|i| (0..nvars).map(|j| if i == j { q(1) } else { q(0) }).collect())
            .collect();
        WeylAction::new(nvars, vec![(id, 1)]).expect("identity is a group")
    }

    /// `Z/2` negating variable `var` and fixing the others, with sign `-1`.
    pub fn reflection(nvars: usize, var: usize) -> Self {
        let id: Vec<Vec<Rational>> = (0..nvars)
            .map(|i| (0..nvars).map(|j| if i == j { q(1) } else { q(0) }).collect())
            .collect();
        let mut s = id.clone();
        s[var][var] = q(-1);
        WeylAction::new(nvars, vec![(id, 1), (s, -1)]).expect("a reflection generates Z/2")
    }

    pub fn order(&self) -> usize {
        self.signs.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn matrices(&self) -> &[Vec<Vec<Rational>>] {
        &self.mats
    }

    pub fn apply(&self, w: usize, p: &Poly) -> Poly {
        p.substitute(&self.images[w])
    }

    fn average(&self, p: &Poly, signed: bool) -> Poly {
        let mut acc = Poly::zero(self.nvars);
        for w in 0..self.order() {
            let img = self.apply(w, p);
            acc = if signed && self.signs[w] < 0 {
                &acc - &img
            } else {
                &acc + &img
            };
        }
        acc.scale(&Rational::new(1.into(), (self.order() as i64).into()))
    }

    /// `(1/|W|) sum_w w(p)`.
    pub fn symmetrize(&self, p: &Poly) -> Poly {
        self.average(p, false)
    }

    /// `(1/|W|) sum_w (-1)^w w(p)`.
    pub fn antisymmetrize(&self, p: &Poly) -> Poly {
        self.average(p, true)
    }

    pub fn is_invariant(&self, p: &Poly) -> bool {
        (0..self.order()).all(|w| self.apply(w, p) == *p)
    }

    pub fn is_anti_invariant(&self, p: &Poly) -> bool {
        (0..self.order()).all(|w| {
            let img = self.apply(w, p);
            if self.signs[w] < 0 {
                img == -p
            } else {
                img == *p
            }
        })
    }
}

/// Matrix of the substitution `x -> g(h(x))`.
fn compose(g: &[Vec<Rational>], h: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = g.len();
    (0..n)
        .map(|i| (0..n).map(|k| (0..n).map(|j| &h[i][j] * &g[j][k]).sum()).collect())
        .collect()
}
