//! `SL(3)` on `(P_2)^n`. Candidate special points are the distinct `x_j`
//! and candidate lines are the lines through two distinct `x_j`; every
//! counting condition below only quantifies over these.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{Config, ProjPoint, StratumLabel, SubTorus};
use crate::error::{Error, Result};
use crate::exact::{frac, q, Rational};

/// The four nonzero torus indices of the strictly semistable `(T, beta)`
/// strata.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorusCase {
    /// `(1/2, 0, -1/2)`: `p` and `L` unique.
    A,
    /// `(1/2, 1/2, -1)`: `L` unique, a second point of multiplicity `n/3` on it.
    B,
    /// `(1, -1/2, -1/2)`: `p` unique, a second line through it with `2n/3`.
    C,
    /// `(1, 0, -1)`: a second point of multiplicity `n/3` off `L`.
    D,
}

impl TorusCase {
    pub fn beta(&self) -> [Rational; 3] {
        match self {
            TorusCase::A => [frac(1, 2), q(0), frac(-1, 2)],
            TorusCase::B => [frac(1, 2), frac(1, 2), q(-1)],
            TorusCase::C => [q(1), frac(-1, 2), frac(-1, 2)],
            TorusCase::D => [q(1), q(0), q(-1)],
        }
    }
}

/// A destabilizing flag `0 < M_1 < .. < C^3`, given projectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flag {
    Point(ProjPoint),
    Line(ProjPoint),
    PointLine(ProjPoint, ProjPoint),
}

struct Geometry<'a> {
    n: usize,
    points: &'a [ProjPoint],
    mult: BTreeMap<&'a ProjPoint, usize>,
    /// Candidate lines with the indices of the points on them.
    lines: BTreeMap<ProjPoint, Vec<usize>>,
}

impl<'a> Geometry<'a> {
    fn new(config: &'a Config) -> Result<Self> {
        if config.dim() != 2 {
            return Err(Error::InvalidInput("expected points of P_2".into()));
        }
        let points = config.points();
        let mult = config.multiplicities();
        let distinct: Vec<&ProjPoint> = mult.keys().copied().collect();
        let mut lines = BTreeMap::new();
        for (i, p) in distinct.iter().enumerate() {
            for r in &distinct[i + 1..] {
                let l = p.join(r)?;
                if !lines.contains_key(&l) {
                    let on: Vec<usize> = (0..points.len()).filter(|&j| points[j].dot(&l).is_zero()).collect();
                    lines.insert(l, on);
                }
            }
        }
        Ok(Geometry {
            n: points.len(),
            points,
            mult,
            lines,
        })
    }

    fn count(&self, line: &ProjPoint) -> usize {
        self.lines.get(line).map_or(0, Vec::len)
    }

    fn on(p: &ProjPoint, line: &ProjPoint) -> bool {
        p.dot(line).is_zero()
    }

    /// Largest multiplicity among the points on `line`.
    fn max_mult_on(&self, line: &ProjPoint) -> usize {
        self.mult
            .iter()
            .filter(|(p, _)| Self::on(p, line))
            .map(|(_, &c)| c)
            .max()
            .unwrap_or(0)
    }

    /// Multiplicities of the distinct points on `line`.
    fn mults_on(&self, line: &ProjPoint) -> Vec<usize> {
        self.mult
            .iter()
            .filter(|(p, _)| Self::on(p, line))
            .map(|(_, &c)| c)
            .collect()
    }

    /// For each line through `p` meeting another point, the number of
    /// points on it other than those at `p`.
    fn pencil(&self, p: &ProjPoint) -> Result<BTreeMap<ProjPoint, usize>> {
        let mut out = BTreeMap::new();
        for x in self.points.iter().filter(|x| *x != p) {
            *out.entry(p.join(x)?).or_insert(0) += 1;
        }
        Ok(out)
    }

    fn semistable(&self) -> bool {
        self.mult.values().all(|&c| 3 * c <= self.n) && self.lines.values().all(|on| 3 * on.len() <= 2 * self.n)
    }

    fn stable(&self) -> bool {
        self.mult.values().all(|&c| 3 * c < self.n) && self.lines.values().all(|on| 3 * on.len() < 2 * self.n)
    }
}

fn triple(a: Rational, b: Rational, c: Rational) -> [Rational; 3] {
    [a, b, c]
}

/// Every flag satisfying the ratio chain `k_1/m_1 > .. > k_s/m_s` and the
/// projected-semistability side condition, with its `Lie(U(3))` vector.
fn flags(g: &Geometry) -> Result<Vec<(Flag, [Rational; 3])>> {
    let n = g.n;
    let mut out = Vec::new();
    for (&p, &k1) in &g.mult {
        let rest = n - k1;
        let pencil = g.pencil(p)?;
        // M_1 = p, M_2 = C^3: k_1 / 1 > rest / 2, rest semistable in (P_1)^rest
        if 2 * k1 > rest && pencil.values().all(|&c| 2 * c <= rest) {
            let h = frac(rest as i64, 2);
            out.push((Flag::Point(p.clone()), triple(q(k1 as i64), h.clone(), h)));
        }
        // M_1 = p, M_2 = L, M_3 = C^3
        for (l, &k2) in &pencil {
            let k3 = n - k1 - k2;
            if k1 > k2 && k2 > k3 {
                out.push((
                    Flag::PointLine(p.clone(), l.clone()),
                    triple(q(k1 as i64), q(k2 as i64), q(k3 as i64)),
                ));
            }
        }
    }
    for (l, on) in &g.lines {
        let k = on.len();
        // M_1 = L, M_2 = C^3: k / 2 > n - k, points on L semistable in (P_1)^k
        if k > 2 * (n - k) && 2 * g.max_mult_on(l) <= k {
            let h = frac(k as i64, 2);
            out.push((Flag::Line(l.clone()), triple(h.clone(), h, q((n - k) as i64))));
        }
    }
    Ok(out)
}

/// The unique destabilizing flag of an unstable configuration, or `None`
/// for a semistable one.
pub fn destabilizing_flag(config: &Config) -> Result<Option<(Flag, [Rational; 3])>> {
    let g = Geometry::new(config)?;
    flag_of(&g)
}

fn flag_of(g: &Geometry) -> Result<Option<(Flag, [Rational; 3])>> {
    let mut found = flags(g)?;
    if found.len() > 1 {
        let betas: Vec<String> = found
            .iter()
            .map(|(_, b)| StratumLabel::P2Morse(b.clone()).to_string())
            .collect();
        return Err(Error::FlagNotUnique(betas.join(", ")));
    }
    let semistable = g.semistable();
    if found.is_empty() != semistable {
        return Err(Error::PartitionViolation(format!(
            "flag search and the point/line criterion disagree on semistability ({} flags)",
            found.len()
        )));
    }
    Ok(found.pop())
}

/// Coarse label from the counting descriptions of the strata `S_beta`,
/// independent of the flag search.
pub fn morse_label_p2(config: &Config) -> Result<StratumLabel> {
    let g = Geometry::new(config)?;
    let n = g.n;
    let mut labels: BTreeSet<[Rational; 3]> = BTreeSet::new();
    if g.semistable() {
        let t = frac(n as i64, 3);
        labels.insert(triple(t.clone(), t.clone(), t));
    }
    // (k/2, k/2, n-k), 2n/3 < k: a line with exactly k, at most k/2 coinciding on it
    for (l, on) in &g.lines {
        let k = on.len();
        if 3 * k > 2 * n && 2 * g.max_mult_on(l) <= k {
            let h = frac(k as i64, 2);
            labels.insert(triple(h.clone(), h, q((n - k) as i64)));
        }
    }
    for (&p, &k) in &g.mult {
        let pencil = g.pencil(p)?;
        // (k, (n-k)/2, (n-k)/2), n/3 < k: every line through p has at most (n-k)/2 others
        if 3 * k > n && pencil.values().all(|&c| 2 * c <= n - k) {
            let h = frac((n - k) as i64, 2);
            labels.insert(triple(q(k as i64), h.clone(), h));
        }
        // (k1, k2, n-k1-k2) with n-k1-k2 < k2 < k1
        for &k2 in pencil.values() {
            if n - k - k2 < k2 && k2 < k {
                labels.insert(triple(q(k as i64), q(k2 as i64), q((n - k - k2) as i64)));
            }
        }
    }
    let mut it = labels.into_iter();
    match (it.next(), it.next()) {
        (Some(b), None) => Ok(StratumLabel::P2Morse(b)),
        (None, _) => Err(Error::PartitionViolation(
            "configuration lies in no Morse stratum".into(),
        )),
        (Some(a), Some(b)) => Err(Error::PartitionViolation(format!(
            "configuration lies in {} and {}",
            StratumLabel::P2Morse(a),
            StratumLabel::P2Morse(b)
        ))),
    }
}

fn exactly_one(n: usize, holding: Vec<StratumLabel>) -> Result<StratumLabel> {
    let mut uniq: Vec<StratumLabel> = Vec::new();
    for l in holding {
        if !uniq.contains(&l) {
            uniq.push(l);
        }
    }
    match uniq.len() {
        1 => Ok(uniq.pop().expect("one label")),
        0 => Err(Error::PartitionViolation(format!(
            "no refined label applies ({n} points)"
        ))),
        _ => Err(Error::PartitionViolation(
            uniq.iter().map(ToString::to_string).collect::<Vec<_>>().join(" and "),
        )),
    }
}

fn refine_unstable(g: &Geometry, flag: &Flag, beta: [Rational; 3]) -> Result<StratumLabel> {
    let label = |torus: Option<SubTorus>, three: bool| StratumLabel::P2Refined {
        beta: beta.clone(),
        torus,
        three,
    };
    match flag {
        Flag::Line(l) => {
            let k = g.count(l);
            if k % 2 != 0 {
                return Ok(StratumLabel::P2Morse(beta));
            }
            let mults = g.mults_on(l);
            let half_somewhere = mults.contains(&(k / 2));
            let mut holding = Vec::new();
            if mults.iter().all(|&c| c < k / 2) {
                holding.push(label(None, false));
            }
            if half_somewhere && mults.len() == 2 {
                holding.push(label(Some(SubTorus::T1), false));
            }
            if half_somewhere && mults.len() > 2 {
                holding.push(label(Some(SubTorus::T1), true));
            }
            exactly_one(g.n, holding)
        }
        Flag::Point(p) => {
            let rest = g.n - g.mult[p];
            if rest % 2 != 0 {
                return Ok(StratumLabel::P2Morse(beta));
            }
            let c = rest / 2;
            let pencil = g.pencil(p)?;
            // with c = 0 every line through p avoiding the others counts
            let exactly_c = if c == 0 {
                usize::MAX
            } else {
                pencil.values().filter(|&&x| x == c).count()
            };
            let at_least_c = if c == 0 {
                usize::MAX
            } else {
                pencil.values().filter(|&&x| x >= c).count()
            };
            let mut holding = Vec::new();
            if at_least_c == 0 {
                holding.push(label(None, false));
            }
            if exactly_c >= 2 {
                holding.push(label(Some(SubTorus::T2), false));
            }
            if exactly_c >= 1 && at_least_c == 1 {
                holding.push(label(Some(SubTorus::T2), true));
            }
            exactly_one(g.n, holding)
        }
        Flag::PointLine(..) => Ok(StratumLabel::P2Morse(beta)),
    }
}

fn refine_semistable(g: &Geometry) -> Result<StratumLabel> {
    let n = g.n;
    if n % 3 != 0 {
        if !g.stable() {
            return Err(Error::PartitionViolation(
                "semistable but not stable with 3 not dividing n".into(),
            ));
        }
        return Ok(StratumLabel::Stable);
    }
    let m = n / 3;
    let heavy: Vec<&ProjPoint> = g.mult.iter().filter(|(_, &c)| c == m).map(|(p, _)| *p).collect();
    let full: Vec<&ProjPoint> = g
        .lines
        .iter()
        .filter(|(_, on)| on.len() == 2 * m)
        .map(|(l, _)| l)
        .collect();
    let on = Geometry::on;
    let mut holding = Vec::new();
    if heavy.is_empty() && full.is_empty() {
        holding.push(StratumLabel::Stable);
    }
    if heavy.len() >= 3 {
        holding.push(StratumLabel::Tilde);
    }
    for &p in &heavy {
        for &l in full.iter().filter(|l| !on(p, l)) {
            if g.mults_on(l).iter().all(|&c| c < m) {
                holding.push(StratumLabel::T1 { shift: 0 });
            }
        }
    }
    if !full.is_empty() && heavy.is_empty() {
        holding.push(StratumLabel::T1 { shift: 3 });
    }
    if !heavy.is_empty() && full.is_empty() {
        holding.push(StratumLabel::T1 { shift: -3 });
    }
    for &p in &heavy {
        for &l in full.iter().filter(|l| on(p, l)) {
            let unique_p = heavy.len() == 1;
            let unique_l = full.len() == 1;
            if unique_p && unique_l {
                holding.push(StratumLabel::TorusBeta(TorusCase::A));
            }
            if unique_l && heavy.iter().any(|&p2| p2 != p && on(p2, l)) {
                holding.push(StratumLabel::TorusBeta(TorusCase::B));
            }
            if unique_p && full.iter().any(|&l2| l2 != l && on(p, l2)) {
                holding.push(StratumLabel::TorusBeta(TorusCase::C));
            }
            let rest_on_l: BTreeSet<&ProjPoint> = g.points.iter().filter(|x| on(x, l) && *x != p).collect();
            if heavy.iter().any(|&p2| !on(p2, l)) && rest_on_l.len() > 1 {
                holding.push(StratumLabel::TorusBeta(TorusCase::D));
            }
        }
    }
    exactly_one(n, holding)
}

/// Refined label of an ordered configuration in `(P_2)^n`.
pub fn classify_p2_tuple(config: &Config) -> Result<StratumLabel> {
    let g = Geometry::new(config)?;
    match flag_of(&g)? {
        Some((flag, beta)) => refine_unstable(&g, &flag, beta),
        None => refine_semistable(&g),
    }
}
