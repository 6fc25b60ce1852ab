//! Nearest point of a convex hull to the origin, containment tests and the
//! optimality certificates that come with them.
//!
//! The primary solver is Wolfe's active-set method run in exact arithmetic.
//! [`closest_point_by_faces`] is the brute-force reference used in tests.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::linalg;
use super::{rational_vec_serde, BilinearForm, LieVector, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionCertificate {
    /// Indices into the caller's point list, strictly increasing.
    pub support: Vec<usize>,
    #[serde(with = "rational_vec_serde")]
    pub coefficients: Vec<Rational>,
    pub beta: LieVector,
}

impl ProjectionCertificate {
    /// Checks the three certificate conditions against `points` exactly.
    pub fn verify(&self, points: &[LieVector], form: &BilinearForm) -> bool {
        if self.support.is_empty() || self.support.len() != self.coefficients.len() {
            return false;
        }
        if self.coefficients.iter().any(|c| !c.is_positive()) {
            return false;
        }
        if self.coefficients.iter().sum::<Rational>() != Rational::one() {
            return false;
        }
        let combo = combination(
            &self.support.iter().map(|&i| &points[i]).collect::<Vec<_>>(),
            &self.coefficients,
        );
        if combo != self.beta {
            return false;
        }
        let nb = form.norm_sq(&self.beta);
        points.iter().all(|p| form.inner(p, &self.beta) >= nb)
            && self.support.iter().all(|&i| form.inner(&points[i], &self.beta) == nb)
    }
}

fn check_rank(points: &[LieVector], r: usize) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty point list".into()));
    }
    for p in points {
        if p.rank() != r {
            return Err(Error::RankMismatch {
                expected: r,
                found: p.rank(),
            });
        }
    }
    Ok(())
}

/// Indices of the first occurrence of each distinct point.
fn distinct_indices(points: &[LieVector]) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    (0..points.len()).filter(|&i| seen.insert(&points[i])).collect()
}

fn combination(points: &[&LieVector], coeffs: &[Rational]) -> LieVector {
    let r = points[0].rank();
    let mut acc = vec![Rational::zero(); r];
    for (p, c) in points.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (a, x) in acc.iter_mut().zip(p.coords()) {
            *a += c * x;
        }
    }
    LieVector(acc)
}

/// Minimizer of the norm over the affine hull of `pts`, as barycentric
/// coefficients. `None` when the points are affinely dependent.
fn affine_minimizer(pts: &[&LieVector], form: &BilinearForm) -> Option<Vec<Rational>> {
    let k = pts.len();
    let mut m = vec![vec![Rational::zero(); k + 1]; k + 1];
    for i in 0..k {
        for j in i..k {
            let g = form.inner(pts[i], pts[j]);
            m[i][j] = g.clone();
            m[j][i] = g;
        }
        m[i][k] = Rational::one();
        m[k][i] = Rational::one();
    }
    if linalg::determinant(&m).is_zero() {
        return None;
    }
    let mut rhs = vec![Rational::zero(); k + 1];
    rhs[k] = Rational::one();
    let mut sol = linalg::solve(&m, &rhs)?;
    sol.truncate(k);
    Some(sol)
}

pub fn affine_dimension(points: &[LieVector]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| (p - first).0).collect();
    if diffs.is_empty() {
        return 0;
    }
    linalg::rank(&diffs)
}

fn affinely_independent(pts: &[&LieVector]) -> bool {
    if pts.len() <= 1 {
        return true;
    }
    let diffs: Vec<Vec<Rational>> = pts[1..].iter().map(|p| (*p - pts[0]).0).collect();
    linalg::rank(&diffs) == diffs.len()
}

/// Exact nearest point of `conv(points)` to the origin in the norm of
/// `form`, with the lexicographically smallest valid support.
pub fn closest_point_to_origin(points: &[LieVector], form: &BilinearForm) -> Result<ProjectionCertificate> {
    let beta = closest_beta(points, form)?;
    Ok(canonical_certificate(points, form, beta))
}

/// Just the nearest point, without building the canonical certificate.
pub fn closest_beta(points: &[LieVector], form: &BilinearForm) -> Result<LieVector> {
    check_rank(points, form.rank())?;
    let idx = distinct_indices(points);
    Ok(wolfe(&idx.iter().map(|&i| &points[i]).collect::<Vec<_>>(), form))
}

fn wolfe(pts: &[&LieVector], form: &BilinearForm) -> LieVector {
    let norms: Vec<Rational> = pts.iter().map(|p| form.norm_sq(p)).collect();
    let start = (0..pts.len())
        .min_by(|&a, &b| norms[a].cmp(&norms[b]).then(a.cmp(&b)))
        .expect("nonempty");
    let mut active = vec![start];
    let mut lambda = vec![Rational::one()];
    let mut x = pts[start].clone();
    loop {
        let nx = form.norm_sq(&x);
        if nx.is_zero() {
            return x;
        }
        let (j, val) = pts
            .iter()
            .enumerate()
            .map(|(j, p)| (j, form.inner(p, &x)))
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
            .expect("nonempty");
        if val >= nx {
            return x;
        }
        active.push(j);
        lambda.push(Rational::zero());
        loop {
            let sub: Vec<&LieVector> = active.iter().map(|&i| pts[i]).collect();
            let alpha =
                affine_minimizer(&sub, form).expect("active set stays affinely independent in exact arithmetic");
            if alpha.iter().all(Signed::is_positive) {
                lambda = alpha;
                x = combination(&sub, &lambda);
                break;
            }
            let theta = lambda
                .iter()
                .zip(&alpha)
                .filter(|(_, a)| !a.is_positive())
                .map(|(l, a)| l / (l - a))
                .min()
                .expect("some coefficient is nonpositive");
            let one_minus = Rational::one() - &theta;
            let mixed: Vec<Rational> = lambda
                .iter()
                .zip(&alpha)
                .map(|(l, a)| &one_minus * l + &theta * a)
                .collect();
            let keep: Vec<usize> = (0..active.len()).filter(|&i| mixed[i].is_positive()).collect();
            active = keep.iter().map(|&i| active[i]).collect();
            lambda = keep.iter().map(|&i| mixed[i].clone()).collect();
        }
    }
}

/// Reference algorithm: project the origin onto every affinely independent
/// subset of size at most `r + 1` and keep the globally optimal candidate.
pub fn closest_point_by_faces(points: &[LieVector], form: &BilinearForm) -> Result<ProjectionCertificate> {
    check_rank(points, form.rank())?;
    let idx = distinct_indices(points);
    let max = form.rank() + 1;
    let mut found: Option<LieVector> = None;
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        points: &[LieVector],
        idx: &[usize],
        form: &BilinearForm,
        max: usize,
        from: usize,
        stack: &mut Vec<usize>,
        found: &mut Option<LieVector>,
    ) {
        for t in from..idx.len() {
            if found.is_some() {
                return;
            }
            stack.push(idx[t]);
            let sub: Vec<&LieVector> = stack.iter().map(|&i| &points[i]).collect();
            if affinely_independent(&sub) {
                if let Some(c) = affine_minimizer(&sub, form) {
                    if c.iter().all(|x| !x.is_negative()) {
                        let y = combination(&sub, &c);
                        let ny = form.norm_sq(&y);
                        if points.iter().all(|p| form.inner(p, &y) >= ny) {
                            *found = Some(y);
                        }
                    }
                }
                if stack.len() < max {
                    rec(points, idx, form, max, t + 1, stack, found);
                }
            }
            stack.pop();
        }
    }
    rec(points, &idx, form, max, 0, &mut stack, &mut found);
    let beta = found.expect("some face always carries the nearest point");
    Ok(canonical_certificate(points, form, beta))
}

/// Among affinely independent subsets of the face `{p : <p,beta> = |beta|^2}`
/// expressing `beta` with positive weights, the lexicographically smallest.
fn canonical_certificate(points: &[LieVector], form: &BilinearForm, beta: LieVector) -> ProjectionCertificate {
    let nb = form.norm_sq(&beta);
    let face: Vec<usize> = distinct_indices(points)
        .into_iter()
        .filter(|&i| form.inner(&points[i], &beta) == nb)
        .collect();
    let max = form.rank() + 1;
    fn rec(
        points: &[LieVector],
        face: &[usize],
        beta: &LieVector,
        max: usize,
        from: usize,
        stack: &mut Vec<usize>,
    ) -> Option<Vec<Rational>> {
        for t in from..face.len() {
            stack.push(face[t]);
            let sub: Vec<&LieVector> = stack.iter().map(|&i| &points[i]).collect();
            if affinely_independent(&sub) {
                if let Some(c) = barycentric(&sub, beta) {
                    if c.iter().all(Signed::is_positive) {
                        return Some(c);
                    }
                }
                if stack.len() < max {
                    if let Some(c) = rec(points, face, beta, max, t + 1, stack) {
                        return Some(c);
                    }
                }
            }
            stack.pop();
        }
        None
    }
    let mut stack = Vec::new();
    let coefficients = rec(points, &face, &beta, max, 0, &mut stack)
        .expect("the nearest point lies in the relative interior of a face simplex");
    ProjectionCertificate {
        support: stack,
        coefficients,
        beta,
    }
}

/// Barycentric coordinates of `target` with respect to affinely independent
/// `pts`, if it lies in their affine hull.
fn barycentric(pts: &[&LieVector], target: &LieVector) -> Option<Vec<Rational>> {
    let r = target.rank();
    let k = pts.len();
    let mut a: Vec<Vec<Rational>> = (0..r).map(|row| pts.iter().map(|p| p[row].clone()).collect()).collect();
    a.push(vec![Rational::one(); k]);
    let mut b = target.0.clone();
    b.push(Rational::one());
    linalg::solve(&a, &b)
}

pub fn origin_in_hull(points: &[LieVector], form: &BilinearForm) -> Result<bool> {
    Ok(closest_beta(points, form)?.is_zero())
}

/// True when 0 is an interior point of the full-dimensional hull in `Q^r`.
/// Decided by checking 0 strictly inside every supporting hyperplane spanned
/// by `r` affinely independent points.
pub fn origin_in_interior(points: &[LieVector], r: usize) -> bool {
    let idx = distinct_indices(points);
    let pts: Vec<&LieVector> = idx.iter().map(|&i| &points[i]).collect();
    let owned: Vec<LieVector> = pts.iter().map(|p| (*p).clone()).collect();
    if pts.is_empty() || pts.iter().any(|p| p.rank() != r) || affine_dimension(&owned) != r {
        return false;
    }
    if r == 0 {
        return true;
    }
    let mut stack: Vec<usize> = Vec::new();
    // returns false as soon as a supporting hyperplane fails to separate 0 strictly
    fn rec(pts: &[&LieVector], r: usize, from: usize, stack: &mut Vec<usize>) -> bool {
        for t in from..pts.len() {
            stack.push(t);
            let sub: Vec<&LieVector> = stack.iter().map(|&i| pts[i]).collect();
            if affinely_independent(&sub) {
                if stack.len() == r {
                    if !facet_ok(pts, &sub, r) {
                        return false;
                    }
                } else if !rec(pts, r, t + 1, stack) {
                    return false;
                }
            }
            stack.pop();
        }
        true
    }
    rec(&pts, r, 0, &mut stack)
}

fn facet_ok(pts: &[&LieVector], sub: &[&LieVector], r: usize) -> bool {
    let rows: Vec<Vec<Rational>> = sub[1..].iter().map(|p| (*p - sub[0]).0).collect();
    let ns = linalg::nullspace(&rows, r);
    debug_assert_eq!(ns.len(), 1);
    let n = &ns[0];
    let dot = |p: &LieVector| -> Rational { n.iter().zip(p.coords()).map(|(a, b)| a * b).sum() };
    let c = dot(sub[0]);
    let above = pts.iter().all(|p| dot(p) >= c);
    let below = pts.iter().all(|p| dot(p) <= c);
    if above {
        c.is_negative()
    } else if below {
        c.is_positive()
    } else {
        true
    }
}
