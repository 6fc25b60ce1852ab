#![allow(dead_code)]

use moment_strata::config::{Config, ProjPoint};
use moment_strata::exact::{frac, q};
use moment_strata::model::{WeightedModel, WeylGroup};
use moment_strata::{BilinearForm, LieVector, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    frac(n, rng.gen_range(1..=3))
}

fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| q((i == j) as i64)).collect()).collect()
}

fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

/// Random element of `SL(n, Q)` as a product of elementary and diagonal
/// matrices, so the determinant is 1 by construction.
pub fn random_sl(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rational>> {
    let mut g = identity(n);
    for _ in 0..rng.gen_range(2..=6) {
        let mut e = identity(n);
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        if rng.gen_bool(0.7) {
            e[i][j] = small_rational(rng);
        } else {
            let d = nonzero_rational(rng);
            e[j][j] = q(1) / &d;
            e[i][i] = d;
        }
        g = matmul(&e, &g);
    }
    g
}

/// Config of `n` points of `P_1` drawn from a small pool, so coincidences are
/// common.
pub fn random_p1_config(rng: &mut ChaCha8Rng, n: usize) -> Config {
    let pool = rng.gen_range(1..=n.min(5));
    let ts: Vec<Option<i64>> = (0..pool)
        .map(|k| {
            if k == 0 && rng.gen_bool(0.3) {
                None
            } else {
                Some(k as i64 * 2 - 3)
            }
        })
        .collect();
    let picks: Vec<Option<i64>> = (0..n).map(|_| *ts.choose(rng).unwrap()).collect();
    Config::p1(&picks)
}

/// Binary form with one root of multiplicity `m = n/2` and the other roots
/// not all equal.
pub fn random_half_root_config(rng: &mut ChaCha8Rng, m: usize) -> Config {
    let p = rng.gen_range(-3..=3);
    let mut ts = vec![Some(p); m];
    loop {
        let rest: Vec<Option<i64>> = (0..m)
            .map(|_| {
                let t = rng.gen_range(-6..=6);
                if t == p {
                    None
                } else {
                    Some(t)
                }
            })
            .collect();
        if rest.iter().any(|x| *x != rest[0]) {
            ts.extend(rest);
            return Config::p1(&ts);
        }
    }
}

/// Config of `n` points of `P_2` with coordinates in `-2..=2`, drawn from a
/// small pool; such pools have many collinear triples.
pub fn random_p2_config(rng: &mut ChaCha8Rng, n: usize) -> Config {
    let pool_size = rng.gen_range(1..=n.min(6));
    let mut pool = Vec::new();
    while pool.len() < pool_size {
        let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        if let Ok(p) = ProjPoint::from_ints(&c) {
            pool.push(p);
        }
    }
    Config::new((0..n).map(|_| pool.choose(rng).unwrap().clone()).collect()).unwrap()
}

pub fn random_vector(rng: &mut ChaCha8Rng, r: usize) -> LieVector {
    LieVector((0..r).map(|_| small_rational(rng)).collect())
}

/// One factor `P_k` with random rational weights of rank `r`.
pub fn random_weight_system(rng: &mut ChaCha8Rng, r: usize) -> WeightedModel {
    let factors: Vec<Vec<LieVector>> = (0..rng.gen_range(1..=2))
        .map(|_| (0..rng.gen_range(2..=4)).map(|_| random_vector(rng, r)).collect())
        .collect();
    WeightedModel::new(BilinearForm::identity(r), factors, WeylGroup::Trivial).unwrap()
}
