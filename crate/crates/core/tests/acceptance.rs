//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits nonzero if any criterion fails.
//!
//! Every comparison is exact over `Q`; the only tolerances are wall-clock
//! budgets, pinned below.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use moment_strata::config::{
    binary_k_invariant, classify, classify_p1_tuple, classify_p2_tuple, morse_label_p1, morse_label_p2, Config, Family,
    StratumLabel,
};
use moment_strata::exact::projection::{closest_point_by_faces, closest_point_to_origin};
use moment_strata::exact::{frac, q};
use moment_strata::kirwan::{betti_table, kernel_ideal, lemma_ee_check, lemma_ff_check, Group, Presentation, Target};
use moment_strata::model::{SupportProfile, WeightedModel};
use moment_strata::perturbation::{genericity_witness, propose_epsilon, refinement_report, shifted_model};
use moment_strata::residue::betti_by_pairing;
use moment_strata::series::{
    perfection_check, quotient_poincare_polynomial, sl2_quotient_polynomial, torus_quotient_dim, Polynomial,
};
use moment_strata::{BilinearForm, Error, LieVector, Rational};
use rand::Rng;

/// Hard budget for the index-set criterion.
const INDEX_SET_BUDGET: Duration = Duration::from_secs(1);
const TRUNC: usize = 40;
const CHECK_DEGREE: u32 = 12;
const RANDOM_WEIGHT_SYSTEMS: usize = 25;
const PROJECTION_INSTANCES: usize = 500;
const TRANSFORMS: usize = 200;
const PARTITION_CONFIGS: usize = 300;
const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: moment_strata::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn even_coefficients(p: &Polynomial, len: usize) -> Vec<usize> {
    (0..len)
        .map(|k| {
            let c = p.coefficients.get(2 * k).cloned().unwrap_or_else(|| q(0));
            c.to_integer().try_into().expect("Betti numbers are small")
        })
        .collect()
}

fn index_sets() -> Outcome {
    let start = Instant::now();
    for n in 1..=8usize {
        let got: BTreeSet<LieVector> = ok(WeightedModel::binary_forms(n).index_betas(), "index set")?
            .into_iter()
            .collect();
        let mut want: BTreeSet<LieVector> = (0..=n as i64)
            .map(|j| LieVector::from_ints(&[2 * j - n as i64]))
            .collect();
        want.insert(LieVector::from_ints(&[0]));
        ensure(got == want, || format!("P_{n}: {got:?}"))?;
    }
    let t = start.elapsed();
    ensure(t < INDEX_SET_BUDGET, || format!("took {t:?}"))?;
    Ok(format!("P_1..P_8 exact, {t:?}"))
}

fn perfection() -> Outcome {
    let mut r = rng(SEED);
    let mut models: Vec<(String, WeightedModel)> = Vec::new();
    for n in 1..=6 {
        models.push((format!("P_{n}"), WeightedModel::binary_forms(n)));
        models.push((format!("(P_1)^{n}"), WeightedModel::p1_power(n)));
    }
    for i in 0..RANDOM_WEIGHT_SYSTEMS {
        let rank = 1 + i % 2;
        models.push((format!("random rank {rank} #{i}"), random_weight_system(&mut r, rank)));
    }
    let (mut plain, mut perturbed, mut no_eps) = (0, 0, 0);
    for (name, m) in &models {
        let rep = ok(perfection_check(m, TRUNC), name)?;
        ensure(rep.holds, || format!("{name}: {rep:?}"))?;
        plain += 1;
        match propose_epsilon(m) {
            Ok(eps) => {
                let s = ok(shifted_model(m, &eps.vector), name)?;
                let rep = ok(perfection_check(&s, TRUNC), name)?;
                ensure(rep.holds, || format!("{name} shifted by {}: {rep:?}", eps.vector))?;
                perturbed += 1;
            }
            Err(Error::NoGenericEpsilon { .. }) => no_eps += 1,
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(format!(
        "{plain} models and {perturbed} perturbations to t^{TRUNC}; {no_eps} without a generic epsilon"
    ))
}

fn triple_betti() -> Outcome {
    let cases = [
        (
            "P_3 // SL(2)",
            WeightedModel::binary_forms(3),
            Group::Sl2,
            Some(vec![1]),
        ),
        ("P_5 // SL(2)", WeightedModel::binary_forms(5), Group::Sl2, None),
        (
            "(P_1)^3 // SL(2)",
            WeightedModel::p1_power(3),
            Group::Sl2,
            Some(vec![1]),
        ),
        (
            "(P_1)^5 // SL(2)",
            WeightedModel::p1_power(5),
            Group::Sl2,
            Some(vec![1, 5, 1]),
        ),
        (
            "P_3 // T",
            WeightedModel::binary_forms(3),
            Group::Torus,
            Some(vec![1, 2, 1]),
        ),
    ];
    let mut out = Vec::new();
    for (name, model, group, expected) in cases {
        let pres = ok(Presentation::new(&model, group), name)?;
        let top = pres.quotient_real_dim().ok_or(format!("{name}: empty quotient"))? as u32;
        let max = top + 4;
        let len = (max / 2 + 1) as usize;
        let series = match group {
            Group::Torus => ok(quotient_poincare_polynomial(&model, TRUNC), name)?,
            Group::Sl2 => ok(sl2_quotient_polynomial(&model, TRUNC), name)?,
        };
        let a = even_coefficients(&series, len);
        let kernel = ok(kernel_ideal(&pres, group, Target::Semistable, max), name)?;
        let b = ok(betti_table(&pres, &kernel), name)?;
        let c = ok(betti_by_pairing(&pres, max), name)?;
        ensure(a == b && b == c, || {
            format!("{name}: series {a:?}, presentation {b:?}, pairing {c:?}")
        })?;
        if let Some(e) = expected {
            ensure(a[..e.len()] == e[..] && a[e.len()..].iter().all(|&x| x == 0), || {
                format!("{name}: {a:?}, expected {e:?}")
            })?;
        }
        out.push(format!("{name} {series}"));
    }
    Ok(out.join("; "))
}

fn duality() -> Outcome {
    let mut r = rng(SEED + 4);
    let mut polys: Vec<(String, Polynomial, usize)> = Vec::new();
    let mut models: Vec<(String, WeightedModel)> = Vec::new();
    for n in 1..=8 {
        models.push((format!("P_{n}"), WeightedModel::binary_forms(n)));
        models.push((format!("(P_1)^{n}"), WeightedModel::p1_power(n)));
    }
    for i in 0..RANDOM_WEIGHT_SYSTEMS {
        models.push((format!("random #{i}"), random_weight_system(&mut r, 1 + i % 2)));
    }
    for (name, m) in &models {
        if let (Ok(p), Some(d)) = (quotient_poincare_polynomial(m, TRUNC), torus_quotient_dim(m)) {
            polys.push((format!("{name} // T"), p, d));
        }
        if m.rank() == 1 && m.is_reflection_symmetric().is_ok() {
            if let (Ok(p), Some(d)) = (
                sl2_quotient_polynomial(m, TRUNC),
                moment_strata::series::sl2_quotient_dim(m),
            ) {
                polys.push((format!("{name} // SL(2)"), p, d));
            }
        }
    }
    let mut empty = 0;
    for (name, p, d) in &polys {
        if p.coefficients.is_empty() {
            // empty quotient: the full profile, whose hull contains all others, must be unstable
            let base = name.rsplit_once(" // ").unwrap().0;
            let m = &models.iter().find(|(n, _)| n == base).unwrap().1;
            ensure(!ok(m.is_semistable(&m.full_profile()), name)?, || {
                format!("{name}: 0 but semistable")
            })?;
            empty += 1;
            continue;
        }
        let c = |k: usize| p.coefficients.get(k).cloned().unwrap_or_else(|| q(0));
        ensure(p.coefficients.len() <= 2 * d + 1, || {
            format!("{name}: {p} above degree {}", 2 * d)
        })?;
        ensure(c(0) == q(1), || format!("{name}: constant term of {p}"))?;
        ensure((0..=2 * d).all(|k| c(k) == c(2 * d - k)), || {
            format!("{name}: {p} not palindromic")
        })?;
    }
    Ok(format!(
        "{} quotient polynomials palindromic with c_0 = 1; {empty} empty quotients",
        polys.len() - empty
    ))
}

fn perturbation() -> Outcome {
    let m4 = WeightedModel::p1_power(4);
    let eps = ok(propose_epsilon(&m4), "(P_1)^4")?;
    ensure(ok(genericity_witness(&m4, &eps.vector), "(P_1)^4")?.is_none(), || {
        "(P_1)^4 not generic".into()
    })?;
    let rep = ok(refinement_report(&m4, &eps.vector), "(P_1)^4")?;
    let zero = LieVector::from_ints(&[0]);
    let fiber = rep.fiber(&zero).len();
    ensure(fiber == 2, || format!("(P_1)^4 fiber over 0 has {fiber} strata"))?;
    let others = rep
        .parents()
        .into_iter()
        .filter(|p| **p != zero)
        .all(|p| rep.fiber(p).len() == 1);
    ensure(others, || "(P_1)^4 splits a nonzero stratum".into())?;

    let m3 = WeightedModel::p1_power(3);
    let eps3 = ok(propose_epsilon(&m3), "(P_1)^3")?;
    ensure(ok(genericity_witness(&m3, &eps3.vector), "(P_1)^3")?.is_none(), || {
        "(P_1)^3 not generic".into()
    })?;
    let rep3 = ok(refinement_report(&m3, &eps3.vector), "(P_1)^3")?;
    ensure(rep3.is_bijection(), || "(P_1)^3 refinement is not a bijection".into())?;
    Ok(format!(
        "(P_1)^4 eps {}: 0 splits in 2; (P_1)^3 eps {}: bijection",
        eps.vector, eps3.vector
    ))
}

fn d_times_kernel() -> Outcome {
    let cases = [
        ("P_3", WeightedModel::binary_forms(3)),
        ("P_5", WeightedModel::binary_forms(5)),
        ("(P_1)^4", WeightedModel::p1_power(4)),
    ];
    for (name, m) in cases {
        let pres = ok(Presentation::new(&m, Group::Sl2), name)?;
        let rep = ok(lemma_ff_check(&pres, CHECK_DEGREE), name)?;
        ensure(rep.degrees.len() == (CHECK_DEGREE / 2 + 1) as usize, || {
            format!("{name}: degrees missing")
        })?;
        ensure(
            rep.failing_degrees.is_empty() && rep.degrees.iter().all(|d| d.holds()),
            || format!("{name}: fails in degrees {:?}", rep.failing_degrees),
        )?;
    }
    Ok(format!("P_3, P_5, (P_1)^4 in degrees 0..={CHECK_DEGREE}"))
}

fn vanishing_kernel() -> Outcome {
    for (name, m) in [
        ("P_3", WeightedModel::binary_forms(3)),
        ("P_5", WeightedModel::binary_forms(5)),
    ] {
        let pres = ok(Presentation::new(&m, Group::Torus), name)?;
        let rep = ok(lemma_ee_check(&pres, CHECK_DEGREE), name)?;
        ensure(rep.degrees.len() == (CHECK_DEGREE / 2 + 1) as usize, || {
            format!("{name}: degrees missing")
        })?;
        ensure(rep.failing_degrees.is_empty(), || {
            format!("{name}: fails in degrees {:?}", rep.failing_degrees)
        })?;
    }
    Ok(format!("P_3, P_5 in degrees 0..={CHECK_DEGREE}"))
}

fn projection() -> Outcome {
    let mut g = rng(SEED + 8);
    for i in 0..PROJECTION_INSTANCES {
        let r = g.gen_range(1..=3);
        let k = g.gen_range(1..=7);
        let pts: Vec<LieVector> = (0..k).map(|_| random_vector(&mut g, r)).collect();
        let form = if r == 2 && g.gen_bool(0.5) {
            BilinearForm::sl3_trace_form()
        } else {
            BilinearForm::identity(r)
        };
        let cert = ok(closest_point_to_origin(&pts, &form), "projection")?;
        ensure(cert.verify(&pts, &form), || {
            format!("#{i}: certificate fails for {pts:?}")
        })?;
        let oracle = ok(closest_point_by_faces(&pts, &form), "oracle")?;
        ensure(oracle.beta == cert.beta, || {
            format!("#{i}: {} vs oracle {}", cert.beta, oracle.beta)
        })?;

        let c: Rational = frac(g.gen_range(1..=5), g.gen_range(1..=5));
        let scaled: Vec<LieVector> = pts.iter().map(|p| p.scale(&c)).collect();
        let sb = ok(closest_point_to_origin(&scaled, &form), "scaled")?.beta;
        ensure(sb == cert.beta.scale(&c), || format!("#{i}: scaling by {c}"))?;

        let subset: Vec<LieVector> = pts.iter().filter(|_| g.gen_bool(0.6)).cloned().collect();
        if !subset.is_empty() {
            let b = ok(closest_point_to_origin(&subset, &form), "subset")?.beta;
            ensure(form.norm_sq(&b) >= form.norm_sq(&cert.beta), || {
                format!("#{i}: subset is closer")
            })?;
        }
    }
    Ok(format!("{PROJECTION_INSTANCES} instances, rank <= 3, <= 7 points"))
}

fn parse_profile(s: &str) -> SupportProfile {
    let inner = s.trim_start_matches('(').trim_end_matches(')');
    SupportProfile(
        inner
            .split("},{")
            .map(|f| {
                f.trim_matches(|c| c == '{' || c == '}')
                    .split(',')
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse().unwrap())
                    .collect()
            })
            .collect(),
    )
}

fn classifiers() -> Outcome {
    let p1 = |ts: &[Option<i64>]| Config::p1(ts);
    let cases = [
        (p1(&[Some(0), Some(0), None, None]), StratumLabel::Tilde),
        (p1(&[Some(0), Some(0), Some(1), None]), StratumLabel::TildeTwo),
        (p1(&[Some(0), Some(0), Some(0), None]), StratumLabel::Morse(2)),
        (p1(&[Some(0), Some(1), Some(2), Some(3), None]), StratumLabel::Stable),
    ];
    for (c, want) in &cases {
        let got = ok(classify_p1_tuple(c), "p1")?;
        ensure(&got == want, || format!("{:?}: {got} instead of {want}", c.points()))?;
    }
    let coarse: Vec<StratumLabel> = cases[..3].iter().map(|(c, _)| morse_label_p1(c).unwrap()).collect();
    ensure(
        coarse == [StratumLabel::Morse(0), StratumLabel::Morse(0), StratumLabel::Morse(2)],
        || format!("coarse labels {coarse:?}"),
    )?;

    let t = Config::from_ints(&[&[1, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 1, 0], &[0, 0, 1], &[0, 0, 1]]).unwrap();
    ensure(ok(classify_p2_tuple(&t), "p2")? == StratumLabel::Tilde, || {
        "(T) example".into()
    })?;
    let t1 = Config::from_ints(&[&[0, 0, 1], &[0, 0, 1], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[1, 2, 0]]).unwrap();
    let got = ok(classify_p2_tuple(&t1), "p2")?;
    ensure(got == StratumLabel::T1 { shift: 0 }, || {
        format!("(T1) example gave {got}")
    })?;
    let u = Config::from_ints(&[&[1, 0, 0], &[1, 0, 0], &[0, 1, 0]]).unwrap();
    let cu = ok(classify(&u, Family::P2), "p2")?;
    ensure(!cu.semistable && cu.coarse == ok(morse_label_p2(&u), "p2")?, || {
        format!("unstable example {cu:?}")
    })?;

    let mut g = rng(SEED + 9);
    for family in [Family::P1, Family::Binary, Family::P2] {
        for i in 0..TRANSFORMS {
            let (c, m) = match family {
                Family::P2 => {
                    let n = g.gen_range(3..=9);
                    (random_p2_config(&mut g, n), random_sl(&mut g, 3))
                }
                _ => {
                    let n = g.gen_range(2..=8);
                    (random_p1_config(&mut g, n), random_sl(&mut g, 2))
                }
            };
            let before = ok(classify(&c, family), "classify")?;
            let after = ok(classify(&c.transform(&m).unwrap(), family), "classify")?;
            ensure(before.refined == after.refined && before.coarse == after.coarse, || {
                format!("{family:?} #{i}: {} became {}", before.refined, after.refined)
            })?;
        }
        for _ in 0..PARTITION_CONFIGS {
            let (n, dim) = match family {
                Family::P2 => (g.gen_range(1..=9), 2),
                _ => (g.gen_range(1..=8), 1),
            };
            let c = if dim == 2 {
                random_p2_config(&mut g, n)
            } else {
                random_p1_config(&mut g, n)
            };
            let cl = ok(classify(&c, family), "partition")?;
            let morse = if dim == 1 {
                morse_label_p1(&c)
            } else {
                morse_label_p2(&c)
            };
            ensure(
                cl.refined.coarsen(c.len(), dim) == cl.coarse && Ok(cl.coarse.clone()) == morse,
                || format!("{family:?}: {} does not coarsen to {}", cl.refined, cl.coarse),
            )?;
        }
    }
    for i in 0..TRANSFORMS {
        let m = g.gen_range(2..=4);
        let c = random_half_root_config(&mut g, m);
        let k = ok(binary_k_invariant(&c), "k")?;
        let moved = c.transform(&random_sl(&mut g, 2)).unwrap();
        let k2 = ok(binary_k_invariant(&moved), "k")?;
        ensure(k == k2, || {
            format!("#{i}: k changed from {k:?} to {k2:?}; the coefficient test is not coordinate-free (open question)")
        })?;
    }
    Ok(format!(
        "worked cases; {TRANSFORMS} transforms and {PARTITION_CONFIGS} partition configs per family; k-invariance x{TRANSFORMS}"
    ))
}

fn negative_control() -> Outcome {
    let model = WeightedModel::p1_power(4);
    match quotient_poincare_polynomial(&model, TRUNC) {
        Ok(p) => Err(format!("returned {p}")),
        Err(Error::NotCoprimeStable { witness }) => {
            let prof = parse_profile(&witness);
            let halves =
                prof.0.iter().filter(|f| **f == [0]).count() == 2 && prof.0.iter().filter(|f| **f == [1]).count() == 2;
            ensure(halves, || format!("witness {witness} is not half p, half q"))?;
            let ss = ok(model.is_semistable(&prof), "witness")?;
            let s = ok(model.is_stable(&prof), "witness")?;
            ensure(ss && !s, || format!("witness {witness}: semistable {ss}, stable {s}"))?;
            Ok(format!("NotCoprimeStable, witness {witness}"))
        }
        Err(e) => Err(format!("wrong error {e}")),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("index sets of P_n", index_sets),
        ("perfection identity", perfection),
        ("triple Betti agreement", triple_betti),
        ("Poincare duality", duality),
        ("perturbation refinement", perturbation),
        ("D times SL(2) kernel", d_times_kernel),
        ("vanishing-class kernel", vanishing_kernel),
        ("projection oracle", projection),
        ("classifier suite", classifiers),
        ("negative control", negative_control),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] {} {name}: {detail} ({t:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {} {name}: {why} ({t:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
