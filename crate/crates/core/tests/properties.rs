mod common;

use common::*;
use moment_strata::config::{
    binary_k_invariant, classify, morse_label_p1, morse_label_p2, Config, Family, ProjPoint, StratumLabel,
};
use moment_strata::exact::projection::{closest_point_by_faces, closest_point_to_origin};
use moment_strata::exact::q;
use moment_strata::kirwan::{Group, Presentation};
use moment_strata::model::WeightedModel;
use moment_strata::residue::pairing;
use moment_strata::{BilinearForm, LieVector};
use proptest::prelude::*;
use rand::Rng;

/// Labels must not depend on coordinates.
fn check_invariance(config: &Config, family: Family, g: &[Vec<moment_strata::Rational>]) {
    let before = classify(config, family).unwrap();
    let moved = config.transform(g).unwrap();
    let after = classify(&moved, family).unwrap();
    assert_eq!(
        before.refined,
        after.refined,
        "{:?} vs {:?}",
        config.points(),
        moved.points()
    );
    assert_eq!(before.coarse, after.coarse);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn p1_labels_are_invariant(seed in any::<u64>(), n in 2usize..9) {
        let mut r = rng(seed);
        let c = random_p1_config(&mut r, n);
        let g = random_sl(&mut r, 2);
        check_invariance(&c, Family::P1, &g);
    }

    #[test]
    fn binary_labels_are_invariant(seed in any::<u64>(), n in 2usize..9) {
        let mut r = rng(seed);
        let c = random_p1_config(&mut r, n);
        let g = random_sl(&mut r, 2);
        check_invariance(&c, Family::Binary, &g);
    }

    #[test]
    fn p2_labels_are_invariant(seed in any::<u64>(), n in 3usize..10) {
        let mut r = rng(seed);
        let c = random_p2_config(&mut r, n);
        let g = random_sl(&mut r, 3);
        check_invariance(&c, Family::P2, &g);
    }

    #[test]
    fn k_invariant_is_coordinate_free(seed in any::<u64>(), m in 2usize..5) {
        let mut r = rng(seed);
        let c = random_half_root_config(&mut r, m);
        let k = binary_k_invariant(&c).unwrap();
        prop_assert!(k.is_some());
        let moved = c.transform(&random_sl(&mut r, 2)).unwrap();
        prop_assert_eq!(binary_k_invariant(&moved).unwrap(), k,
            "k-invariant changed under a change of variable; the coefficient test is not coordinate-free here");
    }

    #[test]
    fn labels_partition_p1(seed in any::<u64>(), n in 1usize..9) {
        let c = random_p1_config(&mut rng(seed), n);
        for family in [Family::P1, Family::Binary] {
            let cl = classify(&c, family).unwrap();
            prop_assert_eq!(&cl.coarse, &morse_label_p1(&c).unwrap());
            prop_assert_eq!(cl.semistable, cl.coarse == StratumLabel::Morse(0));
            prop_assert!(!cl.stable || cl.refined == StratumLabel::Stable);
        }
    }

    #[test]
    fn labels_partition_p2(seed in any::<u64>(), n in 1usize..10) {
        let c = random_p2_config(&mut rng(seed), n);
        let cl = classify(&c, Family::P2).unwrap();
        prop_assert_eq!(&cl.coarse, &morse_label_p2(&c).unwrap());
        prop_assert_eq!(cl.refined.coarsen(n, 2), cl.coarse.clone());
        prop_assert!(!cl.stable || cl.semistable);
    }

    /// Moving the most repeated point to `[1:0]` and reading off its support
    /// profile in `(P_1)^n` gives the same `beta` as the coincidence count.
    #[test]
    fn p1_torus_consistency(seed in any::<u64>(), n in 1usize..8) {
        let mut r = rng(seed);
        let c = random_p1_config(&mut r, n);
        let (p, j) = c.multiplicities().into_iter().max_by_key(|(_, m)| *m).map(|(p, m)| (p.clone(), m)).unwrap();
        // a matrix sending p to [1:0]
        let (u, v) = (p.coords()[0].clone(), p.coords()[1].clone());
        let g = if v == q(0) {
            vec![vec![q(1), q(0)], vec![q(0), q(1)]]
        } else if u == q(0) {
            vec![vec![q(0), q(1)], vec![q(-1), q(0)]]
        } else {
            vec![vec![q(1), q(0)], vec![-v / u, q(1)]]
        };
        let moved = c.transform(&g).unwrap();
        prop_assert_eq!(moved.multiplicities().get(&ProjPoint::infinity()).copied(), Some(j));
        let model = WeightedModel::p1_power(n);
        let coords: Vec<Vec<_>> = moved.points().iter().map(|x| x.coords().to_vec()).collect();
        let beta = model.classify_beta(&model.support_of_point(&coords).unwrap()).unwrap();
        let expected = if 2 * j > n { 2 * j as i64 - n as i64 } else { 0 };
        prop_assert_eq!(beta, LieVector::from_ints(&[expected]));
        prop_assert_eq!(morse_label_p1(&c).unwrap(), StratumLabel::Morse(expected));
    }

    /// The pairing descends to the quotient: adding relations changes nothing.
    #[test]
    fn pairing_ignores_relations(seed in any::<u64>(), which in 0usize..3) {
        let mut r = rng(seed);
        let (model, group) = match which {
            0 => (WeightedModel::binary_forms(3), Group::Torus),
            1 => (WeightedModel::binary_forms(3), Group::Sl2),
            _ => (WeightedModel::p1_power(3), Group::Sl2),
        };
        let pres = Presentation::new(&model, group).unwrap();
        let n = pres.nvars();
        let mono = |r: &mut rand_chacha::ChaCha8Rng, deg: u32| {
            let mut m = moment_strata::algebra::Poly::one(n);
            for _ in 0..deg {
                m = &m * &moment_strata::algebra::Poly::var(n, r.gen_range(0..n));
            }
            m
        };
        let top = pres.quotient_real_dim().unwrap() as u32;
        let de = r.gen_range(0..=top / 2);
        let eta = mono(&mut r, de);
        let zeta = mono(&mut r, top / 2 - de);
        let rel = &pres.base_relations()[r.gen_range(0..pres.base_relations().len())];
        let k = r.gen_range(0..2);
        let shifted = &eta + &(rel * &mono(&mut r, k));
        prop_assert_eq!(pairing(&pres, &eta, &zeta).unwrap(), pairing(&pres, &shifted, &zeta).unwrap());
    }

    /// Wolfe's active-set answer matches the face enumeration and the
    /// certificate holds exactly.
    #[test]
    fn projection_matches_oracle(seed in any::<u64>(), r in 1usize..4, k in 1usize..8) {
        let mut g = rng(seed);
        let pts: Vec<LieVector> = (0..k).map(|_| random_vector(&mut g, r)).collect();
        let form = if r == 2 && g.gen_bool(0.5) { BilinearForm::sl3_trace_form() } else { BilinearForm::identity(r) };
        let cert = closest_point_to_origin(&pts, &form).unwrap();
        prop_assert!(cert.verify(&pts, &form));
        prop_assert_eq!(&cert.beta, &closest_point_by_faces(&pts, &form).unwrap().beta);
    }
}
