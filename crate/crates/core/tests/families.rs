use hypertwist::algebra::{rat, Assignment, SampleOptions, Var};
use hypertwist::doc::FamilyDocument;
use hypertwist::families::sample::random_inputs;
use hypertwist::families::{construct, FamilyKind};
use hypertwist::par::Exec;
use hypertwist::verify::{certify_specialization, verify_family, verify_nonconstant, Status};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn kind() -> impl Strategy<Value = FamilyKind> {
    prop::sample::select(FamilyKind::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn structural_invariants(k in kind(), seed in any::<u64>()) {
        let fam = construct(&random_inputs(k, &mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
        prop_assert_eq!(fam.big_m % 2, 1);
        if !k.is_rank3() {
            for (mi, m) in fam.m_i.iter().zip(&fam.inputs.m) {
                prop_assert_eq!(mi * *m as u64, fam.big_m);
            }
        }
        prop_assert_eq!(fam.points.len(), 4);
        prop_assert!(verify_nonconstant(&fam).iter().all(|c| c.status == Status::Pass));
        if k.is_rank3() {
            for i in 1..=3 {
                prop_assert_eq!(fam.t.signflip(Var::v(i)), fam.t.clone());
                prop_assert_eq!(fam.d.signflip(Var::v(i)), fam.d.clone());
            }
        }
        let doc = FamilyDocument::from_family(&fam, None);
        let back = FamilyDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(back.to_family().unwrap(), fam);
    }

    #[test]
    fn passing_reports_hold_at_fresh_points(k in kind(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = construct(&random_inputs(k, &mut rng)).unwrap();
        let report = verify_family(&fam, &SampleOptions::new(3, seed));
        prop_assert!(report.overall);
        let mut tried = 0;
        while tried < 3 {
            let a: Assignment = fam
                .params()
                .into_iter()
                .map(|v| (v, rat(rng.random_range(-6i64..=6))))
                .collect();
            let Ok(d) = fam.d.eval(&a) else { continue };
            for p in &fam.points {
                if let (Ok(x), Ok(y)) = (p.x.eval(&a), p.y.eval(&a)) {
                    prop_assert!(fam.curves[p.curve].holds_at(&d, &x, &y));
                }
            }
            tried += 1;
        }
    }
}

#[test]
fn reports_are_deterministic_across_execution_modes() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in FamilyKind::ALL {
        let fam = construct(&random_inputs(k, &mut rng)).unwrap();
        let par = SampleOptions {
            exec: Exec::Parallel,
            ..SampleOptions::new(4, 17)
        };
        let seq = SampleOptions {
            exec: Exec::Sequential,
            ..par
        };
        assert_eq!(verify_family(&fam, &par), verify_family(&fam, &seq));
        assert_eq!(verify_family(&fam, &par), verify_family(&fam, &par));
    }
}

#[test]
fn mutating_any_component_fails_a_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let opts = SampleOptions::new(5, 0);
    for k in FamilyKind::ALL {
        let fam = construct(&random_inputs(k, &mut rng)).unwrap();
        let two = hypertwist::FactoredRF::constant(rat(2));
        let mut variants = vec![];
        let mut d = fam.clone();
        d.d = d.d.mul(&two);
        variants.push(("D", d));
        for j in 0..fam.points.len() {
            let mut x = fam.clone();
            x.points[j].x = if fam.points[j].x.is_zero() {
                hypertwist::FactoredRF::one()
            } else {
                x.points[j].x.mul(&two)
            };
            variants.push(("x", x));
            let mut y = fam.clone();
            y.points[j].y = y.points[j].y.mul(&two);
            variants.push(("y", y));
        }
        for (what, v) in variants {
            assert!(
                !verify_family(&v, &opts).overall,
                "{k}: mutating {what} went unnoticed"
            );
        }
    }
}

#[test]
fn certification_of_genus_one_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let opts = SampleOptions::new(3, 0);
    let mut certified = 0;
    for _ in 0..10 {
        let mut inputs = random_inputs(FamilyKind::C, &mut rng);
        inputs.m = vec![3, 3, 3, 3];
        let fam = construct(&inputs).unwrap();
        let a: Assignment = fam
            .params()
            .into_iter()
            .map(|v| (v, rat(rng.random_range(1i64..=4))))
            .collect();
        let Ok(r) = certify_specialization(&fam, &a, &opts) else {
            continue;
        };
        assert!(r.overall, "{r:?}");
        certified += r
            .checks
            .iter()
            .filter(|c| c.detail == "infinite order")
            .count();
    }
    assert!(certified > 0);
}
