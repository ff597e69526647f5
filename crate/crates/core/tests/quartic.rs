use hypertwist::algebra::rat;
use hypertwist::quartic::{
    certify_infinite_order, group_add, reduce_to_weierstrass, CurveError, ProjPoint, QICurve,
    QiGroup, MAX_TORSION_ORDER,
};

fn pt(c: [i64; 4]) -> ProjPoint {
    ProjPoint::from_ints(c).unwrap()
}

fn c(a: i64, b: i64, cc: i64) -> QICurve {
    QICurve::normal_form(&[rat(a), rat(b), rat(cc)])
}

#[test]
fn c123_point_has_infinite_order() {
    let curve = c(1, 2, 3);
    let origin = pt([1, 1, 1, 0]);
    let p = pt([1, 2, 3, 1]);
    let (model, maps) = reduce_to_weierstrass(&curve, &origin).unwrap();
    let q = maps.forward(&model, &p);
    assert!(model.contains(&q));
    assert_eq!(maps.backward(&model, &q).unwrap(), p);
    assert!(certify_infinite_order(&curve, &origin, &p)
        .unwrap()
        .is_infinite());
    let g = QiGroup::from_curve(&curve).unwrap();
    for n in 1..=MAX_TORSION_ORDER as i64 {
        let np = g.mul(&p, n).unwrap();
        assert!(curve.contains(&np));
        assert_ne!(np, origin);
    }
}

#[test]
fn addition_stays_on_the_curve() {
    let curve = c(1, 2, 3);
    let origin = pt([1, 1, 1, 0]);
    let p = pt([1, 2, 3, 1]);
    let two_p = group_add(&curve, &origin, &p, &p).unwrap();
    let three_p = group_add(&curve, &origin, &two_p, &p).unwrap();
    assert!(curve.contains(&two_p) && curve.contains(&three_p));
    assert_eq!(group_add(&curve, &origin, &p, &origin).unwrap(), p);
    assert_eq!(group_add(&curve, &origin, &p, &p.flip_w()).unwrap(), origin);
}

#[test]
fn singular_and_off_curve_inputs() {
    let origin = pt([1, 1, 1, 0]);
    assert_eq!(
        group_add(&c(1, 1, 1), &origin, &pt([1, 1, 1, 1]), &pt([1, 1, 1, 1])),
        Err(CurveError::Singular)
    );
    assert!(matches!(
        group_add(&c(1, 2, 3), &origin, &pt([1, 1, 1, 1]), &pt([1, 2, 3, 1])),
        Err(CurveError::NotOnCurve(_))
    ));
}
