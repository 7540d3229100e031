mod common;

use std::collections::BTreeMap;

use common::{canonical, full, poly, positive_boosts, random_template};
use idegen_core::algebra::{rat, Coord, CoordinateSystem, PolyMatrix, Polynomial};
use idegen_core::lattice::{BoostVector, ComponentKind};
use idegen_core::metric::{
    assemble, catalog, classify, instantiate_template, normalize_a, validate_class,
    CanonicalMetric, MetricError, MetricFile, TemplateSource,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn b(entries: &[u32]) -> BoostVector {
    BoostVector::new(entries.to_vec())
}

fn cofactor_det(m: &PolyMatrix) -> Polynomial {
    let n = m.rows();
    if n == 0 {
        return Polynomial::one();
    }
    let mut det = Polynomial::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let minor = PolyMatrix::from_fn(n - 1, n - 1, |r, c| {
            m.get(r + 1, if c < j { c } else { c + 1 }).clone()
        });
        let term = m.get(0, j) * &cofactor_det(&minor);
        if j % 2 == 0 {
            det += &term;
        } else {
            det -= &term;
        }
    }
    det
}

#[test]
fn two_dimensional_flat() {
    let g = full(&canonical(1, 0, &[], &[&["0"]], &[], &[]));
    let cs = g.coords();
    assert_eq!(
        g.matrix(),
        &PolyMatrix::from_rows(vec![
            vec![poly(cs, "0"), poly(cs, "1")],
            vec![poly(cs, "1"), poly(cs, "0")],
        ])
        .unwrap()
    );
}

#[test]
fn type_iv_example_assembles() {
    let g = assemble(&catalog::type_iv_v8()).unwrap();
    let cs = g.coords();
    assert_eq!(g.dim(), 6);
    assert_eq!(cofactor_det(g.matrix()), poly(cs, "-1"));
    assert_eq!(g.matrix().determinant().unwrap(), poly(cs, "-1"));
    let u = |i| cs.slot(Coord::U(i));
    let v = |i| cs.slot(Coord::V(i));
    assert_eq!(g.get(u(2), u(2)), &poly(cs, "2*v1^8"));
    assert_eq!(g.get(u(0), u(0)), &poly(cs, "2*v2"));
    for i in 0..3 {
        for j in 0..3 {
            assert!(g.get(v(i), v(j)).is_zero());
            assert_eq!(g.get(u(i), v(j)), &poly(cs, if i == j { "1" } else { "0" }));
        }
    }
}

#[test]
fn csi_example_matches_line_element() {
    let g = assemble(&catalog::csi_4d()).unwrap();
    let cs = g.coords();
    // 2du1 dv1 + 2v2 du1 du2 + 2du2 dv2 + 2v1^4 du2^2
    let mut expected = PolyMatrix::zeros(4, 4);
    let mut put = |a: Coord, c: Coord, s: &str| {
        let (i, j) = (cs.slot(a), cs.slot(c));
        expected.set(i, j, poly(cs, s));
        expected.set(j, i, poly(cs, s));
    };
    put(Coord::U(0), Coord::V(0), "1");
    put(Coord::U(1), Coord::V(1), "1");
    put(Coord::U(0), Coord::U(1), "v2");
    put(Coord::U(1), Coord::U(1), "2*v1^4");
    assert_eq!(g.matrix(), &expected);
}

#[test]
fn block_pattern_has_zero_corners() {
    for seed in 0..20 {
        let cm = random_template(&b(&[1, 2]), 2, seed);
        let g = assemble(&cm).unwrap();
        let cs = g.coords();
        for i in 0..2 {
            for j in 0..2 {
                assert!(g.get(cs.slot(Coord::V(i)), cs.slot(Coord::V(j))).is_zero());
                assert!(g.get(cs.slot(Coord::X(i)), cs.slot(Coord::V(j))).is_zero());
                assert_eq!(
                    g.get(cs.slot(Coord::U(i)), cs.slot(Coord::V(j))),
                    cm.a.get(i, j)
                );
            }
        }
    }
}

#[test]
fn dimension_mismatch_is_rejected() {
    let cs = CoordinateSystem::new(2, 0).unwrap();
    let err = CanonicalMetric::new(
        cs,
        PolyMatrix::identity(3),
        PolyMatrix::zeros(2, 2),
        PolyMatrix::zeros(2, 0),
        PolyMatrix::zeros(0, 0),
    );
    assert!(matches!(err, Err(MetricError::DimensionMismatch(_))));
}

#[test]
fn type_iv_example_is_in_class() {
    let report = validate_class(&catalog::type_iv_v8(), &b(&[1, 2, 4])).unwrap();
    assert!(report.pass);
    assert!(report.violations.is_empty());
}

#[test]
fn ninth_power_exceeds_target() {
    let mut cm = catalog::type_iv_v8();
    cm.big_a.set(2, 2, poly(&cm.coords, "v1^9"));
    let report = validate_class(&cm, &b(&[1, 2, 4])).unwrap();
    assert!(!report.pass);
    assert_eq!(report.violations.len(), 1);
    let v = &report.violations[0];
    assert_eq!(
        (v.component.as_str(), v.monomial.as_str(), v.excess),
        ("A33", "v1^9", 1)
    );
}

#[test]
fn flat_template_passes_every_class() {
    for bv in positive_boosts(&[1, 2, 3, 4]) {
        let cm = instantiate_template(&bv, 1, &TemplateSource::Explicit(BTreeMap::new())).unwrap();
        assert_eq!(cm, catalog::flat(bv.k(), 1));
        assert!(validate_class(&cm, &bv).unwrap().pass);
    }
}

#[test]
fn random_templates_validate() {
    for bv in positive_boosts(&[1, 2, 3]) {
        for seed in 0..100 {
            let cm = random_template(&bv, 1, seed);
            let report = validate_class(&cm, &bv).unwrap();
            assert!(report.pass, "{bv:?} seed {seed}: {:?}", report.violations);
        }
    }
    let cm = random_template(&b(&[1, 2, 4]), 0, 42);
    assert!(validate_class(&cm, &b(&[1, 2, 4])).unwrap().pass);
}

#[test]
fn templates_are_reproducible() {
    let bv = b(&[1, 2, 4]);
    assert_eq!(random_template(&bv, 1, 7), random_template(&bv, 1, 7));
    assert_ne!(random_template(&bv, 1, 7), random_template(&bv, 1, 8));
}

#[test]
fn explicit_coefficients_give_csi_example() {
    let cs = CoordinateSystem::new(2, 0).unwrap();
    let entries = BTreeMap::from([
        (ComponentKind::UU(0, 1), poly(&cs, "1/2*v2")),
        (ComponentKind::UU(1, 1), poly(&cs, "v1^4")),
    ]);
    let cm = instantiate_template(&b(&[1, 2]), 0, &TemplateSource::Explicit(entries)).unwrap();
    assert_eq!(cm, catalog::csi_4d());
}

#[test]
fn coefficient_outside_shape() {
    let cs = CoordinateSystem::new(2, 0).unwrap();
    let entries = BTreeMap::from([(ComponentKind::UU(1, 1), poly(&cs, "v1^5"))]);
    let err = instantiate_template(&b(&[1, 2]), 0, &TemplateSource::Explicit(entries)).unwrap_err();
    assert_eq!(
        err,
        MetricError::CoefficientOutsideShape {
            component: "A22".into(),
            monomial: "v1^5".into(),
        }
    );
}

#[test]
fn normalize_lower_triangular_example() {
    let cm = canonical(
        2,
        0,
        &[&["1", "0"], &["v1", "1"]],
        &[&["v2", "0"], &["0", "0"]],
        &[],
        &[],
    );
    let n = normalize_a(&cm).unwrap();
    let cs = &cm.coords;
    assert_eq!(n.metric.a, PolyMatrix::identity(2));
    assert_eq!(n.forward[1], poly(cs, "v2 + 1/2*v1^2"));
    assert_eq!(
        assemble(&cm).unwrap().pullback(&n.inverse).unwrap(),
        assemble(&n.metric).unwrap()
    );
}

#[test]
fn normalize_rejects_open_row() {
    let cm = canonical(
        2,
        0,
        &[&["1", "0"], &["v2", "1"]],
        &[&["0", "0"], &["0", "0"]],
        &[],
        &[],
    );
    assert_eq!(
        normalize_a(&cm),
        Err(MetricError::NotClosed { row: 2, n: 1, m: 2 })
    );
}

fn random_poly(
    rng: &mut ChaCha8Rng,
    cs: &CoordinateSystem,
    vars: &[usize],
    terms: usize,
) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..rng.gen_range(0..=terms) {
        let mut t = Polynomial::constant(rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
        for _ in 0..rng.gen_range(0..=2) {
            if vars.is_empty() {
                break;
            }
            t = &t * &Polynomial::var(vars[rng.gen_range(0..vars.len())]);
        }
        if rng.gen_bool(0.3) {
            let ux: Vec<usize> = cs.u_vars().chain(cs.x_vars()).collect();
            t = &t * &Polynomial::var(ux[rng.gen_range(0..ux.len())]);
        }
        p += &t;
    }
    p
}

/// Metric whose `a` rows are `dv f_i` for `f_i = c_i v_sigma(i) + (earlier v's)`.
fn closed_triangular(seed: u64) -> CanonicalMetric {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=3);
    let m = rng.gen_range(0..=2);
    let cs = CoordinateSystem::new(k, m).unwrap();
    let mut sigma: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        sigma.swap(i, rng.gen_range(0..=i));
    }
    let mut a = PolyMatrix::zeros(k, k);
    for i in 0..k {
        let earlier: Vec<usize> = sigma[..i].iter().map(|&q| cs.var(Coord::V(q))).collect();
        let lead = rat(
            rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 },
            rng.gen_range(1..=2),
        );
        let f = &Polynomial::var(cs.var(Coord::V(sigma[i]))).scale(&lead)
            + &random_poly(&mut rng, &cs, &earlier, 3);
        for j in 0..k {
            a.set(i, j, f.diff(cs.var(Coord::V(j))));
        }
    }
    let vs: Vec<usize> = cs.v_vars().collect();
    let mut big_a = PolyMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let p = random_poly(&mut rng, &cs, &vs, 2);
            big_a.set(i, j, p.clone());
            big_a.set(j, i, p);
        }
    }
    let bm = PolyMatrix::from_fn(k, m, |_, _| random_poly(&mut rng, &cs, &vs, 2));
    let mut g = PolyMatrix::identity(m);
    if m == 2 {
        let p = random_poly(&mut rng, &cs, &[], 1).truncate(0);
        g.set(0, 1, p.clone());
        g.set(1, 0, p);
    }
    CanonicalMetric::new(cs, a, big_a, bm, g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normalize_preserves_line_element(seed in any::<u64>()) {
        let cm = closed_triangular(seed);
        let n = normalize_a(&cm).unwrap();
        prop_assert_eq!(&n.metric.a, &PolyMatrix::identity(cm.k()));
        let before = assemble(&cm).unwrap().pullback(&n.inverse).unwrap();
        prop_assert_eq!(before, assemble(&n.metric).unwrap());
    }
}

#[test]
fn classify_type_iv_example() {
    let r = classify(&catalog::type_iv_v8());
    assert_eq!(r.highest(), Some(4));
    assert!(!r.holds(5));
    assert_eq!(r.nabla_f_constant, Some(true));
    assert_eq!(r.killing_yano, Some(true));
    assert!(r.cross_checks_agree);
}

#[test]
fn classify_kundt_example() {
    let r = classify(&catalog::kundt_k1());
    assert!(r.holds(1) && r.holds(2));
    assert!(!r.holds(3));
    assert_eq!(r.types[2].witness, "d/dv1 B11 = 1");
    assert_eq!(r.types[3].witness, "requires type III");
    assert_eq!(r.walker, None);
}

#[test]
fn classify_flat_and_walker() {
    let r = classify(&catalog::flat(2, 1));
    assert_eq!(r.highest(), Some(5));
    assert_eq!(r.v_killing, Some(true));
    let r = classify(&catalog::vsi_v7());
    assert_eq!(r.highest(), Some(4));
    assert_eq!(r.nabla_f_constant, Some(true));
    let walker = canonical(2, 0, &[], &[&["v1^2", "v2"], &["v2", "v1*v2"]], &[], &[]);
    let r = classify(&walker);
    assert_eq!(r.highest(), Some(3));
    assert_eq!(r.types[3].witness, "sum_i d/dv{i} A{i}1 = 2*v1 + 1");
    assert!(r.walker.is_some());
    assert_eq!(r.nabla_f_constant, Some(false));
    assert_eq!(r.v_killing, Some(false));
    assert!(r.cross_checks_agree);
}

#[test]
fn classify_report_serializes() {
    let r = classify(&catalog::type_iv_v8());
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["types"][3]["holds"], true);
    assert_eq!(json["types"][4]["holds"], false);
    assert_eq!(json["types"][0]["witness"], "holds");
    assert_eq!(json["nabla_f_constant"], true);
}

#[test]
fn classification_is_nested_on_templates() {
    let boosts: Vec<BoostVector> = positive_boosts(&[1, 2, 3, 4]);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..500u64 {
        let bv = &boosts[case as usize % boosts.len()];
        let m = if bv.k() == 4 { 0 } else { rng.gen_range(0..=2) };
        let mut cm = random_template(bv, m, case);
        if m > 0 && rng.gen_bool(0.2) {
            let v = Polynomial::var(cm.coords.var(Coord::V(0)));
            cm.g_trans.set(0, 0, &Polynomial::one() + &v);
        }
        let r = classify(&cm);
        for ty in 2..=5 {
            assert!(
                !r.holds(ty) || r.holds(ty - 1),
                "case {case}: type {ty} without {}",
                ty - 1
            );
        }
        assert!(r.cross_checks_agree, "case {case}: {r:?}");
    }
}

#[test]
fn point_without_v_is_on_the_null_surface() {
    let text = r#"{"k":2,"m":0,"a":[["1","0"],["0","1"]],"A":[["0","0"],["0","0"]],
        "point":{"u":["1","-2/3"]}}"#;
    let file = MetricFile::parse(text).unwrap();
    let cm = file.to_canonical().unwrap();
    let point = file.point(&cm.coords).unwrap().unwrap();
    assert!(point.v_is_zero(&cm.coords));
    assert_eq!(point.get(cm.coords.var(Coord::U(1))), &rat(-2, 3));
}

#[test]
fn metric_file_round_trip() {
    let text = r#"{"k":1,"m":2,"transverse_signature":[1,1],"a":[["1"]],"A":[["v1^2"]],"B":[["v1","0"]],
        "point":{"u":["1/2"],"v":["0"],"x":["0","3"]}}"#;
    let file = MetricFile::parse(text).unwrap();
    let cm = file.to_canonical().unwrap();
    assert_eq!(cm.g_trans.get(1, 1), &poly(&cm.coords, "-1"));
    let point = file.point(&cm.coords).unwrap().unwrap();
    assert_eq!(point.get(cm.coords.var(Coord::U(0))), &rat(1, 2));
    let back = MetricFile::from_canonical(&cm);
    assert_eq!(
        MetricFile::parse(&back.to_json())
            .unwrap()
            .to_canonical()
            .unwrap(),
        cm
    );
}

#[test]
fn metric_file_rejects_unknown_keys_and_bad_entries() {
    assert!(matches!(
        MetricFile::parse(r#"{"k":1,"m":0,"a":[["1"]],"A":[["0"]],"extra":1}"#),
        Err(MetricError::Json(_))
    ));
    let file = MetricFile::parse(r#"{"k":1,"m":0,"a":[["1"]],"A":[["w"]]}"#).unwrap();
    match file.to_canonical() {
        Err(MetricError::Entry { entry, .. }) => assert_eq!(entry, "A[1][1]"),
        other => panic!("unexpected {other:?}"),
    }
}
