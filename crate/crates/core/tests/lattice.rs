use std::collections::BTreeSet;

use idegen_core::algebra::Coord;
use idegen_core::lattice::{
    appendix_b_report, component_target, enumerate_boost_vectors, shape_tables, solve_generators,
    term_weight, AEntry, AppendixStatus, BoostVector, ComponentKind, DiffPair, GradedTerm,
};
use proptest::prelude::*;

fn b(s: &str) -> BoostVector {
    s.parse().unwrap()
}

/// `[v1^2, v2]` style text to exponent vectors.
fn bracket(k: usize, text: &str) -> BTreeSet<Vec<u32>> {
    text.split(',')
        .map(|m| {
            let mut d = vec![0; k];
            for f in m.trim().split('*') {
                let (v, e) = f.split_once('^').unwrap_or((f, "1"));
                let i: usize = v.trim_start_matches('v').parse().unwrap();
                d[i - 1] += e.parse::<u32>().unwrap();
            }
            d
        })
        .collect()
}

fn gens(b: &BoostVector, c: i64) -> BTreeSet<Vec<u32>> {
    solve_generators(b, c)
        .unwrap()
        .generators
        .into_iter()
        .collect()
}

/// Independent enumeration of `{d >= 0 : d . b <= c}` by odometer.
fn brute_closure(b: &[u32], c: i64) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    if c < 0 {
        return out;
    }
    let bound = c as u32;
    let mut d = vec![0u32; b.len()];
    loop {
        let dot: i64 = d.iter().zip(b).map(|(&x, &y)| i64::from(x * y)).sum();
        if dot <= c {
            out.insert(d.clone());
        }
        let mut i = 0;
        loop {
            if i == d.len() {
                return out;
            }
            d[i] += 1;
            if d[i] <= bound {
                break;
            }
            d[i] = 0;
            i += 1;
        }
    }
}

fn down_closure(g: &BTreeSet<Vec<u32>>) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for d in g {
        let mut cur = vec![0u32; d.len()];
        loop {
            out.insert(cur.clone());
            let mut i = 0;
            loop {
                if i == d.len() {
                    break;
                }
                cur[i] += 1;
                if cur[i] <= d[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
            if i == d.len() {
                break;
            }
        }
    }
    out
}

#[test]
fn listed_boost_vectors() {
    let show = |k| -> Vec<String> {
        enumerate_boost_vectors(k)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect()
    };
    assert_eq!(show(1), ["(0)", "(1)"]);
    assert_eq!(show(2), ["(0,0)", "(0,1)", "(1,1)", "(1,2)"]);
    assert_eq!(
        show(3),
        ["(0,0,0)", "(0,0,1)", "(0,1,1)", "(0,1,2)", "(1,1,1)", "(1,1,2)", "(1,2,2)", "(1,2,4)"]
    );
    for k in 1..=10 {
        let all = enumerate_boost_vectors(k).unwrap();
        assert_eq!(all.len(), 1 << k);
        assert!(all.iter().all(BoostVector::is_canonical));
        let distinct: BTreeSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }
}

#[test]
fn b124_a_shapes() {
    let b124 = b("1,2,4");
    let expected = [
        ((0, 0), "v1^2, v2"),
        ((0, 1), "v1^3, v1*v2"),
        ((0, 2), "v1^5, v1^3*v2, v1*v2^2, v3*v1"),
        ((1, 1), "v1^4, v1^2*v2, v2^2, v3"),
        ((1, 2), "v1^6, v1^4*v2, v1^2*v2^2, v2^3, v3*v1^2, v3*v2"),
        (
            (2, 2),
            "v1^8, v1^6*v2, v1^4*v2^2, v1^2*v2^3, v2^4, v3*v1^4, v3*v1^2*v2, v3*v2^2, v3^2",
        ),
    ];
    let tables = shape_tables(&b124).unwrap();
    for ((i, j), text) in expected {
        let want = bracket(3, text);
        let got: BTreeSet<_> = tables.a_sym[i][j].generators.iter().cloned().collect();
        assert_eq!(got, want, "A{}{}", i + 1, j + 1);
        let sym: BTreeSet<_> = tables.a_sym[j][i].generators.iter().cloned().collect();
        assert_eq!(sym, want);
    }
    assert_eq!(tables.a_sym[2][2].generators.len(), 9);
    assert_eq!(tables.a_sym[2][2].target, 8);
    assert_eq!(
        tables.a_sym[2][2].bracket(),
        "[v1^8,v1^6*v2,v1^4*v2^2,v1^2*v2^3,v2^4,v1^4*v3,v1^2*v2*v3,v2^2*v3,v3^2]"
    );
}

#[test]
fn b124_b_row_and_a_matrices() {
    let t = shape_tables(&b("1,2,4")).unwrap();
    let rows = ["v1", "v1^2, v2", "v1^4, v1^2*v2, v2^2, v3"];
    for (i, text) in rows.iter().enumerate() {
        let got: BTreeSet<_> = t.b[i].generators.iter().cloned().collect();
        assert_eq!(got, bracket(3, text));
    }
    let raw = |i: usize, j: usize| -> BTreeSet<Vec<u32>> {
        t.a_raw[i][j].generators.iter().cloned().collect()
    };
    assert_eq!(raw(1, 0), bracket(3, "v1"));
    assert_eq!(raw(2, 0), bracket(3, "v1^3, v1*v2"));
    assert_eq!(raw(2, 1), bracket(3, "v1^2, v2"));
    assert!(raw(0, 1).is_empty() && raw(0, 2).is_empty() && raw(1, 2).is_empty());
    assert_eq!(raw(0, 0), [vec![0, 0, 0]].into_iter().collect());

    let one = AEntry::One;
    let zero = AEntry::Zero;
    let expected = vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), one.clone(), zero.clone()],
        vec![
            AEntry::Bracket(vec![vec![1, 1, 0]]),
            AEntry::Bracket(vec![vec![2, 0, 0]]),
            one,
        ],
    ];
    assert_eq!(t.a, expected);
    assert!(t.absorbable.is_empty());
}

#[test]
fn all_ones_observation() {
    for k in 1..=4 {
        let t = shape_tables(&BoostVector::new(vec![1; k])).unwrap();
        for i in 0..k {
            for j in 0..k {
                for d in t.a_sym[i][j].downward_closure() {
                    assert!(d.iter().sum::<u32>() <= 2);
                }
                let want = if i == j { AEntry::One } else { AEntry::Zero };
                assert_eq!(t.a[i][j], want);
            }
            for d in t.b[i].downward_closure() {
                assert!(d.iter().sum::<u32>() <= 1);
            }
        }
        assert_eq!(t.absorbable.len(), k * (k - 1));
    }
}

#[test]
fn kundt_shapes() {
    assert_eq!(gens(&b("1"), 2), bracket(1, "v1^2"));
    assert_eq!(gens(&b("1,2,4"), 2), bracket(3, "v1^2, v2"));
    let t = shape_tables(&b("1,2")).unwrap();
    assert_eq!(t.a[1][0], AEntry::Zero);
}

#[test]
fn generator_order_is_deterministic() {
    let s = solve_generators(&b("1,2,4"), 5).unwrap();
    assert_eq!(
        s.generators,
        vec![vec![5, 0, 0], vec![3, 1, 0], vec![1, 2, 0], vec![1, 0, 1]]
    );
}

#[test]
fn closure_matches_brute_force() {
    for k in 1..=4 {
        for bv in enumerate_boost_vectors(k).unwrap() {
            if !bv.is_positive() {
                continue;
            }
            for c in -1..=16 {
                let g = gens(&bv, c);
                assert!(g.iter().all(|d| bv.dot(d) == c));
                assert_eq!(
                    down_closure(&g),
                    brute_closure(bv.entries(), c),
                    "b = {bv}, c = {c}"
                );
            }
        }
    }
}

#[test]
fn generator_and_member_weights() {
    for k in 1..=3 {
        for bv in enumerate_boost_vectors(k).unwrap() {
            if !bv.is_positive() {
                continue;
            }
            for i in 0..k {
                for j in 0..k {
                    let cases = [
                        (ComponentKind::UU(i, j), DiffPair(Coord::U(i), Coord::U(j))),
                        (ComponentKind::UV(i, j), DiffPair(Coord::U(i), Coord::V(j))),
                        (ComponentKind::UX(i, 0), DiffPair(Coord::U(i), Coord::X(0))),
                    ];
                    for (comp, diff) in cases {
                        let c = component_target(&bv, comp).unwrap();
                        let shape = solve_generators(&bv, c).unwrap();
                        for d in shape.downward_closure() {
                            let w = term_weight(
                                &GradedTerm {
                                    v_exponents: d.clone(),
                                    u_exponents: vec![],
                                    diff,
                                },
                                &bv,
                            )
                            .unwrap();
                            if shape.generators.contains(&d) {
                                assert_eq!(w, 0);
                            } else {
                                assert!(w < 0);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn du_dv_has_weight_zero() {
    for bv in ["1,2,4", "1,1,0", "3,5,7"] {
        let bv = b(bv);
        for i in 0..3 {
            let t = GradedTerm {
                v_exponents: vec![0; 3],
                u_exponents: vec![0; 3],
                diff: DiffPair(Coord::U(i), Coord::V(i)),
            };
            assert_eq!(term_weight(&t, &bv).unwrap(), 0);
        }
    }
}

#[test]
fn appendix_fixture_is_byte_identical() {
    let fixtures = [
        include_str!("fixtures/appendix_b_k1.txt"),
        include_str!("fixtures/appendix_b_k2.txt"),
        include_str!("fixtures/appendix_b_k3.txt"),
        include_str!("fixtures/appendix_b_k4.txt"),
    ];
    for (k, want) in (1..=4).zip(fixtures) {
        assert_eq!(appendix_b_report(k).unwrap().to_text(), want);
    }
}

/// The equalities exactly as listed in the published table, transcribed
/// independently of the solver. The k = 3, (1,2,2) row lists
/// "A12, A23 = 3"; A23 there has target 4, so the label is read as A13.
const LISTED: &[(&str, &[(&str, i64)])] = &[
    ("1", &[("A11", 2)]),
    ("1,1", &[("A11 A12 A22", 2)]),
    ("1,2", &[("A11", 2), ("A12", 3), ("A22", 4)]),
    ("1,1,1", &[("A11 A12 A13 A22 A23 A33", 2)]),
    ("1,1,2", &[("A11", 2), ("A13 A23", 3), ("A33", 4)]),
    ("1,2,2", &[("A11", 2), ("A12 A13", 3), ("A33", 4)]),
    (
        "1,2,4",
        &[
            ("A11", 2),
            ("A12", 3),
            ("A22", 4),
            ("A13", 5),
            ("A23", 6),
            ("A33", 8),
        ],
    ),
    ("1,1,1,1", &[("A11 A12 A13 A14 A22 A23 A24 A33 A34 A44", 2)]),
    (
        "1,1,1,2",
        &[
            ("A11 A22 A33 A12 A13 A23", 2),
            ("A14 A24 A34", 3),
            ("A44", 4),
        ],
    ),
    (
        "1,1,2,2",
        &[
            ("A11 A22 A12", 2),
            ("A13 A14 A23 A24", 3),
            ("A33 A44 A34", 4),
        ],
    ),
    (
        "1,1,2,4",
        &[
            ("A11 A22 A12", 2),
            ("A13 A23", 3),
            ("A33", 4),
            ("A14 A24", 5),
            ("A34", 6),
            ("A44", 8),
        ],
    ),
    (
        "1,2,2,2",
        &[
            ("A11", 2),
            ("A12 A13 A14", 3),
            ("A22 A33 A44 A23 A24 A34", 4),
        ],
    ),
    (
        "1,2,2,4",
        &[
            ("A11", 2),
            ("A12 A13", 3),
            ("A22 A33 A23", 4),
            ("A14", 5),
            ("A24 A34", 6),
            ("A44", 8),
        ],
    ),
    (
        "1,2,4,4",
        &[
            ("A11", 2),
            ("A12", 3),
            ("A22", 4),
            ("A13 A14", 5),
            ("A23 A24", 6),
            ("A33 A44 A34", 8),
        ],
    ),
    (
        "1,2,4,8",
        &[
            ("A11", 2),
            ("A12", 3),
            ("A22", 4),
            ("A13", 5),
            ("A23", 6),
            ("A33", 8),
            ("A14", 9),
            ("A24", 10),
            ("A34", 12),
            ("A44", 16),
        ],
    ),
];

#[test]
fn listed_equalities_hold() {
    let mut checked = 0;
    for (boost, items) in LISTED {
        let bv = b(boost);
        let k = bv.k();
        let report = appendix_b_report(k).unwrap();
        let entry = report.entries.iter().find(|e| e.boost == bv).unwrap();
        let AppendixStatus::Equalities { equalities } = &entry.status else {
            panic!("{bv} should list equalities");
        };
        for (names, target) in *items {
            for name in names.split_whitespace() {
                let i = (name.as_bytes()[1] - b'0') as usize;
                let j = (name.as_bytes()[2] - b'0') as usize;
                let (i, j) = (i.min(j), i.max(j));
                let group = equalities
                    .iter()
                    .find(|g| g.components.contains(&(i, j)))
                    .unwrap();
                assert_eq!(group.target, *target, "{bv} {name}");
                checked += 1;
            }
        }
    }
    assert!(checked > 80);
}

#[test]
fn leading_zero_vectors_reduce() {
    let report = appendix_b_report(4).unwrap();
    assert_eq!(report.entries.len(), 16);
    for e in &report.entries[1..8] {
        match &e.status {
            AppendixStatus::Reduces { k, boost } => {
                assert_eq!(*k, 3);
                assert_eq!(boost.entries(), &e.boost.entries()[1..]);
            }
            other => panic!("{other:?}"),
        }
    }
    assert_eq!(report.entries[0].status, AppendixStatus::NonDegenerate);
}

#[test]
fn json_table_shape() {
    let s = solve_generators(&b("1,2,4"), 2).unwrap();
    let v = serde_json::to_value(&s).unwrap();
    assert_eq!(v["boost"], serde_json::json!([1, 2, 4]));
    assert_eq!(v["generators"], serde_json::json!([[2, 0, 0], [0, 1, 0]]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn generators_solve_exactly(entries in prop::collection::vec(1u32..6, 1..5), c in 0i64..20) {
        let bv = BoostVector::new(entries);
        let s = solve_generators(&bv, c).unwrap();
        for d in &s.generators {
            prop_assert_eq!(bv.dot(d), c);
        }
        let exact: BTreeSet<_> = brute_closure(bv.entries(), c)
            .into_iter()
            .filter(|d| bv.dot(d) == c)
            .collect();
        let got: BTreeSet<_> = s.generators.iter().cloned().collect();
        prop_assert_eq!(got, exact);
    }

    #[test]
    fn weight_is_linear(v in prop::collection::vec(0u32..9, 3), u in prop::collection::vec(0u32..9, 3)) {
        let bv = b("1,2,4");
        let diff = DiffPair(Coord::U(0), Coord::X(0));
        let w = term_weight(&GradedTerm { v_exponents: v.clone(), u_exponents: u.clone(), diff }, &bv).unwrap();
        prop_assert_eq!(w, bv.dot(&v) - bv.dot(&u) - 1);
    }
}
