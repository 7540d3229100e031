//! Named example metrics.

use crate::algebra::{parse_poly, CoordinateSystem, PolyMatrix};

use super::CanonicalMetric;

fn build(
    k: usize,
    m: usize,
    a: &[&[&str]],
    big_a: &[&[&str]],
    b: &[&[&str]],
    g: &[&[&str]],
) -> CanonicalMetric {
    let cs = CoordinateSystem::new(k, m).expect("valid dimensions");
    let pm = |rows: &[&[&str]], r: usize, c: usize| {
        let mut out = PolyMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                out.set(i, j, parse_poly(s, &cs).expect("catalog entry parses"));
            }
        }
        out
    };
    CanonicalMetric::new(
        cs.clone(),
        pm(a, k, k),
        pm(big_a, k, k),
        pm(b, k, m),
        pm(g, m, m),
    )
    .expect("catalog metric is well formed")
}

const ID3: &[&[&str]] = &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]];

/// `2du1(dv1+v2du1) + 2du2(dv2+v3du2) + 2du3(dv3+v1^8du3)`: covariantly
/// constant null 3-form.
pub fn type_iv_v8() -> CanonicalMetric {
    build(
        3,
        0,
        ID3,
        &[&["v2", "0", "0"], &["0", "v3", "0"], &["0", "0", "v1^8"]],
        &[],
        &[],
    )
}

/// Same with `v1^7`: VSI through two boost limits.
pub fn vsi_v7() -> CanonicalMetric {
    build(
        3,
        0,
        ID3,
        &[&["v2", "0", "0"], &["0", "v3", "0"], &["0", "0", "v1^7"]],
        &[],
        &[],
    )
}

/// Limit of [`vsi_v7`] under `(1,2,4)`.
pub fn vsi_v7_g1() -> CanonicalMetric {
    build(
        3,
        0,
        ID3,
        &[&["v2", "0", "0"], &["0", "v3", "0"], &["0", "0", "0"]],
        &[],
        &[],
    )
}

/// `2du1(dv1+v2du2) + 2du2(dv2+v1^4du2)`.
pub fn csi_4d() -> CanonicalMetric {
    build(
        2,
        0,
        &[&["1", "0"], &["0", "1"]],
        &[&["0", "1/2*v2"], &["1/2*v2", "v1^4"]],
        &[],
        &[],
    )
}

/// Kundt metric with `A11 = v1^2`, `B11 = v1` and one transverse coordinate.
pub fn kundt_k1() -> CanonicalMetric {
    build(1, 1, &[&["1"]], &[&["v1^2"]], &[&["v1"]], &[&["1"]])
}

/// `2 du^i dv^i` plus `m` Euclidean transverse directions.
pub fn flat(k: usize, m: usize) -> CanonicalMetric {
    CanonicalMetric::flat(k, &vec![1; m]).expect("valid dimensions")
}

pub fn all() -> Vec<(&'static str, CanonicalMetric)> {
    vec![
        ("type-iv-v8", type_iv_v8()),
        ("vsi-v7", vsi_v7()),
        ("vsi-v7-g1", vsi_v7_g1()),
        ("csi-4d", csi_4d()),
        ("kundt-k1", kundt_k1()),
        ("flat-3-0", flat(3, 0)),
        ("flat-2-2", flat(2, 2)),
    ]
}

pub fn by_name(name: &str) -> Option<CanonicalMetric> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, m)| m)
}
