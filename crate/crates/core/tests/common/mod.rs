#![allow(dead_code)]

use idegen_core::algebra::{parse_poly, CoordinateSystem, PolyMatrix, Polynomial};
use idegen_core::lattice::{enumerate_boost_vectors, BoostVector};
use idegen_core::metric::{
    assemble, instantiate_template, CanonicalMetric, FullMetric, TemplateSource,
};

pub fn poly(cs: &CoordinateSystem, s: &str) -> Polynomial {
    parse_poly(s, cs).unwrap()
}

pub fn matrix(cs: &CoordinateSystem, rows: &[&[&str]], r: usize, c: usize) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            m.set(i, j, poly(cs, s));
        }
    }
    m
}

pub fn canonical(
    k: usize,
    m: usize,
    a: &[&[&str]],
    big_a: &[&[&str]],
    b: &[&[&str]],
    g: &[&[&str]],
) -> CanonicalMetric {
    let cs = CoordinateSystem::new(k, m).unwrap();
    let a = if a.is_empty() {
        PolyMatrix::identity(k)
    } else {
        matrix(&cs, a, k, k)
    };
    let g = if g.is_empty() {
        PolyMatrix::identity(m)
    } else {
        matrix(&cs, g, m, m)
    };
    CanonicalMetric::new(
        cs.clone(),
        a,
        matrix(&cs, big_a, k, k),
        matrix(&cs, b, k, m),
        g,
    )
    .unwrap()
}

pub fn full(cm: &CanonicalMetric) -> FullMetric {
    assemble(cm).unwrap()
}

/// Canonical boost vectors with every entry positive, for `k` in `ks`.
pub fn positive_boosts(ks: &[usize]) -> Vec<BoostVector> {
    ks.iter()
        .flat_map(|&k| enumerate_boost_vectors(k).unwrap())
        .filter(BoostVector::is_positive)
        .collect()
}

pub fn random_template(b: &BoostVector, m: usize, seed: u64) -> CanonicalMetric {
    instantiate_template(b, m, &TemplateSource::Random { seed }).unwrap()
}
