use std::collections::BTreeMap;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Coord, CoordinateSystem, Monomial, PolyMatrix, Polynomial, Rational};
use crate::lattice::{component_target, solve_generators, BoostVector, ComponentKind};

use super::{CanonicalMetric, MetricError};

/// Where template coefficients come from.
#[derive(Clone, Debug)]
pub enum TemplateSource {
    /// Component values; anything not listed keeps the flat default
    /// (`a = 1`, everything else 0, `g_trans = 1`).
    Explicit(BTreeMap<ComponentKind, Polynomial>),
    /// Reproducible random coefficients.
    Random { seed: u64 },
}

fn admissible(b: &BoostVector, comp: ComponentKind) -> Result<Vec<Vec<u32>>, MetricError> {
    let c = component_target(b, comp)?;
    Ok(solve_generators(b, c)?.downward_closure())
}

fn v_monomial(coords: &CoordinateSystem, d: &[u32]) -> Monomial {
    Monomial::from_factors(
        d.iter()
            .enumerate()
            .map(|(i, &e)| (coords.var(Coord::V(i)), e)),
    )
}

/// A metric of the degenerate class of `b`, with `m` transverse coordinates.
pub fn instantiate_template(
    b: &BoostVector,
    m: usize,
    source: &TemplateSource,
) -> Result<CanonicalMetric, MetricError> {
    b.require_positive()?;
    let k = b.k();
    let coords = CoordinateSystem::new(k, m)?;
    let mut a = PolyMatrix::identity(k);
    let mut big_a = PolyMatrix::zeros(k, k);
    let mut bm = PolyMatrix::zeros(k, m);
    let mut g = PolyMatrix::identity(m);
    match source {
        TemplateSource::Explicit(entries) => {
            for (&comp, p) in entries {
                let (i, j) = comp.indices();
                let bound_j = if matches!(comp, ComponentKind::UX(..)) {
                    m
                } else {
                    k
                };
                if i >= k || j >= bound_j {
                    return Err(MetricError::DimensionMismatch(format!(
                        "{comp} is out of range"
                    )));
                }
                let target = component_target(b, comp)?;
                for (mono, _) in p.terms() {
                    let d: Vec<u32> = coords.v_vars().map(|v| mono.exponent(v)).collect();
                    if b.dot(&d) > target {
                        return Err(MetricError::CoefficientOutsideShape {
                            component: comp.to_string(),
                            monomial: mono_text(&coords, mono),
                        });
                    }
                }
                match comp {
                    ComponentKind::UV(..) => a.set(i, j, p.clone()),
                    ComponentKind::UU(..) => {
                        big_a.set(i, j, p.clone());
                        big_a.set(j, i, p.clone());
                    }
                    ComponentKind::UX(..) => bm.set(i, j, p.clone()),
                }
            }
        }
        TemplateSource::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for i in 0..k {
                for j in 0..i {
                    let shape = admissible(b, ComponentKind::UV(i, j))?;
                    a.set(i, j, random_component(&mut rng, &coords, &shape, 2));
                }
                for j in i..k {
                    let shape = admissible(b, ComponentKind::UU(i, j))?;
                    let p = random_component(&mut rng, &coords, &shape, 3);
                    big_a.set(i, j, p.clone());
                    big_a.set(j, i, p);
                }
                for x in 0..m {
                    let shape = admissible(b, ComponentKind::UX(i, x))?;
                    bm.set(i, x, random_component(&mut rng, &coords, &shape, 2));
                }
            }
            for x in 0..m {
                if rng.gen_bool(0.3) {
                    g.set(x, x, -Polynomial::one());
                }
            }
        }
    }
    CanonicalMetric::new(coords, a, big_a, bm, g)
}

fn mono_text(coords: &CoordinateSystem, m: &Monomial) -> String {
    Polynomial::term(m.clone(), Rational::one()).to_string_with(coords)
}

fn random_coefficient(rng: &mut ChaCha8Rng, coords: &CoordinateSystem) -> Polynomial {
    let mut num = rng.gen_range(-3i64..=2);
    if num >= 0 {
        num += 1;
    }
    let den = rng.gen_range(1i64..=3);
    let c = Polynomial::constant(Rational::new(num.into(), den.into()));
    if rng.gen_bool(0.25) {
        let choices: Vec<usize> = coords.u_vars().chain(coords.x_vars()).collect();
        let var = *choices.choose(rng).expect("at least one u");
        &c * &Polynomial::var(var)
    } else {
        c
    }
}

fn random_component(
    rng: &mut ChaCha8Rng,
    coords: &CoordinateSystem,
    shape: &[Vec<u32>],
    max_terms: usize,
) -> Polynomial {
    if shape.is_empty() {
        return Polynomial::zero();
    }
    let count = rng.gen_range(0..=max_terms.min(shape.len()));
    let picks: Vec<&Vec<u32>> = shape.choose_multiple(rng, count).collect();
    let mut p = Polynomial::zero();
    for d in picks {
        let c = random_coefficient(rng, coords);
        p += &(&c * &Polynomial::term(v_monomial(coords, d), Rational::one()));
    }
    p
}
