use crate::algebra::{int, Coord, PolyMatrix, Polynomial};
use crate::metric::FullMetric;

use super::{CurvatureError, Geometry, Tensor};

/// `F = du1 ^ ... ^ duk` as a dense antisymmetric covariant tensor.
pub fn null_form(g: &FullMetric) -> Tensor {
    let cs = g.coords();
    let n = cs.dim();
    let k = cs.k();
    let slots: Vec<usize> = (0..k).map(|i| cs.slot(Coord::U(i))).collect();
    let mut f = Tensor::covariant(n, k);
    for perm in permutations(k) {
        let idx: Vec<usize> = perm.iter().map(|&p| slots[p]).collect();
        let sign = if parity(&perm) { -1 } else { 1 };
        f.set(&idx, Polynomial::constant(int(sign)));
    }
    f
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// `true` for odd permutations.
fn parity(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// Covariant derivative of the null `k`-form and what it says about the
/// geometry.
#[derive(Clone, Debug)]
pub struct NablaF {
    /// `nabla_c F_{a1..ak}`, derivative index last.
    pub tensor: Tensor,
    /// `k_mu` with `nabla_mu F = k_mu F`, when that relation holds on
    /// every component.
    pub walker: Option<Vec<Polynomial>>,
    /// `nabla F == 0`.
    pub constant: bool,
    /// `nabla_(mu F_nu) ... == 0`.
    pub killing_yano: bool,
}

impl NablaF {
    pub fn require_walker(&self) -> Result<&[Polynomial], CurvatureError> {
        self.walker
            .as_deref()
            .ok_or(CurvatureError::WalkerInconsistent)
    }
}

pub fn nabla_f(g: &FullMetric) -> Result<NablaF, CurvatureError> {
    let geo = Geometry::new(g)?;
    let cs = g.coords();
    let n = cs.dim();
    let k = cs.k();
    let f = null_form(g);
    let t = geo.cov_deriv(&f);
    let constant = t.is_zero();

    let u_slots: Vec<usize> = (0..k).map(|i| cs.slot(Coord::U(i))).collect();
    let mut lead = u_slots.clone();
    let k_mu: Vec<Polynomial> = (0..n)
        .map(|c| {
            lead.truncate(k);
            lead.push(c);
            t.get(&lead).clone()
        })
        .collect();
    let mut consistent = true;
    'outer: for flat in 0..t.data().len() {
        let idx = t.index_of(flat);
        let (form_idx, c) = idx.split_at(k);
        let expected = f.get(form_idx) * &k_mu[c[0]];
        if t.data()[flat] != expected {
            consistent = false;
            break 'outer;
        }
    }

    let killing_yano = k == 0 || {
        let mut ok = true;
        'ky: for flat in 0..t.data().len() {
            let idx = t.index_of(flat);
            let mut swapped = idx.clone();
            swapped.swap(0, k);
            let sum = &t.data()[flat] + t.get(&swapped);
            if !sum.is_zero() {
                ok = false;
                break 'ky;
            }
        }
        ok
    };

    Ok(NablaF {
        tensor: t,
        walker: consistent.then_some(k_mu),
        constant,
        killing_yano,
    })
}

/// `(L_X g)_{mu nu}` for a vector field given by its components in slot order.
pub fn lie_derivative(g: &FullMetric, x: &[Polynomial]) -> PolyMatrix {
    let cs = g.coords();
    let n = cs.dim();
    assert_eq!(
        x.len(),
        n,
        "vector field has the wrong number of components"
    );
    let d = |p: &Polynomial, mu: usize| p.diff(cs.slot_var(mu));
    PolyMatrix::from_fn(n, n, |mu, nu| {
        let mut acc = Polynomial::zero();
        for (a, xa) in x.iter().enumerate() {
            if !xa.is_zero() {
                acc += &(xa * &d(g.get(mu, nu), a));
            }
            let dmu = d(xa, mu);
            if !dmu.is_zero() {
                acc += &(g.get(a, nu) * &dmu);
            }
            let dnu = d(xa, nu);
            if !dnu.is_zero() {
                acc += &(g.get(mu, a) * &dnu);
            }
        }
        acc
    })
}

/// `L_X g == 0`.
pub fn killing_check(g: &FullMetric, x: &[Polynomial]) -> bool {
    lie_derivative(g, x).is_zero()
}

/// `d/d(coord)` as a vector field in slot order.
pub fn coordinate_field(g: &FullMetric, c: Coord) -> Vec<Polynomial> {
    let cs = g.coords();
    let mut x = vec![Polynomial::zero(); cs.dim()];
    x[cs.slot(c)] = Polynomial::one();
    x
}
