use serde::Serialize;

use crate::algebra::{Coord, Polynomial};
use crate::curvature::{coordinate_field, killing_check, nabla_f};

use super::{assemble, first_open_pair, CanonicalMetric};

/// One subclass flag with the value that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeFlag {
    pub holds: bool,
    /// `"holds"`, or the first offending quantity.
    pub witness: String,
}

impl TypeFlag {
    fn holds() -> Self {
        Self {
            holds: true,
            witness: "holds".into(),
        }
    }

    fn fails(witness: String) -> Self {
        Self {
            holds: false,
            witness,
        }
    }
}

/// Types I-V, each implying the previous one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    pub types: [TypeFlag; 5],
    /// `k_mu` in slot order when type III holds and `nabla F = k F` checks out.
    pub walker: Option<Vec<String>>,
    /// `nabla F == 0`; `None` if the curvature computation was not possible.
    pub nabla_f_constant: Option<bool>,
    pub killing_yano: Option<bool>,
    /// Every `d/dv_i` is a Killing vector.
    pub v_killing: Option<bool>,
    /// Whether the tensorial cross-checks agree with the coordinate criteria.
    pub cross_checks_agree: bool,
}

impl TypeReport {
    /// Highest type that holds (1-based), if any.
    pub fn highest(&self) -> Option<usize> {
        self.types.iter().rposition(|t| t.holds).map(|i| i + 1)
    }

    pub fn holds(&self, ty: usize) -> bool {
        self.types[ty - 1].holds
    }
}

const ROMAN: [&str; 5] = ["I", "II", "III", "IV", "V"];

fn first_v_derivative(
    cs: &crate::algebra::CoordinateSystem,
    label: &str,
    p: &Polynomial,
) -> Option<String> {
    (0..cs.k()).find_map(|i| {
        let d = p.diff(cs.var(Coord::V(i)));
        (!d.is_zero()).then(|| format!("d/dv{} {label} = {}", i + 1, d.display(cs)))
    })
}

pub fn classify(cm: &CanonicalMetric) -> TypeReport {
    let cs = &cm.coords;
    let (k, m) = (cs.k(), cs.m());

    let type1 = (0..m)
        .flat_map(|a| (a..m).map(move |c| (a, c)))
        .find_map(|(a, c)| {
            first_v_derivative(cs, &format!("g{}{}", a + 1, c + 1), cm.g_trans.get(a, c))
        });
    let type2 = first_open_pair(cm).map(|(i, n, mm)| {
        format!(
            "row {} of a is not closed in dv{} dv{}",
            i + 1,
            n + 1,
            mm + 1
        )
    });
    let type3 = (0..k)
        .flat_map(|i| (0..m).map(move |a| (i, a)))
        .find_map(|(i, a)| first_v_derivative(cs, &format!("B{}{}", i + 1, a + 1), cm.b.get(i, a)));
    let type4 = (0..k).find_map(|j| {
        let mut s = Polynomial::zero();
        for i in 0..k {
            s += &cm.big_a.get(i, j).diff(cs.var(Coord::V(i)));
        }
        (!s.is_zero()).then(|| format!("sum_i d/dv{{i}} A{{i}}{} = {}", j + 1, s.display(cs)))
    });
    let type5 = cm
        .components()
        .into_iter()
        .find_map(|(label, p)| first_v_derivative(cs, &label, p));

    let mut types: [TypeFlag; 5] = Default::default();
    let mut prev = true;
    for (n, raw) in [type1, type2, type3, type4, type5].into_iter().enumerate() {
        types[n] = match (prev, raw) {
            (true, None) => TypeFlag::holds(),
            (true, Some(w)) => TypeFlag::fails(w),
            (false, _) => TypeFlag::fails(format!("requires type {}", ROMAN[n - 1])),
        };
        prev = types[n].holds;
    }

    let full = assemble(cm).ok();
    let nf = full.as_ref().and_then(|g| nabla_f(g).ok());
    let nabla_f_constant = nf.as_ref().map(|r| r.constant);
    let killing_yano = nf.as_ref().map(|r| r.killing_yano);
    let walker = if types[2].holds {
        nf.as_ref()
            .and_then(|r| r.walker.as_ref())
            .map(|w| w.iter().map(|p| p.to_string_with(cs)).collect())
    } else {
        None
    };
    let v_killing = full
        .as_ref()
        .map(|g| (0..k).all(|i| killing_check(g, &coordinate_field(g, Coord::V(i)))));

    let mut agree = true;
    let a_constant = cm.a.entries().iter().all(Polynomial::is_constant);
    if types[2].holds && a_constant {
        if let Some(c) = nabla_f_constant {
            agree &= c == types[3].holds;
        }
    }
    if let Some(kv) = v_killing {
        agree &= kv == (type_v_raw(cm));
    }

    TypeReport {
        types,
        walker,
        nabla_f_constant,
        killing_yano,
        v_killing,
        cross_checks_agree: agree,
    }
}

fn type_v_raw(cm: &CanonicalMetric) -> bool {
    !cm.depends_on_v()
}

impl Default for TypeFlag {
    fn default() -> Self {
        Self::holds()
    }
}
