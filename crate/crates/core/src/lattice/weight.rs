use serde::{Deserialize, Serialize};

use super::{BoostVector, LatticeError};
use crate::algebra::Coord;

/// The symmetric differential `dx^mu dx^nu` multiplying a metric term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiffPair(pub Coord, pub Coord);

/// A metric term `u^e v^d dx^mu dx^nu` for grading purposes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedTerm {
    pub v_exponents: Vec<u32>,
    pub u_exponents: Vec<u32>,
    pub diff: DiffPair,
}

fn diff_weight(c: Coord, b: &BoostVector) -> Result<i64, LatticeError> {
    let at = |i: usize| {
        if i < b.k() {
            Ok(b.get(i))
        } else {
            Err(LatticeError::IndexOutOfRange {
                index: i + 1,
                k: b.k(),
            })
        }
    };
    Ok(match c {
        Coord::U(i) => -at(i)?,
        Coord::V(i) => at(i)?,
        Coord::X(_) => 0,
    })
}

/// Boost weight of a term; a finite limit needs every weight `<= 0` and
/// the limit keeps exactly the weight-0 terms.
pub fn term_weight(t: &GradedTerm, b: &BoostVector) -> Result<i64, LatticeError> {
    if t.v_exponents.len() > b.k() || t.u_exponents.len() > b.k() {
        return Err(LatticeError::IndexOutOfRange {
            index: t.v_exponents.len().max(t.u_exponents.len()),
            k: b.k(),
        });
    }
    let v = b.dot(&t.v_exponents);
    let u = b.dot(&t.u_exponents);
    Ok(v - u + diff_weight(t.diff.0, b)? + diff_weight(t.diff.1, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v17_term_is_subleading() {
        let b: BoostVector = "1,2,4".parse().unwrap();
        let t = GradedTerm {
            v_exponents: vec![7, 0, 0],
            u_exponents: vec![],
            diff: DiffPair(Coord::U(2), Coord::U(2)),
        };
        assert_eq!(term_weight(&t, &b).unwrap(), -1);
        let t8 = GradedTerm {
            v_exponents: vec![8, 0, 0],
            ..t
        };
        assert_eq!(term_weight(&t8, &b).unwrap(), 0);
    }

    #[test]
    fn u_degree_lowers_weight() {
        let b: BoostVector = "1,1".parse().unwrap();
        let t = GradedTerm {
            v_exponents: vec![0, 0],
            u_exponents: vec![1, 0],
            diff: DiffPair(Coord::U(0), Coord::V(0)),
        };
        assert_eq!(term_weight(&t, &b).unwrap(), -1);
        let vv = GradedTerm {
            v_exponents: vec![0, 0],
            u_exponents: vec![0, 0],
            diff: DiffPair(Coord::V(0), Coord::V(1)),
        };
        assert_eq!(term_weight(&vv, &b).unwrap(), 2);
    }
}
