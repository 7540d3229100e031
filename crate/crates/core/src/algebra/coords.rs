use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// A coordinate of the canonical chart, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coord {
    U(usize),
    V(usize),
    X(usize),
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::U(i) => write!(f, "u{}", i + 1),
            Coord::V(i) => write!(f, "v{}", i + 1),
            Coord::X(a) => write!(f, "x{}", a + 1),
        }
    }
}

/// `k` null pairs `(u_i, v_i)` and `m` transverse coordinates `x_a`.
///
/// Two orderings are in play. Polynomial variables are indexed
/// `u_1..u_k, v_1..v_k, x_1..x_m` (this is also the canonical term order).
/// Metric matrices use slots `u_1..u_k, x_1..x_m, v_1..v_k`, so that the
/// `dv` block sits in the lower-right corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordinateSystem {
    k: usize,
    m: usize,
    names: Vec<String>,
}

impl CoordinateSystem {
    pub fn new(k: usize, m: usize) -> Result<Self, AlgebraError> {
        let names = (0..k)
            .map(|i| format!("u{}", i + 1))
            .chain((0..k).map(|i| format!("v{}", i + 1)))
            .chain((0..m).map(|a| format!("x{}", a + 1)))
            .collect();
        Self::with_names(k, m, names)
    }

    pub fn with_names(k: usize, m: usize, names: Vec<String>) -> Result<Self, AlgebraError> {
        if k == 0 && m == 0 {
            return Err(AlgebraError::InvalidCoordinates(
                "need k >= 1 or m >= 1".into(),
            ));
        }
        if names.len() != 2 * k + m {
            return Err(AlgebraError::InvalidCoordinates(format!(
                "expected {} names, got {}",
                2 * k + m,
                names.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            let valid = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(AlgebraError::InvalidCoordinates(format!(
                    "invalid variable name `{name}`"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(AlgebraError::InvalidCoordinates(format!(
                    "duplicate variable name `{name}`"
                )));
            }
        }
        Ok(Self { k, m, names })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.k + self.m
    }

    /// Polynomial variable index of a coordinate.
    pub fn var(&self, c: Coord) -> usize {
        match c {
            Coord::U(i) => i,
            Coord::V(i) => self.k + i,
            Coord::X(a) => 2 * self.k + a,
        }
    }

    pub fn coord(&self, var: usize) -> Coord {
        if var < self.k {
            Coord::U(var)
        } else if var < 2 * self.k {
            Coord::V(var - self.k)
        } else {
            Coord::X(var - 2 * self.k)
        }
    }

    /// Metric matrix slot of a coordinate, order `(u, x, v)`.
    pub fn slot(&self, c: Coord) -> usize {
        match c {
            Coord::U(i) => i,
            Coord::X(a) => self.k + a,
            Coord::V(i) => self.k + self.m + i,
        }
    }

    pub fn slot_coord(&self, slot: usize) -> Coord {
        if slot < self.k {
            Coord::U(slot)
        } else if slot < self.k + self.m {
            Coord::X(slot - self.k)
        } else {
            Coord::V(slot - self.k - self.m)
        }
    }

    pub fn slot_var(&self, slot: usize) -> usize {
        self.var(self.slot_coord(slot))
    }

    pub fn var_slot(&self, var: usize) -> usize {
        self.slot(self.coord(var))
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn u_vars(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.k).map(|i| self.var(Coord::U(i)))
    }

    pub fn v_vars(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.k).map(|i| self.var(Coord::V(i)))
    }

    pub fn x_vars(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.m).map(|a| self.var(Coord::X(a)))
    }
}
