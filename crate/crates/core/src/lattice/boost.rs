use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LatticeError;

/// Integer boost direction `(n_1, ..., n_k)` with non-negative entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoostVector(Vec<u32>);

impl BoostVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> i64 {
        i64::from(self.0[i])
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&n| n > 0)
    }

    /// Fails with the first zero entry.
    pub fn require_positive(&self) -> Result<(), LatticeError> {
        match self.0.iter().position(|&n| n == 0) {
            Some(index) => Err(LatticeError::ZeroBoostEntry { index: index + 1 }),
            None if self.0.is_empty() => Err(LatticeError::KOutOfRange(0)),
            None => Ok(()),
        }
    }

    /// Membership in the enumerated class: starts at 0 or 1, each next
    /// entry is 0/1 after a zero and `n` or `2n` after a positive `n`.
    pub fn is_canonical(&self) -> bool {
        let Some(&first) = self.0.first() else {
            return false;
        };
        if first > 1 {
            return false;
        }
        self.0.windows(2).all(|w| match w[0] {
            0 => w[1] <= 1,
            n => w[1] == n || w[1] == 2 * n,
        })
    }

    /// Number of leading zeros.
    pub fn leading_zeros(&self) -> usize {
        self.0.iter().take_while(|&&n| n == 0).count()
    }

    /// Entries after the leading zeros.
    pub fn tail(&self) -> BoostVector {
        BoostVector(self.0[self.leading_zeros()..].to_vec())
    }

    pub fn gcd(&self) -> u32 {
        self.0
            .iter()
            .fold(0, |g, &n| num_integer::Integer::gcd(&g, &n))
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == 1
    }

    pub fn dot(&self, d: &[u32]) -> i64 {
        self.0
            .iter()
            .zip(d)
            .map(|(&b, &e)| i64::from(b) * i64::from(e))
            .sum()
    }
}

impl fmt::Display for BoostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for BoostVector {
    type Err = LatticeError;

    /// Comma-separated non-negative integers, optionally parenthesised.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| LatticeError::BadBoost(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.is_empty() {
            return Err(LatticeError::BadBoost(s.to_string()));
        }
        Ok(BoostVector(entries))
    }
}

pub const MAX_ENUMERATION_K: usize = 16;

/// All `2^k` canonical boost vectors in lexicographic order.
pub fn enumerate_boost_vectors(k: usize) -> Result<Vec<BoostVector>, LatticeError> {
    if k == 0 || k > MAX_ENUMERATION_K {
        return Err(LatticeError::KOutOfRange(k));
    }
    let mut out = Vec::with_capacity(1 << k);
    let mut current = Vec::with_capacity(k);
    extend(k, &mut current, &mut out);
    Ok(out)
}

fn extend(k: usize, current: &mut Vec<u32>, out: &mut Vec<BoostVector>) {
    if current.len() == k {
        out.push(BoostVector(current.clone()));
        return;
    }
    let choices = match current.last() {
        None | Some(0) => [0, 1],
        Some(&n) => [n, 2 * n],
    };
    for c in choices {
        current.push(c);
        extend(k, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_flags() {
        assert!("1,2,4".parse::<BoostVector>().unwrap().is_canonical());
        assert!(!"1,1,0".parse::<BoostVector>().unwrap().is_canonical());
        assert!(!"(1,3)".parse::<BoostVector>().unwrap().is_canonical());
        assert!("0,1".parse::<BoostVector>().unwrap().is_canonical());
        assert!("x".parse::<BoostVector>().is_err());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let v = enumerate_boost_vectors(3).unwrap();
        let mut sorted = v.clone();
        sorted.sort();
        assert_eq!(v, sorted);
        assert!(enumerate_boost_vectors(0).is_err());
        assert!(enumerate_boost_vectors(17).is_err());
    }
}
