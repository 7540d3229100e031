use std::cmp::Ordering;

/// A power product of variables, stored sparsely as `(variable, exponent)`
/// pairs sorted by variable index. Zero exponents are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(u16, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(var: usize) -> Self {
        Self::power(var, 1)
    }

    pub fn power(var: usize, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Self {
            factors: vec![(var as u16, exp)],
            degree: exp,
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs;
    /// repeated variables are merged.
    pub fn from_factors<I: IntoIterator<Item = (usize, u32)>>(factors: I) -> Self {
        let mut f: Vec<(u16, u32)> = factors
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(v, e)| (v as u16, e))
            .collect();
        f.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(u16, u32)> = Vec::with_capacity(f.len());
        for (v, e) in f {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        let degree = merged.iter().map(|&(_, e)| e).sum();
        Self {
            factors: merged,
            degree,
        }
    }

    /// Dense exponent vector, variable `i` gets `exps[i]`.
    pub fn from_dense(exps: &[u32]) -> Self {
        Self::from_factors(exps.iter().enumerate().map(|(v, &e)| (v, e)))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.factors
            .binary_search_by_key(&(var as u16), |&(v, _)| v)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.factors.iter().map(|&(v, e)| (v as usize, e))
    }

    /// Sum of exponents over the given variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.factors()
            .filter(|(v, _)| vars.contains(v))
            .map(|(_, e)| e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, b) = (self.factors[i], other.factors[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial {
            factors: out,
            degree: self.degree + other.degree,
        }
    }

    /// Removes `var` entirely, returning its former exponent.
    pub fn split_off(&self, var: usize) -> (u32, Monomial) {
        match self
            .factors
            .binary_search_by_key(&(var as u16), |&(v, _)| v)
        {
            Ok(i) => {
                let e = self.factors[i].1;
                let mut factors = self.factors.clone();
                factors.remove(i);
                (
                    e,
                    Monomial {
                        factors,
                        degree: self.degree - e,
                    },
                )
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// `d/d var` of the bare monomial: `(exponent, monomial with exponent - 1)`.
    pub fn diff(&self, var: usize) -> Option<(u32, Monomial)> {
        let i = self
            .factors
            .binary_search_by_key(&(var as u16), |&(v, _)| v)
            .ok()?;
        let e = self.factors[i].1;
        let mut factors = self.factors.clone();
        if e == 1 {
            factors.remove(i);
        } else {
            factors[i].1 -= 1;
        }
        Some((
            e,
            Monomial {
                factors,
                degree: self.degree - 1,
            },
        ))
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.factors
            .iter()
            .all(|&(v, e)| other.exponent(v as usize) >= e)
    }
}

/// Graded lexicographic: total degree first, then the exponent of the
/// lowest-indexed variable where the two differ.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.factors.get(i), other.factors.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        if va < vb {
                            return Ordering::Greater;
                        }
                        if va > vb {
                            return Ordering::Less;
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
