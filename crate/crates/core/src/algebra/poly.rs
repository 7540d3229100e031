use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::rational::format_rational;
use super::{AlgebraError, CoordinateSystem, Monomial, Rational};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms live in a `BTreeMap` keyed by [`Monomial`] (graded-lex order) and
/// zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(var: usize) -> Self {
        Self::term(Monomial::var(var), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value if this polynomial has degree 0 (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(v, _)| v))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect(),
        }
    }

    /// Product with every term of total degree above `max_degree` discarded.
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: Option<u32>) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        // terms are in ascending total degree, so both loops can stop early
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if max_degree.is_some_and(|d| da > d) {
                break;
            }
            for (mb, cb) in &other.terms {
                if max_degree.is_some_and(|d| da + mb.degree() > d) {
                    break;
                }
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                }
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn truncate(&self, max_degree: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `var`.
    pub fn diff(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.diff(var) {
                out.add_term(dm, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Evaluates at a point given per variable index. Every variable that
    /// occurs must be assigned.
    pub fn eval_with<F>(&self, mut value: F) -> Result<Rational, usize>
    where
        F: FnMut(usize) -> Option<Rational>,
    {
        let mut cache: HashMap<usize, Rational> = HashMap::new();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v).ok_or(v)?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                t *= num_traits::pow(x, e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Evaluates at a dense point (`point[var]`).
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        self.eval_with(|v| point.get(v).cloned())
            .map_err(|v| AlgebraError::MissingCoordinate(format!("variable #{v}")))
    }

    /// Evaluates with named coordinates; errors name the missing coordinate.
    pub fn eval_named(
        &self,
        point: &BTreeMap<usize, Rational>,
        coords: &CoordinateSystem,
    ) -> Result<Rational, AlgebraError> {
        self.eval_with(|v| point.get(&v).cloned())
            .map_err(|v| AlgebraError::MissingCoordinate(coords.name(v).to_string()))
    }

    /// Simultaneous substitution: variable `v` becomes `subs(v)` when that
    /// returns `Some`, otherwise it is left alone.
    pub fn substitute<F>(&self, mut subs: F) -> Polynomial
    where
        F: FnMut(usize) -> Option<Polynomial>,
    {
        let mut images: HashMap<usize, Option<Polynomial>> = HashMap::new();
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut prod = Polynomial::constant(c.clone());
            for (v, e) in m.factors() {
                let image = images.entry(v).or_insert_with(|| subs(v));
                match image {
                    None => kept.push((v, e)),
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        prod = &prod * &*pw;
                    }
                }
            }
            let kept = Monomial::from_factors(kept);
            for (pm, pc) in prod.terms {
                out.add_term(pm.mul(&kept), pc);
            }
        }
        out
    }

    /// Substitutes a single variable.
    pub fn substitute_var(&self, var: usize, image: &Polynomial) -> Polynomial {
        self.substitute(|v| (v == var).then(|| image.clone()))
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn filter_terms<F>(&self, mut keep: F) -> Polynomial
    where
        F: FnMut(&Monomial, &Rational) -> bool,
    {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Groups terms by their exponents in `vars`: returns pairs
    /// `(monomial in vars, coefficient polynomial in the other variables)`.
    pub fn split_by(&self, vars: &[usize]) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inner, outer): (Vec<_>, Vec<_>) = m.factors().partition(|(v, _)| vars.contains(v));
            out.entry(Monomial::from_factors(inner))
                .or_default()
                .add_term(Monomial::from_factors(outer), c.clone());
        }
        out
    }

    pub fn display<'a>(&'a self, coords: &'a CoordinateSystem) -> DisplayPoly<'a> {
        DisplayPoly { poly: self, coords }
    }

    pub fn to_string_with(&self, coords: &CoordinateSystem) -> String {
        self.display(coords).to_string()
    }
}

/// Prints a polynomial in the text grammar, highest term first.
pub struct DisplayPoly<'a> {
    poly: &'a Polynomial,
    coords: &'a CoordinateSystem,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut first = true;
            if m.is_one() || !abs.is_one() {
                f.write_str(&format_rational(&abs))?;
                first = false;
            }
            for (v, e) in m.factors() {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(self.coords.name(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        big += small;
        big
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_truncated(rhs, None)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}
