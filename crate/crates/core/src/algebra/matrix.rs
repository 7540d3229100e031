use std::ops::{Index, IndexMut};

use num_traits::Zero;

use super::{AlgebraError, Polynomial, Rational};

/// Dense rectangular matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Polynomial::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Polynomial::one()
            } else {
                Polynomial::zero()
            }
        })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Polynomial>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(AlgebraError::DimensionMismatch(
                "rows have different lengths".into(),
            ));
        }
        Ok(Self {
            rows: n,
            cols: m,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn map<F: FnMut(&Polynomial) -> Polynomial>(&self, f: F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Polynomial::zero();
            for l in 0..self.cols {
                let (a, b) = (self.get(i, l), other.get(l, j));
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        }))
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::DimensionMismatch("matrix sum".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn trace(&self) -> Polynomial {
        let mut t = Polynomial::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Faddeev-LeVerrier recursion: returns `(det, adjugate)`.
    fn det_adjugate(&self) -> (Polynomial, PolyMatrix) {
        let n = self.rows;
        if n == 0 {
            return (Polynomial::one(), PolyMatrix::zeros(0, 0));
        }
        let mut mk = PolyMatrix::identity(n);
        let mut prev = mk.clone();
        let mut c = Polynomial::zero();
        for k in 1..=n {
            let am = self.mul(&mk).expect("square");
            c = am
                .trace()
                .scale(&(-Rational::from_integer((k as i64).into())).recip());
            prev = mk;
            mk = am;
            for i in 0..n {
                let d = mk.get(i, i) + &c;
                mk.set(i, i, d);
            }
        }
        // After n steps mk is zero (Cayley-Hamilton) and prev satisfies
        // A * prev = -c_0 I.
        let sign = if n.is_multiple_of(2) {
            Rational::from_integer(1.into())
        } else {
            Rational::from_integer((-1).into())
        };
        let det = c.scale(&sign);
        let adj = prev.scale(&-sign.clone());
        (det, adj)
    }

    pub fn determinant(&self) -> Result<Polynomial, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch(
                "determinant of non-square matrix".into(),
            ));
        }
        Ok(self.det_adjugate().0)
    }

    pub fn adjugate(&self) -> Result<PolyMatrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch(
                "adjugate of non-square matrix".into(),
            ));
        }
        Ok(self.det_adjugate().1)
    }

    /// Inverse of a matrix whose determinant is a nonzero constant.
    pub fn inverse_constdet(&self) -> Result<PolyMatrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch(
                "inverse of non-square matrix".into(),
            ));
        }
        let (det, adj) = self.det_adjugate();
        let d = det
            .as_constant()
            .ok_or_else(|| AlgebraError::NonConstantDeterminant(det.clone()))?;
        if d.is_zero() {
            return Err(AlgebraError::SingularMatrix);
        }
        Ok(adj.scale(&d.recip()))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>, AlgebraError> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval(point)).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = Polynomial;
    fn index(&self, (i, j): (usize, usize)) -> &Polynomial {
        self.get(i, j)
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Polynomial {
        &mut self.entries[i * self.cols + j]
    }
}
