use crate::algebra::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Up,
    Down,
}

/// Dense multi-index array of polynomials over an `n`-dimensional chart,
/// indices in slot order, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    n: usize,
    variances: Vec<Variance>,
    data: Vec<Polynomial>,
}

impl Tensor {
    pub fn zeros(n: usize, variances: Vec<Variance>) -> Self {
        let len = n.pow(variances.len() as u32);
        Self {
            n,
            variances,
            data: vec![Polynomial::zero(); len],
        }
    }

    pub fn scalar(p: Polynomial) -> Self {
        Self {
            n: 0,
            variances: Vec::new(),
            data: vec![p],
        }
    }

    /// Same data viewed over an `n`-dimensional chart; only meaningful for
    /// rank 0.
    pub fn with_dim(mut self, n: usize) -> Self {
        debug_assert_eq!(self.rank(), 0);
        self.n = n;
        self
    }

    pub fn covariant(n: usize, rank: usize) -> Self {
        Self::zeros(n, vec![Variance::Down; rank])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.variances.len()
    }

    pub fn variances(&self) -> &[Variance] {
        &self.variances
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Polynomial {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], p: Polynomial) {
        let o = self.offset(idx);
        self.data[o] = p;
    }

    pub fn get_mut(&mut self, idx: &[usize]) -> &mut Polynomial {
        let o = self.offset(idx);
        &mut self.data[o]
    }

    pub fn data(&self) -> &[Polynomial] {
        &self.data
    }

    /// Multi-index of a flat position.
    pub fn index_of(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.rank()];
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.n.max(1);
            flat /= self.n.max(1);
        }
        idx
    }

    /// Nonzero entries with their multi-indices.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Polynomial)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| (self.index_of(i), p))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn map<F: FnMut(&Polynomial) -> Polynomial>(&self, f: F) -> Tensor {
        Tensor {
            n: self.n,
            variances: self.variances.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entry-wise combination of two tensors of the same shape.
    pub fn zip_with<F: FnMut(&Polynomial, &Polynomial) -> Polynomial>(
        &self,
        other: &Tensor,
        mut f: F,
    ) -> Tensor {
        assert_eq!(self.variances, other.variances, "tensor shapes differ");
        Tensor {
            n: self.n,
            variances: self.variances.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Reorders indices: index `j` of the result is index `perm[j]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.rank());
        let variances = perm.iter().map(|&p| self.variances[p]).collect();
        let mut out = Tensor::zeros(self.n, variances);
        for flat in 0..self.data.len() {
            let idx = out.index_of(flat);
            let mut src = vec![0; idx.len()];
            for (j, &p) in perm.iter().enumerate() {
                src[p] = idx[j];
            }
            out.data[flat] = self.get(&src).clone();
        }
        out
    }

    pub(crate) fn data_mut(&mut self) -> &mut [Polynomial] {
        &mut self.data
    }
}
