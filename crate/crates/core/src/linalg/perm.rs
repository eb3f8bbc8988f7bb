use super::{ComplexMatrix, C64};
use crate::{Error, Result};

/// Semi-unitary 0/1 matrix whose row `i` has a single one at column `selected[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPermutation {
    in_dim: usize,
    selected: Vec<usize>,
}

impl PartialPermutation {
    pub fn new(in_dim: usize, selected: Vec<usize>) -> Result<Self> {
        if in_dim == 0 || selected.is_empty() {
            return Err(Error::InvalidPermutation(
                "dimensions must be positive".into(),
            ));
        }
        let mut seen = vec![false; in_dim];
        for &s in &selected {
            if s >= in_dim {
                return Err(Error::InvalidPermutation(format!(
                    "index {} out of range for input dimension {}",
                    s, in_dim
                )));
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidPermutation(format!(
                    "index {} selected twice",
                    s
                )));
            }
        }
        Ok(Self { in_dim, selected })
    }

    /// Selector of the diagonal positions `i*n + i` inside an `n^2` space.
    pub fn hadamard_selector(n: usize) -> Result<Self> {
        Self::new(n * n, (0..n).map(|i| i * n + i).collect())
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.selected.len()
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.selected.len(), self.in_dim);
        for (i, &j) in self.selected.iter().enumerate() {
            p[(i, j)] = C64::new(1.0, 0.0);
        }
        p
    }

    /// `P m P*`: the principal submatrix of `m` on the selected indices.
    pub fn compress(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.shape() != (self.in_dim, self.in_dim) {
            return Err(Error::ShapeMismatch {
                op: "compress",
                left: (self.out_dim(), self.in_dim),
                right: m.shape(),
            });
        }
        let k = self.selected.len();
        let mut out = ComplexMatrix::zeros(k, k);
        for (i, &si) in self.selected.iter().enumerate() {
            for (j, &sj) in self.selected.iter().enumerate() {
                out[(i, j)] = m[(si, sj)];
            }
        }
        Ok(out)
    }
}

/// Computes `A ∘ B` as `P (A ⊗ B) P*` where `p` selects the diagonal block positions.
pub fn hadamard_rewrite(
    p: &PartialPermutation,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            op: "hadamard_rewrite",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let n = a.rows();
    if *p != PartialPermutation::hadamard_selector(n)? {
        return Err(Error::InvalidPermutation(format!(
            "selection {:?} is not the Hadamard pattern for n = {}",
            p.selected, n
        )));
    }
    let pm = p.matrix();
    pm.matmul(&a.kron(b)?)?.matmul(&pm.conj_transpose())
}
