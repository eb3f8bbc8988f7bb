//! Dense complex matrices and the spectral / order predicates built on them.

mod eig;
mod perm;

pub use eig::{hermitian_eig, HermitianEig};
pub use perm::{hadamard_rewrite, PartialPermutation};

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

pub type C64 = Complex64;

/// Upper bound on the number of entries in a single matrix.
pub const MAX_ENTRIES: usize = 1 << 20;

/// Default numerical tolerance for PSD, unitality and completeness checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Dense, row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

fn check_cap(rows: usize, cols: usize) -> Result<()> {
    match rows.checked_mul(cols) {
        Some(n) if n <= MAX_ENTRIES => Ok(()),
        _ => Err(Error::DimensionOverflow {
            rows,
            cols,
            cap: MAX_ENTRIES,
        }),
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!(
                "matrix dimensions must be positive, got {}x{}",
                rows, cols
            )));
        }
        check_cap(rows, cols)?;
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Builds a matrix from nested rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn scalar(z: C64) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![z],
        }
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        Self::from_diag(&diag.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    /// Column vector `v` as an `n x 1` matrix.
    pub fn column(v: &[C64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Rank-one projector `|e_i><e_i|` of size `n`.
    pub fn basis_projector(n: usize, i: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, i)] = C64::new(1.0, 0.0);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        check_cap(self.rows, other.cols)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "add")?;
        Ok(self.zip_map(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "sub")?;
        Ok(self.zip_map(other, |a, b| a - b))
    }

    /// In-place `self += scale * other`.
    pub fn add_scaled(&mut self, scale: C64, other: &Self) -> Result<()> {
        self.require_same_shape(other, "add_scaled")?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += scale * b;
        }
        Ok(())
    }

    fn zip_map(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Kronecker product; entry `(i*b.rows+k, j*b.cols+l) = a[i,j] * b[k,l]`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let rows = self
            .rows
            .checked_mul(other.rows)
            .ok_or(Error::DimensionOverflow {
                rows: usize::MAX,
                cols: usize::MAX,
                cap: MAX_ENTRIES,
            })?;
        let cols = self
            .cols
            .checked_mul(other.cols)
            .ok_or(Error::DimensionOverflow {
                rows: usize::MAX,
                cols: usize::MAX,
                cap: MAX_ENTRIES,
            })?;
        check_cap(rows, cols)?;
        let mut data = vec![C64::new(0.0, 0.0); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    let base = (i * other.rows + k) * cols + j * other.cols;
                    for (l, b) in other.row(k).iter().enumerate() {
                        data[base + l] = a * b;
                    }
                }
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Entrywise (Schur) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "hadamard")?;
        Ok(self.zip_map(other, |a, b| a * b))
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Result<C64> {
        let n = self.require_square("trace")?;
        Ok((0..n).map(|i| self[(i, i)]).sum())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.require_same_shape(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest modulus among the off-diagonal entries.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    m = m.max(self[(i, j)].norm());
                }
            }
        }
        m
    }

    /// Distance to the identity in max-entry norm.
    pub fn identity_residual(&self) -> Result<f64> {
        let n = self.require_square("identity_residual")?;
        self.max_abs_diff(&Self::identity(n))
    }

    /// Largest entry of `|a - a*|`.
    pub fn hermitian_residual(&self) -> Result<f64> {
        self.require_square("hermitian_residual")?;
        let mut m = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                m = m.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        Ok(m)
    }

    /// `(a + a*) / 2`.
    pub fn hermitian_part(&self) -> Result<Self> {
        self.require_square("hermitian_part")?;
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        Ok(out)
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let h = self.hermitian_part()?;
        let eig = hermitian_eig(&h, f64::INFINITY)?;
        Ok(*eig.values.last().expect("non-empty spectrum"))
    }

    /// True iff Hermitian within `tol` and the smallest eigenvalue is `>= -tol`.
    pub fn is_psd(&self, tol: f64) -> Result<bool> {
        self.require_square("is_psd")?;
        if self.hermitian_residual()? > tol {
            return Ok(false);
        }
        Ok(self.min_eigenvalue()? >= -tol)
    }

    /// Loewner order `self <= other`, i.e. `other - self` is PSD.
    pub fn loewner_leq(&self, other: &Self, tol: f64) -> Result<bool> {
        self.require_same_shape(other, "loewner_leq")?;
        other.sub(self)?.is_psd(tol)
    }

    /// True iff `u u* = 1` within `tol` (max-entry). Requires `rows <= cols`.
    pub fn is_semi_unitary(&self, tol: f64) -> Result<bool> {
        if self.rows > self.cols {
            return Err(Error::Orientation {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.matmul(&self.conj_transpose())?.identity_residual()? <= tol)
    }

    /// Numerical rank: number of eigenvalues of the Hermitian part above `tol`.
    pub fn hermitian_rank(&self, tol: f64) -> Result<usize> {
        let eig = hermitian_eig(&self.hermitian_part()?, f64::INFINITY)?;
        Ok(eig.values.iter().filter(|&&l| l > tol).count())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product of two matrices.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.kron(b)
}

/// Entrywise product of two equally shaped matrices.
pub fn hadamard(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.hadamard(b)
}

pub fn conj_transpose(a: &ComplexMatrix) -> ComplexMatrix {
    a.conj_transpose()
}

pub fn trace(a: &ComplexMatrix) -> Result<C64> {
    a.trace()
}

pub fn is_psd(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    a.is_psd(tol)
}

pub fn loewner_leq(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    a.loewner_leq(b, tol)
}

pub fn is_semi_unitary(u: &ComplexMatrix, tol: f64) -> Result<bool> {
    u.is_semi_unitary(tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn real(rows: usize, cols: usize, d: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real(rows, cols, d).unwrap()
    }

    #[test]
    fn kron_identity_and_scalars() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
        let k = kron(&real(1, 1, &[2.0]), &real(1, 1, &[3.0])).unwrap();
        assert_eq!(k, real(1, 1, &[6.0]));
    }

    #[test]
    fn kron_swap_with_identity_is_block_antidiagonal() {
        let x = real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let k = kron(&x, &ComplexMatrix::identity(2)).unwrap();
        #[rustfmt::skip]
        let expected = real(4, 4, &[
            0.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
        ]);
        assert_eq!(k, expected);
    }

    #[test]
    fn kron_rejects_blowup() {
        let big = ComplexMatrix::zeros(1024, 1);
        let err = kron(&big, &ComplexMatrix::zeros(1025, 1)).unwrap_err();
        assert!(matches!(err, Error::DimensionOverflow { .. }));
    }

    #[test]
    fn hadamard_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(hadamard(&i2, &i2).unwrap(), i2);
        let a = real(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let b = real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(hadamard(&a, &b).unwrap(), real(2, 2, &[0.0, 2.0, 3.0, 0.0]));
        assert!(matches!(
            hadamard(&a, &ComplexMatrix::identity(3)),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn conj_transpose_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(conj_transpose(&i2), i2);
        let m = ComplexMatrix::scalar(c(0.0, 1.0));
        assert_eq!(conj_transpose(&m), ComplexMatrix::scalar(c(0.0, -1.0)));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace(&ComplexMatrix::identity(3)).unwrap(), c(3.0, 0.0));
        assert_eq!(
            trace(&real(2, 2, &[1.0, 5.0, 7.0, 2.0])).unwrap(),
            c(3.0, 0.0)
        );
        assert!(matches!(
            trace(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd(&ComplexMatrix::identity(4), 1e-9).unwrap());
        assert!(!is_psd(&real(2, 2, &[1.0, 2.0, 2.0, 1.0]), 1e-9).unwrap());
        // Hermitian but with an imaginary off-diagonal pair.
        let h = ComplexMatrix::new(
            2,
            2,
            vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
        )
        .unwrap();
        assert!(is_psd(&h, 1e-9).unwrap());
        // Not Hermitian.
        assert!(!is_psd(&real(2, 2, &[1.0, 1.0, 0.0, 1.0]), 1e-9).unwrap());
    }

    #[test]
    fn loewner_examples() {
        let i3 = ComplexMatrix::identity(3);
        let z = ComplexMatrix::zeros(3, 3);
        assert!(loewner_leq(&z, &i3, 1e-9).unwrap());
        assert!(!loewner_leq(&i3.scale_real(2.0), &i3, 1e-9).unwrap());
    }

    #[test]
    fn semi_unitary_examples() {
        assert!(is_semi_unitary(&ComplexMatrix::identity(3), 1e-9).unwrap());
        let sel = real(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert!(is_semi_unitary(&sel, 1e-9).unwrap());
        let s = 2.0 / 2f64.sqrt();
        assert!(!is_semi_unitary(&real(1, 2, &[s, s]), 1e-9).unwrap());
        assert!(matches!(
            is_semi_unitary(&sel.conj_transpose(), 1e-9),
            Err(Error::Orientation { .. })
        ));
    }

    #[test]
    fn constructor_rejects_non_finite() {
        assert!(matches!(
            ComplexMatrix::from_real(1, 1, &[f64::NAN]),
            Err(Error::NonFinite)
        ));
        assert!(ComplexMatrix::from_real(2, 2, &[1.0]).is_err());
    }
}
