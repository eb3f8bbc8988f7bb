//! Cyclic Jacobi eigensolver for Hermitian matrices.

use super::{ComplexMatrix, C64};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `a = V diag(values) V*`, eigenvalues sorted descending.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the same order as `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for i in 0..n {
            for j in 0..n {
                scaled[(i, j)] *= self.values[j];
            }
        }
        scaled
            .matmul(&self.vectors.conj_transpose())
            .expect("square factors")
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input must be Hermitian within `tol` (max entry of `|a - a*|`); it is
/// symmetrized before iterating. Sweeps visit pivots `(p, q)` in row-major
/// order, so results are bit-reproducible.
pub fn hermitian_eig(a: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    let n = a.require_square("hermitian_eig")?;
    let residual = a.hermitian_residual()?;
    if residual > tol {
        return Err(Error::NotHermitian { residual });
    }
    let mut m = a.hermitian_part()?;
    let mut v = ComplexMatrix::identity(n);

    let scale = m.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = f64::EPSILON * scale.max(f64::MIN_POSITIVE);

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, dst)] = v[(r, src)];
        }
    }
    Ok(HermitianEig { values, vectors })
}

/// Annihilates `m[p,q]` with `m <- J* m J`, `v <- v J`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // Phase that makes the pivot real, followed by a real Jacobi rotation.
    let phase = (apq / mag).conj();
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J restricted to rows/cols {p, q}.
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = phase * (-s);
    let jqq = phase * c;

    let n = m.rows;
    for i in 0..n {
        let mip = m[(i, p)];
        let miq = m[(i, q)];
        m[(i, p)] = mip * jpp + miq * jqp;
        m[(i, q)] = mip * jpq + miq * jqq;
    }
    for j in 0..n {
        let mpj = m[(p, j)];
        let mqj = m[(q, j)];
        m[(p, j)] = jpp.conj() * mpj + jqp.conj() * mqj;
        m[(q, j)] = jpq.conj() * mpj + jqq.conj() * mqj;
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);

    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * jpp + viq * jqp;
        v[(i, q)] = vip * jpq + viq * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_spectrum() {
        let e = hermitian_eig(&ComplexMatrix::identity(2), 1e-12).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0]);
    }

    #[test]
    fn two_by_two_symmetric() {
        // Characteristic polynomial (1-l)^2 - 4 = 0 gives l = 3, -1.
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        let e = hermitian_eig(&a, 1e-12).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-12);
        assert!((e.values[1] + 1.0).abs() < 1e-12);
        assert!(e.reconstruct().max_abs_diff(&a).unwrap() < 1e-12);
    }

    #[test]
    fn diagonal_is_sorted() {
        let a = ComplexMatrix::from_real_diag(&[0.3, 0.7]);
        let e = hermitian_eig(&a, 1e-12).unwrap();
        assert_eq!(e.values, vec![0.7, 0.3]);
    }

    #[test]
    fn complex_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
        let a = ComplexMatrix::new(
            2,
            2,
            vec![
                C64::new(2.0, 0.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, -1.0),
                C64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        let e = hermitian_eig(&a, 1e-12).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-12);
        assert!((e.values[1] - 1.0).abs() < 1e-12);
        assert!(e.reconstruct().max_abs_diff(&a).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            hermitian_eig(&a, 1e-9),
            Err(Error::NotHermitian { .. })
        ));
    }
}
