//! Seeded random parameters that satisfy circuit invariants by construction.
//!
//! The generator is xoshiro256++ seeded through SplitMix64
//! (`rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64`), so a `u64` seed pins
//! every draw.

use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::linalg::{ComplexMatrix, C64};
use crate::quantum::{DensityMatrix, Povm, QuantumOperation};
use crate::{Error, Result};

pub type CircuitRng = Xoshiro256PlusPlus;

pub fn rng_from_seed(seed: u64) -> CircuitRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut CircuitRng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_gaussian(rng: &mut CircuitRng) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut CircuitRng) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::new(rows, cols, data).expect("finite gaussian draws")
}

/// Random `rows x cols` matrix with orthonormal rows (`U U* = 1`).
///
/// Rows of a complex Gaussian matrix are orthonormalized by two passes of
/// modified Gram-Schmidt.
pub fn semi_unitary(rows: usize, cols: usize, rng: &mut CircuitRng) -> Result<ComplexMatrix> {
    if rows > cols {
        return Err(Error::InvalidArgument(format!(
            "semi-unitary needs rows <= cols, got {}x{}",
            rows, cols
        )));
    }
    let g = gaussian_matrix(rows, cols, rng);
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut v = g.row(i).to_vec();
        for _ in 0..2 {
            for b in &basis {
                let proj: C64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return Err(Error::InvalidArgument(
                "degenerate draw during orthonormalization".into(),
            ));
        }
        v.iter_mut().for_each(|z| *z /= norm);
        basis.push(v);
    }
    ComplexMatrix::from_rows(&basis)
}

pub fn unitary(n: usize, rng: &mut CircuitRng) -> ComplexMatrix {
    semi_unitary(n, n, rng).expect("square orthonormalization")
}

/// Unital operation `C^{in} -> C^{out}` with `kraus_count` operators
/// `K_j = sqrt(p_j) U_j S`, where `S` is a random `out x in` semi-unitary,
/// the `U_j` are random unitaries and `p` is a random probability vector.
///
/// Then `sum_j K_j K_j* = 1` and `sum_j K_j* K_j = S* S <= 1`. Both can only
/// hold when `out <= in`, which is therefore required.
pub fn unital_operation(
    in_dim: usize,
    out_dim: usize,
    kraus_count: usize,
    rng: &mut CircuitRng,
) -> Result<QuantumOperation> {
    if kraus_count == 0 || out_dim == 0 || out_dim > in_dim {
        return Err(Error::InvalidArgument(format!(
            "no valid unital map {} -> {} with {} Kraus operators",
            in_dim, out_dim, kraus_count
        )));
    }
    let s = semi_unitary(out_dim, in_dim, rng)?;
    let p = simplex(kraus_count, rng);
    let kraus = p
        .iter()
        .map(|&pj| {
            let u = unitary(out_dim, rng);
            u.matmul(&s).map(|k| k.scale_real(pj.sqrt()))
        })
        .collect::<Result<Vec<_>>>()?;
    QuantumOperation::new(kraus)
}

fn column_block(m: &ComplexMatrix, start: usize, width: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(m.rows(), width);
    for i in 0..m.rows() {
        for j in 0..width {
            out[(i, j)] = m[(i, start + j)];
        }
    }
    out
}

/// POVM with `outcomes` elements on `C^dim`: `E_i = B_i B_i*` where the `B_i`
/// are column blocks of a random semi-unitary `dim x (outcomes * dim)` matrix.
pub fn povm(dim: usize, outcomes: usize, rng: &mut CircuitRng) -> Result<Povm> {
    let v = semi_unitary(dim, outcomes * dim, rng)?;
    let elements = (0..outcomes)
        .map(|i| {
            let b = column_block(&v, i * dim, dim);
            let e = b.matmul(&b.conj_transpose()).expect("square");
            e.hermitian_part().expect("square")
        })
        .collect();
    Povm::new(elements)
}

/// Random full-rank density matrix `G G* / Tr[G G*]`.
pub fn density(dim: usize, rng: &mut CircuitRng) -> DensityMatrix {
    let g = gaussian_matrix(dim, dim, rng);
    let gg = g.matmul(&g.conj_transpose()).expect("square");
    let tr = gg.trace().expect("square").re;
    let rho = gg.scale_real(1.0 / tr).hermitian_part().expect("square");
    DensityMatrix::new_unchecked(rho)
}

/// Probability vector from a softmax of Gaussian draws.
pub fn simplex(len: usize, rng: &mut CircuitRng) -> Vec<f64> {
    let logits: Vec<f64> = (0..len).map(|_| gaussian(rng)).collect();
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exp: Vec<f64> = logits.iter().map(|l| (l - max).exp()).collect();
    let total: f64 = exp.iter().sum();
    exp.into_iter().map(|e| e / total).collect()
}

/// Row-stochastic `rows x cols` matrix.
pub fn row_stochastic(rows: usize, cols: usize, rng: &mut CircuitRng) -> Vec<Vec<f64>> {
    (0..rows).map(|_| simplex(cols, rng)).collect()
}

pub fn uniform_in(lo: usize, hi: usize, rng: &mut CircuitRng) -> usize {
    rng.random_range(lo..=hi)
}

pub fn unit_interval(rng: &mut CircuitRng) -> f64 {
    rng.random::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semi_unitary_rows_are_orthonormal() {
        let mut rng = rng_from_seed(7);
        for (r, c) in [(1, 1), (2, 5), (4, 4), (3, 12)] {
            let u = semi_unitary(r, c, &mut rng).unwrap();
            assert!(u.is_semi_unitary(1e-12).unwrap());
        }
    }

    #[test]
    fn unital_operation_is_unital() {
        let mut rng = rng_from_seed(11);
        let op = unital_operation(4, 3, 2, &mut rng).unwrap();
        assert!(op.is_unital(1e-12));
        assert!(op.check_validity(1e-12));
        assert!(unital_operation(2, 3, 2, &mut rng).is_err());
    }

    #[test]
    fn random_povm_is_complete() {
        let mut rng = rng_from_seed(3);
        let p = povm(3, 4, &mut rng).unwrap();
        assert!(p.validate(1e-12).is_valid());
    }

    #[test]
    fn same_seed_same_draws() {
        let a = gaussian_matrix(3, 3, &mut rng_from_seed(42));
        let b = gaussian_matrix(3, 3, &mut rng_from_seed(42));
        assert_eq!(a, b);
    }
}
