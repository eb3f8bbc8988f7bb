//! Diagonal operations and the correspondence between partition-tree
//! probabilistic circuits and diagonal PUnCs.

use crate::families::prob::{ProbCircuitPT, ProbParam};
use crate::linalg::{ComplexMatrix, C64};
use crate::quantum::{DensityMatrix, Povm, QuantumOperation};
use crate::sd_punc::{SdParam, SdPunc};
use crate::{Error, Result};

/// Off-diagonal magnitude above which a matrix is not treated as diagonal.
pub const DIAGONAL_TOL: f64 = 1e-10;

/// Diagonal factors `D_j`, one per output dimension, each stored as its diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOperation {
    factors: Vec<Vec<C64>>,
}

impl DiagonalOperation {
    pub fn new(factors: Vec<Vec<C64>>) -> Result<Self> {
        let width = factors.first().map_or(0, Vec::len);
        if width == 0 || factors.iter().any(|f| f.len() != width) {
            return Err(Error::InvalidArgument(
                "diagonal factors must be non-empty and equally sized".into(),
            ));
        }
        Ok(Self { factors })
    }

    pub fn from_real(factors: &[Vec<f64>]) -> Result<Self> {
        Self::new(
            factors
                .iter()
                .map(|f| f.iter().map(|&v| C64::new(v, 0.0)).collect())
                .collect(),
        )
    }

    pub fn factors(&self) -> &[Vec<C64>] {
        &self.factors
    }

    pub fn in_dim(&self) -> usize {
        self.factors[0].len()
    }

    pub fn out_dim(&self) -> usize {
        self.factors.len()
    }
}

/// `rows x cols` matrix that is zero except for row `row`, which is all ones.
pub fn row_selector(row: usize, rows: usize, cols: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    for c in 0..cols {
        m[(row, c)] = C64::new(1.0, 0.0);
    }
    m
}

/// Kraus set `{J_j D_j}`. Fails when some `Tr[D_j D_j*]` differs from one.
pub fn make_diagonal_operation(d: &DiagonalOperation, tol: f64) -> Result<QuantumOperation> {
    let (rows, cols) = (d.out_dim(), d.in_dim());
    let mut kraus = Vec::with_capacity(rows);
    for (j, f) in d.factors.iter().enumerate() {
        let trace: f64 = f.iter().map(|z| z.norm_sqr()).sum();
        if (trace - 1.0).abs() > tol {
            return Err(Error::TraceCondition { index: j, trace });
        }
        kraus.push(row_selector(j, rows, cols).matmul(&ComplexMatrix::from_diag(f))?);
    }
    QuantumOperation::new(kraus)
}

/// Diagonal PUnC with leaves `diag(P_x)`, factors `D_i = diag(sqrt(W_i))`
/// and `rho = diag(1, 0, ..., 0)`.
pub fn pc_to_diagonal_punc(c: &ProbCircuitPT, tol: f64) -> Result<SdPunc> {
    c.validate(tol).into_result()?;
    let mut params = Vec::with_capacity(c.tree().len());
    for param in c.params() {
        params.push(match param {
            ProbParam::Leaf(table) => SdParam::Leaf(Povm::new(
                table
                    .iter()
                    .map(|p| ComplexMatrix::from_real_diag(&clamp_nonneg(p)))
                    .collect(),
            )?),
            ProbParam::Internal(w) => {
                let factors: Vec<Vec<f64>> = w
                    .iter()
                    .map(|row| clamp_nonneg(row).iter().map(|v| v.sqrt()).collect())
                    .collect();
                // Rows are normalized up to `tol`; rescale so the trace condition is exact.
                let factors: Vec<Vec<f64>> = factors
                    .into_iter()
                    .map(|f| {
                        let n = f.iter().map(|v| v * v).sum::<f64>().sqrt();
                        f.into_iter().map(|v| v / n).collect()
                    })
                    .collect();
                SdParam::Internal(make_diagonal_operation(
                    &DiagonalOperation::from_real(&factors)?,
                    tol.max(1e-12),
                )?)
            }
        });
    }
    let m = c.dims()[c.tree().root()];
    SdPunc::new(c.tree().clone(), params, DensityMatrix::basis_state(m, 0))
}

fn clamp_nonneg(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| x.max(0.0)).collect()
}

fn require_diagonal(m: &ComplexMatrix, what: impl FnOnce() -> String) -> Result<Vec<f64>> {
    if m.max_off_diagonal() > DIAGONAL_TOL {
        return Err(Error::NotDiagonal(what()));
    }
    Ok(m.diagonal().iter().map(|z| z.re).collect())
}

/// Reads a PC off a PUnC whose leaves are diagonal and whose operations map
/// diagonal matrices to diagonal matrices. `W_{ij} = sum_k |K_k[i, j]|^2`.
/// A diagonal `rho` other than `e_0 e_0*` is folded into a one-row root.
pub fn diagonal_punc_to_pc(c: &SdPunc) -> Result<ProbCircuitPT> {
    let tree = c.tree();
    let mut params = Vec::with_capacity(tree.len());
    for node in tree.nodes() {
        params.push(match c.param(node.id)? {
            SdParam::Leaf(povm) => ProbParam::Leaf(
                povm.elements()
                    .iter()
                    .enumerate()
                    .map(|(x, e)| require_diagonal(e, || format!("node {} element {}", node.id, x)))
                    .collect::<Result<_>>()?,
            ),
            SdParam::Internal(op) => ProbParam::Internal(diagonal_weights(op, node.id)?),
        });
    }
    let r = require_diagonal(c.rho().matrix(), || "rho".into())?;
    let selects_first = (r[0] - 1.0).abs() <= 1e-12 && r[1..].iter().all(|v| v.abs() <= 1e-12);
    if !selects_first {
        let root = tree.root();
        params[root] = match &params[root] {
            ProbParam::Leaf(table) => {
                ProbParam::Leaf(table.iter().map(|p| vec![dot(&r, p)]).collect())
            }
            ProbParam::Internal(w) => {
                let cols = w[0].len();
                ProbParam::Internal(vec![(0..cols)
                    .map(|j| w.iter().zip(&r).map(|(row, ri)| ri * row[j]).sum())
                    .collect()])
            }
        };
    }
    ProbCircuitPT::new(tree.clone(), params)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn diagonal_weights(op: &QuantumOperation, id: usize) -> Result<Vec<Vec<f64>>> {
    let (rows, cols) = (op.out_dim(), op.in_dim());
    let mut w = vec![vec![0.0; cols]; rows];
    for j in 0..cols {
        // Image of e_j e_j* must be diagonal.
        for a in 0..rows {
            for b in 0..rows {
                let z: C64 = op
                    .kraus()
                    .iter()
                    .map(|k| k[(a, j)] * k[(b, j)].conj())
                    .sum();
                if a == b {
                    w[a][j] = z.re;
                } else if z.norm() > DIAGONAL_TOL {
                    return Err(Error::NotDiagonal(format!(
                        "node {} maps a diagonal input to a non-diagonal output",
                        id
                    )));
                }
            }
        }
    }
    Ok(w)
}

/// `true` when every intermediate operator for `x` is diagonal.
pub fn operators_are_diagonal(c: &SdPunc, x: &[usize], tol: f64) -> Result<bool> {
    Ok(c.evaluate_nodes(x)?
        .iter()
        .all(|m| m.max_off_diagonal() <= tol))
}
