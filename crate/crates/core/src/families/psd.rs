//! PSD circuits: vector-valued units `V_k = U_k (V_l ⊗ V_r)` with semi-unitary `U_k`.

use crate::assignment::{check_assignment, check_evidence};
use crate::linalg::{ComplexMatrix, C64};
use crate::partition::{NodeKind, PartitionCircuit};
use crate::quantum::{real_probability, trace_product, DensityMatrix, Povm, QuantumOperation};
use crate::report::{Report, ViolationKind};
use crate::sd_punc::{combine, combined_dim, SdParam, SdPunc};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PsdCircuit {
    tree: PartitionCircuit,
    /// Leaf `k`: `d_k x |X_k|`; internal `k`: `d_k x d_in`.
    mats: Vec<ComplexMatrix>,
    rho: DensityMatrix,
    dims: Vec<usize>,
}

impl PsdCircuit {
    pub fn new(
        tree: PartitionCircuit,
        mats: Vec<ComplexMatrix>,
        rho: DensityMatrix,
    ) -> Result<Self> {
        if mats.len() != tree.len() {
            return Err(Error::InvalidArgument(format!(
                "{} matrices for {} nodes",
                mats.len(),
                tree.len()
            )));
        }
        let mut report = Report::new();
        let mut dims = vec![0; tree.len()];
        for node in tree.nodes() {
            let m = &mats[node.id];
            let expected_cols = match node.kind {
                NodeKind::Leaf { cardinality, .. } => Some(cardinality),
                NodeKind::Internal { left, right, mode } => {
                    combined_dim(mode, dims[left], dims[right])
                }
            };
            if expected_cols != Some(m.cols()) {
                report.push(
                    ViolationKind::DimensionMismatch,
                    Some(format!("node {}", node.id)),
                    0.0,
                    format!(
                        "matrix has {} columns, expected {:?}",
                        m.cols(),
                        expected_cols
                    ),
                );
            }
            dims[node.id] = m.rows();
        }
        if rho.dim() != dims[tree.root()] {
            report.push(
                ViolationKind::DimensionMismatch,
                Some("rho".into()),
                0.0,
                "density matrix does not match the root dimension",
            );
        }
        report.into_result()?;
        Ok(Self {
            tree,
            mats,
            rho,
            dims,
        })
    }

    pub fn tree(&self) -> &PartitionCircuit {
        &self.tree
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.mats
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cardinalities(&self) -> &[usize] {
        self.tree.cardinalities()
    }

    /// Reports matrices that are not semi-unitary and an invalid `rho`.
    pub fn validate(&self, tol: f64) -> Report {
        let mut report = Report::new();
        for (id, m) in self.mats.iter().enumerate() {
            let loc = Some(format!("node {}", id));
            match m.is_semi_unitary(tol) {
                Ok(true) => {}
                Ok(false) => {
                    let r = m
                        .matmul(&m.conj_transpose())
                        .and_then(|g| g.identity_residual())
                        .unwrap_or(f64::INFINITY);
                    report.push(ViolationKind::NotSemiUnitary, loc, r, "U U* != 1");
                }
                Err(_) => report.push(
                    ViolationKind::NotSemiUnitary,
                    loc,
                    0.0,
                    "more rows than columns",
                ),
            }
        }
        report.absorb("", self.rho.validate(tol));
        report
    }

    /// Unit vectors `V_k(x)` for every node, as column matrices.
    pub fn eval_nodes(&self, x: &[usize]) -> Result<Vec<ComplexMatrix>> {
        check_assignment(x, self.cardinalities())?;
        let mut out: Vec<ComplexMatrix> = Vec::with_capacity(self.tree.len());
        for node in self.tree.nodes() {
            let u = &self.mats[node.id];
            let v = match node.kind {
                NodeKind::Leaf { var, .. } => {
                    let mut e = ComplexMatrix::zeros(u.cols(), 1);
                    e[(x[var], 0)] = C64::new(1.0, 0.0);
                    u.matmul(&e)?
                }
                NodeKind::Internal { left, right, mode } => {
                    u.matmul(&combine(mode, &out[left], &out[right])?)?
                }
            };
            out.push(v);
        }
        Ok(out)
    }

    /// Root vector and `p(x) = V* rho V`.
    pub fn eval(&self, x: &[usize]) -> Result<(Vec<C64>, f64)> {
        let mut nodes = self.eval_nodes(x)?;
        let v = nodes.swap_remove(self.tree.root());
        let p = v.conj_transpose().matmul(self.rho.matrix())?.matmul(&v)?[(0, 0)];
        Ok((v.data().to_vec(), real_probability(p)?))
    }

    pub fn probability(&self, x: &[usize]) -> Result<f64> {
        Ok(self.eval(x)?.1)
    }

    /// Operator pass `O_k = U_k (O_l ⊗ O_r) U_k*`. A marginalized leaf emits
    /// `sum_x U e_x e_x* U* = U U*`.
    pub fn marginal_partial(&self, x: &[Option<usize>]) -> Result<f64> {
        check_evidence(x, self.cardinalities())?;
        let mut ops: Vec<ComplexMatrix> = Vec::with_capacity(self.tree.len());
        for node in self.tree.nodes() {
            let u = &self.mats[node.id];
            let inner = match node.kind {
                NodeKind::Leaf { var, .. } => match x[var] {
                    Some(v) => ComplexMatrix::basis_projector(u.cols(), v),
                    None => ComplexMatrix::identity(u.cols()),
                },
                NodeKind::Internal { left, right, mode } => combine(mode, &ops[left], &ops[right])?,
            };
            ops.push(u.matmul(&inner)?.matmul(&u.conj_transpose())?);
        }
        real_probability(trace_product(&ops[self.tree.root()], self.rho.matrix())?)
    }
}

/// Pure PUnC with single-Kraus operations `K_k = U_k` and leaves
/// `E_x = U_k e_x e_x* U_k*`.
pub fn psd_to_pure_punc(c: &PsdCircuit, tol: f64) -> Result<SdPunc> {
    let mut params = Vec::with_capacity(c.tree.len());
    for node in c.tree.nodes() {
        let u = &c.mats[node.id];
        let ok = u.is_semi_unitary(tol).unwrap_or(false);
        if !ok {
            return Err(Error::NotSemiUnitary(format!("node {}", node.id)));
        }
        params.push(match node.kind {
            NodeKind::Leaf { cardinality, .. } => {
                let elements = (0..cardinality)
                    .map(|x| {
                        let mut col = ComplexMatrix::zeros(u.rows(), 1);
                        for i in 0..u.rows() {
                            col[(i, 0)] = u[(i, x)];
                        }
                        col.matmul(&col.conj_transpose())
                    })
                    .collect::<Result<Vec<_>>>()?;
                SdParam::Leaf(Povm::new(elements)?)
            }
            NodeKind::Internal { .. } => SdParam::Internal(QuantumOperation::new(vec![u.clone()])?),
        });
    }
    SdPunc::new(c.tree.clone(), params, c.rho.clone())
}
