//! Structured-decomposable positive unital circuits over a partition tree.
//!
//! Leaves emit POVM elements `E_{x_k}`; internal nodes emit
//! `Phi_k(O_l ⊗ O_r)` (or `Phi_k(O_l ∘ O_r)` in Hadamard mode). The root
//! operator paired with a density matrix gives `p(x) = Tr[O(x) rho]`.

use crate::assignment::{check_assignment, check_evidence, MarginalQuery};
use crate::linalg::{ComplexMatrix, PartialPermutation};
use crate::partition::{CombineMode, NodeId, NodeKind, PartitionCircuit};
use crate::quantum::{real_probability, trace_product, DensityMatrix, Povm, QuantumOperation};
use crate::report::{Report, ViolationKind};
use crate::{Error, Result};

/// Per-node parameters, parallel to the tree's node array.
#[derive(Debug, Clone, PartialEq)]
pub enum SdParam {
    Leaf(Povm),
    Internal(QuantumOperation),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdPunc {
    tree: PartitionCircuit,
    params: Vec<SdParam>,
    rho: DensityMatrix,
    dims: Vec<usize>,
}

/// Per-node operators of one forward pass.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub operators: Vec<ComplexMatrix>,
    /// Number of combine and channel applications performed.
    pub matrix_ops: usize,
}

impl Evaluation {
    /// Operator of the root, which always has the largest id.
    pub fn root(&self) -> &ComplexMatrix {
        self.operators.last().expect("non-empty tree")
    }
}

pub(crate) fn combine(
    mode: CombineMode,
    left: &ComplexMatrix,
    right: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    match mode {
        CombineMode::Kronecker => left.kron(right),
        CombineMode::Hadamard => left.hadamard(right),
    }
}

pub(crate) fn combined_dim(mode: CombineMode, left: usize, right: usize) -> Option<usize> {
    match mode {
        CombineMode::Kronecker => Some(left * right),
        CombineMode::Hadamard => (left == right).then_some(left),
    }
}

impl SdPunc {
    /// Checks that parameters match the tree and that dimensions chain from
    /// the leaves to `rho`. Positivity, completeness and unitality are left to
    /// [`SdPunc::validate`].
    pub fn new(tree: PartitionCircuit, params: Vec<SdParam>, rho: DensityMatrix) -> Result<Self> {
        if params.len() != tree.len() {
            return Err(Error::InvalidArgument(format!(
                "{} parameter sets for {} nodes",
                params.len(),
                tree.len()
            )));
        }
        let mut report = Report::new();
        let mut dims = vec![0usize; tree.len()];
        for node in tree.nodes() {
            let loc = Some(format!("node {}", node.id));
            match (&node.kind, &params[node.id]) {
                (NodeKind::Leaf { cardinality, .. }, SdParam::Leaf(povm)) => {
                    if povm.outcomes() != *cardinality {
                        report.push(
                            ViolationKind::CardinalityMismatch,
                            loc,
                            0.0,
                            format!(
                                "{} POVM elements for cardinality {}",
                                povm.outcomes(),
                                cardinality
                            ),
                        );
                    }
                    dims[node.id] = povm.dim();
                }
                (NodeKind::Internal { left, right, mode }, SdParam::Internal(op)) => {
                    let expected = combined_dim(*mode, dims[*left], dims[*right]);
                    if expected != Some(op.in_dim()) {
                        report.push(
                            ViolationKind::DimensionMismatch,
                            loc,
                            0.0,
                            format!(
                                "operation input {} does not fit children {} and {} ({:?})",
                                op.in_dim(),
                                dims[*left],
                                dims[*right],
                                mode
                            ),
                        );
                    }
                    dims[node.id] = op.out_dim();
                }
                _ => report.push(
                    ViolationKind::Structure,
                    loc,
                    0.0,
                    "parameter kind does not match node kind",
                ),
            }
        }
        if rho.dim() != dims[tree.root()] {
            report.push(
                ViolationKind::DimensionMismatch,
                Some("rho".into()),
                0.0,
                format!(
                    "density matrix of size {} for root dimension {}",
                    rho.dim(),
                    dims[tree.root()]
                ),
            );
        }
        report.into_result()?;
        Ok(Self {
            tree,
            params,
            rho,
            dims,
        })
    }

    pub fn tree(&self) -> &PartitionCircuit {
        &self.tree
    }

    pub fn params(&self) -> &[SdParam] {
        &self.params
    }

    pub fn param(&self, id: NodeId) -> Result<&SdParam> {
        self.params.get(id).ok_or(Error::UnknownNode(id))
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn cardinalities(&self) -> &[usize] {
        self.tree.cardinalities()
    }

    pub fn num_vars(&self) -> usize {
        self.tree.num_vars()
    }

    /// Output dimension of every node.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn leaf_povm(&self, id: NodeId) -> Option<&Povm> {
        match self.params.get(id)? {
            SdParam::Leaf(p) => Some(p),
            SdParam::Internal(_) => None,
        }
    }

    pub fn operation(&self, id: NodeId) -> Option<&QuantumOperation> {
        match self.params.get(id)? {
            SdParam::Internal(op) => Some(op),
            SdParam::Leaf(_) => None,
        }
    }

    /// Lists every violated POVM, unitality and density-matrix invariant.
    pub fn validate(&self, tol: f64) -> Report {
        let mut report = Report::new();
        for (id, param) in self.params.iter().enumerate() {
            let sub = match param {
                SdParam::Leaf(p) => p.validate(tol),
                SdParam::Internal(op) => op.validate_unital(tol),
            };
            report.absorb(&format!("node {}", id), sub);
        }
        report.absorb("", self.rho.validate(tol));
        for v in &mut report.violations {
            if let Some(loc) = &v.location {
                v.location = Some(loc.trim().to_string());
            }
        }
        report
    }

    /// One forward pass. `None` entries are marginalized: their leaves emit
    /// the identity instead of a POVM element.
    pub fn evaluate_traced(&self, x: &[Option<usize>]) -> Result<Evaluation> {
        check_evidence(x, self.cardinalities())?;
        let mut operators: Vec<ComplexMatrix> = Vec::with_capacity(self.tree.len());
        let mut matrix_ops = 0;
        for node in self.tree.nodes() {
            let op = match (&node.kind, &self.params[node.id]) {
                (NodeKind::Leaf { var, .. }, SdParam::Leaf(povm)) => match x[*var] {
                    Some(value) => povm.elements()[value].clone(),
                    None => ComplexMatrix::identity(povm.dim()),
                },
                (NodeKind::Internal { left, right, mode }, SdParam::Internal(phi)) => {
                    let joint = combine(*mode, &operators[*left], &operators[*right])?;
                    matrix_ops += 2;
                    phi.apply(&joint)?
                }
                _ => unreachable!("checked at construction"),
            };
            operators.push(op);
        }
        Ok(Evaluation {
            operators,
            matrix_ops,
        })
    }

    /// `O(x)` for a total assignment.
    pub fn evaluate(&self, x: &[usize]) -> Result<ComplexMatrix> {
        Ok(self.evaluate_nodes(x)?.swap_remove(self.tree.root()))
    }

    /// Operators of every node for a total assignment, indexed by node id.
    pub fn evaluate_nodes(&self, x: &[usize]) -> Result<Vec<ComplexMatrix>> {
        check_assignment(x, self.cardinalities())?;
        let partial: Vec<Option<usize>> = x.iter().map(|&v| Some(v)).collect();
        Ok(self.evaluate_traced(&partial)?.operators)
    }

    /// `Tr[O(x) rho]`, clamped to `[0, 1]`.
    pub fn probability(&self, x: &[usize]) -> Result<f64> {
        check_assignment(x, self.cardinalities())?;
        let partial: Vec<Option<usize>> = x.iter().map(|&v| Some(v)).collect();
        self.marginal_partial(&partial)
    }

    /// Sum of probabilities over all completions of the evidence, computed
    /// in a single pass with identities at the marginalized leaves.
    pub fn marginal(&self, q: &MarginalQuery) -> Result<f64> {
        let n = self.num_vars();
        let checked = MarginalQuery::new(q.evidence.clone(), q.marginalized.clone(), n)?;
        self.marginal_partial(&checked.to_partial(n))
    }

    pub fn marginal_partial(&self, x: &[Option<usize>]) -> Result<f64> {
        let eval = self.evaluate_traced(x)?;
        let root = &eval.operators[self.tree.root()];
        real_probability(trace_product(root, self.rho.matrix())?)
    }

    /// Equivalent circuit in which every Hadamard node is rewritten as a
    /// Kronecker node with Kraus operators `K_i P`, where `P` selects the
    /// diagonal positions of the Kronecker space.
    pub fn to_kronecker(&self) -> Result<Self> {
        let tree = self.tree.with_mode(CombineMode::Kronecker);
        let mut params = self.params.clone();
        for node in self.tree.nodes() {
            if let NodeKind::Internal {
                left,
                mode: CombineMode::Hadamard,
                ..
            } = node.kind
            {
                let p = PartialPermutation::hadamard_selector(self.dims[left])?;
                if let SdParam::Internal(op) = &self.params[node.id] {
                    params[node.id] = SdParam::Internal(op.precompose(&p.matrix())?);
                }
            }
        }
        Self::new(tree, params, self.rho.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::TreeSpec;
    use std::collections::{BTreeMap, BTreeSet};

    fn two_var_projector_circuit() -> SdPunc {
        let tree = PartitionCircuit::build(&"(0,1)".parse().unwrap(), &[2, 2]).unwrap();
        let params = vec![
            SdParam::Leaf(Povm::computational_basis(2)),
            SdParam::Leaf(Povm::computational_basis(2)),
            SdParam::Internal(QuantumOperation::identity(4)),
        ];
        SdPunc::new(tree, params, DensityMatrix::maximally_mixed(4)).unwrap()
    }

    #[test]
    fn scalar_circuit_is_a_product() {
        let tree = PartitionCircuit::build(&"(0,1)".parse().unwrap(), &[2, 2]).unwrap();
        let params = vec![
            SdParam::Leaf(Povm::scalar(&[0.3, 0.7]).unwrap()),
            SdParam::Leaf(Povm::scalar(&[0.6, 0.4]).unwrap()),
            SdParam::Internal(QuantumOperation::identity(1)),
        ];
        let c = SdPunc::new(tree, params, DensityMatrix::maximally_mixed(1)).unwrap();
        assert!(c.validate(1e-12).is_valid());
        let o = c.evaluate(&[1, 0]).unwrap();
        assert!((o[(0, 0)].re - 0.42).abs() < 1e-15);
        assert!((c.probability(&[0, 1]).unwrap() - 0.12).abs() < 1e-15);
    }

    #[test]
    fn projector_leaves_give_kronecker_projectors() {
        let c = two_var_projector_circuit();
        let o = c.evaluate(&[1, 0]).unwrap();
        let expected = ComplexMatrix::basis_projector(2, 1)
            .kron(&ComplexMatrix::basis_projector(2, 0))
            .unwrap();
        assert_eq!(o, expected);
        for x in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            assert!((c.probability(&x).unwrap() - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn marginal_edge_cases() {
        let c = two_var_projector_circuit();
        let all = MarginalQuery::new(BTreeMap::new(), BTreeSet::from([0, 1]), 2).unwrap();
        assert!((c.marginal(&all).unwrap() - 1.0).abs() < 1e-12);
        let none =
            MarginalQuery::new(BTreeMap::from([(0, 1), (1, 1)]), BTreeSet::new(), 2).unwrap();
        assert_eq!(c.marginal(&none).unwrap(), c.probability(&[1, 1]).unwrap());
        let bad = MarginalQuery {
            evidence: BTreeMap::from([(0, 1)]),
            marginalized: BTreeSet::new(),
        };
        assert!(matches!(c.marginal(&bad), Err(Error::BadPartition(_))));
    }

    #[test]
    fn validate_names_offending_nodes() {
        let tree = PartitionCircuit::build(&"(0,1)".parse().unwrap(), &[2, 2]).unwrap();
        let bad_leaf = Povm::new(vec![
            ComplexMatrix::from_real_diag(&[1.0, 0.0]),
            ComplexMatrix::from_real_diag(&[0.0, 0.9]),
        ])
        .unwrap();
        let params = vec![
            SdParam::Leaf(Povm::computational_basis(2)),
            SdParam::Leaf(bad_leaf),
            SdParam::Internal(QuantumOperation::identity(4).scaled(2.0)),
        ];
        let c = SdPunc::new(tree, params, DensityMatrix::maximally_mixed(4)).unwrap();
        let report = c.validate(1e-9);
        let povm = report
            .violations
            .iter()
            .find(|v| v.kind == ViolationKind::PovmIncomplete)
            .unwrap();
        assert_eq!(povm.location.as_deref(), Some("node 1"));
        let unital = report
            .violations
            .iter()
            .find(|v| v.kind == ViolationKind::NotUnital)
            .unwrap();
        assert_eq!(unital.location.as_deref(), Some("node 2"));
    }

    #[test]
    fn dimension_errors_at_construction() {
        let tree = PartitionCircuit::build(&"(0,1)".parse().unwrap(), &[2, 2]).unwrap();
        let params = vec![
            SdParam::Leaf(Povm::computational_basis(2)),
            SdParam::Leaf(Povm::computational_basis(2)),
            SdParam::Internal(QuantumOperation::identity(3)),
        ];
        assert!(SdPunc::new(tree, params, DensityMatrix::maximally_mixed(3)).is_err());
    }

    #[test]
    fn evaluation_rejects_bad_assignments() {
        let c = two_var_projector_circuit();
        assert!(matches!(c.evaluate(&[0]), Err(Error::ArityMismatch { .. })));
        assert!(matches!(
            c.probability(&[0, 5]),
            Err(Error::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn hadamard_node_matches_rewrite() {
        let tree = PartitionCircuit::build(
            &TreeSpec::hadamard(TreeSpec::leaf(0), TreeSpec::leaf(1)),
            &[2, 2],
        )
        .unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).unwrap();
        let params = vec![
            SdParam::Leaf(Povm::computational_basis(2)),
            SdParam::Leaf(Povm::computational_basis(2)),
            SdParam::Internal(QuantumOperation::new(vec![u]).unwrap()),
        ];
        let rho = DensityMatrix::new(
            ComplexMatrix::from_real(2, 2, &[0.7, 0.1, 0.1, 0.3]).unwrap(),
            1e-9,
        )
        .unwrap();
        let c = SdPunc::new(tree, params, rho).unwrap();
        let k = c.to_kronecker().unwrap();
        assert_eq!(k.operation(2).unwrap().in_dim(), 4);
        for x in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let a = c.evaluate(&x).unwrap();
            let b = k.evaluate(&x).unwrap();
            assert!(a.max_abs_diff(&b).unwrap() < 1e-14);
        }
        // Off-diagonal outcomes vanish: e_0 e_0* ∘ e_1 e_1* = 0.
        assert!(c.evaluate(&[0, 1]).unwrap().max_abs() < 1e-15);
    }
}
