//! Decomposable PUnCs over DAGs of leaf, product and sum units.
//!
//! Products take the Kronecker product of their two inputs. Sum units carry
//! one weighted unital operation per incoming edge and output
//! `sum_j w_j Phi_j(o_j)`.

mod scalar;
pub mod skeleton;

use std::collections::{BTreeMap, BTreeSet};

pub use scalar::{eval_dprob_circuit, DProbCircuit, DProbUnit};

use crate::assignment::{check_assignment, check_evidence, MarginalQuery};
use crate::linalg::{ComplexMatrix, C64};
use crate::partition::{NodeId, NodeKind};
use crate::quantum::{real_probability, trace_product, DensityMatrix, Povm, QuantumOperation};
use crate::report::{Report, ViolationKind};
use crate::sd_punc::{SdParam, SdPunc};
use crate::{Error, Result};

pub type UnitId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct SumEdge {
    pub input: UnitId,
    pub weight: f64,
    pub op: QuantumOperation,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DUnit {
    Leaf { var: usize, povm: Povm },
    Product { left: UnitId, right: UnitId },
    Sum { edges: Vec<SumEdge> },
}

impl DUnit {
    pub fn inputs(&self) -> Vec<UnitId> {
        match self {
            DUnit::Leaf { .. } => Vec::new(),
            DUnit::Product { left, right } => vec![*left, *right],
            DUnit::Sum { edges } => edges.iter().map(|e| e.input).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DPunc {
    cardinalities: Vec<usize>,
    units: Vec<DUnit>,
    root: UnitId,
    rho: DensityMatrix,
}

/// Root operator of one pass and the number of units computed.
#[derive(Debug, Clone)]
pub struct DEvaluation {
    pub value: ComplexMatrix,
    pub units_evaluated: usize,
}

/// Post-order of the units reachable from `starts`; fails on a cycle.
pub(crate) fn post_order(
    starts: impl IntoIterator<Item = usize>,
    inputs: impl Fn(usize) -> Vec<usize>,
    len: usize,
) -> Result<Vec<usize>> {
    // 0 = unseen, 1 = on stack, 2 = done
    let mut state = vec![0u8; len];
    let mut order = Vec::new();
    for start in starts {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, inputs(start), 0usize)];
        state[start] = 1;
        while let Some((unit, ins, pos)) = stack.last_mut() {
            if let Some(&next) = ins.get(*pos) {
                *pos += 1;
                match state[next] {
                    0 => {
                        state[next] = 1;
                        let next_ins = inputs(next);
                        stack.push((next, next_ins, 0));
                    }
                    1 => return Err(Error::Cycle(next)),
                    _ => {}
                }
            } else {
                state[*unit] = 2;
                order.push(*unit);
                stack.pop();
            }
        }
    }
    Ok(order)
}

impl DPunc {
    /// Only checks that unit references are in range, so that cyclic or
    /// otherwise invalid circuits can still be built and passed to
    /// [`DPunc::validate`].
    pub fn new(
        cardinalities: Vec<usize>,
        units: Vec<DUnit>,
        root: UnitId,
        rho: DensityMatrix,
    ) -> Result<Self> {
        let n = units.len();
        if root >= n {
            return Err(Error::UnknownNode(root));
        }
        for (id, unit) in units.iter().enumerate() {
            if let Some(bad) = unit.inputs().into_iter().find(|&i| i >= n) {
                return Err(Error::InvalidArgument(format!(
                    "unit {} refers to missing unit {}",
                    id, bad
                )));
            }
            if let DUnit::Leaf { var, .. } = unit {
                if *var >= cardinalities.len() {
                    return Err(Error::InvalidArgument(format!(
                        "unit {} uses unknown variable {}",
                        id, var
                    )));
                }
            }
        }
        Ok(Self {
            cardinalities,
            units,
            root,
            rho,
        })
    }

    pub fn cardinalities(&self) -> &[usize] {
        &self.cardinalities
    }

    pub fn num_vars(&self) -> usize {
        self.cardinalities.len()
    }

    pub fn units(&self) -> &[DUnit] {
        &self.units
    }

    pub fn root(&self) -> UnitId {
        self.root
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    fn inputs_of(&self, id: UnitId) -> Vec<UnitId> {
        self.units[id].inputs()
    }

    /// Units reachable from the root, inputs before consumers.
    pub fn topological_order(&self) -> Result<Vec<UnitId>> {
        post_order([self.root], |u| self.inputs_of(u), self.units.len())
    }

    /// Scope of every unit. Sum scopes are the union of their input scopes.
    pub fn compute_scopes(&self) -> Result<Vec<BTreeSet<usize>>> {
        let order = post_order(0..self.units.len(), |u| self.inputs_of(u), self.units.len())?;
        let mut scopes = vec![BTreeSet::new(); self.units.len()];
        for id in order {
            scopes[id] = match &self.units[id] {
                DUnit::Leaf { var, .. } => BTreeSet::from([*var]),
                unit => unit
                    .inputs()
                    .iter()
                    .flat_map(|&i| scopes[i].iter().copied())
                    .collect(),
            };
        }
        Ok(scopes)
    }

    /// Output dimension of every unit, `None` where inputs disagree.
    fn dims(&self, order: &[UnitId]) -> Vec<Option<usize>> {
        let mut dims = vec![None; self.units.len()];
        for &id in order {
            dims[id] = match &self.units[id] {
                DUnit::Leaf { povm, .. } => Some(povm.dim()),
                DUnit::Product { left, right } => dims[*left].zip(dims[*right]).map(|(a, b)| a * b),
                DUnit::Sum { edges } => {
                    let outs: BTreeSet<usize> = edges.iter().map(|e| e.op.out_dim()).collect();
                    (outs.len() == 1).then(|| *outs.iter().next().expect("one element"))
                }
            };
        }
        dims
    }

    /// Acyclicity, decomposability and smoothness only.
    pub fn structural_report(&self) -> Report {
        let mut report = Report::new();
        let scopes = match self.compute_scopes() {
            Ok(s) => s,
            Err(Error::Cycle(u)) => {
                report.push(
                    ViolationKind::Cycle,
                    Some(format!("unit {}", u)),
                    0.0,
                    "unit is its own ancestor",
                );
                return report;
            }
            Err(e) => {
                report.push(ViolationKind::Structure, None, 0.0, e.to_string());
                return report;
            }
        };
        for (id, unit) in self.units.iter().enumerate() {
            let loc = || Some(format!("unit {}", id));
            match unit {
                DUnit::Product { left, right } => {
                    if !scopes[*left].is_disjoint(&scopes[*right]) {
                        report.push(
                            ViolationKind::NotDecomposable,
                            loc(),
                            0.0,
                            format!(
                                "inputs share variables {:?}",
                                scopes[*left]
                                    .intersection(&scopes[*right])
                                    .collect::<Vec<_>>()
                            ),
                        );
                    }
                }
                DUnit::Sum { edges } => {
                    if edges.is_empty() {
                        report.push(
                            ViolationKind::Structure,
                            loc(),
                            0.0,
                            "sum unit without inputs",
                        );
                    } else if edges
                        .iter()
                        .any(|e| scopes[e.input] != scopes[edges[0].input])
                    {
                        report.push(
                            ViolationKind::NotSmooth,
                            loc(),
                            0.0,
                            "inputs have different scopes",
                        );
                    }
                }
                DUnit::Leaf { .. } => {}
            }
        }
        let all: BTreeSet<usize> = (0..self.num_vars()).collect();
        if scopes[self.root] != all {
            report.push(
                ViolationKind::Structure,
                Some(format!("unit {}", self.root)),
                0.0,
                "root scope does not cover every variable",
            );
        }
        report
    }

    /// Every violated invariant. Numerical checks are skipped on cyclic circuits.
    pub fn validate(&self, tol: f64) -> Report {
        let mut report = self.structural_report();
        if report.has(ViolationKind::Cycle) {
            return report;
        }
        let order = post_order(0..self.units.len(), |u| self.inputs_of(u), self.units.len())
            .expect("acyclic");
        let dims = self.dims(&order);
        for (id, unit) in self.units.iter().enumerate() {
            let prefix = format!("unit {}", id);
            match unit {
                DUnit::Leaf { var, povm } => {
                    if povm.outcomes() != self.cardinalities[*var] {
                        report.push(
                            ViolationKind::CardinalityMismatch,
                            Some(prefix.clone()),
                            0.0,
                            format!(
                                "{} POVM elements for a variable with {} values",
                                povm.outcomes(),
                                self.cardinalities[*var]
                            ),
                        );
                    }
                    report.absorb(&prefix, povm.validate(tol));
                }
                DUnit::Product { .. } => {}
                DUnit::Sum { edges } => {
                    let total: f64 = edges.iter().map(|e| e.weight).sum();
                    if (total - 1.0).abs() > tol {
                        report.push(
                            ViolationKind::WeightSum,
                            Some(prefix.clone()),
                            (total - 1.0).abs(),
                            format!("weights sum to {}", total),
                        );
                    }
                    if dims[id].is_none() && !edges.is_empty() {
                        report.push(
                            ViolationKind::DimensionMismatch,
                            Some(prefix.clone()),
                            0.0,
                            "edge operations disagree on the output dimension",
                        );
                    }
                    for (j, e) in edges.iter().enumerate() {
                        let loc = format!("{} edge {}", prefix, j);
                        if e.weight < -tol || !e.weight.is_finite() {
                            report.push(
                                ViolationKind::NegativeWeight,
                                Some(loc.clone()),
                                -e.weight,
                                "",
                            );
                        }
                        if dims[e.input].is_some_and(|d| d != e.op.in_dim()) {
                            report.push(
                                ViolationKind::DimensionMismatch,
                                Some(loc.clone()),
                                0.0,
                                format!(
                                    "operation expects dimension {}, input has {:?}",
                                    e.op.in_dim(),
                                    dims[e.input]
                                ),
                            );
                        }
                        report.absorb(&loc, e.op.validate_unital(tol));
                    }
                }
            }
        }
        if dims[self.root] != Some(self.rho.dim()) {
            report.push(
                ViolationKind::DimensionMismatch,
                Some("rho".into()),
                0.0,
                format!(
                    "rho has dimension {}, root has {:?}",
                    self.rho.dim(),
                    dims[self.root]
                ),
            );
        }
        report.absorb("", self.rho.validate(tol));
        report
    }

    /// True iff all products with the same scope split it into the same
    /// unordered pair of child scopes.
    pub fn is_structured_decomposable(&self) -> Result<bool> {
        self.structural_report().into_result()?;
        let scopes = self.compute_scopes()?;
        let mut splits: BTreeMap<&BTreeSet<usize>, BTreeSet<&BTreeSet<usize>>> = BTreeMap::new();
        for (id, unit) in self.units.iter().enumerate() {
            if let DUnit::Product { left, right } = unit {
                let split = splits.entry(&scopes[id]).or_default();
                let pair = BTreeSet::from([&scopes[*left], &scopes[*right]]);
                if split.is_empty() {
                    *split = pair;
                } else if *split != pair {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// One memoized pass; marginalized leaves (`None`) emit the identity.
    pub fn evaluate_traced(&self, x: &[Option<usize>]) -> Result<DEvaluation> {
        check_evidence(x, &self.cardinalities)?;
        let order = self.topological_order()?;
        let mut memo: Vec<Option<ComplexMatrix>> = vec![None; self.units.len()];
        let mut units_evaluated = 0;
        for id in order {
            let value = match &self.units[id] {
                DUnit::Leaf { var, povm } => match x[*var] {
                    Some(v) => povm.element(v).cloned().ok_or(Error::ValueOutOfRange {
                        var: *var,
                        value: v,
                        cardinality: povm.outcomes(),
                    })?,
                    None => ComplexMatrix::identity(povm.dim()),
                },
                DUnit::Product { left, right } => {
                    let l = memo[*left].as_ref().expect("inputs first");
                    let r = memo[*right].as_ref().expect("inputs first");
                    l.kron(r)?
                }
                DUnit::Sum { edges } => {
                    let first = edges.first().ok_or_else(|| {
                        Error::InvalidArgument(format!("sum unit {} has no inputs", id))
                    })?;
                    let d = first.op.out_dim();
                    let mut acc = ComplexMatrix::zeros(d, d);
                    for e in edges {
                        let input = memo[e.input].as_ref().expect("inputs first");
                        acc.add_scaled(C64::new(e.weight, 0.0), &e.op.apply(input)?)?;
                    }
                    acc
                }
            };
            memo[id] = Some(value);
            units_evaluated += 1;
        }
        Ok(DEvaluation {
            value: memo[self.root].take().expect("root evaluated"),
            units_evaluated,
        })
    }

    pub fn evaluate(&self, x: &[usize]) -> Result<ComplexMatrix> {
        check_assignment(x, &self.cardinalities)?;
        let partial: Vec<Option<usize>> = x.iter().map(|&v| Some(v)).collect();
        Ok(self.evaluate_traced(&partial)?.value)
    }

    /// `Tr[o(x) rho]`.
    pub fn probability(&self, x: &[usize]) -> Result<f64> {
        check_assignment(x, &self.cardinalities)?;
        let partial: Vec<Option<usize>> = x.iter().map(|&v| Some(v)).collect();
        self.marginal_partial(&partial)
    }

    pub fn marginal(&self, q: &MarginalQuery) -> Result<f64> {
        let n = self.num_vars();
        let checked = MarginalQuery::new(q.evidence.clone(), q.marginalized.clone(), n)?;
        self.marginal_partial(&checked.to_partial(n))
    }

    pub fn marginal_partial(&self, x: &[Option<usize>]) -> Result<f64> {
        let value = self.evaluate_traced(x)?.value;
        real_probability(trace_product(&value, self.rho.matrix())?)
    }

    /// Scalar circuit with the same DAG, for circuits whose units are all 1x1.
    pub fn scalar_shadow(&self) -> Result<DProbCircuit> {
        let scalar = |m: &ComplexMatrix| -> Result<f64> {
            if m.shape() != (1, 1) {
                return Err(Error::InvalidArgument(
                    "circuit is not one-dimensional".into(),
                ));
            }
            Ok(m[(0, 0)].re)
        };
        let units = self
            .units
            .iter()
            .map(|u| {
                Ok(match u {
                    DUnit::Leaf { var, povm } => DProbUnit::Leaf {
                        var: *var,
                        probs: povm.elements().iter().map(scalar).collect::<Result<_>>()?,
                    },
                    DUnit::Product { left, right } => DProbUnit::Product {
                        left: *left,
                        right: *right,
                    },
                    DUnit::Sum { edges } => DProbUnit::Sum {
                        edges: edges
                            .iter()
                            .map(|e| Ok((e.input, e.weight * scalar(&e.op.unit_image())?)))
                            .collect::<Result<_>>()?,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let r = scalar(self.rho.matrix())?;
        if (r - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "1x1 density matrix equals {}",
                r
            )));
        }
        DProbCircuit::new(self.cardinalities.clone(), units, self.root)
    }
}

/// D-PUnC with the same distribution: each internal node becomes a product
/// unit feeding a single-edge sum unit of weight 1 that applies the node's
/// operation. Hadamard nodes are rewritten to Kronecker form first.
pub fn embed_sd(c: &SdPunc) -> Result<DPunc> {
    let c = c.to_kronecker()?;
    let tree = c.tree();
    let mut units = Vec::new();
    let mut unit_of: Vec<UnitId> = vec![0; tree.len()];
    for node in tree.nodes() {
        match (&node.kind, c.param(node.id)?) {
            (NodeKind::Leaf { var, .. }, SdParam::Leaf(povm)) => {
                units.push(DUnit::Leaf {
                    var: *var,
                    povm: povm.clone(),
                });
            }
            (NodeKind::Internal { left, right, .. }, SdParam::Internal(op)) => {
                units.push(DUnit::Product {
                    left: unit_of[*left],
                    right: unit_of[*right],
                });
                units.push(DUnit::Sum {
                    edges: vec![SumEdge {
                        input: units.len() - 1,
                        weight: 1.0,
                        op: op.clone(),
                    }],
                });
            }
            _ => unreachable!("parameters match node kinds"),
        }
        unit_of[node.id] = units.len() - 1;
    }
    let root: NodeId = tree.root();
    DPunc::new(
        c.cardinalities().to_vec(),
        units,
        unit_of[root],
        c.rho().clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::Assignments;
    use crate::partition::PartitionCircuit;

    fn leaf(var: usize) -> DUnit {
        DUnit::Leaf {
            var,
            povm: Povm::computational_basis(2),
        }
    }

    fn single(input: UnitId, dim: usize) -> DUnit {
        DUnit::Sum {
            edges: vec![SumEdge {
                input,
                weight: 1.0,
                op: QuantumOperation::identity(dim),
            }],
        }
    }

    #[test]
    fn single_leaf_is_uniform() {
        let c = DPunc::new(vec![2], vec![leaf(0)], 0, DensityMatrix::maximally_mixed(2)).unwrap();
        assert!(c.validate(1e-12).is_valid());
        assert_eq!(c.compute_scopes().unwrap()[0], BTreeSet::from([0]));
        assert!((c.probability(&[0]).unwrap() - 0.5).abs() < 1e-15);
        assert!((c.probability(&[1]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn overlapping_product_is_not_decomposable() {
        let units = vec![
            leaf(0),
            leaf(1),
            leaf(1),
            DUnit::Product { left: 0, right: 1 },
            DUnit::Product { left: 2, right: 1 },
            DUnit::Product { left: 3, right: 4 },
        ];
        let c = DPunc::new(vec![2, 2], units, 5, DensityMatrix::maximally_mixed(16)).unwrap();
        let r = c.validate(1e-9);
        assert!(r.has(ViolationKind::NotDecomposable));
        assert!(r
            .violations
            .iter()
            .any(|v| v.location.as_deref() == Some("unit 4")));
    }

    #[test]
    fn mismatched_sum_scopes_are_not_smooth() {
        let units = vec![
            leaf(0),
            leaf(1),
            DUnit::Sum {
                edges: vec![
                    SumEdge {
                        input: 0,
                        weight: 0.5,
                        op: QuantumOperation::identity(2),
                    },
                    SumEdge {
                        input: 1,
                        weight: 0.5,
                        op: QuantumOperation::identity(2),
                    },
                ],
            },
        ];
        let c = DPunc::new(vec![2, 2], units, 2, DensityMatrix::maximally_mixed(2)).unwrap();
        assert!(c.validate(1e-9).has(ViolationKind::NotSmooth));
    }

    #[test]
    fn bad_weights_are_reported() {
        let units = vec![
            leaf(0),
            DUnit::Sum {
                edges: vec![
                    SumEdge {
                        input: 0,
                        weight: 0.6,
                        op: QuantumOperation::identity(2),
                    },
                    SumEdge {
                        input: 0,
                        weight: 0.6,
                        op: QuantumOperation::identity(2),
                    },
                ],
            },
        ];
        let c = DPunc::new(vec![2], units, 1, DensityMatrix::maximally_mixed(2)).unwrap();
        assert!(c.validate(1e-9).has(ViolationKind::WeightSum));
    }

    #[test]
    fn cycles_are_detected() {
        let units = vec![leaf(0), single(2, 2), single(1, 2)];
        let c = DPunc::new(vec![2], units, 2, DensityMatrix::maximally_mixed(2)).unwrap();
        assert!(c.validate(1e-9).has(ViolationKind::Cycle));
        assert!(matches!(c.compute_scopes(), Err(Error::Cycle(_))));
        assert!(c.probability(&[0]).is_err());
        assert!(c.is_structured_decomposable().is_err());
    }

    #[test]
    fn shared_units_are_evaluated_once() {
        // Two sums over the same product, mixed at the root.
        let units = vec![
            leaf(0),
            leaf(1),
            DUnit::Product { left: 0, right: 1 },
            single(2, 4),
            single(2, 4),
            DUnit::Sum {
                edges: vec![
                    SumEdge {
                        input: 3,
                        weight: 0.5,
                        op: QuantumOperation::identity(4),
                    },
                    SumEdge {
                        input: 4,
                        weight: 0.5,
                        op: QuantumOperation::identity(4),
                    },
                ],
            },
        ];
        let c = DPunc::new(vec![2, 2], units, 5, DensityMatrix::maximally_mixed(4)).unwrap();
        assert!(c.validate(1e-12).is_valid());
        let e = c.evaluate_traced(&[Some(1), Some(0)]).unwrap();
        assert_eq!(e.units_evaluated, 6);
        let total: f64 = Assignments::new(&[2, 2])
            .map(|x| c.probability(&x).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((c.marginal_partial(&[None, None]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn embedding_preserves_the_distribution() {
        let tree = PartitionCircuit::build(&"((0,1),2)".parse().unwrap(), &[2, 2, 2]).unwrap();
        let params = vec![
            SdParam::Leaf(Povm::computational_basis(2)),
            SdParam::Leaf(Povm::scalar(&[0.3, 0.7]).unwrap()),
            SdParam::Internal(QuantumOperation::identity(2)),
            SdParam::Leaf(Povm::computational_basis(2)),
            SdParam::Internal(QuantumOperation::identity(4)),
        ];
        let rho = DensityMatrix::new(ComplexMatrix::from_real_diag(&[0.1, 0.2, 0.3, 0.4]), 1e-12)
            .unwrap();
        let sd = SdPunc::new(tree, params, rho).unwrap();
        let d = embed_sd(&sd).unwrap();
        assert!(d.validate(1e-12).is_valid());
        assert!(d.is_structured_decomposable().unwrap());
        for x in Assignments::new(&[2, 2, 2]) {
            let (a, b) = (sd.probability(&x).unwrap(), d.probability(&x).unwrap());
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn leaf_only_embedding() {
        let tree = PartitionCircuit::build(&"0".parse().unwrap(), &[2]).unwrap();
        let sd = SdPunc::new(
            tree,
            vec![SdParam::Leaf(Povm::computational_basis(2))],
            DensityMatrix::maximally_mixed(2),
        )
        .unwrap();
        let d = embed_sd(&sd).unwrap();
        assert_eq!(d.units().len(), 1);
        assert!(matches!(d.units()[0], DUnit::Leaf { var: 0, .. }));
    }
}
