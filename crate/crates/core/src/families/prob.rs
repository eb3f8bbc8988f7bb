//! Probabilistic circuits in partition-tree form: `P_k = W_k (P_l ⊗ P_r)`.

use crate::assignment::{check_assignment, check_evidence};
use crate::partition::{CombineMode, NodeKind, PartitionCircuit};
use crate::report::{Report, ViolationKind};
use crate::sd_punc::combined_dim;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ProbParam {
    /// `table[x][i]`: entry `i` of the leaf vector `P_x`.
    Leaf(Vec<Vec<f64>>),
    /// Row-major weight matrix `W_k`.
    Internal(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbCircuitPT {
    tree: PartitionCircuit,
    params: Vec<ProbParam>,
    dims: Vec<usize>,
}

pub(crate) fn combine_vectors(mode: CombineMode, a: &[f64], b: &[f64]) -> Vec<f64> {
    match mode {
        CombineMode::Kronecker => a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| x * y))
            .collect(),
        CombineMode::Hadamard => a.iter().zip(b).map(|(x, y)| x * y).collect(),
    }
}

pub(crate) fn mat_vec(w: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    w.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

impl ProbCircuitPT {
    pub fn new(tree: PartitionCircuit, params: Vec<ProbParam>) -> Result<Self> {
        if params.len() != tree.len() {
            return Err(Error::InvalidArgument(format!(
                "{} parameter sets for {} nodes",
                params.len(),
                tree.len()
            )));
        }
        let mut report = Report::new();
        let mut dims = vec![0; tree.len()];
        for node in tree.nodes() {
            let loc = Some(format!("node {}", node.id));
            match (&node.kind, &params[node.id]) {
                (NodeKind::Leaf { cardinality, .. }, ProbParam::Leaf(table)) => {
                    let width = table.first().map_or(0, Vec::len);
                    if table.len() != *cardinality
                        || width == 0
                        || table.iter().any(|r| r.len() != width)
                    {
                        report.push(
                            ViolationKind::CardinalityMismatch,
                            loc,
                            0.0,
                            "leaf table must have one equally sized vector per value",
                        );
                    }
                    dims[node.id] = width;
                }
                (NodeKind::Internal { left, right, mode }, ProbParam::Internal(w)) => {
                    let in_dim = combined_dim(*mode, dims[*left], dims[*right]);
                    if w.is_empty() || w.iter().any(|r| Some(r.len()) != in_dim) {
                        report.push(
                            ViolationKind::DimensionMismatch,
                            loc,
                            0.0,
                            format!("weight rows must have {:?} columns", in_dim),
                        );
                    }
                    dims[node.id] = w.len();
                }
                _ => report.push(
                    ViolationKind::Structure,
                    loc,
                    0.0,
                    "parameter kind does not match node kind",
                ),
            }
        }
        report.into_result()?;
        Ok(Self { tree, params, dims })
    }

    pub fn tree(&self) -> &PartitionCircuit {
        &self.tree
    }

    pub fn params(&self) -> &[ProbParam] {
        &self.params
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cardinalities(&self) -> &[usize] {
        self.tree.cardinalities()
    }

    /// Nonnegativity, leaf completeness (`sum_x P_x = 1`) and row normalization.
    pub fn validate(&self, tol: f64) -> Report {
        self.check(tol, false)
    }

    /// Invariants for a noise circuit `q`: leaf entries in `[0, 1]` and
    /// nonnegative weight rows summing to at most one, so that `q(x)` stays in `[0, 1]`.
    pub fn validate_noise(&self, tol: f64) -> Report {
        self.check(tol, true)
    }

    fn check(&self, tol: f64, noise: bool) -> Report {
        let mut report = Report::new();
        for (id, param) in self.params.iter().enumerate() {
            let loc = || Some(format!("node {}", id));
            match param {
                ProbParam::Leaf(table) => {
                    let min = table
                        .iter()
                        .flatten()
                        .cloned()
                        .fold(f64::INFINITY, f64::min);
                    let max = table
                        .iter()
                        .flatten()
                        .cloned()
                        .fold(f64::NEG_INFINITY, f64::max);
                    if min < -tol {
                        report.push(
                            ViolationKind::NegativeWeight,
                            loc(),
                            -min,
                            "negative leaf entry",
                        );
                    }
                    if noise {
                        if max > 1.0 + tol {
                            report.push(ViolationKind::OutOfUnitInterval, loc(), max - 1.0, "");
                        }
                    } else {
                        let width = self.dims[id];
                        let dev = (0..width)
                            .map(|i| (table.iter().map(|r| r[i]).sum::<f64>() - 1.0).abs())
                            .fold(0.0, f64::max);
                        if dev > tol {
                            report.push(
                                ViolationKind::LeafIncomplete,
                                loc(),
                                dev,
                                "leaf vectors do not sum to the all-ones vector",
                            );
                        }
                    }
                }
                ProbParam::Internal(w) => {
                    let min = w.iter().flatten().cloned().fold(f64::INFINITY, f64::min);
                    if min < -tol {
                        report.push(ViolationKind::NegativeWeight, loc(), -min, "");
                    }
                    for (i, row) in w.iter().enumerate() {
                        let s: f64 = row.iter().sum();
                        let bad = if noise {
                            s > 1.0 + tol
                        } else {
                            (s - 1.0).abs() > tol
                        };
                        if bad {
                            report.push(
                                ViolationKind::WeightSum,
                                Some(format!("node {} row {}", id, i)),
                                (s - 1.0).abs(),
                                format!("row sums to {}", s),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    /// Output vectors of every node; `None` sums the leaf over all values.
    pub fn eval_nodes_partial(&self, x: &[Option<usize>]) -> Result<Vec<Vec<f64>>> {
        check_evidence(x, self.cardinalities())?;
        let mut out: Vec<Vec<f64>> = Vec::with_capacity(self.tree.len());
        for node in self.tree.nodes() {
            let v = match (&node.kind, &self.params[node.id]) {
                (NodeKind::Leaf { var, .. }, ProbParam::Leaf(table)) => match x[*var] {
                    Some(value) => table[value].clone(),
                    None => (0..self.dims[node.id])
                        .map(|i| table.iter().map(|r| r[i]).sum())
                        .collect(),
                },
                (NodeKind::Internal { left, right, mode }, ProbParam::Internal(w)) => {
                    mat_vec(w, &combine_vectors(*mode, &out[*left], &out[*right]))
                }
                _ => unreachable!("checked at construction"),
            };
            out.push(v);
        }
        Ok(out)
    }

    pub fn eval_nodes(&self, x: &[usize]) -> Result<Vec<Vec<f64>>> {
        check_assignment(x, self.cardinalities())?;
        let partial: Vec<Option<usize>> = x.iter().map(|&v| Some(v)).collect();
        self.eval_nodes_partial(&partial)
    }

    /// Root vector `P_root(x)`; each entry is a distribution over `x`.
    pub fn eval(&self, x: &[usize]) -> Result<Vec<f64>> {
        Ok(self.eval_nodes(x)?.swap_remove(self.tree.root()))
    }

    /// Entry 0 of the root vector.
    pub fn probability(&self, x: &[usize]) -> Result<f64> {
        Ok(self.eval(x)?[0])
    }

    pub fn marginal_partial(&self, x: &[Option<usize>]) -> Result<f64> {
        Ok(self.eval_nodes_partial(x)?.swap_remove(self.tree.root())[0])
    }
}

pub fn eval_prob_circuit(c: &ProbCircuitPT, x: &[usize]) -> Result<Vec<f64>> {
    c.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_chain_is_product_of_leaves() {
        let tree = PartitionCircuit::build(&"((0,1),2)".parse().unwrap(), &[2, 2, 2]).unwrap();
        let params = vec![
            ProbParam::Leaf(vec![vec![0.2], vec![0.8]]),
            ProbParam::Leaf(vec![vec![0.5], vec![0.5]]),
            ProbParam::Internal(vec![vec![1.0]]),
            ProbParam::Leaf(vec![vec![0.9], vec![0.1]]),
            ProbParam::Internal(vec![vec![1.0]]),
        ];
        let c = ProbCircuitPT::new(tree, params).unwrap();
        assert!(c.validate(1e-12).is_valid());
        assert!((eval_prob_circuit(&c, &[1, 0, 1]).unwrap()[0] - 0.8 * 0.5 * 0.1).abs() < 1e-15);
    }

    #[test]
    fn one_hot_leaves_pick_weight_entries() {
        let tree = PartitionCircuit::build(&"(0,1)".parse().unwrap(), &[2, 2]).unwrap();
        let one_hot = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let w = vec![vec![0.1, 0.2, 0.3, 0.4], vec![0.25, 0.25, 0.25, 0.25]];
        let c = ProbCircuitPT::new(
            tree,
            vec![
                ProbParam::Leaf(one_hot.clone()),
                ProbParam::Leaf(one_hot),
                ProbParam::Internal(w),
            ],
        )
        .unwrap();
        assert_eq!(c.eval(&[1, 0]).unwrap(), vec![0.3, 0.25]);
    }

    #[test]
    fn invalid_weights_are_reported() {
        let tree = PartitionCircuit::build(&"(0,1)".parse().unwrap(), &[2, 2]).unwrap();
        let leaf = vec![vec![0.5], vec![0.5]];
        let c = ProbCircuitPT::new(
            tree,
            vec![
                ProbParam::Leaf(leaf.clone()),
                ProbParam::Leaf(vec![vec![0.5], vec![0.6]]),
                ProbParam::Internal(vec![vec![1.1]]),
            ],
        )
        .unwrap();
        let r = c.validate(1e-9);
        assert!(r.has(ViolationKind::WeightSum));
        assert!(r.has(ViolationKind::LeafIncomplete));
    }
}
