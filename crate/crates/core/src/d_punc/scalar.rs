//! Ordinary decomposable probabilistic circuits over the same DAG shape.

use crate::assignment::check_assignment;
use crate::d_punc::{post_order, DPunc, DUnit, SumEdge, UnitId};
use crate::quantum::{DensityMatrix, Povm, QuantumOperation};
use crate::report::Report;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum DProbUnit {
    /// Categorical leaf: `probs[v] = f(x = v)`.
    Leaf {
        var: usize,
        probs: Vec<f64>,
    },
    Product {
        left: UnitId,
        right: UnitId,
    },
    Sum {
        edges: Vec<(UnitId, f64)>,
    },
}

impl DProbUnit {
    fn inputs(&self) -> Vec<UnitId> {
        match self {
            DProbUnit::Leaf { .. } => Vec::new(),
            DProbUnit::Product { left, right } => vec![*left, *right],
            DProbUnit::Sum { edges } => edges.iter().map(|e| e.0).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DProbCircuit {
    cardinalities: Vec<usize>,
    units: Vec<DProbUnit>,
    root: UnitId,
}

impl DProbCircuit {
    pub fn new(cardinalities: Vec<usize>, units: Vec<DProbUnit>, root: UnitId) -> Result<Self> {
        // Same reference checks as the operator-valued circuit.
        Self {
            cardinalities,
            units,
            root,
        }
        .checked()
    }

    fn checked(self) -> Result<Self> {
        for unit in &self.units {
            if let DProbUnit::Leaf { probs, .. } = unit {
                if probs.is_empty() {
                    return Err(Error::InvalidArgument("leaf without values".into()));
                }
            }
        }
        self.to_dpunc()?;
        Ok(self)
    }

    pub fn cardinalities(&self) -> &[usize] {
        &self.cardinalities
    }

    pub fn units(&self) -> &[DProbUnit] {
        &self.units
    }

    pub fn root(&self) -> UnitId {
        self.root
    }

    /// The same circuit with 1x1 POVM elements and identity operations.
    pub fn to_dpunc(&self) -> Result<DPunc> {
        let units = self
            .units
            .iter()
            .map(|u| {
                Ok(match u {
                    DProbUnit::Leaf { var, probs } => DUnit::Leaf {
                        var: *var,
                        povm: Povm::scalar(probs)?,
                    },
                    DProbUnit::Product { left, right } => DUnit::Product {
                        left: *left,
                        right: *right,
                    },
                    DProbUnit::Sum { edges } => DUnit::Sum {
                        edges: edges
                            .iter()
                            .map(|&(input, weight)| SumEdge {
                                input,
                                weight,
                                op: QuantumOperation::identity(1),
                            })
                            .collect(),
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DPunc::new(
            self.cardinalities.clone(),
            units,
            self.root,
            DensityMatrix::basis_state(1, 0),
        )
    }

    /// Structure, leaf normalization, nonnegativity and weight sums.
    pub fn validate(&self, tol: f64) -> Report {
        match self.to_dpunc() {
            Ok(c) => c.validate(tol),
            Err(e) => {
                let mut r = Report::new();
                r.push(
                    crate::report::ViolationKind::Structure,
                    None,
                    0.0,
                    e.to_string(),
                );
                r
            }
        }
    }

    pub fn eval(&self, x: &[usize]) -> Result<f64> {
        check_assignment(x, &self.cardinalities)?;
        let order = post_order([self.root], |u| self.units[u].inputs(), self.units.len())?;
        let mut values = vec![0.0; self.units.len()];
        for id in order {
            values[id] = match &self.units[id] {
                DProbUnit::Leaf { var, probs } => {
                    *probs.get(x[*var]).ok_or(Error::ValueOutOfRange {
                        var: *var,
                        value: x[*var],
                        cardinality: probs.len(),
                    })?
                }
                DProbUnit::Product { left, right } => values[*left] * values[*right],
                DProbUnit::Sum { edges } => edges.iter().map(|&(i, w)| w * values[i]).sum(),
            };
        }
        Ok(values[self.root])
    }
}

pub fn eval_dprob_circuit(c: &DProbCircuit, x: &[usize]) -> Result<f64> {
    c.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_leaf() {
        let c = DProbCircuit::new(
            vec![2],
            vec![DProbUnit::Leaf {
                var: 0,
                probs: vec![0.3, 0.7],
            }],
            0,
        )
        .unwrap();
        assert!(c.validate(1e-12).is_valid());
        assert_eq!(eval_dprob_circuit(&c, &[0]).unwrap(), 0.3);
        assert_eq!(eval_dprob_circuit(&c, &[1]).unwrap(), 0.7);
    }

    #[test]
    fn product_of_marginals_and_shadow() {
        let c = DProbCircuit::new(
            vec![2, 3],
            vec![
                DProbUnit::Leaf {
                    var: 0,
                    probs: vec![0.3, 0.7],
                },
                DProbUnit::Leaf {
                    var: 1,
                    probs: vec![0.2, 0.3, 0.5],
                },
                DProbUnit::Product { left: 0, right: 1 },
                DProbUnit::Sum {
                    edges: vec![(2, 1.0)],
                },
            ],
            3,
        )
        .unwrap();
        assert!((c.eval(&[1, 2]).unwrap() - 0.35).abs() < 1e-15);
        let lifted = c.to_dpunc().unwrap();
        assert!(lifted.validate(1e-12).is_valid());
        assert!((lifted.probability(&[1, 2]).unwrap() - 0.35).abs() < 1e-15);
        assert_eq!(lifted.scalar_shadow().unwrap(), c);
    }
}
