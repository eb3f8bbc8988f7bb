//! Seeded random instances of every circuit family.
//!
//! All draws come from one generator seeded with [`GeneratorConfig::seed`], so
//! a configuration always produces the same circuit.

use crate::circuit::{Circuit, Family};
use crate::d_punc::skeleton::{instantiate, random_skeleton, SkeletonUnit, UnitDims};
use crate::d_punc::{DProbCircuit, DProbUnit};
use crate::families::{NoisePunc, ProbCircuitPT, ProbParam, PsdCircuit};
use crate::partition::{random_tree_spec, CombineMode, NodeKind, PartitionCircuit};
use crate::random::{self, rng_from_seed, CircuitRng};
use crate::sd_punc::{combined_dim, SdParam, SdPunc};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub num_vars: usize,
    pub cardinality: usize,
    /// Dimension of leaf operators (PSD circuits cap it at the cardinality).
    pub leaf_dim: usize,
    pub max_internal_dim: usize,
    pub kraus_count: usize,
    pub family: Family,
    /// Only used for `d_punc` and `d_prob_circuit`.
    pub structured: bool,
    /// Combine by Hadamard product instead of Kronecker product (tree families).
    pub hadamard: bool,
}

impl GeneratorConfig {
    pub fn new(family: Family, seed: u64) -> Self {
        Self {
            seed,
            num_vars: 4,
            cardinality: 2,
            leaf_dim: 2,
            max_internal_dim: 4,
            kraus_count: 2,
            family,
            structured: true,
            hadamard: false,
        }
    }

    fn check(&self) -> Result<()> {
        let fields = [
            ("num_vars", self.num_vars),
            ("cardinality", self.cardinality),
            ("leaf_dim", self.leaf_dim),
            ("max_internal_dim", self.max_internal_dim),
            ("kraus_count", self.kraus_count),
        ];
        if let Some((name, _)) = fields.iter().find(|(_, v)| *v == 0) {
            return Err(Error::InvalidArgument(format!("{} must be positive", name)));
        }
        Ok(())
    }

    fn mode(&self) -> CombineMode {
        if self.hadamard {
            CombineMode::Hadamard
        } else {
            CombineMode::Kronecker
        }
    }
}

pub fn generate(cfg: &GeneratorConfig) -> Result<Circuit> {
    cfg.check()?;
    let mut rng = rng_from_seed(cfg.seed);
    let rng = &mut rng;
    Ok(match cfg.family {
        Family::SdPunc => Circuit::SdPunc(sd_punc(cfg, rng)?),
        Family::PsdCircuit => Circuit::PsdCircuit(psd_circuit(cfg, rng)?),
        Family::ProbCircuitPt => {
            let tree = random_tree(cfg, cfg.mode(), rng)?;
            Circuit::ProbCircuitPt(prob_circuit(&tree, cfg, false, rng)?)
        }
        Family::DPunc => {
            let s = random_skeleton(cfg.num_vars, 2, cfg.structured, rng);
            let dims = UnitDims {
                leaf_dim: cfg.leaf_dim,
                max_dim: cfg.max_internal_dim,
                kraus_count: cfg.kraus_count,
            };
            Circuit::DPunc(instantiate(&s, &cards(cfg), dims, rng)?)
        }
        Family::DProbCircuit => Circuit::DProbCircuit(d_prob_circuit(cfg, rng)?),
        Family::NoisePunc => {
            let o = sd_punc(cfg, rng)?;
            let tree = o.tree().with_mode(CombineMode::Hadamard);
            let q = prob_circuit(&tree, cfg, true, rng)?;
            Circuit::NoisePunc(NoisePunc::new(q, o)?)
        }
    })
}

fn cards(cfg: &GeneratorConfig) -> Vec<usize> {
    vec![cfg.cardinality; cfg.num_vars]
}

fn random_tree(
    cfg: &GeneratorConfig,
    mode: CombineMode,
    rng: &mut CircuitRng,
) -> Result<PartitionCircuit> {
    let spec = random_tree_spec(cfg.num_vars, mode, rng);
    PartitionCircuit::build(&spec, &cards(cfg))
}

/// Output dimension of an internal node: at most its input dimension, so that
/// a unital operation can also satisfy the Kraus side condition. Hadamard
/// nodes keep the dimension of their children.
fn internal_dim(mode: CombineMode, in_dim: usize, cfg: &GeneratorConfig) -> usize {
    match mode {
        CombineMode::Hadamard => in_dim,
        CombineMode::Kronecker => in_dim.min(cfg.max_internal_dim),
    }
}

fn sd_punc(cfg: &GeneratorConfig, rng: &mut CircuitRng) -> Result<SdPunc> {
    let tree = random_tree(cfg, cfg.mode(), rng)?;
    let mut dims = vec![0; tree.len()];
    let mut params = Vec::with_capacity(tree.len());
    for node in tree.nodes() {
        params.push(match node.kind {
            NodeKind::Leaf { cardinality, .. } => {
                dims[node.id] = cfg.leaf_dim;
                SdParam::Leaf(random::povm(cfg.leaf_dim, cardinality, rng)?)
            }
            NodeKind::Internal { left, right, mode } => {
                let in_dim = combined_dim(mode, dims[left], dims[right]).expect("equal dims");
                let out = internal_dim(mode, in_dim, cfg);
                dims[node.id] = out;
                SdParam::Internal(random::unital_operation(in_dim, out, cfg.kraus_count, rng)?)
            }
        });
    }
    let rho = random::density(dims[tree.root()], rng);
    SdPunc::new(tree, params, rho)
}

fn psd_circuit(cfg: &GeneratorConfig, rng: &mut CircuitRng) -> Result<PsdCircuit> {
    let tree = random_tree(cfg, cfg.mode(), rng)?;
    let leaf_dim = cfg.leaf_dim.min(cfg.cardinality);
    let mut dims = vec![0; tree.len()];
    let mut mats = Vec::with_capacity(tree.len());
    for node in tree.nodes() {
        let (rows, cols) = match node.kind {
            NodeKind::Leaf { cardinality, .. } => (leaf_dim, cardinality),
            NodeKind::Internal { left, right, mode } => {
                let in_dim = combined_dim(mode, dims[left], dims[right]).expect("equal dims");
                (internal_dim(mode, in_dim, cfg), in_dim)
            }
        };
        dims[node.id] = rows;
        mats.push(random::semi_unitary(rows, cols, rng)?);
    }
    let rho = random::density(dims[tree.root()], rng);
    PsdCircuit::new(tree, mats, rho)
}

/// Partition-tree PC. With `noise`, leaf entries are uniform in `[0, 1]`
/// instead of forming distributions over the values.
fn prob_circuit(
    tree: &PartitionCircuit,
    cfg: &GeneratorConfig,
    noise: bool,
    rng: &mut CircuitRng,
) -> Result<ProbCircuitPT> {
    let mut dims = vec![0; tree.len()];
    let mut params = Vec::with_capacity(tree.len());
    for node in tree.nodes() {
        params.push(match node.kind {
            NodeKind::Leaf { cardinality, .. } => {
                let m = cfg.leaf_dim;
                dims[node.id] = m;
                // Each entry i of the leaf vector is a function of the value.
                let columns: Vec<Vec<f64>> = (0..m)
                    .map(|_| {
                        if noise {
                            (0..cardinality)
                                .map(|_| random::unit_interval(rng))
                                .collect()
                        } else {
                            random::simplex(cardinality, rng)
                        }
                    })
                    .collect();
                let table = (0..cardinality)
                    .map(|x| columns.iter().map(|c| c[x]).collect())
                    .collect();
                ProbParam::Leaf(table)
            }
            NodeKind::Internal { left, right, mode } => {
                let in_dim = combined_dim(mode, dims[left], dims[right]).expect("equal dims");
                let out = internal_dim(mode, in_dim, cfg);
                dims[node.id] = out;
                ProbParam::Internal(random::row_stochastic(out, in_dim, rng))
            }
        });
    }
    ProbCircuitPT::new(tree.clone(), params)
}

fn d_prob_circuit(cfg: &GeneratorConfig, rng: &mut CircuitRng) -> Result<DProbCircuit> {
    let s = random_skeleton(cfg.num_vars, 2, cfg.structured, rng);
    let units = s
        .units
        .iter()
        .map(|u| match u {
            SkeletonUnit::Leaf { var } => DProbUnit::Leaf {
                var: *var,
                probs: random::simplex(cfg.cardinality, rng),
            },
            SkeletonUnit::Product { left, right } => DProbUnit::Product {
                left: *left,
                right: *right,
            },
            SkeletonUnit::Sum { inputs } => DProbUnit::Sum {
                edges: inputs
                    .iter()
                    .copied()
                    .zip(random::simplex(inputs.len(), rng))
                    .collect(),
            },
        })
        .collect();
    DProbCircuit::new(cards(cfg), units, s.root)
}
