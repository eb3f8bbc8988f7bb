//! Parameter-free DAG topologies and their random instantiation.
//!
//! A skeleton is built from blocks: every variable gets a leaf unit feeding a
//! few single-input sum units, and every block over a larger scope has product
//! units pairing outputs of two child blocks followed by sum units mixing all
//! of the block's products.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;

use crate::d_punc::{DPunc, DUnit, SumEdge, UnitId};
use crate::random::{self, CircuitRng};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkeletonUnit {
    Leaf { var: usize },
    Product { left: UnitId, right: UnitId },
    Sum { inputs: Vec<UnitId> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub num_vars: usize,
    pub units: Vec<SkeletonUnit>,
    pub root: UnitId,
}

/// Sum units that expose a block to its consumers.
#[derive(Debug, Clone)]
struct Block {
    outputs: Vec<UnitId>,
}

#[derive(Default)]
struct Builder {
    units: Vec<SkeletonUnit>,
}

impl Builder {
    fn push(&mut self, u: SkeletonUnit) -> UnitId {
        self.units.push(u);
        self.units.len() - 1
    }

    fn leaf(&mut self, var: usize, width: usize) -> Block {
        let leaf = self.push(SkeletonUnit::Leaf { var });
        Block {
            outputs: (0..width)
                .map(|_| self.push(SkeletonUnit::Sum { inputs: vec![leaf] }))
                .collect(),
        }
    }

    /// Products over the given `(left, right)` output pairs and `sums` sum
    /// units over all of them.
    fn block(&mut self, pairs: &[(UnitId, UnitId)], sums: usize) -> Block {
        let products: Vec<UnitId> = pairs
            .iter()
            .map(|&(left, right)| self.push(SkeletonUnit::Product { left, right }))
            .collect();
        Block {
            outputs: (0..sums)
                .map(|_| {
                    self.push(SkeletonUnit::Sum {
                        inputs: products.clone(),
                    })
                })
                .collect(),
        }
    }
}

fn all_pairs(a: &Block, b: &Block) -> Vec<(UnitId, UnitId)> {
    a.outputs
        .iter()
        .flat_map(|&l| b.outputs.iter().map(move |&r| (l, r)))
        .collect()
}

/// Four binary-split blocks over `{0,1}, {0,2}, {1,3}, {2,3}` and a root block
/// whose products split the full scope in two different ways.
pub fn non_structured_four() -> Skeleton {
    let mut b = Builder::default();
    let leaves: Vec<Block> = (0..4).map(|v| b.leaf(v, 2)).collect();
    let k01 = b.block(&all_pairs(&leaves[0], &leaves[1]), 2);
    let k02 = b.block(&all_pairs(&leaves[0], &leaves[2]), 2);
    let k13 = b.block(&all_pairs(&leaves[1], &leaves[3]), 2);
    let k23 = b.block(&all_pairs(&leaves[2], &leaves[3]), 2);
    let pairs = [
        (k02.outputs[0], k13.outputs[0]),
        (k01.outputs[0], k23.outputs[0]),
        (k01.outputs[1], k23.outputs[1]),
        (k02.outputs[1], k13.outputs[1]),
    ];
    let root = b.block(&pairs, 1).outputs[0];
    Skeleton {
        num_vars: 4,
        units: b.units,
        root,
    }
}

/// Blocks over `{0,1}` and `{2,3}` joined by four root products.
pub fn structured_four() -> Skeleton {
    let mut b = Builder::default();
    let leaves: Vec<Block> = (0..4).map(|v| b.leaf(v, 2)).collect();
    let k01 = b.block(&all_pairs(&leaves[0], &leaves[1]), 2);
    let k23 = b.block(&all_pairs(&leaves[2], &leaves[3]), 2);
    let root = b.block(&all_pairs(&k01, &k23), 1).outputs[0];
    Skeleton {
        num_vars: 4,
        units: b.units,
        root,
    }
}

type Split = (Vec<usize>, Vec<usize>);

fn random_split(vars: &[usize], rng: &mut CircuitRng) -> Split {
    let mut shuffled = vars.to_vec();
    shuffled.shuffle(rng);
    let cut = random::uniform_in(1, vars.len() - 1, rng);
    let mut left = shuffled[..cut].to_vec();
    let mut right = shuffled[cut..].to_vec();
    left.sort_unstable();
    right.sort_unstable();
    (left, right)
}

fn same_split(a: &Split, b: &Split) -> bool {
    (a.0 == b.0 && a.1 == b.1) || (a.0 == b.1 && a.1 == b.0)
}

/// Random block skeleton with `width` sums per block. Blocks are shared by
/// scope. When `structured` is false and there are at least three variables,
/// the root block mixes products from two different splits of the full scope.
pub fn random_skeleton(
    num_vars: usize,
    width: usize,
    structured: bool,
    rng: &mut CircuitRng,
) -> Skeleton {
    let mut b = Builder::default();
    let mut memo: BTreeMap<Vec<usize>, Block> = BTreeMap::new();
    let vars: Vec<usize> = (0..num_vars).collect();
    let root_block = if !structured && num_vars >= 3 {
        let first = random_split(&vars, rng);
        let mut second = random_split(&vars, rng);
        while same_split(&first, &second) {
            second = random_split(&vars, rng);
        }
        let mut pairs = Vec::new();
        for split in [first, second] {
            let l = region(&split.0, width, &mut b, &mut memo, rng);
            let r = region(&split.1, width, &mut b, &mut memo, rng);
            pairs.extend(all_pairs(&l, &r));
        }
        b.block(&pairs, 1)
    } else if num_vars == 1 {
        region(&vars, 1, &mut b, &mut memo, rng)
    } else {
        let (l, r) = random_split(&vars, rng);
        let l = region(&l, width, &mut b, &mut memo, rng);
        let r = region(&r, width, &mut b, &mut memo, rng);
        b.block(&all_pairs(&l, &r), 1)
    };
    Skeleton {
        num_vars,
        units: b.units,
        root: root_block.outputs[0],
    }
}

fn region(
    vars: &[usize],
    width: usize,
    b: &mut Builder,
    memo: &mut BTreeMap<Vec<usize>, Block>,
    rng: &mut CircuitRng,
) -> Block {
    if let Some(block) = memo.get(vars) {
        return block.clone();
    }
    let block = if vars.len() == 1 {
        b.leaf(vars[0], width)
    } else {
        let (l, r) = random_split(vars, rng);
        let l = region(&l, width, b, memo, rng);
        let r = region(&r, width, b, memo, rng);
        b.block(&all_pairs(&l, &r), width)
    };
    memo.insert(vars.to_vec(), block.clone());
    block
}

/// Dimensions and parameter sources for [`instantiate`].
#[derive(Debug, Clone, Copy)]
pub struct UnitDims {
    pub leaf_dim: usize,
    pub max_dim: usize,
    pub kraus_count: usize,
}

/// Random POVMs, unital edge operations, simplex weights and a random `rho`.
/// A sum unit's output dimension is `min(max_dim, smallest input)`.
pub fn instantiate(
    s: &Skeleton,
    cardinalities: &[usize],
    dims: UnitDims,
    rng: &mut CircuitRng,
) -> Result<DPunc> {
    let mut out_dim = vec![0usize; s.units.len()];
    let mut units = Vec::with_capacity(s.units.len());
    for (id, u) in s.units.iter().enumerate() {
        let unit = match u {
            SkeletonUnit::Leaf { var } => {
                out_dim[id] = dims.leaf_dim;
                DUnit::Leaf {
                    var: *var,
                    povm: random::povm(dims.leaf_dim, cardinalities[*var], rng)?,
                }
            }
            SkeletonUnit::Product { left, right } => {
                out_dim[id] = out_dim[*left] * out_dim[*right];
                DUnit::Product {
                    left: *left,
                    right: *right,
                }
            }
            SkeletonUnit::Sum { inputs } => {
                let smallest = inputs.iter().map(|&i| out_dim[i]).min().unwrap_or(1);
                let d = dims.max_dim.min(smallest).max(1);
                out_dim[id] = d;
                let weights = random::simplex(inputs.len(), rng);
                let edges = inputs
                    .iter()
                    .zip(weights)
                    .map(|(&input, weight)| {
                        Ok(SumEdge {
                            input,
                            weight,
                            op: random::unital_operation(out_dim[input], d, dims.kraus_count, rng)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                DUnit::Sum { edges }
            }
        };
        units.push(unit);
    }
    let rho = random::density(out_dim[s.root], rng);
    DPunc::new(cardinalities.to_vec(), units, s.root, rho)
}

/// Scopes of the units in a skeleton, for inspection.
pub fn skeleton_scopes(s: &Skeleton) -> Vec<BTreeSet<usize>> {
    let mut scopes: Vec<BTreeSet<usize>> = Vec::with_capacity(s.units.len());
    for u in &s.units {
        let scope = match u {
            SkeletonUnit::Leaf { var } => BTreeSet::from([*var]),
            SkeletonUnit::Product { left, right } => {
                scopes[*left].union(&scopes[*right]).copied().collect()
            }
            SkeletonUnit::Sum { inputs } => inputs
                .iter()
                .flat_map(|&i| scopes[i].iter().copied())
                .collect(),
        };
        scopes.push(scope);
    }
    scopes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::Assignments;
    use crate::random::rng_from_seed;

    const DIMS: UnitDims = UnitDims {
        leaf_dim: 2,
        max_dim: 3,
        kraus_count: 2,
    };

    #[test]
    fn mixed_split_topology_has_expected_blocks() {
        let s = non_structured_four();
        let scopes = skeleton_scopes(&s);
        let pair_scopes: BTreeSet<Vec<usize>> = s
            .units
            .iter()
            .zip(&scopes)
            .filter(|(u, sc)| matches!(u, SkeletonUnit::Sum { .. }) && sc.len() == 2)
            .map(|(_, sc)| sc.iter().copied().collect())
            .collect();
        let expected: BTreeSet<Vec<usize>> = [vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]]
            .into_iter()
            .collect();
        assert_eq!(pair_scopes, expected);
        let mut rng = rng_from_seed(1);
        let c = instantiate(&s, &[2; 4], DIMS, &mut rng).unwrap();
        assert!(c.validate(1e-9).is_valid());
        assert!(!c.is_structured_decomposable().unwrap());
    }

    #[test]
    fn shared_split_topology_is_structured() {
        let mut rng = rng_from_seed(2);
        let c = instantiate(&structured_four(), &[2; 4], DIMS, &mut rng).unwrap();
        assert!(c.validate(1e-9).is_valid());
        assert!(c.is_structured_decomposable().unwrap());
        let total: f64 = Assignments::new(&[2; 4])
            .map(|x| c.probability(&x).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn random_skeletons_follow_the_flag() {
        for seed in 0..10 {
            let mut rng = rng_from_seed(seed);
            for n in 1..=5 {
                let s = random_skeleton(n, 2, true, &mut rng);
                let c = instantiate(&s, &vec![2; n], DIMS, &mut rng).unwrap();
                assert!(c.validate(1e-9).is_valid(), "{}", c.validate(1e-9));
                assert!(c.is_structured_decomposable().unwrap());
            }
            for n in 3..=5 {
                let s = random_skeleton(n, 2, false, &mut rng);
                let c = instantiate(&s, &vec![2; n], DIMS, &mut rng).unwrap();
                assert!(c.validate(1e-9).is_valid());
                assert!(!c.is_structured_decomposable().unwrap());
            }
        }
    }
}
