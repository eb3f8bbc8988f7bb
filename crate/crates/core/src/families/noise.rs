//! NoisePUnCs: a PUnC `o` multiplied by a noise circuit `q` over the same tree.
//!
//! `pi(x) = q(x) Tr[O(x) rho]` is sub-normalized. The normalizer is computed
//! in one bottom-up pass over operator blocks
//! `M_k[i] = sum_{x_k} q_{k,i}(x_k) O_k(x_k)`.

use crate::assignment::{check_assignment, check_evidence, Assignments};
use crate::families::prob::{combine_vectors, ProbCircuitPT, ProbParam};
use crate::linalg::{ComplexMatrix, C64};
use crate::partition::{CombineMode, NodeId, NodeKind};
use crate::quantum::trace_product;
use crate::report::Report;
use crate::sd_punc::{combine, SdParam, SdPunc};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NoisePunc {
    q: ProbCircuitPT,
    o: SdPunc,
    /// Node of `q` matching each node of `o`.
    q_of: Vec<NodeId>,
}

/// Decomposition `Q_{ki} = sum_j w_j Q~_{kj}` at one internal node.
#[derive(Debug, Clone)]
pub struct OperatorMixture {
    pub weights: Vec<f64>,
    pub summands: Vec<ComplexMatrix>,
    /// `q_{k,i}(x) O_k(x)` computed directly.
    pub target: ComplexMatrix,
}

impl OperatorMixture {
    pub fn recombine(&self) -> Result<ComplexMatrix> {
        let mut acc = ComplexMatrix::zeros(self.target.rows(), self.target.cols());
        for (w, s) in self.weights.iter().zip(&self.summands) {
            acc.add_scaled(C64::new(*w, 0.0), s)?;
        }
        Ok(acc)
    }

    pub fn residual(&self) -> Result<f64> {
        self.recombine()?.max_abs_diff(&self.target)
    }
}

/// Index pairs of the children's vectors feeding input `j` of a node.
fn child_index(mode: CombineMode, j: usize, right_len: usize) -> (usize, usize) {
    match mode {
        CombineMode::Kronecker => (j / right_len, j % right_len),
        CombineMode::Hadamard => (j, j),
    }
}

impl NoisePunc {
    pub fn new(q: ProbCircuitPT, o: SdPunc) -> Result<Self> {
        if !q.tree().same_vtree(o.tree()) {
            return Err(Error::TreeMismatch);
        }
        let mut q_of = vec![0; o.tree().len()];
        let mut stack = vec![(o.tree().root(), q.tree().root())];
        while let Some((a, b)) = stack.pop() {
            q_of[a] = b;
            if let (Some((la, ra, _)), Some((lb, rb, _))) =
                (o.tree().children(a), q.tree().children(b))
            {
                stack.push((la, lb));
                stack.push((ra, rb));
            }
        }
        Ok(Self { q, o, q_of })
    }

    pub fn q(&self) -> &ProbCircuitPT {
        &self.q
    }

    pub fn o(&self) -> &SdPunc {
        &self.o
    }

    pub fn cardinalities(&self) -> &[usize] {
        self.o.cardinalities()
    }

    pub fn validate(&self, tol: f64) -> Report {
        let mut report = Report::new();
        report.absorb("q", self.q.validate_noise(tol));
        report.absorb("o", self.o.validate(tol));
        report
    }

    /// `pi(x) = q(x) Tr[O(x) rho]`.
    pub fn unnormalized(&self, x: &[usize]) -> Result<f64> {
        check_assignment(x, self.cardinalities())?;
        Ok(self.q.probability(x)? * self.o.probability(x)?)
    }

    /// Sum of `pi` over completions of `x`, by block recursion.
    pub fn unnormalized_marginal(&self, x: &[Option<usize>]) -> Result<f64> {
        check_evidence(x, self.cardinalities())?;
        let tree = self.o.tree();
        let mut blocks: Vec<Vec<ComplexMatrix>> = Vec::with_capacity(tree.len());
        for node in tree.nodes() {
            let qid = self.q_of[node.id];
            let block = match (&node.kind, self.o.param(node.id)?, &self.q.params()[qid]) {
                (NodeKind::Leaf { var, .. }, SdParam::Leaf(povm), ProbParam::Leaf(table)) => {
                    let values: Vec<usize> = match x[*var] {
                        Some(v) => vec![v],
                        None => (0..table.len()).collect(),
                    };
                    (0..self.q.dims()[qid])
                        .map(|i| {
                            let mut m = ComplexMatrix::zeros(povm.dim(), povm.dim());
                            for &v in &values {
                                m.add_scaled(C64::new(table[v][i], 0.0), &povm.elements()[v])?;
                            }
                            Ok(m)
                        })
                        .collect::<Result<Vec<_>>>()?
                }
                (
                    NodeKind::Internal { left, right, mode },
                    SdParam::Internal(phi),
                    ProbParam::Internal(w),
                ) => {
                    let qmode = self.q.tree().children(qid).expect("internal").2;
                    let right_len = blocks[*right].len();
                    let mut inputs = Vec::with_capacity(w[0].len());
                    for j in 0..w[0].len() {
                        let (a, b) = child_index(qmode, j, right_len);
                        inputs.push(phi.apply(&combine(
                            *mode,
                            &blocks[*left][a],
                            &blocks[*right][b],
                        )?)?);
                    }
                    w.iter()
                        .map(|row| {
                            let mut m = ComplexMatrix::zeros(phi.out_dim(), phi.out_dim());
                            for (wij, t) in row.iter().zip(&inputs) {
                                if *wij != 0.0 {
                                    m.add_scaled(C64::new(*wij, 0.0), t)?;
                                }
                            }
                            Ok(m)
                        })
                        .collect::<Result<Vec<_>>>()?
                }
                _ => unreachable!("trees checked at construction"),
            };
            blocks.push(block);
        }
        let root = &blocks[tree.root()][0];
        Ok(trace_product(root, self.o.rho().matrix())?.re)
    }

    /// `Z = sum_x pi(x)`.
    pub fn normalizer(&self) -> Result<f64> {
        self.unnormalized_marginal(&vec![None; self.cardinalities().len()])
    }

    /// `pi(x) / Z`.
    pub fn conditional(&self, x: &[usize], tol: f64) -> Result<f64> {
        let z = self.normalizer()?;
        if z <= tol {
            return Err(Error::ZeroNormalizer(z));
        }
        Ok(self.unnormalized(x)? / z)
    }

    /// Brute-force normalizer, for cross-checking.
    pub fn normalizer_by_enumeration(&self) -> Result<f64> {
        Assignments::new(self.cardinalities())
            .try_fold(0.0, |acc, x| Ok(acc + self.unnormalized(&x)?))
    }

    /// Writes `q_{k,i}(x) O_k(x)` as a mixture over the inputs of node `k`,
    /// weighted by row `i` of `W_k`.
    pub fn expand_operator_mixture(
        &self,
        node: NodeId,
        i: usize,
        x: &[usize],
    ) -> Result<OperatorMixture> {
        let tree = self.o.tree();
        tree.node(node)?;
        let (left, right, _) = tree.children(node).ok_or(Error::NotInternal(node))?;
        let qid = self.q_of[node];
        let w = match &self.q.params()[qid] {
            ProbParam::Internal(w) => w,
            ProbParam::Leaf(_) => return Err(Error::NotInternal(node)),
        };
        if i >= w.len() {
            return Err(Error::InvalidArgument(format!(
                "row {} out of range for node {} with {} rows",
                i,
                node,
                w.len()
            )));
        }
        let ops = self.o.evaluate_nodes(x)?;
        let qs = self.q.eval_nodes(x)?;
        let phi = self.o.operation(node).ok_or(Error::NotInternal(node))?;
        let mode = tree.children(node).map(|c| c.2).expect("internal");
        let joint = phi.apply(&combine(mode, &ops[left], &ops[right])?)?;
        let (ql, qr, qmode) = self.q.tree().children(qid).expect("internal");
        let scales = combine_vectors(qmode, &qs[ql], &qs[qr]);
        let summands = scales.iter().map(|&s| joint.scale_real(s)).collect();
        Ok(OperatorMixture {
            weights: w[i].clone(),
            summands,
            target: ops[node].scale_real(qs[qid][i]),
        })
    }
}

pub fn noisy_punc_unnormalized(c: &NoisePunc, x: &[usize]) -> Result<f64> {
    c.unnormalized(x)
}

pub fn noisy_punc_conditional(c: &NoisePunc, x: &[usize], tol: f64) -> Result<f64> {
    c.conditional(x, tol)
}

pub fn expand_operator_mixture(
    c: &NoisePunc,
    node: NodeId,
    i: usize,
    x: &[usize],
) -> Result<OperatorMixture> {
    c.expand_operator_mixture(node, i, x)
}
