//! Reference evaluators used as ground truth by the integration tests.
//!
//! They recurse over the circuit definitions with plain nested vectors and do
//! not share any arithmetic with the library's matrix type.

#![allow(dead_code)]

use punc::d_punc::{DPunc, DUnit};
use punc::families::{ProbCircuitPT, ProbParam, PsdCircuit};
use punc::linalg::{ComplexMatrix, C64};
use punc::partition::{CombineMode, NodeKind};
use punc::sd_punc::{SdParam, SdPunc};

pub type Mat = Vec<Vec<C64>>;

pub fn dense(m: &ComplexMatrix) -> Mat {
    m.to_rows()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn adjoint(a: &Mat) -> Mat {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j].conj()).collect())
        .collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (br, bc) = (b.len(), b[0].len());
    (0..a.len() * br)
        .map(|i| {
            (0..a[0].len() * bc)
                .map(|j| a[i / br][j / bc] * b[i % br][j % bc])
                .collect()
        })
        .collect()
}

pub fn hadamard(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x * y).collect())
        .collect()
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![C64::new(0.0, 0.0); cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect()
}

pub fn trace_product(a: &Mat, b: &Mat) -> C64 {
    let n = a.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |k| (i, k)))
        .map(|(i, k)| a[i][k] * b[k][i])
        .sum()
}

pub fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `sum_j K_j E K_j*`.
pub fn apply_kraus(kraus: &[ComplexMatrix], e: &Mat) -> Mat {
    let mut out: Option<Mat> = None;
    for k in kraus {
        let k = dense(k);
        let term = mul(&mul(&k, e), &adjoint(&k));
        out = Some(match out {
            Some(acc) => add(&acc, &term),
            None => term,
        });
    }
    out.expect("at least one Kraus operator")
}

fn combine(mode: CombineMode, a: &Mat, b: &Mat) -> Mat {
    match mode {
        CombineMode::Kronecker => kron(a, b),
        CombineMode::Hadamard => hadamard(a, b),
    }
}

/// Operator of tree node `id` under the total assignment `x`.
pub fn sd_operator(c: &SdPunc, id: usize, x: &[usize]) -> Mat {
    let node = &c.tree().nodes()[id];
    match (&node.kind, &c.params()[id]) {
        (NodeKind::Leaf { var, .. }, SdParam::Leaf(povm)) => dense(&povm.elements()[x[*var]]),
        (NodeKind::Internal { left, right, mode }, SdParam::Internal(op)) => {
            let inner = combine(*mode, &sd_operator(c, *left, x), &sd_operator(c, *right, x));
            apply_kraus(op.kraus(), &inner)
        }
        _ => panic!("parameter kind does not match node {}", id),
    }
}

pub fn sd_root(c: &SdPunc, x: &[usize]) -> Mat {
    sd_operator(c, c.tree().root(), x)
}

pub fn sd_prob(c: &SdPunc, x: &[usize]) -> f64 {
    trace_product(&dense(c.rho().matrix()), &sd_root(c, x)).re
}

/// Operator of unit `id`, recomputed for every path through the DAG.
pub fn d_operator(c: &DPunc, id: usize, x: &[usize]) -> Mat {
    match &c.units()[id] {
        DUnit::Leaf { var, povm } => dense(&povm.elements()[x[*var]]),
        DUnit::Product { left, right } => kron(&d_operator(c, *left, x), &d_operator(c, *right, x)),
        DUnit::Sum { edges } => {
            let mut acc: Option<Mat> = None;
            for e in edges {
                let term: Mat = apply_kraus(e.op.kraus(), &d_operator(c, e.input, x))
                    .into_iter()
                    .map(|r| r.into_iter().map(|z| z * e.weight).collect())
                    .collect();
                acc = Some(match acc {
                    Some(a) => add(&a, &term),
                    None => term,
                });
            }
            acc.expect("sum with inputs")
        }
    }
}

pub fn d_prob(c: &DPunc, x: &[usize]) -> f64 {
    trace_product(&dense(c.rho().matrix()), &d_operator(c, c.root(), x)).re
}

/// Output vector of a partition-tree PC node.
pub fn pc_vector(c: &ProbCircuitPT, id: usize, x: &[usize]) -> Vec<f64> {
    let node = &c.tree().nodes()[id];
    match (&node.kind, &c.params()[id]) {
        (NodeKind::Leaf { var, .. }, ProbParam::Leaf(table)) => table[x[*var]].clone(),
        (NodeKind::Internal { left, right, mode }, ProbParam::Internal(w)) => {
            let a = pc_vector(c, *left, x);
            let b = pc_vector(c, *right, x);
            let inner: Vec<f64> = match mode {
                CombineMode::Kronecker => a
                    .iter()
                    .flat_map(|p| b.iter().map(move |q| p * q))
                    .collect(),
                CombineMode::Hadamard => a.iter().zip(&b).map(|(p, q)| p * q).collect(),
            };
            w.iter()
                .map(|row| row.iter().zip(&inner).map(|(u, v)| u * v).sum())
                .collect()
        }
        _ => panic!("parameter kind does not match node {}", id),
    }
}

pub fn pc_prob(c: &ProbCircuitPT, x: &[usize]) -> f64 {
    pc_vector(c, c.tree().root(), x)[0]
}

/// Amplitude vector of a PSD circuit node.
pub fn psd_vector(c: &PsdCircuit, id: usize, x: &[usize]) -> Vec<C64> {
    let u = dense(&c.matrices()[id]);
    let inner: Vec<C64> = match c.tree().nodes()[id].kind {
        NodeKind::Leaf { var, .. } => (0..u[0].len())
            .map(|j| C64::new(if j == x[var] { 1.0 } else { 0.0 }, 0.0))
            .collect(),
        NodeKind::Internal { left, right, mode } => {
            let a = psd_vector(c, left, x);
            let b = psd_vector(c, right, x);
            match mode {
                CombineMode::Kronecker => a
                    .iter()
                    .flat_map(|p| b.iter().map(move |q| p * q))
                    .collect(),
                CombineMode::Hadamard => a.iter().zip(&b).map(|(p, q)| p * q).collect(),
            }
        }
    };
    u.iter()
        .map(|row| row.iter().zip(&inner).map(|(a, b)| a * b).sum())
        .collect()
}

/// `v* rho v` for the root amplitude `v`.
pub fn psd_prob(c: &PsdCircuit, x: &[usize]) -> f64 {
    let v = psd_vector(c, c.tree().root(), x);
    let rho = dense(c.rho().matrix());
    let mut p = C64::new(0.0, 0.0);
    for (i, row) in rho.iter().enumerate() {
        for (j, r) in row.iter().enumerate() {
            p += v[i].conj() * r * v[j];
        }
    }
    p.re
}

/// All assignments over `cards`, variable 0 slowest.
pub fn assignments(cards: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &k in cards {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..k).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Sum of `f` over completions of the partial assignment `e`.
pub fn brute_marginal(cards: &[usize], e: &[Option<usize>], f: impl Fn(&[usize]) -> f64) -> f64 {
    assignments(cards)
        .into_iter()
        .filter(|x| x.iter().zip(e).all(|(v, ev)| ev.is_none_or(|ev| ev == *v)))
        .map(|x| f(&x))
        .sum()
}
