//! Brute-force enumeration over the full assignment space.
//!
//! Used as ground truth for small circuits. The state space is capped at
//! `2^20` assignments.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::assignment::{assignment_at, Assignments};
use crate::linalg::{ComplexMatrix, C64};
use crate::{Error, Result};

pub const MAX_STATES: usize = 1 << 20;

/// Assignments per parallel work item.
const CHUNK: usize = 256;

/// Probabilities over all assignments in lexicographic order, variable 0 slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitDistribution {
    cardinalities: Vec<usize>,
    probs: Vec<f64>,
}

/// Number of assignments, or an error above [`MAX_STATES`].
pub fn state_count(cardinalities: &[usize]) -> Result<usize> {
    let states = cardinalities
        .iter()
        .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128))
        .unwrap_or(u128::MAX);
    if states > MAX_STATES as u128 {
        return Err(Error::StateSpaceTooLarge {
            states,
            cap: MAX_STATES,
        });
    }
    Ok(states as usize)
}

impl CircuitDistribution {
    pub fn new(cardinalities: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        let n = state_count(&cardinalities)?;
        if probs.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} probabilities for {} assignments",
                probs.len(),
                n
            )));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| p.is_nan() || **p < -1e-12)
        {
            return Err(Error::InvalidArgument(format!(
                "assignment {:?} has probability {}",
                assignment_at(i, &cardinalities),
                p
            )));
        }
        Ok(Self {
            cardinalities,
            probs,
        })
    }

    pub fn cardinalities(&self) -> &[usize] {
        &self.cardinalities
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        Assignments::new(&self.cardinalities).zip(self.probs.iter().copied())
    }

    /// Sum of the entries consistent with `evidence` (`None` = any value).
    pub fn marginal(&self, evidence: &[Option<usize>]) -> f64 {
        self.iter()
            .filter(|(x, _)| {
                x.iter()
                    .zip(evidence)
                    .all(|(v, e)| e.is_none_or(|e| e == *v))
            })
            .map(|(_, p)| p)
            .sum()
    }

    /// One line `x0 x1 ... p` per assignment; `p` has 17 significant digits.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (x, p) in self.iter() {
            for v in &x {
                let _ = write!(out, "{} ", v);
            }
            let _ = writeln!(out, "{:.16e}", p);
        }
        out
    }
}

/// Evaluates `prob` on every assignment. Work is sharded across threads;
/// the table order does not depend on the sharding.
pub fn enumerate<F>(prob: F, cardinalities: &[usize]) -> Result<CircuitDistribution>
where
    F: Fn(&[usize]) -> Result<f64> + Sync,
{
    let n = state_count(cardinalities)?;
    let probs = (0..n)
        .into_par_iter()
        .with_min_len(CHUNK)
        .map(|i| prob(&assignment_at(i, cardinalities)))
        .collect::<Result<Vec<_>>>()?;
    CircuitDistribution::new(cardinalities.to_vec(), probs)
}

/// `sum_x eval(x)`. Partial sums are formed per fixed chunk and added in
/// chunk order, so the result is deterministic.
pub fn operator_sum<F>(eval: F, cardinalities: &[usize]) -> Result<ComplexMatrix>
where
    F: Fn(&[usize]) -> Result<ComplexMatrix> + Sync,
{
    let n = state_count(cardinalities)?;
    let chunks: Vec<ComplexMatrix> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc: Option<ComplexMatrix> = None;
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let m = eval(&assignment_at(i, cardinalities))?;
                match acc.as_mut() {
                    Some(a) => a.add_scaled(C64::new(1.0, 0.0), &m)?,
                    None => acc = Some(m),
                }
            }
            Ok(acc.expect("non-empty chunk"))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut it = chunks.into_iter();
    let mut total = it.next().expect("at least one assignment");
    for m in it {
        total.add_scaled(C64::new(1.0, 0.0), &m)?;
    }
    Ok(total)
}

/// Whether `max |a - b| <= atol`, together with the maximum deviation.
pub fn distributions_equal(
    a: &CircuitDistribution,
    b: &CircuitDistribution,
    atol: f64,
) -> Result<(bool, f64)> {
    if a.cardinalities != b.cardinalities {
        return Err(Error::InvalidArgument(format!(
            "domains differ: {:?} vs {:?}",
            a.cardinalities, b.cardinalities
        )));
    }
    let dev = a
        .probs
        .iter()
        .zip(&b.probs)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok((dev <= atol, dev))
}
