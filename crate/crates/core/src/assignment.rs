//! Total assignments, partial evidence and marginal queries.

use std::collections::{BTreeMap, BTreeSet};

use crate::{Error, Result};

/// Checks a total assignment against variable cardinalities.
pub fn check_assignment(x: &[usize], cardinalities: &[usize]) -> Result<()> {
    if x.len() != cardinalities.len() {
        return Err(Error::ArityMismatch {
            expected: cardinalities.len(),
            got: x.len(),
        });
    }
    for (var, (&value, &cardinality)) in x.iter().zip(cardinalities).enumerate() {
        if value >= cardinality {
            return Err(Error::ValueOutOfRange {
                var,
                value,
                cardinality,
            });
        }
    }
    Ok(())
}

/// Checks partial evidence; `None` marks a marginalized variable.
pub fn check_evidence(x: &[Option<usize>], cardinalities: &[usize]) -> Result<()> {
    if x.len() != cardinalities.len() {
        return Err(Error::ArityMismatch {
            expected: cardinalities.len(),
            got: x.len(),
        });
    }
    for (var, (value, &cardinality)) in x.iter().zip(cardinalities).enumerate() {
        if let Some(value) = *value {
            if value >= cardinality {
                return Err(Error::ValueOutOfRange {
                    var,
                    value,
                    cardinality,
                });
            }
        }
    }
    Ok(())
}

/// Evidence on some variables, sum over the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalQuery {
    pub evidence: BTreeMap<usize, usize>,
    pub marginalized: BTreeSet<usize>,
}

impl MarginalQuery {
    /// Evidence and marginalized sets must partition `0..num_vars`.
    pub fn new(
        evidence: BTreeMap<usize, usize>,
        marginalized: BTreeSet<usize>,
        num_vars: usize,
    ) -> Result<Self> {
        if let Some(v) = evidence.keys().find(|v| marginalized.contains(v)) {
            return Err(Error::BadPartition(format!(
                "variable {} is both observed and marginalized",
                v
            )));
        }
        for v in 0..num_vars {
            if !evidence.contains_key(&v) && !marginalized.contains(&v) {
                return Err(Error::BadPartition(format!("variable {} is unassigned", v)));
            }
        }
        if let Some(v) = evidence
            .keys()
            .chain(marginalized.iter())
            .find(|&&v| v >= num_vars)
        {
            return Err(Error::BadPartition(format!("unknown variable {}", v)));
        }
        Ok(Self {
            evidence,
            marginalized,
        })
    }

    /// Marginalizes every variable not in `evidence`.
    pub fn from_evidence(evidence: BTreeMap<usize, usize>, num_vars: usize) -> Result<Self> {
        let marginalized = (0..num_vars)
            .filter(|v| !evidence.contains_key(v))
            .collect();
        Self::new(evidence, marginalized, num_vars)
    }

    pub fn from_partial(x: &[Option<usize>]) -> Self {
        Self {
            evidence: x
                .iter()
                .enumerate()
                .filter_map(|(v, val)| val.map(|val| (v, val)))
                .collect(),
            marginalized: x
                .iter()
                .enumerate()
                .filter(|(_, val)| val.is_none())
                .map(|(v, _)| v)
                .collect(),
        }
    }

    pub fn to_partial(&self, num_vars: usize) -> Vec<Option<usize>> {
        (0..num_vars)
            .map(|v| self.evidence.get(&v).copied())
            .collect()
    }
}

/// Iterates all assignments in lexicographic order, variable 0 slowest.
#[derive(Debug, Clone)]
pub struct Assignments {
    cardinalities: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Assignments {
    pub fn new(cardinalities: &[usize]) -> Self {
        let next = if cardinalities.contains(&0) {
            None
        } else {
            Some(vec![0; cardinalities.len()])
        };
        Self {
            cardinalities: cardinalities.to_vec(),
            next,
        }
    }
}

impl Iterator for Assignments {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.cardinalities[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

/// Assignment with lexicographic rank `index`.
pub fn assignment_at(mut index: usize, cardinalities: &[usize]) -> Vec<usize> {
    let mut x = vec![0; cardinalities.len()];
    for (slot, &c) in x.iter_mut().zip(cardinalities).rev() {
        *slot = index % c;
        index /= c;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let all: Vec<_> = Assignments::new(&[2, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[3], vec![1, 0]);
        for (i, x) in all.iter().enumerate() {
            assert_eq!(&assignment_at(i, &[2, 3]), x);
        }
        assert_eq!(Assignments::new(&[]).count(), 1);
    }

    #[test]
    fn query_must_partition() {
        let ev = BTreeMap::from([(0, 1)]);
        assert!(MarginalQuery::new(ev.clone(), BTreeSet::from([1]), 2).is_ok());
        assert!(MarginalQuery::new(ev.clone(), BTreeSet::new(), 2).is_err());
        assert!(MarginalQuery::new(ev, BTreeSet::from([0, 1]), 2).is_err());
    }

    #[test]
    fn assignment_checks() {
        assert!(check_assignment(&[0, 1], &[2, 2]).is_ok());
        assert!(matches!(
            check_assignment(&[0], &[2, 2]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            check_assignment(&[0, 2], &[2, 2]),
            Err(Error::ValueOutOfRange { .. })
        ));
    }
}
