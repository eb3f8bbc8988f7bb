//! A circuit of any supported family, and conversions between families.

use std::fmt;
use std::str::FromStr;

use crate::d_punc::{embed_sd, DProbCircuit, DPunc};
use crate::families::{
    diagonal_punc_to_pc, pc_to_diagonal_punc, psd_to_pure_punc, NoisePunc, ProbCircuitPT,
    PsdCircuit,
};
use crate::oracle::{self, CircuitDistribution};
use crate::report::Report;
use crate::sd_punc::SdPunc;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SdPunc,
    PsdCircuit,
    ProbCircuitPt,
    DPunc,
    DProbCircuit,
    NoisePunc,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::SdPunc,
        Family::PsdCircuit,
        Family::ProbCircuitPt,
        Family::DPunc,
        Family::DProbCircuit,
        Family::NoisePunc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::SdPunc => "sd_punc",
            Family::PsdCircuit => "psd_circuit",
            Family::ProbCircuitPt => "prob_circuit_pt",
            Family::DPunc => "d_punc",
            Family::DProbCircuit => "d_prob_circuit",
            Family::NoisePunc => "noise_punc",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Circuit {
    SdPunc(SdPunc),
    PsdCircuit(PsdCircuit),
    ProbCircuitPt(ProbCircuitPT),
    DPunc(DPunc),
    DProbCircuit(DProbCircuit),
    NoisePunc(NoisePunc),
}

impl Circuit {
    pub fn family(&self) -> Family {
        match self {
            Circuit::SdPunc(_) => Family::SdPunc,
            Circuit::PsdCircuit(_) => Family::PsdCircuit,
            Circuit::ProbCircuitPt(_) => Family::ProbCircuitPt,
            Circuit::DPunc(_) => Family::DPunc,
            Circuit::DProbCircuit(_) => Family::DProbCircuit,
            Circuit::NoisePunc(_) => Family::NoisePunc,
        }
    }

    pub fn cardinalities(&self) -> &[usize] {
        match self {
            Circuit::SdPunc(c) => c.cardinalities(),
            Circuit::PsdCircuit(c) => c.cardinalities(),
            Circuit::ProbCircuitPt(c) => c.cardinalities(),
            Circuit::DPunc(c) => c.cardinalities(),
            Circuit::DProbCircuit(c) => c.cardinalities(),
            Circuit::NoisePunc(c) => c.cardinalities(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.cardinalities().len()
    }

    pub fn validate(&self, tol: f64) -> Report {
        match self {
            Circuit::SdPunc(c) => c.validate(tol),
            Circuit::PsdCircuit(c) => c.validate(tol),
            Circuit::ProbCircuitPt(c) => c.validate(tol),
            Circuit::DPunc(c) => c.validate(tol),
            Circuit::DProbCircuit(c) => c.validate(tol),
            Circuit::NoisePunc(c) => c.validate(tol),
        }
    }

    /// Probability of a total assignment. For NoisePUnCs this is the
    /// unnormalized value `q(x) Tr[O(x) rho]`.
    pub fn probability(&self, x: &[usize]) -> Result<f64> {
        match self {
            Circuit::SdPunc(c) => c.probability(x),
            Circuit::PsdCircuit(c) => c.probability(x),
            Circuit::ProbCircuitPt(c) => c.probability(x),
            Circuit::DPunc(c) => c.probability(x),
            Circuit::DProbCircuit(c) => c.eval(x),
            Circuit::NoisePunc(c) => c.unnormalized(x),
        }
    }

    /// Sum over completions of `x` (`None` = marginalized), in one pass.
    pub fn marginal(&self, x: &[Option<usize>]) -> Result<f64> {
        match self {
            Circuit::SdPunc(c) => c.marginal_partial(x),
            Circuit::PsdCircuit(c) => c.marginal_partial(x),
            Circuit::ProbCircuitPt(c) => c.marginal_partial(x),
            Circuit::DPunc(c) => c.marginal_partial(x),
            Circuit::DProbCircuit(c) => c.to_dpunc()?.marginal_partial(x),
            Circuit::NoisePunc(c) => c.unnormalized_marginal(x),
        }
    }

    pub fn distribution(&self) -> Result<CircuitDistribution> {
        oracle::enumerate(|x| self.probability(x), self.cardinalities())
    }

    /// Circuit of family `to` with the same distribution. Fails with
    /// [`Error::ConversionInfeasible`] when no conversion applies.
    pub fn convert(&self, to: Family, tol: f64) -> Result<Circuit> {
        let infeasible = || {
            Error::ConversionInfeasible(format!("no conversion from {} to {}", self.family(), to))
        };
        let as_sd = |c: &Circuit| -> Result<SdPunc> {
            match c {
                Circuit::SdPunc(c) => Ok(c.clone()),
                Circuit::PsdCircuit(c) => psd_to_pure_punc(c, tol),
                Circuit::ProbCircuitPt(c) => pc_to_diagonal_punc(c, tol),
                _ => Err(infeasible()),
            }
        };
        if self.family() == to {
            return Ok(self.clone());
        }
        let out = match (self, to) {
            (_, Family::SdPunc) => Circuit::SdPunc(as_sd(self)?),
            (Circuit::SdPunc(c), Family::ProbCircuitPt) => {
                Circuit::ProbCircuitPt(diagonal_punc_to_pc(c).map_err(|e| match e {
                    Error::NotDiagonal(m) => {
                        Error::ConversionInfeasible(format!("circuit is not diagonal: {}", m))
                    }
                    e => e,
                })?)
            }
            (Circuit::DProbCircuit(c), Family::DPunc) => Circuit::DPunc(c.to_dpunc()?),
            (_, Family::DPunc) => Circuit::DPunc(embed_sd(&as_sd(self)?)?),
            (Circuit::DPunc(c), Family::DProbCircuit) => {
                Circuit::DProbCircuit(c.scalar_shadow().map_err(|_| {
                    Error::ConversionInfeasible("units are not one-dimensional".into())
                })?)
            }
            _ => return Err(infeasible()),
        };
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.as_str().parse::<Family>().unwrap(), f);
        }
        assert!(matches!(
            "tree".parse::<Family>(),
            Err(Error::UnknownFamily(_))
        ));
    }
}
