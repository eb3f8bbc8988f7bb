//! Structured validation diagnostics.
//!
//! Validators never fail; they return a [`Report`] listing every violated
//! invariant together with where it happened and how large the residual was.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    NotPsd,
    NotHermitian,
    PovmIncomplete,
    PovmExceedsIdentity,
    NotUnital,
    InvalidOperation,
    NotDensity,
    NotSemiUnitary,
    WeightSum,
    NegativeWeight,
    OutOfUnitInterval,
    LeafIncomplete,
    DimensionMismatch,
    CardinalityMismatch,
    Cycle,
    NotDecomposable,
    NotSmooth,
    Structure,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::NotPsd => "not-psd",
            Self::NotHermitian => "not-hermitian",
            Self::PovmIncomplete => "sum != identity",
            Self::PovmExceedsIdentity => "sum exceeds identity",
            Self::NotUnital => "not-unital",
            Self::InvalidOperation => "invalid-operation",
            Self::NotDensity => "not-density-matrix",
            Self::NotSemiUnitary => "not-semi-unitary",
            Self::WeightSum => "weight-sum",
            Self::NegativeWeight => "negative-weight",
            Self::OutOfUnitInterval => "outside-[0,1]",
            Self::LeafIncomplete => "leaf-incomplete",
            Self::DimensionMismatch => "dimension-mismatch",
            Self::CardinalityMismatch => "cardinality-mismatch",
            Self::Cycle => "cycle",
            Self::NotDecomposable => "not-decomposable",
            Self::NotSmooth => "not-smooth",
            Self::Structure => "structure",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Human-readable location, e.g. `node 3` or `unit 7 edge 1`.
    pub location: Option<String>,
    /// Largest residual observed for this violation (0 for structural ones).
    pub residual: f64,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(loc) = &self.location {
            write!(f, "{}: ", loc)?;
        }
        write!(f, "{}", self.kind.as_str())?;
        if self.residual != 0.0 {
            write!(f, " (residual {:e})", self.residual)?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(
        &mut self,
        kind: ViolationKind,
        location: Option<String>,
        residual: f64,
        detail: impl Into<String>,
    ) {
        self.violations.push(Violation {
            kind,
            location,
            residual,
            detail: detail.into(),
        });
    }

    /// Appends `other`, prefixing each location with `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut v in other.violations {
            v.location = Some(match v.location {
                Some(loc) => format!("{} {}", prefix, loc),
                None => prefix.to_string(),
            });
            self.violations.push(v);
        }
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    /// Converts to `Err(Error::InvalidCircuit)` when any violation was recorded.
    pub fn into_result(self) -> crate::Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::InvalidCircuit(self))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", v)?;
        }
        Ok(())
    }
}
