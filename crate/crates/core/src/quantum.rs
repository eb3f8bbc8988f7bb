//! POVMs, density matrices and Kraus-form quantum operations.

use crate::linalg::{ComplexMatrix, C64};
use crate::report::{Report, ViolationKind};
use crate::{Error, Result};

/// Imaginary residual tolerated on a trace that must be real.
pub const IMAG_TOL: f64 = 1e-10;

/// Positive operator-valued measure: one PSD element per outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    /// Checks shapes only; use [`Povm::validate`] for positivity and completeness.
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidArgument("a POVM needs at least one element".into()))?;
        let dim = first.rows();
        for e in &elements {
            if e.shape() != (dim, dim) {
                return Err(Error::ShapeMismatch {
                    op: "povm",
                    left: (dim, dim),
                    right: e.shape(),
                });
            }
        }
        Ok(Self { elements })
    }

    /// Projective measurement in the computational basis of dimension `n`.
    pub fn computational_basis(n: usize) -> Self {
        Self {
            elements: (0..n)
                .map(|i| ComplexMatrix::basis_projector(n, i))
                .collect(),
        }
    }

    /// One-dimensional POVM with scalar elements `probs` (a categorical leaf).
    pub fn scalar(probs: &[f64]) -> Result<Self> {
        Self::new(
            probs
                .iter()
                .map(|&p| ComplexMatrix::scalar(C64::new(p, 0.0)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn outcomes(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Option<&ComplexMatrix> {
        self.elements.get(i)
    }

    pub fn sum(&self) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.dim(), self.dim());
        for e in &self.elements {
            s.add_scaled(C64::new(1.0, 0.0), e).expect("uniform shapes");
        }
        s
    }

    /// Reports elements that are not PSD and a sum that differs from the identity.
    pub fn validate(&self, tol: f64) -> Report {
        let mut report = validate_elements(&self.elements, tol);
        let residual = self.sum().identity_residual().expect("square");
        if residual > tol {
            report.push(
                ViolationKind::PovmIncomplete,
                None,
                residual,
                "elements do not sum to the identity",
            );
        }
        report
    }
}

fn validate_elements(elements: &[ComplexMatrix], tol: f64) -> Report {
    let mut report = Report::new();
    for (i, e) in elements.iter().enumerate() {
        let herm = e.hermitian_residual().expect("square");
        if herm > tol {
            report.push(
                ViolationKind::NotHermitian,
                Some(format!("element {}", i)),
                herm,
                "",
            );
        } else {
            let min = e.min_eigenvalue().unwrap_or(f64::NEG_INFINITY);
            if min < -tol {
                report.push(
                    ViolationKind::NotPsd,
                    Some(format!("element {}", i)),
                    -min,
                    "negative eigenvalue",
                );
            }
        }
    }
    report
}

/// Validates `p`; an empty report means both POVM invariants hold.
pub fn validate_povm(p: &Povm, tol: f64) -> Report {
    p.validate(tol)
}

/// A set of PSD elements summing to some `M <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisyPovm {
    elements: Vec<ComplexMatrix>,
    bound: ComplexMatrix,
    strict: bool,
}

impl NoisyPovm {
    /// Fails unless all elements are PSD and their sum is below the identity.
    pub fn new(elements: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        let p = Povm::new(elements)?;
        let mut report = validate_elements(&p.elements, tol);
        let bound = p.sum();
        let n = p.dim();
        let identity = ComplexMatrix::identity(n);
        if !bound.loewner_leq(&identity, tol)? {
            report.push(
                ViolationKind::PovmExceedsIdentity,
                None,
                identity.sub(&bound)?.min_eigenvalue()?.abs(),
                "1 - M is not PSD",
            );
        }
        report.into_result()?;
        let strict = bound.identity_residual()? > tol;
        Ok(Self {
            elements: p.elements,
            bound,
            strict,
        })
    }

    pub fn dim(&self) -> usize {
        self.bound.rows()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    /// The sum `M` of all elements.
    pub fn bound(&self) -> &ComplexMatrix {
        &self.bound
    }

    /// True when `M` differs from the identity.
    pub fn is_strict(&self) -> bool {
        self.strict
    }
}

/// PSD matrix of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, tol: f64) -> Result<Self> {
        let report = Self::check(&mat, tol)?;
        report.into_result()?;
        Ok(Self { mat })
    }

    /// Skips the PSD check; callers guarantee the invariants.
    pub(crate) fn new_unchecked(mat: ComplexMatrix) -> Self {
        Self { mat }
    }

    fn check(mat: &ComplexMatrix, tol: f64) -> Result<Report> {
        let mut report = Report::new();
        if !mat.is_square() {
            return Err(Error::NotSquare {
                op: "density matrix",
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        if !mat.is_psd(tol)? {
            report.push(ViolationKind::NotPsd, Some("rho".into()), 0.0, "");
        }
        let tr = mat.trace()?;
        let dev = (tr - C64::new(1.0, 0.0)).norm();
        if dev > tol {
            report.push(
                ViolationKind::NotDensity,
                Some("rho".into()),
                dev,
                "trace differs from one",
            );
        }
        Ok(report)
    }

    pub fn validate(&self, tol: f64) -> Report {
        Self::check(&self.mat, tol).unwrap_or_default()
    }

    /// `1 / n` times the identity.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
        }
    }

    /// Pure state `|e_i><e_i|`.
    pub fn basis_state(n: usize, i: usize) -> Self {
        Self {
            mat: ComplexMatrix::basis_projector(n, i),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }
}

/// `Tr[rho e]` for a PSD event operator `e`.
///
/// The trace is real up to round-off; an imaginary residual above
/// [`IMAG_TOL`] is an error. The result is clamped to `[0, 1]`.
pub fn event_probability(rho: &DensityMatrix, e: &ComplexMatrix) -> Result<f64> {
    if e.shape() != rho.mat.shape() {
        return Err(Error::ShapeMismatch {
            op: "event_probability",
            left: rho.mat.shape(),
            right: e.shape(),
        });
    }
    if !e.is_psd(crate::linalg::DEFAULT_TOL)? {
        return Err(Error::NonPsdEvent);
    }
    let p = trace_product(&rho.mat, e)?;
    real_probability(p)
}

/// `Tr[a b]` without forming the product.
pub(crate) fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    if a.rows() != b.cols() || a.cols() != b.rows() {
        return Err(Error::ShapeMismatch {
            op: "trace_product",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let mut s = C64::new(0.0, 0.0);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            s += a[(i, j)] * b[(j, i)];
        }
    }
    Ok(s)
}

pub(crate) fn real_probability(p: C64) -> Result<f64> {
    if p.im.abs() > IMAG_TOL {
        return Err(Error::ComplexProbability(p.im));
    }
    Ok(p.re.clamp(0.0, 1.0))
}

/// Completely positive map in Kraus form, `E -> sum_j K_j E K_j*`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumOperation {
    kraus: Vec<ComplexMatrix>,
}

impl QuantumOperation {
    /// All Kraus operators must share the shape `out_dim x in_dim`.
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| {
            Error::InvalidArgument("a quantum operation needs at least one Kraus operator".into())
        })?;
        let shape = first.shape();
        for k in &kraus {
            if k.shape() != shape {
                return Err(Error::ShapeMismatch {
                    op: "kraus",
                    left: shape,
                    right: k.shape(),
                });
            }
        }
        Ok(Self { kraus })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            kraus: vec![ComplexMatrix::identity(n)],
        }
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn in_dim(&self) -> usize {
        self.kraus[0].cols()
    }

    pub fn out_dim(&self) -> usize {
        self.kraus[0].rows()
    }

    pub fn apply(&self, e: &ComplexMatrix) -> Result<ComplexMatrix> {
        if e.shape() != (self.in_dim(), self.in_dim()) {
            return Err(Error::ShapeMismatch {
                op: "apply_operation",
                left: (self.in_dim(), self.in_dim()),
                right: e.shape(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.out_dim(), self.out_dim());
        for k in &self.kraus {
            let term = k.matmul(e)?.matmul(&k.conj_transpose())?;
            out.add_scaled(C64::new(1.0, 0.0), &term)?;
        }
        Ok(out)
    }

    /// `sum_j K_j K_j*`, i.e. the image of the identity.
    pub fn unit_image(&self) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.out_dim(), self.out_dim());
        for k in &self.kraus {
            s.add_scaled(C64::new(1.0, 0.0), &k.matmul(&k.conj_transpose()).unwrap())
                .unwrap();
        }
        s
    }

    /// `sum_j K_j* K_j`.
    pub fn completeness(&self) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.in_dim(), self.in_dim());
        for k in &self.kraus {
            s.add_scaled(C64::new(1.0, 0.0), &k.conj_transpose().matmul(k).unwrap())
                .unwrap();
        }
        s
    }

    pub fn unitality_residual(&self) -> f64 {
        self.unit_image().identity_residual().expect("square")
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        self.unitality_residual() <= tol
    }

    /// Kraus side condition `sum_j K_j* K_j <= 1` in the Loewner order.
    pub fn check_validity(&self, tol: f64) -> bool {
        let s = self.completeness();
        s.loewner_leq(&ComplexMatrix::identity(self.in_dim()), tol)
            .unwrap_or(false)
    }

    /// Reports non-unitality only. This is what circuit validators require:
    /// normalization of a circuit needs unital operations and POVM leaves, not
    /// the Kraus side condition.
    pub fn validate_unital(&self, tol: f64) -> Report {
        let mut report = Report::new();
        let r = self.unitality_residual();
        if r > tol {
            report.push(ViolationKind::NotUnital, None, r, "Phi(1) != 1");
        }
        report
    }

    /// Reports non-unitality and invalidity.
    pub fn validate(&self, tol: f64) -> Report {
        let mut report = self.validate_unital(tol);
        if !self.check_validity(tol) {
            report.push(
                ViolationKind::InvalidOperation,
                None,
                0.0,
                "sum K* K exceeds the identity",
            );
        }
        report
    }

    /// Operation with Kraus operators `K_j m` (precomposition with `m`).
    pub fn precompose(&self, m: &ComplexMatrix) -> Result<Self> {
        Self::new(
            self.kraus
                .iter()
                .map(|k| k.matmul(m))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Every Kraus operator multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            kraus: self.kraus.iter().map(|k| k.scale_real(s)).collect(),
        }
    }
}

pub fn apply_operation(phi: &QuantumOperation, e: &ComplexMatrix) -> Result<ComplexMatrix> {
    phi.apply(e)
}

pub fn is_unital(phi: &QuantumOperation, tol: f64) -> bool {
    phi.is_unital(tol)
}

pub fn check_validity(phi: &QuantumOperation, tol: f64) -> bool {
    phi.check_validity(tol)
}

/// Convex mixture `sum_j w_j Phi_j` as a single Kraus set `{sqrt(w_j) K}`.
pub fn compose_convex(
    weights: &[f64],
    ops: &[QuantumOperation],
    tol: f64,
) -> Result<QuantumOperation> {
    if weights.len() != ops.len() || ops.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} operations",
            weights.len(),
            ops.len()
        )));
    }
    let sum: f64 = weights.iter().sum();
    if weights.iter().any(|&w| w < 0.0 || !w.is_finite()) || (sum - 1.0).abs() > tol {
        return Err(Error::WeightSum { sum });
    }
    let shape = (ops[0].out_dim(), ops[0].in_dim());
    let mut kraus = Vec::new();
    for (w, op) in weights.iter().zip(ops) {
        if (op.out_dim(), op.in_dim()) != shape {
            return Err(Error::ShapeMismatch {
                op: "compose_convex",
                left: shape,
                right: (op.out_dim(), op.in_dim()),
            });
        }
        kraus.extend(op.kraus.iter().map(|k| k.scale_real(w.sqrt())));
    }
    QuantumOperation::new(kraus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real_diag(d)
    }

    #[test]
    fn validate_povm_examples() {
        assert!(Povm::scalar(&[1.0]).unwrap().validate(1e-9).is_valid());
        let p = Povm::new(vec![diag(&[1.0, 0.0]), diag(&[0.0, 1.0])]).unwrap();
        assert!(validate_povm(&p, 1e-9).is_valid());
        let bad = Povm::new(vec![diag(&[0.6, 0.0]), diag(&[0.3, 1.0])]).unwrap();
        let report = validate_povm(&bad, 1e-9);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].kind, ViolationKind::PovmIncomplete);
        assert!((report.violations[0].residual - 0.1).abs() < 1e-12);
    }

    #[test]
    fn povm_with_negative_element() {
        let p = Povm::new(vec![diag(&[1.5, 0.0]), diag(&[-0.5, 1.0])]).unwrap();
        assert!(p.validate(1e-9).has(ViolationKind::NotPsd));
    }

    #[test]
    fn event_probability_examples() {
        let rho = DensityMatrix::new(ComplexMatrix::scalar(C64::new(1.0, 0.0)), 1e-9).unwrap();
        let p = event_probability(&rho, &ComplexMatrix::scalar(C64::new(0.3, 0.0))).unwrap();
        assert!((p - 0.3).abs() < 1e-15);
        let rho = DensityMatrix::maximally_mixed(2);
        assert_eq!(event_probability(&rho, &diag(&[1.0, 0.0])).unwrap(), 0.5);
        assert!(matches!(
            event_probability(&rho, &diag(&[1.0])),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            event_probability(&rho, &diag(&[1.0, -1.0])),
            Err(Error::NonPsdEvent)
        ));
    }

    #[test]
    fn density_matrix_checks() {
        assert!(DensityMatrix::new(diag(&[0.5, 0.4]), 1e-9).is_err());
        assert!(DensityMatrix::new(diag(&[1.5, -0.5]), 1e-9).is_err());
        assert!(DensityMatrix::new(diag(&[0.5, 0.5]), 1e-9).is_ok());
    }

    #[test]
    fn apply_operation_examples() {
        let e = diag(&[0.2, 0.8]);
        let id = QuantumOperation::identity(2);
        assert_eq!(apply_operation(&id, &e).unwrap(), e);
        let swap =
            QuantumOperation::new(vec![
                ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
            ])
            .unwrap();
        assert_eq!(apply_operation(&swap, &e).unwrap(), diag(&[0.8, 0.2]));
    }

    #[test]
    fn unitality_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let hadamard_gate = ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).unwrap();
        assert!(is_unital(
            &QuantumOperation::new(vec![hadamard_gate]).unwrap(),
            1e-12
        ));
        let proj = QuantumOperation::new(vec![diag(&[1.0, 0.0]), diag(&[0.0, 1.0])]).unwrap();
        assert!(is_unital(&proj, 1e-12));
        // K K* = 1/2 [[1,1],[1,1]] is not the identity.
        let k = ComplexMatrix::from_real(2, 2, &[h, 0.0, h, 0.0]).unwrap();
        let op = QuantumOperation::new(vec![k]).unwrap();
        let img = op.unit_image();
        assert!((img[(0, 1)].re - 0.5).abs() < 1e-12);
        assert!(!is_unital(&op, 1e-9));
    }

    #[test]
    fn unitality_alone_does_not_bound_completeness() {
        // K_1 = e_0 e_0*, K_2 = e_1 e_0*: sum K K* = 1 but sum K* K = diag(2, 0).
        let k1 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let k2 = ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 1.0, 0.0]).unwrap();
        let op = QuantumOperation::new(vec![k1, k2]).unwrap();
        assert!(op.is_unital(1e-12));
        assert!(!op.check_validity(1e-9));
        assert!(op.validate(1e-9).has(ViolationKind::InvalidOperation));
    }

    #[test]
    fn validity_examples() {
        assert!(check_validity(&QuantumOperation::identity(3), 1e-9));
        let scaled = QuantumOperation::identity(2).scaled(2.0);
        assert!(!check_validity(&scaled, 1e-9));
    }

    #[test]
    fn compose_convex_examples() {
        let id = QuantumOperation::identity(2);
        let single = compose_convex(&[1.0], std::slice::from_ref(&id), 1e-9).unwrap();
        assert_eq!(single, id);
        let swap =
            QuantumOperation::new(vec![
                ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
            ])
            .unwrap();
        let mix = compose_convex(&[0.5, 0.5], &[id.clone(), swap], 1e-9).unwrap();
        assert_eq!(mix.kraus().len(), 2);
        assert!(is_unital(&mix, 1e-12));
        assert!(matches!(
            compose_convex(&[0.3, 0.8], &[id.clone(), id], 1e-9),
            Err(Error::WeightSum { .. })
        ));
    }

    #[test]
    fn noisy_povm_bound() {
        let n = NoisyPovm::new(vec![diag(&[0.5, 0.0]), diag(&[0.2, 0.9])], 1e-9).unwrap();
        assert!(n.is_strict());
        assert_eq!(n.bound(), &diag(&[0.7, 0.9]));
        assert!(NoisyPovm::new(vec![diag(&[0.8, 0.0]), diag(&[0.3, 0.9])], 1e-9).is_err());
        let complete = NoisyPovm::new(vec![diag(&[1.0, 0.0]), diag(&[0.0, 1.0])], 1e-9).unwrap();
        assert!(!complete.is_strict());
    }
}
