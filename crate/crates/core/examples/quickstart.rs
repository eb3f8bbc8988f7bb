// Builds a two-variable circuit by hand and queries it.
//
// Variable 0 is read out in the computational basis, variable 1 with a
// tilted two-outcome POVM. The root mixes the joint four-dimensional space
// down to a qubit with a unital operation.

use punc::linalg::ComplexMatrix;
use punc::partition::{PartitionCircuit, TreeSpec};
use punc::quantum::{DensityMatrix, Povm};
use punc::random::{rng_from_seed, unital_operation};
use punc::sd_punc::{SdParam, SdPunc};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tree = PartitionCircuit::build(
        &TreeSpec::pair(TreeSpec::leaf(0), TreeSpec::leaf(1)),
        &[2, 2],
    )?;

    let tilted = Povm::new(vec![
        ComplexMatrix::from_real(2, 2, &[0.7, 0.2, 0.2, 0.3])?,
        ComplexMatrix::from_real(2, 2, &[0.3, -0.2, -0.2, 0.7])?,
    ])?;
    let mut rng = rng_from_seed(7);
    let mix = unital_operation(4, 2, 3, &mut rng)?;

    // Parameters are indexed by node id: both leaves come before the root.
    let params = vec![
        SdParam::Leaf(Povm::computational_basis(2)),
        SdParam::Leaf(tilted),
        SdParam::Internal(mix),
    ];
    let rho = DensityMatrix::new(
        ComplexMatrix::from_real(2, 2, &[0.8, 0.1, 0.1, 0.2])?,
        1e-12,
    )?;
    let circuit = SdPunc::new(tree, params, rho)?;

    let report = circuit.validate(1e-9);
    println!("valid: {}", report.is_valid());

    let mut total = 0.0;
    for x0 in 0..2 {
        for x1 in 0..2 {
            let p = circuit.probability(&[x0, x1])?;
            total += p;
            println!("p({}, {}) = {:.6}", x0, x1, p);
        }
    }
    println!("sum = {:.12}", total);
    println!(
        "p(x0 = 1) = {:.6}",
        circuit.marginal_partial(&[Some(1), None])?
    );
    assert!((total - 1.0).abs() < 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
