// A partition-tree probabilistic circuit as a diagonal circuit and back.
//
// Leaves become diagonal POVMs and each weight matrix becomes a unital
// operation whose Kraus operators are diagonal-preserving row selectors.

use punc::circuit::{Circuit, Family};
use punc::families::{diagonal_punc_to_pc, operators_are_diagonal, pc_to_diagonal_punc};
use punc::generate::{generate, GeneratorConfig};
use punc::oracle::distributions_equal;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = GeneratorConfig::new(Family::ProbCircuitPt, 3);
    cfg.num_vars = 4;
    cfg.cardinality = 3;
    let Circuit::ProbCircuitPt(pc) = generate(&cfg)? else {
        unreachable!("generator returns the requested family")
    };

    let diagonal = pc_to_diagonal_punc(&pc, 1e-9)?;
    let before = Circuit::ProbCircuitPt(pc.clone()).distribution()?;
    let after = Circuit::SdPunc(diagonal.clone()).distribution()?;
    let (_, dev) = distributions_equal(&before, &after, 1e-10)?;
    println!("max deviation after conversion: {:e}", dev);

    let diagonal_everywhere = before
        .iter()
        .map(|(x, _)| operators_are_diagonal(&diagonal, &x, 1e-12))
        .collect::<punc::Result<Vec<_>>>()?
        .into_iter()
        .all(|d| d);
    println!("all operators diagonal: {}", diagonal_everywhere);

    let back = diagonal_punc_to_pc(&diagonal)?;
    let (_, dev) = distributions_equal(
        &before,
        &Circuit::ProbCircuitPt(back).distribution()?,
        1e-10,
    )?;
    println!("max deviation after the round trip: {:e}", dev);
    assert!(diagonal_everywhere && dev < 1e-10);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
