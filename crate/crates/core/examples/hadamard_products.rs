// Circuits whose nodes combine children by Hadamard product, rewritten into
// Kronecker form with the same distribution.

use punc::circuit::{Circuit, Family};
use punc::generate::{generate, GeneratorConfig};
use punc::oracle::distributions_equal;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = GeneratorConfig::new(Family::SdPunc, 8);
    cfg.num_vars = 5;
    cfg.leaf_dim = 3;
    cfg.hadamard = true;
    let Circuit::SdPunc(circuit) = generate(&cfg)? else {
        unreachable!("generator returns the requested family")
    };
    let rewritten = circuit.to_kronecker()?;
    println!("original tree:  {}", circuit.tree().to_spec());
    println!("rewritten tree: {}", rewritten.tree().to_spec());
    println!("node dims before: {:?}", circuit.dims());
    println!("node dims after:  {:?}", rewritten.dims());

    let (equal, dev) = distributions_equal(
        &Circuit::SdPunc(circuit).distribution()?,
        &Circuit::SdPunc(rewritten).distribution()?,
        1e-10,
    )?;
    println!("max deviation {:e}", dev);
    assert!(equal);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
