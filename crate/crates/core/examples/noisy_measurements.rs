// Noisy measurements: a circuit scaled by a noise circuit over the same tree.
//
// The result is sub-normalized; its normalizer comes from one pass over
// operator blocks and turns it into a conditional distribution.

use punc::circuit::{Circuit, Family};
use punc::generate::{generate, GeneratorConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = GeneratorConfig::new(Family::NoisePunc, 17);
    cfg.num_vars = 4;
    cfg.cardinality = 3;
    let Circuit::NoisePunc(noisy) = generate(&cfg)? else {
        unreachable!("generator returns the requested family")
    };

    let z = noisy.normalizer()?;
    let z_slow = noisy.normalizer_by_enumeration()?;
    println!("normalizer: one pass {:.12}, enumeration {:.12}", z, z_slow);

    let x = [0, 2, 1, 1];
    println!("unnormalized pi(x) = {:.6e}", noisy.unnormalized(&x)?);
    println!(
        "conditional pi(x) / Z = {:.6e}",
        noisy.conditional(&x, 1e-12)?
    );

    let mixture = noisy.expand_operator_mixture(noisy.o().tree().root(), 0, &x)?;
    println!(
        "root block as a mixture of {} terms, residual {:.1e}",
        mixture.weights.len(),
        mixture.residual()?
    );
    assert!(z <= 1.0 + 1e-10 && (z - z_slow).abs() < 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
