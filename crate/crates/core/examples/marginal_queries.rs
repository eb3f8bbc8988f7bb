// One-pass marginals on a random circuit, checked against brute-force sums.
//
// Marginalized leaves emit the identity, so any evidence pattern costs one
// bottom-up pass regardless of how many variables are summed out.

use punc::circuit::{Circuit, Family};
use punc::generate::{generate, GeneratorConfig};
use punc::random::{rng_from_seed, uniform_in};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = GeneratorConfig::new(Family::SdPunc, 11);
    cfg.num_vars = 6;
    cfg.leaf_dim = 3;
    cfg.max_internal_dim = 6;
    let Circuit::SdPunc(circuit) = generate(&cfg)? else {
        unreachable!("generator returns the requested family")
    };
    let table = Circuit::SdPunc(circuit.clone()).distribution()?;

    let mut rng = rng_from_seed(5);
    for _ in 0..5 {
        let evidence: Vec<Option<usize>> = (0..cfg.num_vars)
            .map(|_| (uniform_in(0, 2, &mut rng) == 0).then(|| uniform_in(0, 1, &mut rng)))
            .collect();
        let trace = circuit.evaluate_traced(&evidence)?;
        let fast = circuit.marginal_partial(&evidence)?;
        let slow = table.marginal(&evidence);
        println!(
            "{:?}: one pass {:.10} ({} matrix ops), enumeration {:.10}",
            evidence, fast, trace.matrix_ops, slow
        );
        assert!((fast - slow).abs() < 1e-9);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
