// PSD circuits propagate vectors; the equivalent pure circuit propagates the
// rank-one operators v v*.

use punc::circuit::{Circuit, Family};
use punc::families::psd_to_pure_punc;
use punc::generate::{generate, GeneratorConfig};
use punc::linalg::hermitian_eig;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = GeneratorConfig::new(Family::PsdCircuit, 21);
    cfg.num_vars = 5;
    cfg.cardinality = 3;
    cfg.leaf_dim = 3;
    let Circuit::PsdCircuit(psd) = generate(&cfg)? else {
        unreachable!("generator returns the requested family")
    };
    let pure = psd_to_pure_punc(&psd, 1e-9)?;

    let x = [2, 0, 1, 1, 0];
    let (amplitude, p) = psd.eval(&x)?;
    println!(
        "root amplitude has {} entries, p(x) = {:.10}",
        amplitude.len(),
        p
    );
    println!("pure circuit p(x) = {:.10}", pure.probability(&x)?);

    for (id, op) in pure.evaluate_nodes(&x)?.iter().enumerate() {
        let values = hermitian_eig(op, 1e-9)?.values;
        println!(
            "node {}: dim {}, top eigenvalue {:.3e}, next {:.1e}",
            id,
            op.rows(),
            values[0],
            values.get(1).copied().unwrap_or(0.0)
        );
    }
    assert!((p - pure.probability(&x)?).abs() < 1e-10);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
