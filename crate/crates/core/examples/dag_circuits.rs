// DAG-shaped circuits: a decomposable circuit whose root mixes two different
// splits of the variables, and the embedding of a tree circuit into a DAG.

use punc::circuit::{Circuit, Family};
use punc::d_punc::embed_sd;
use punc::d_punc::skeleton::{instantiate, non_structured_four, UnitDims};
use punc::generate::{generate, GeneratorConfig};
use punc::random::rng_from_seed;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dims = UnitDims {
        leaf_dim: 2,
        max_dim: 3,
        kraus_count: 2,
    };
    let mixed = instantiate(&non_structured_four(), &[2; 4], dims, &mut rng_from_seed(1))?;
    println!("mixed-split circuit: {} units", mixed.units().len());
    println!("  valid: {}", mixed.validate(1e-9).is_valid());
    println!(
        "  structured-decomposable: {}",
        mixed.is_structured_decomposable()?
    );
    let mass = Circuit::DPunc(mixed.clone()).distribution()?.mass();
    println!("  total mass {:.12}", mass);

    let evidence = [Some(1), None, Some(0), None];
    let trace = mixed.evaluate_traced(&evidence)?;
    println!(
        "  p(x0 = 1, x2 = 0) = {:.6}",
        mixed.marginal_partial(&evidence)?
    );
    println!("  units evaluated in one pass: {}", trace.units_evaluated);

    let Circuit::SdPunc(tree) = generate(&GeneratorConfig::new(Family::SdPunc, 2))? else {
        unreachable!("generator returns the requested family")
    };
    let dag = embed_sd(&tree)?;
    println!("embedded tree circuit: {} units", dag.units().len());
    println!(
        "  structured-decomposable: {}",
        dag.is_structured_decomposable()?
    );
    let x = [1, 0, 1, 1];
    println!(
        "  p(x) tree {:.10}, dag {:.10}",
        tree.probability(&x)?,
        dag.probability(&x)?
    );
    assert!((mass - 1.0).abs() < 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
