// Circuit files: generate, write, parse back, and convert between families.

use punc::circuit::Family;
use punc::format;
use punc::generate::{generate, GeneratorConfig};
use punc::oracle::distributions_equal;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = GeneratorConfig::new(Family::ProbCircuitPt, 42);
    cfg.num_vars = 3;
    let pc = generate(&cfg)?;
    let text = format::write(&pc);
    println!("{} bytes, first lines:", text.len());
    for line in text.lines().take(6) {
        println!("  {}", line);
    }

    let parsed = format::parse(&text, 1e-9, true)?;
    assert_eq!(parsed, pc);
    assert_eq!(format::write(&parsed), text);
    println!("parse(write(c)) == c");

    for to in [Family::SdPunc, Family::DPunc] {
        let converted = pc.convert(to, 1e-9)?;
        let (_, dev) = distributions_equal(&pc.distribution()?, &converted.distribution()?, 1e-10)?;
        println!("{} -> {}: max deviation {:e}", pc.family(), to, dev);
    }
    match pc.convert(Family::PsdCircuit, 1e-9) {
        Err(e) => println!("{} -> {}: {}", pc.family(), Family::PsdCircuit, e),
        Ok(_) => unreachable!("no such conversion"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
