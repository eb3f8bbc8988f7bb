//! Runs every example in-process.

mod quickstart {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/quickstart.rs"
    ));
}

#[test]
fn quickstart_runs() {
    quickstart::run_example().expect("quickstart example should run");
}

mod marginal_queries {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/marginal_queries.rs"
    ));
}

#[test]
fn marginal_queries_runs() {
    marginal_queries::run_example().expect("marginal_queries example should run");
}

mod probabilistic_circuits {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/probabilistic_circuits.rs"
    ));
}

#[test]
fn probabilistic_circuits_runs() {
    probabilistic_circuits::run_example().expect("probabilistic_circuits example should run");
}

mod psd_circuits {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/psd_circuits.rs"
    ));
}

#[test]
fn psd_circuits_runs() {
    psd_circuits::run_example().expect("psd_circuits example should run");
}

mod hadamard_products {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/hadamard_products.rs"
    ));
}

#[test]
fn hadamard_products_runs() {
    hadamard_products::run_example().expect("hadamard_products example should run");
}

mod dag_circuits {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/dag_circuits.rs"
    ));
}

#[test]
fn dag_circuits_runs() {
    dag_circuits::run_example().expect("dag_circuits example should run");
}

mod noisy_measurements {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/noisy_measurements.rs"
    ));
}

#[test]
fn noisy_measurements_runs() {
    noisy_measurements::run_example().expect("noisy_measurements example should run");
}

mod circuit_files {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/circuit_files.rs"
    ));
}

#[test]
fn circuit_files_runs() {
    circuit_files::run_example().expect("circuit_files example should run");
}
