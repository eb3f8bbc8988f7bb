//! Round trips over the stored circuit files in `tests/fixtures`.

use std::path::PathBuf;

use punc::circuit::Family;
use punc::format;
use punc::Error;

fn fixture_files() -> Vec<PathBuf> {
    let dir = PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures"));
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("fixture directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn every_family_has_a_fixture() {
    let names: Vec<String> = fixture_files()
        .iter()
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    for family in Family::ALL {
        assert!(
            names.iter().any(|n| n == family.as_str()),
            "no fixture for {}",
            family
        );
    }
}

#[test]
fn fixtures_round_trip() {
    for path in fixture_files() {
        let text = std::fs::read_to_string(&path).unwrap();
        let c = format::parse(&text, 1e-9, true)
            .unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
        assert_eq!(format::write(&c), text, "{}", path.display());
        let again = format::parse(&format::write(&c), 1e-9, true).unwrap();
        assert_eq!(again, c);
        assert_eq!(
            path.file_stem().unwrap().to_string_lossy(),
            c.family().as_str()
        );
    }
}

#[test]
fn fixture_distributions_survive_the_round_trip() {
    for path in fixture_files() {
        let text = std::fs::read_to_string(&path).unwrap();
        let c = format::parse(&text, 1e-9, true).unwrap();
        let d = format::parse(&format::write(&c), 1e-9, true).unwrap();
        assert_eq!(c.distribution().unwrap(), d.distribution().unwrap());
    }
}

#[test]
fn perturbed_parameters_fail_validation() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/sd_punc.json"
    ))
    .unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["rho"][0][0][0] = serde_json::json!(5.0);
    match format::parse(&v.to_string(), 1e-9, true) {
        Err(Error::InvalidCircuit(report)) => assert!(report.to_string().contains("rho")),
        other => panic!("{:?}", other),
    }
}
