//! Property tests over randomly configured circuits and matrices.

mod common;

use proptest::prelude::*;

use punc::circuit::Family;
use punc::format;
use punc::generate::{generate, GeneratorConfig};
use punc::linalg::{ComplexMatrix, C64};
use punc::random::{self, rng_from_seed};

fn config() -> impl Strategy<Value = GeneratorConfig> {
    (
        0..Family::ALL.len(),
        any::<u64>(),
        1usize..=4,
        2usize..=3,
        1usize..=3,
        1usize..=3,
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(
            |(f, seed, n, card, leaf, kraus, structured, hadamard)| GeneratorConfig {
                seed,
                num_vars: n,
                cardinality: card,
                leaf_dim: leaf,
                max_internal_dim: 4,
                kraus_count: kraus,
                family: Family::ALL[f],
                structured,
                hadamard,
            },
        )
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), rows * cols).prop_map(move |v| {
        let data = v.into_iter().map(|(re, im)| C64::new(re, im)).collect();
        ComplexMatrix::new(rows, cols, data).unwrap()
    })
}

fn evidence(n: usize, card: usize) -> impl Strategy<Value = Vec<Option<usize>>> {
    prop::collection::vec(prop::option::of(0..card), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_circuits_are_valid_distributions(cfg in config()) {
        let c = generate(&cfg).unwrap();
        let report = c.validate(1e-9);
        prop_assert!(report.is_valid(), "{}", report);
        let d = c.distribution().unwrap();
        prop_assert!(d.probs().iter().all(|p| (-1e-10..=1.0 + 1e-10).contains(p)));
        if c.family() == Family::NoisePunc {
            prop_assert!(d.mass() <= 1.0 + 1e-10);
        } else {
            prop_assert!((d.mass() - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn write_then_parse_is_the_identity(cfg in config()) {
        let c = generate(&cfg).unwrap();
        let text = format::write(&c);
        let back = format::parse(&text, 1e-9, true).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(format::write(&back), text);
    }

    #[test]
    fn one_pass_marginals_match_enumeration(cfg in config(), e in evidence(4, 3)) {
        let c = generate(&cfg).unwrap();
        let e: Vec<Option<usize>> = e
            .into_iter()
            .take(cfg.num_vars)
            .map(|v| v.map(|v| v % cfg.cardinality))
            .collect();
        let fast = c.marginal(&e).unwrap();
        let slow = c.distribution().unwrap().marginal(&e);
        prop_assert!((fast - slow).abs() <= 1e-9, "{} vs {}", fast, slow);
    }

    #[test]
    fn summing_out_a_value_recovers_the_coarser_marginal(cfg in config(), e in evidence(4, 3), var in 0usize..4) {
        let c = generate(&cfg).unwrap();
        let mut e: Vec<Option<usize>> = e
            .into_iter()
            .take(cfg.num_vars)
            .map(|v| v.map(|v| v % cfg.cardinality))
            .collect();
        let var = var % cfg.num_vars;
        e[var] = None;
        let coarse = c.marginal(&e).unwrap();
        let fine: f64 = (0..cfg.cardinality)
            .map(|v| {
                let mut f = e.clone();
                f[var] = Some(v);
                c.marginal(&f).unwrap()
            })
            .sum();
        prop_assert!((coarse - fine).abs() <= 1e-9);
    }

    #[test]
    fn conversions_preserve_the_distribution(cfg in config(), to in 0..Family::ALL.len()) {
        let c = generate(&cfg).unwrap();
        match c.convert(Family::ALL[to], 1e-9) {
            Ok(converted) => {
                prop_assert_eq!(converted.family(), Family::ALL[to]);
                prop_assert!(converted.validate(1e-9).is_valid());
                let a = c.distribution().unwrap();
                let b = converted.distribution().unwrap();
                let dev = a.probs().iter().zip(b.probs()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                prop_assert!(dev <= 1e-10, "deviation {}", dev);
            }
            Err(punc::Error::ConversionInfeasible(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }

    #[test]
    fn unital_generator_is_unital_and_valid(seed in any::<u64>(), input in 1usize..=8, out in 1usize..=8, k in 1usize..=4) {
        let out = out.min(input);
        let op = random::unital_operation(input, out, k, &mut rng_from_seed(seed)).unwrap();
        prop_assert!(op.is_unital(1e-10));
        prop_assert!(op.check_validity(1e-10));
    }

    #[test]
    fn unital_operations_map_povms_to_povms(seed in any::<u64>(), dim in 1usize..=4, outcomes in 1usize..=4) {
        let mut rng = rng_from_seed(seed);
        let povm = random::povm(dim, outcomes, &mut rng).unwrap();
        let op = random::unital_operation(dim, random::uniform_in(1, dim, &mut rng), 2, &mut rng).unwrap();
        let mapped = punc::quantum::Povm::new(
            povm.elements().iter().map(|e| op.apply(e).unwrap()).collect()
        ).unwrap();
        prop_assert!(mapped.validate(1e-9).is_valid());
    }
}

proptest! {
    #[test]
    fn kron_mixed_product(a in matrix(2, 3), b in matrix(2, 2), c in matrix(3, 2), d in matrix(2, 1)) {
        let lhs = a.kron(&b).unwrap().matmul(&c.kron(&d).unwrap()).unwrap();
        let rhs = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
    }

    #[test]
    fn kron_matches_the_reference(a in matrix(2, 3), b in matrix(3, 2)) {
        let lib = common::dense(&a.kron(&b).unwrap());
        let reference = common::kron(&common::dense(&a), &common::dense(&b));
        prop_assert!(common::max_abs_diff(&lib, &reference) == 0.0);
    }

    #[test]
    fn adjoint_reverses_products(a in matrix(3, 2), b in matrix(2, 4)) {
        let lhs = a.matmul(&b).unwrap().conj_transpose();
        let rhs = b.conj_transpose().matmul(&a.conj_transpose()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
    }

    #[test]
    fn hadamard_is_a_compression_of_kron(a in matrix(3, 3), b in matrix(3, 3)) {
        // Entry (i, j) of the Hadamard product sits at (i n + i, j n + j) of the Kronecker product.
        let h = a.hadamard(&b).unwrap();
        let k = a.kron(&b).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(h[(i, j)], k[(i * 3 + i, j * 3 + j)]);
            }
        }
    }

    #[test]
    fn gram_matrices_are_psd(a in matrix(3, 3)) {
        let g = a.matmul(&a.conj_transpose()).unwrap();
        prop_assert!(g.is_psd(1e-10).unwrap());
        prop_assert!(g.min_eigenvalue().unwrap() >= -1e-10);
    }
}
