//! Special-case circuit families and conversions between them.

pub mod diagonal;
pub mod noise;
pub mod prob;
pub mod psd;

pub use diagonal::{
    diagonal_punc_to_pc, make_diagonal_operation, operators_are_diagonal, pc_to_diagonal_punc,
    row_selector, DiagonalOperation,
};
pub use noise::{
    expand_operator_mixture, noisy_punc_conditional, noisy_punc_unnormalized, NoisePunc,
    OperatorMixture,
};
pub use prob::{eval_prob_circuit, ProbCircuitPT, ProbParam};
pub use psd::{psd_to_pure_punc, PsdCircuit};
