//! Stabilizer codes built by contracting code tensors, and exact maximum-likelihood
//! decoding by contracting the matching network of coset-probability tensors.

pub mod decoder;
pub mod error;
pub mod experiment;
mod gf2;
pub mod holographic;
pub mod oracle;
pub mod pauli;
pub mod stabilizer;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use pauli::{pauli, PauliOp, PauliString};
pub use stabilizer::{
    builtin_seven_qubit_state, builtin_six_qubit, ClassIndex, CodeDescription, StabilizerCode,
    Syndrome,
};
pub use tensor::{contract, contract_codes, CodeTensor, LegBinding};
pub use holographic::{
    build_layout, build_network, chain_network, predicted_op_count, schedule_for,
    ContractionSchedule, HolographicLayout, TensorNetwork,
};
pub use decoder::{chi_direct, chi_network, ChiTable, NetworkDecoder, NoiseModel};
