//! Exact computer algebra for the Kontsevich system on the group algebra of
//! the free group `⟨u, v⟩`: words, the cyclic space, the modified double
//! bracket and its Loday bracket, the Lax pair, the classical and quantum
//! specializations, and a numeric matrix-representation simulator.

pub mod algebra;
pub mod cyclic;
pub mod dbracket;
pub mod error;
pub mod guard;
pub mod lax;
pub mod numrep;
pub mod par;
pub mod parse;
pub mod sample;
pub mod scalar;
pub mod specialize;
pub mod suite;
pub mod tensor;
pub mod word;

pub use algebra::{casimir_c, casimir_c_inv, hamiltonian_h, AlgebraElement};
pub use cyclic::{cyclic_canonical, project, CyclicElement, CyclicWord};
pub use error::{Error, Result};
pub use guard::Guard;
pub use par::Execution;
pub use parse::{parse_element, parse_tensor, ParseError};
pub use scalar::Scalar;
pub use tensor::TensorElement;
pub use word::{Letter, Word};
