//! Finite fields GF(p^k) and monic polynomials over them.

mod field;
mod poly;

pub use field::{is_prime, prime_power, Elem, FieldSpec, DEFAULT_MAX_FIELD_SIZE};
pub use poly::{is_irreducible, is_squarefree, Poly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("GF({p}^{k}) exceeds the field size bound {bound}")]
    FieldTooLarge { p: u32, k: u32, bound: u32 },
    #[error("element index {index} out of range for GF({q})")]
    ElementOutOfRange { index: u32, q: u32 },
    #[error("coordinate vector does not describe a field element")]
    BadCoordinates,
    #[error("GF({sub_order}) is not a subfield of GF({q})")]
    NotASubfield { sub_order: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("malformed polynomial text {0:?}")]
    BadPolynomialText(String),
}
