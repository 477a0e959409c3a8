//! Polarity graphs of finite projective spaces, the K_k-free pseudorandom
//! subgraph `H(k, q)` over fields of characteristic two, and the checks that
//! certify its parameters: vertex counts, regularity, the exact `A^2`
//! identity of the host graph, spectrum, clique number, transitivity of the
//! isometry group and expander-mixing behaviour.
//!
//! ```
//! use polarity_lab::construction::{build_h, ConstructionParams};
//! use polarity_lab::field::Field;
//!
//! let params = ConstructionParams::new(3, Field::new(2, 2).unwrap(), None).unwrap();
//! let h = build_h(&params).unwrap();
//! assert_eq!(h.n(), 8);
//! assert!(h.degrees().all(|d| d == 2));
//! ```

pub mod analysis;
pub mod construction;
pub mod export;
pub mod field;
pub mod graph;
pub mod polarity;
pub mod projgeom;

pub use field::{Field, FieldElement};
pub use graph::Graph;
pub use projgeom::{Hyperplane, ProjPoint};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported field GF({p}^{h})")]
    UnsupportedField { p: u32, h: u32 },
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("{0} requires characteristic two")]
    OddCharacteristic(&'static str),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero vector has no projective point")]
    ZeroVector,
    #[error("points coincide")]
    EqualPoints,
    #[error("element {0} does not have absolute trace one")]
    NotTraceOne(u16),
    #[error("graph is not regular (degrees {min}..={max})")]
    NotRegular { min: usize, max: usize },
    #[error("graph has {got} vertices, expected a full polarity graph with {expected}")]
    NotFullPolarityGraph { expected: usize, got: usize },
    #[error("graph has {n} vertices, above the eigensolve cap of {cap}")]
    SpectrumCapExceeded { n: usize, cap: usize },
    #[error("malformed graph file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
