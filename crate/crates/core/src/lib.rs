//! Exact graded-module algebra over quotients of polynomial rings.
//!
//! Everything is computed over a prime field with explicit arithmetic: no
//! floating point, no probabilistic shortcuts except where an API says so
//! (and those return certificates that are then checked exactly).

pub mod error;
pub mod field;
pub mod functor;
pub mod groebner;
pub mod hilbert;
pub mod homology;
pub mod invariants;
pub mod iso;
pub mod linalg;
pub mod maps;
pub mod matrix;
pub mod module;
pub mod monomial;
pub mod oracle;
pub mod order;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod vector;
pub mod verifier;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use functor::{HomData, TensorData};
pub use hilbert::{HilbertData, LaurentPoly};
pub use invariants::{
    Assurance, RankReport, ThetaReport, TorWindow, Torsion, TorsionlessReflexive, TotalReflexivity,
};
pub use iso::IsoResult;
pub use maps::GradedMap;
pub use matrix::PolyMatrix;
pub use module::{FPModule, Minimalization};
pub use monomial::{Monomial, Vars};
pub use order::ModuleOrder;
pub use poly::Polynomial;
pub use resolution::{Depth, MatrixFactorization, Resolution};
pub use ring::{Ideal, RingSpec};
pub use vector::FreeVector;
pub use verifier::{
    CheckInput, CheckerId, HypothesisOutcome, HypothesisReport, Status, TheoremReport,
};
