//! Exact homological algebra over graded hypersurface rings `R = k[x_1..x_n]/(f)`
//! with `k = F_p`: module Groebner bases, minimal resolutions, Tor and Ext,
//! matrix factorizations, stable homology and Hochster's theta.

pub mod error;
pub mod factorization;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod homology;
pub mod matrix;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod ring;
pub mod stable;
pub mod theta;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField, DEFAULT_CHARACTERISTIC};
pub use groebner::GroebnerBasis;
pub use homology::{Depth, HilbertFunction, Length, TorScan};
pub use matrix::Matrix;
pub use module::GradedModule;
pub use monomial::Monomial;
pub use poly::{PolyRing, Polynomial};
pub use report::{Check, Verdict};
pub use resolution::{BettiTable, FreeResolution, MatrixFactorization, Over, PeriodicityCertificate, MAX_BOUND};
pub use ring::Ring;
pub use stable::{CompleteResolution, StableKind, StableTable};
pub use theta::{BundleCase, RigidityReport, RigidityVerdict, ThetaReport};
