//! Radial observables of the non-relativistic hydrogenic atom in `d >= 2`
//! spatial dimensions.
//!
//! Every closed-form moment ([`observables`]) has an independent
//! Gauss–Laguerre quadrature counterpart ([`quadrature`]) built on the same
//! radial wavefunctions ([`hydrogen`]); [`validate`] compares the two.

pub mod cli;
pub mod error;
pub mod hydrogen;
pub mod observables;
pub mod quadrature;
pub mod special;
pub mod validate;

pub use error::{Error, Result};
pub use hydrogen::{PhysicalParams, QuantumState, RadialWavefunction};
pub use observables::{full_report, ObservableReport};
pub use quadrature::{ObservableKind, QuadratureRule};
pub use special::LaguerreIndex;
pub use validate::{CheckKind, ValidationRecord, Verdict};
