//! Symbolic tensor calculus for (1,1,1) almost contact, Lorentzian almost
//! paracontact and Lorentzian para-Sasakian geometry, together with verifiers
//! for the structure axioms and for the identities induced on hypersurfaces.
//!
//! The crate is `no_std` (it allocates, but performs no IO); the companion
//! `lpsurf-cli` crate carries the example registry, config files and the CLI.
//!
//! Layers, bottom up:
//!
//! * [`expr`] — exact-rational symbolic scalar expressions with parsing,
//!   differentiation, simplification, evaluation and seeded randomized
//!   equivalence testing;
//! * [`linalg`] — small dense linear algebra, both symbolic (exact Gaussian
//!   elimination over expressions) and numerical (rank via singular values);
//! * [`geometry`] — charts, tensor fields and the differential operators:
//!   Lie bracket, Levi-Civita connection, covariant and Lie derivatives,
//!   exterior derivative of 1-forms, wedge products;
//! * [`contact`] — (e1,e2,1) almost contact structures, Lorentzian almost
//!   paracontact / paracontact / para-Sasakian structures, the Nijenhuis
//!   tensor and the normality tensor, with verifiers reporting per-identity
//!   residuals;
//! * [`hypersurface`] — immersions, tangent frames and transversal fields,
//!   the induced structures (J, alpha) / (psi, xi*, eta*) on hypersurfaces,
//!   Gauss-Weingarten data and the theorem batteries for the invariant and
//!   noninvariant cases.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod contact;
pub mod expr;
pub mod geometry;
pub mod hypersurface;
pub mod linalg;
pub mod report;

pub use expr::{parse_expr, DomainBox, EvalError, Expr, ParseError, SamplePoint};
pub use geometry::{Chart, Connection, MetricField, TensorField};
pub use report::{CheckConfig, CheckEntry, EntryKind, StructureReport};
