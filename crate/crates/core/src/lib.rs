//! Numerics for complex-quaternion valued Cauchy-type integrals in the plane.
//!
//! The crate is organised bottom-up:
//!
//! * [`quat`] – complex quaternions ℍ(ℂ) and the scalar–vector pair view.
//! * [`specfun`] – Hankel functions H₀, H₁, H₂ of complex argument from their
//!   power series.
//! * [`kernel`] – the Helmholtz fundamental solution θ_α, the Cauchy kernel
//!   K_α and its singular/regular splitting.
//! * [`geometry`] – closed Jordan curves, boundary quadrature and area cells.
//! * [`density`] – boundary densities, including a small expression language.
//! * [`potential`] – Cauchy-type, singular, area and Davydov integrals and the
//!   Sokhotski–Plemelj boundary values.
//! * [`verify`] – finite-difference operators and the claim certification
//!   suite.
//! * [`scenario`] – JSON scenario descriptions shared with the command line.

pub mod density;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod potential;
pub mod quat;
pub mod scenario;
pub mod specfun;
pub mod sum;
pub mod verify;

pub use density::{Builtin, Density, ExprNode};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use geometry::{BoundaryNode, Curve, CurveKind, Point2, Region};
pub use kernel::{Branch, KernelCtx};
pub use num_complex::Complex64;
pub use potential::{Extrapolation, JumpReport, LimitSequence, QuadSpec, Side};
pub use quat::{CQuat, CVec3, PairField};
pub use scenario::{Scenario, ScenarioSet};
pub use specfun::SeriesCfg;
pub use verify::{CheckReport, Claim, FDGrid, Operator, Stencil};
