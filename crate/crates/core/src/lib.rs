//! Spectral sum rules Z(p) = Σ E⁻ᵖ of inhomogeneous drums on rectangles,
//! computed from traces of Green's functions, together with closed forms
//! for annuli and sectors and brute-force spectral oracles.

// Reference constants keep all their digits; `!(x > 0.0)` is used on purpose to reject NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod basis1d;
pub mod closedforms;
pub mod error;
pub mod green2d;
pub mod oracle;
pub mod quadrature;
pub mod specialfn;
pub mod sumrule;

pub use basis1d::{Interval, KernelFamily};
pub use closedforms::{AnnulusGeom, RadialPower, SectorGeom};
pub use error::{Error, Result};
pub use green2d::{BCPair, Point2, Rect, TruncationPolicy};
pub use oracle::Spectrum;
pub use specialfn::CrossKind;
pub use sumrule::{Density2, QuadPolicy, SumRuleResult, ZeroProjection};
