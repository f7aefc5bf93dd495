//! Lower bounds on products of position and momentum moments of any order.
//!
//! Rényi entropy-power relations are combined with maximum-entropy moment
//! bounds to give a lower bound C(a,b) on ⟨r^a⟩^{1/a}⟨p^b⟩^{1/b}-type products,
//! alongside the classical Shannon bound D(a,b). Hydrogen and oscillator
//! states provide the physical test cases.
//!
//! The numerical core is generic over `f32`/`f64` through [`scalar::Real`];
//! the aliases below fix it to `f64`.

// `!(x > 0)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod entropic;
pub mod error;
pub mod optimize;
pub mod quadrature;
pub mod quantum;
pub mod scalar;
pub mod specfun;
pub mod verify;

pub use bounds::{bound_c, bound_c_with, classical_bound_d, BoundOptions, MaxEntropyModel, MomentModel};
pub use entropic::{bound_b, bound_z, conjugate};
pub use error::{Error, Result};
pub use quantum::{CentralState, System};
pub use scalar::Real;

pub type RenyiIndex = entropic::RenyiIndex<f64>;
pub type EntropyPower = entropic::EntropyPower<f64>;
pub type DimensionContext = bounds::DimensionContext<f64>;
pub type MomentOrders = bounds::MomentOrders<f64>;
pub type BoundResult = bounds::BoundResult<f64>;
