//! Invariants of `D(q,p)` non-isolated hypersurface singularities.
//!
//! The germ in normal form is `yᵗ X y + y_{p+1}² + … + y_{p+k}²` with `X` a
//! generic symmetric `p × p` matrix of variables. This crate computes its
//! Milnor-fiber data, Lê numbers, the polar multiplicities and Euler
//! obstruction of the determinantal hypersurface `Σ1(p)`, and the Euler
//! obstruction of the zero set. Each closed form has an independent route:
//!
//! * [`chow`]: intersection numbers on `Pⁿ × Pᵐ`, by truncated-ring product
//!   and by subset-sum enumeration.
//! * [`le_engine`]: the incidence-variety class systems whose intersection
//!   numbers reproduce the Lê numbers, plus a symbolic determinant.
//! * [`closure`]: integral closure and reductions of monomial ideals.
//! * [`ffcount`]: exhaustive point counts of `{f = c}` over prime fields.

pub mod arith;
pub mod chow;
pub mod closure;
mod error;
pub mod ffcount;
pub mod invariants;
pub mod le_engine;
pub mod symbolic;

pub use chow::{Bidegree, BidegreeSystem, TruncatedBivariatePoly};
pub use closure::{Monomial, MonomialIdeal, WeightVector};
pub use error::{DqpError, Result};
pub use ffcount::{NormalFormSpec, PointCountReport};
pub use invariants::{DqpParams, FixedCycle, LeNumberTable, PolarMultiplicityTable};
pub use le_engine::LeSystemSpec;
pub use symbolic::SymbolicPolynomial;
