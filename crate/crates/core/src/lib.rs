//! Exact-arithmetic verification of algebraic-hypergeometric identities.
//!
//! This crate mechanically certifies, to arbitrary truncation order, a
//! catalog of identities connecting generalized hypergeometric series with
//! the roots of trinomial equations, together with the branching data, genus
//! computations, and Belyi-map facts of the projective curves those roots
//! trace out.  Free parameters are carried symbolically in rational-function
//! fields; roots of unity live in exact cyclotomic quotient rings.  There is
//! no floating point anywhere in the crate.
//!
//! Module map:
//! - [`num`], [`ring`]: arbitrary-precision rationals and the ring/field traits.
//! - [`mpoly`], [`mrat`], [`upoly`], [`cyclo`]: polynomial and quotient-ring
//!   arithmetic (sparse multivariate, dense univariate, cyclotomic).
//! - [`series`]: truncated power series, Newton solution of the standardized
//!   trinomial, parametric powers and roots.
//! - [`hypergeom`]: hypergeometric series, the order-n operator annihilating
//!   them, and degenerate (limiting) series.
//! - [`vandermonde`]: the (A,B) convolution transform, the rational kernels
//!   F_l, the interpolating kernels G_0, G_1, and the ladder identities they
//!   generate.
//! - [`trinomial`]: root families of x^n - g x^p - beta = 0 near beta=0 and
//!   g=0, and the forward/inverse representation identities built from them.
//! - [`schwarz`]: branching data, ramification profiles, genus formula and
//!   classification for the curves traced by root tuples.
//! - [`belyi`]: exact rational maps, the catalog of coverings, ramification
//!   verification, decomposition checks.
//! - [`elliptic`]: j-invariants of w^2 = f(x) models via binary-form invariants.
//! - [`symfun`]: Newton-Girard conversions, curve-restricted power sums,
//!   partial-tuple symmetric functions, coset polynomials.
//! - [`registry`]: the identity catalog, verification engine, and reports.
//! - [`tables`]: text and JSON table emitters.

pub mod belyi;
pub mod cyclo;
pub mod elliptic;
pub mod error;
pub mod hypergeom;
pub mod mpoly;
pub mod mrat;
pub mod num;
pub mod registry;
pub mod ring;
pub mod schwarz;
pub mod series;
pub mod symfun;
pub mod tables;
pub mod trinomial;
pub mod upoly;
pub mod vandermonde;

pub use crate::num::Rat;
pub use cyclo::{cyclo_poly, Cyclo};
pub use error::CoreError;
pub use mpoly::{MPoly, Vars};
pub use mrat::MRat;
pub use ring::{Field, Ring};
pub use series::{solve_trinomial_std, Laurent, Series, Var};
pub use upoly::UPoly;
