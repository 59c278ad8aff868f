//! Exact computational algebra for the triplet algebras `W(p)`: quivers and
//! path algebras, quadratic duality, finite-dimensional representations and
//! Yoneda products, commutative Gröbner bases, and the Tate resolution of a
//! complete intersection together with its cohomology map.

pub mod comm;
pub mod error;
pub mod linalg;
pub mod quadratic;
pub mod quiver;
pub mod rep;
pub mod scalars;
pub mod tate;
pub mod verify;
pub mod wp;

pub use error::{Error, Result};
pub use scalars::{c_p, Rational};
pub use comm::{GroebnerBasis, Monomial, MonomialOrder, Polynomial, QuotientRing, Ring};
pub use linalg::Matrix;
pub use quadratic::QuadraticPresentation;
pub use quiver::{Path, PathElement, PathIdeal, Quiver};
pub use rep::{BasicAlgebra, ProjResolution, QuiverRep, Yoneda};
pub use tate::{DgAlgebra, PsiLift, SkewPresentedAlgebra};
pub use wp::{GkEstimate, GkModel, WpInstance};
