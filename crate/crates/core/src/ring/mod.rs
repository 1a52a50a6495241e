//! Exact scalar arithmetic: big rationals, Laurent polynomials in `q`, and
//! the ring objects that let higher modules run over symbolic, rational or
//! floating `q`.

mod laurent;
mod qring;
pub mod rational;
mod scalar;

pub use laurent::{laurent_eval, laurent_exact_div, q_monomial, LaurentPoly};
pub use num_rational::BigRational;
pub use qring::{FloatQ, QMode, QRing, RationalQ, SymbolicQ};
pub use rational::{parse_rational, render_rational};
pub use scalar::{RingScalar, ScalarKind};
