//! Exact scalars, sparse polynomials, truncated Laurent series, and the
//! linear algebra beneath every other module.

pub mod linalg;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod series;

pub use parse::parse_poly;
pub use poly::{Monomial, MultiPoly};
pub use scalar::{int, ratio, RatText, Scalar};
pub use series::{series_mul, series_residue, substitute_series, DiffForm, TruncSeries};

/// Formal partials `(F_x, F_y)` of a polynomial in two or three variables.
pub fn poly_partials(f: &MultiPoly) -> (MultiPoly, MultiPoly) {
    (f.derivative(0), f.derivative(1))
}
