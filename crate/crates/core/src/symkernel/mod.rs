//! Exact computer-algebra core: charts, sparse multivariate polynomials and
//! rational functions, the expression grammar, truncated power series,
//! univariate utilities, and exact linear algebra.

pub mod chart;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod unipoly;

pub use chart::{Chart, ChartError, Coord};
pub use matrix::{qmatrix_rank, MatrixError, SfMatrix};
pub use parse::{parse_scalar, ParseError};
pub use poly::{poly_gcd, rat, rat_int, Monomial, Poly};
pub use scalar::{parse_rational, sf_rat, sf_sum, ScalarError, ScalarField};
pub use series::{series_from_scalar, SeriesError, TruncatedSeries};
pub use unipoly::{poly_square_root, QPoly, UniPoly, UniPolyError};
