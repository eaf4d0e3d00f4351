//! Exact arithmetic over prime fields: sparse multivariate polynomials, dense
//! univariate polynomials, Gaussian elimination, and restriction of forms to
//! lines and planes of projective space.

mod field;
mod geometry;
mod matrix;
mod poly;
mod univariate;

use thiserror::Error;

pub use field::{is_prime, Elem, PrimeField};
pub use geometry::{restrict_ternary_to_line, restrict_to_line, restrict_to_plane, Plane, ProjLine, ProjPoint};
pub use matrix::Matrix;
pub use poly::{monomials_of_degree, Monomial, MultiPoly, PolyDoc};
pub use univariate::{binary_gcd_degree, gcd_univariate, squarefree_degree, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("modulus {0} is not a prime >= 5")]
    InvalidModulus(u32),
    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("modulus {q} leaves too few interpolation nodes for degree {degree}")]
    ModulusTooSmall { q: u32, degree: u32 },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("points do not span a linear space of dimension {expected}")]
    DegenerateSpan { expected: usize },
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("interpolation nodes repeat")]
    RepeatedNodes,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("coefficient {0} is not a nonzero field residue")]
    BadCoefficient(u32),
}
