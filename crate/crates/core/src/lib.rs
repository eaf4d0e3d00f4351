//! Enumerative geometry of first-order congruences of lines in P^4.
//!
//! * [`schubert`]: Chow ring of the Grassmannian of lines G(1, n).
//! * [`invariants`]: closed formulas and the degree classification of the
//!   surfaces whose trisecants form a first-order congruence.
//! * [`polyalg`]: prime-field polynomial and linear algebra kernel.
//! * [`surfaces`]: constructions of the classified surfaces over F_q.
//! * [`trisecant`]: exhaustive trisecant-line counts and plane-section tests.

pub mod invariants;
pub mod polyalg;
pub mod schubert;
pub mod surfaces;
pub mod trisecant;
