//! Exact calculus of finitely supported monomial ideals in a regular local
//! ring of dimension `d >= 2`.
//!
//! The crate has four layers:
//!
//! * [`constellation`] — pure combinatorics of constellations of infinitely
//!   near points: proximity matrices, exceptional divisors in the `E` and
//!   `E*` bases, full divisors, point bases, and the componentwise
//!   `max(r + 1 - d, 0)` adjoint formula on point bases.
//! * [`monomial`] — exact monomial-ideal algebra in `d` variables: colon,
//!   product, intersection, colength, Newton-polyhedron membership and
//!   interior tests by exact rational LP, integral closure, the
//!   interior-point adjoint, and chart-recursive principalization that
//!   extracts a constellation, point bases, and a smooth fan from a family
//!   of ideals (or reports a positive-dimensional base locus).
//! * [`toric`] — divisor sheaves on the blowup fan: global sections as
//!   monomial ideals, the section-level adjoint, and weight-graded Čech
//!   cohomology over a certified finite window, including the
//!   `H^{d-1} -> H^{d-1}(D + nE)` injectivity test.
//! * [`harness`] — executable identity checks binding the three layers
//!   together, with JSON/CSV reporting and seeded randomized suites.
//!
//! All arithmetic is exact: `i64`/`i128` integers with overflow checks for
//! combinatorial data, arbitrary-precision rationals inside the LP and rank
//! computations.

pub mod constellation;
pub mod harness;
pub mod linalg;
pub mod lp;
pub mod monomial;
pub mod toric;
