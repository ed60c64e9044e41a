//! Computes selectivity of maximal orders in central simple algebras of
//! degree n over an imaginary quadratic field, by combining local embedding
//! data on affine-building vertices with a class-field subgroup scan.
//!
//! Layering, bottom to top:
//!
//! * [`ffarith`]: arbitrary-precision finite fields F_{p^k}, deterministic
//!   polynomial factorization, Kronecker symbol.
//! * [`quadfield`]: binary quadratic forms, class groups, primes of
//!   K = Q(sqrt(m)) and their splitting in a two-level extension tower.
//! * [`building`]: homothety classes of lattice chains (vertices of the
//!   affine building for SL_n) and the block-constancy embedding test.
//! * [`orders`]: an independent brute-force order-containment oracle built
//!   from valuation patterns and companion-matrix module bases.
//! * [`selectivity`]: the embedding criterion, genus group, prime scan,
//!   genus parametrization, distance ideles and the final ratio.
//! * [`verify`]: exhaustive oracle-vs-theorem consistency suites.
//!
//! All integer arithmetic that can leave the machine-word range is exact
//! (num-bigint); every algorithm with a random component is seeded and every
//! canonical choice (square roots, factor order, moduli) is deterministic, so
//! repeated runs produce identical results.

pub mod abelian;
pub mod building;
pub mod ffarith;
pub mod orders;
pub mod quadfield;
pub mod selectivity;
pub mod verify;
