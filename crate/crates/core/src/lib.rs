//! Exact intersection theory on toric fans with logarithmic (colimit) Chow
//! classes.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`] — arbitrary-precision integer linear algebra (Hermite and
//!   Smith normal forms, saturation, membership),
//! * [`fan`] — rational polyhedral cones and fans, smoothness and
//!   characteristic-stalk tests,
//! * [`blowup`] — subdivisions of fans: stellar and ideal blow-ups,
//!   barycentric refinement, common refinement, resolution, integralization
//!   of toric morphisms,
//! * [`chow`] — cycle groups, rational equivalence, Minkowski weights with
//!   the fan displacement rule, divisor calculus and Gysin transport along a
//!   subdivision,
//! * [`logchow`] — classes carried on representative smooth subdivisions,
//!   with pushforward/pullback pipelines, duality pairing, the polytope
//!   algebra action and excision reports.
//!
//! All arithmetic is exact; every operation is a pure function of its inputs
//! and deterministic, including the seeded displacement-vector streams used
//! by the cup product.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod lattice;

pub(crate) mod dd;

pub mod fan;

pub mod blowup;

pub mod chow;

pub mod logchow;
