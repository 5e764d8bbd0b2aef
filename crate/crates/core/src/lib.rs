//! Factorizations of complete multigraphs built from finite geometries.
//!
//! The crate constructs, serializes and verifies `m`-factorizations of
//! `λK_v` whose factors are vertex-disjoint unions of cliques `K_{m+1}`:
//!
//! - [`galois`]: arithmetic in GF(p^e).
//! - [`geometry`]: PG(n,q), AG(n,q), subspaces and projectivities.
//! - [`designs`]: 2-designs from geometries and resolutions to factorizations.
//! - [`factorization`]: factors, factorizations, certificates, decomposition search.
//! - [`search`]: the exact-cover engine shared by all searches.
//! - [`spreads`]: spreads, fold spreads, reguli and packings.
//! - [`affine_constructions`]: factorizations from parallel classes of AG(n,q).
//! - [`cubic`]: spreads and factors from twisted cubics in PG(3,q).
//! - [`subgeometry`]: partitions of PG(n,q^k) into subgeometries PG(n,q).
//! - [`cli`]: the `geofactor` command line.
//!
//! Runnable examples live in `examples/`, one per area.

pub mod affine_constructions;
pub mod cli;
pub mod cubic;
pub mod designs;
pub mod factorization;
pub mod galois;
pub mod geometry;
pub mod search;
pub mod spreads;
pub mod subgeometry;

pub use factorization::{Factor, Factorization};
pub use galois::FieldSpec;
pub use geometry::{ProjectiveSpace, Subspace};
