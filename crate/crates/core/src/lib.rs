//! Flag systems and flag-stabilizer generators for the eleven
//! vertex-transitive edge-to-edge tilings of the Euclidean plane.
//!
//! The library models each tiling as a lattice-periodic system of flags
//! (vertex–edge–face triples) carrying the action of words over the three
//! involutory generators ρ0, ρ1, ρ2 of a string C-group. On top of the
//! flag action it provides:
//!
//! - finite patches of the flag graph, BFS spanning trees, and the
//!   cotree generating sets of the base-flag stabilizer;
//! - the explicit generator catalogs (α_i, β, γ) for the eight uniform
//!   tilings, machine-verified against the flag action;
//! - decomposition of stabilizer elements into cell-boundary conjugates
//!   by peeling enclosed cells of the embedded walk;
//! - witnesses showing the stabilizer of a uniform tiling needs
//!   generators supported arbitrarily far from the base flag;
//! - an SVG renderer for patches and highlighted walks.
//!
//! The adjacency tables and exact embeddings are stored as static data
//! and were produced by the geometric builder in [`oracle`], which
//! constructs every tiling from explicit coordinates; `flagwalk export`
//! regenerates and cross-checks them.

pub mod exact;
pub mod oracle;
pub mod patch;
pub mod render;
pub mod stabilizer;
pub mod tiling;
pub mod word;

pub use tiling::{Flag, FlagSystem, TilingId};
pub use word::{parse_word, Letter, Word};
