//! Exact integer/rational arithmetic for the wall-and-chamber structure of
//! movable cones of two families of hyperkähler moduli spaces attached to a
//! polarized K3 surface `S` of degree `2d` with `Pic(S) = Z·H`:
//!
//! * the Hilbert scheme `S^[dn²+1]`, with Mukai vector `v = (1, 0, -dn²)`, and
//! * the Beauville–Mukai system `M(0, n, -1)`, with Mukai vector
//!   `v' = (0, n, -1)`,
//!
//! which are birational via a derived autoequivalence acting on the algebraic
//! Mukai lattice by the integer matrix `Φₙ`.  All computation happens in the
//! rank-3 lattice `Z³` of triples `(r, c, s)` (rank, curve class coefficient,
//! Euler characteristic component) with the signature-(2,1) pairing
//!
//! ```text
//! ((r, c, s), (r', c', s')) = 2d·c·c' - r·s' - r'·s .
//! ```
//!
//! Walls in the movable cone are indexed by a rational slope `Γ ∈ (0, 1/n)`:
//! the wall divisor class is `H̃ - Γ·B` in the standard `(H̃, B)` basis of the
//! Picard group of `S^[dn²+1]`.  Each wall is realized on two affine slices of
//! the space of stability conditions — the "hilbert frame" slice through
//! `x = -n` and the "bm frame" slice through `x = 0` — as semicircles whose
//! crossing parameters, destabilizing decompositions, Jordan–Hölder ranks and
//! exceptional loci this crate computes exactly, along with the full flop
//! chain of birational models connecting `S^[dn²+1]` to `M(0, n, -1)` for
//! `n ∈ {1, 2}`.
//!
//! Everything is arbitrary precision: `BigInt` for lattice data, `BigRational`
//! for slopes, centers, radii and crossing parameters.  No floating point
//! enters any mathematical decision (the only `f64` in the workspace is the
//! SVG renderer's coordinate output in the CLI crate).

pub mod error;
pub mod flop_chain;
pub mod mukai_lattice;
pub mod rational;
pub mod stability_plane;
pub mod wall_engine;

pub use error::{Error, Result};
