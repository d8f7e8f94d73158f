//! Distance analysis: GF(2) algebra, permanent bounds, minimum distance.

pub mod bound;
pub mod gf2;
pub mod mindist;
pub mod near;
pub mod permanent;

pub use bound::{commuting_grid_bound, qc_distance_bound, BoundReport};
pub use gf2::{gf2_nullspace_basis, gf2_rank, BitMatrix};
pub use mindist::{min_distance, DistanceReport, Method, SearchOptions};
pub use near::{near_codeword_probe, NearCodeword};
pub use permanent::permanent;
