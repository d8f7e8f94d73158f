//! Construction and analysis of quasi-cyclic LDPC codes obtained by
//! lifting a protograph twice: first by small `m × m` permutations, then by
//! `r × r` circulants.

pub mod conditions;
pub mod corpus;
pub mod distance;
pub mod error;
pub mod girth;
pub mod lift;
pub mod matrix;
pub mod perm;
pub mod search;
pub mod sim;

pub use conditions::{check_conditions, condition_set, prune_conditions, ConditionExpr, ConditionSet, Symbol};
pub use error::{Error, Result};
pub use girth::{compute_girth, girth_lower_bound_inheritance, Girth, TannerGraph};
pub use lift::{one_step_circulant, pre_lift, two_step, PreLiftGrid, QcLiftSpec};
pub use matrix::{BaseMatrix, ParityCheck};
pub use perm::{CirculantBlockPerm, CirculantPerm, Perm};
pub use distance::{
    commuting_grid_bound, gf2_nullspace_basis, gf2_rank, min_distance, near_codeword_probe, permanent, qc_distance_bound,
    BoundReport, DistanceReport, Method, NearCodeword, SearchOptions,
};
pub use search::{
    canonical_form, check_design_rule, enumerate_covers, equivalence_classes, shift_search, sieve, DesignRule, SieveReport,
};
pub use sim::{simulate, sp_decode, ChannelConfig, DecodeResult, Decoder, SimOptions, SimResult};
