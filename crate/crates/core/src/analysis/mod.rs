//! Reliability estimation and code construction.

pub mod code;
pub mod construct;
pub mod ga;
pub mod genie;
pub mod map;
pub mod thresholds;
pub mod tree;

pub use code::{CodeSpec, SubtreeRates};
pub use construct::{
    construct_fp, construct_mrp, construct_relaxed, rate_loss, relaxation_map, select_good_set,
    Construction, MrpMode, Scenario, Target,
};
pub use genie::{mc_genie_bit_error, mc_genie_bit_error_with_map, mc_genie_tree};
pub use map::RelaxationMap;
pub use thresholds::{thresholds_from_target, EntropyRule, Thresholds};
pub use tree::{bec_z_tree, ga_reliability_tree, NodeReliability, ReliabilityTree, TreeKind};
