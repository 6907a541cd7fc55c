//! Inscribed-configuration search: float exploration, exact certification.

mod anneal;
mod canon;
mod config;
pub mod fast;

pub use anneal::{search_max_sides, RestartTrace, SearchOptions, SearchOutcome};
pub use config::{angles_to_scene, angles_to_scene_bits, score, AngleConfig, ConfigError, MAX_BITS, START_BITS};
pub use canon::{
    canonical_score, canonical_score_exact, near_isosceles_ratios, optimize_canonical, triangle_sides, CanonOptions,
    CanonOutcome,
};
