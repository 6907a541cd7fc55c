//! Files, figures and reports.

mod outcome;
mod report;
mod scene;
mod svg;

pub use outcome::{parse_outcome, write_outcome, OutcomeError, OUTCOME_HEADER};
pub use report::{verify, Report, Verdict};
pub use scene::{
    parse_rational, parse_scene, parse_scene_file, write_scene, write_scene_file, SceneFile, SceneFileError, HEADER,
};
pub use svg::{render_svg, SvgOptions};
