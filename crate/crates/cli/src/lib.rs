//! Front end for the roundsleek toolkit: space definitions, reports and figures.

pub mod definition;
pub mod figure;
pub mod report;

pub use definition::{DefinitionError, SpaceDefinition};
pub use figure::{render_svg, Overlay};
pub use report::{replay, run_check, CheckName, ReportDocument, ReportError};
