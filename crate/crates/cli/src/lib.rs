//! Text format, reports, SVG rendering and the `troplag` command line.

pub mod app;
pub mod format;
pub mod report;
pub mod svg;

pub use format::{parse, serialize, Document, NamedCurve, ParseError};
