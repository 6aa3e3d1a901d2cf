//! Command line front end for the homology library.
//!
//! Two input formats are accepted everywhere a file is expected: a labeled
//! indicator CSV (header row, first column a label, remaining columns
//! numeric) and an explicit filtration listing one simplex per line as
//! `v0 v1 v2, appearance`. The format is detected from the first line.

pub mod app;
pub mod input;
pub mod render;

pub use app::cli_main;
pub use input::{parse_filtration, read_input, InputData, InputError};
pub use render::{
    format_parameter, render_barcode_svg, render_barcode_text, RenderError, RenderSpec,
};
