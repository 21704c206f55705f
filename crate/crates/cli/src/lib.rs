//! Command line front end: an expression syntax for monomial ideals,
//! command dispatch with text or JSON output, and SVG rendering.

pub mod commands;
pub mod parser;
pub mod render;

pub use commands::{execute, run, Cli, CliError, Command, Output, Settings};
pub use parser::{parse, parse_ideal, parse_monomial, parse_polys, ParseError};
pub use render::render_svg;
