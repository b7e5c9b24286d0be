//! Library half of the `qlip` command line tool: instance file I/O,
//! number formatting, and SVG rendering. The binary in `main.rs` is a thin
//! dispatcher over these pieces.

pub mod fmt;
pub mod instance;
pub mod render;
