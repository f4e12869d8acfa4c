//! On-disk formats: Wavefront OBJ models, binary PPM textures, key files.

mod keyfile;
mod obj;
mod ppm;

pub use keyfile::{parse_keyfile, write_keyfile, KeyBundle, KEY_LABELS};
pub use obj::{format_real, parse_obj, write_obj, Corner, Face, TexturedModel};
pub use ppm::{parse_ppm, write_ppm, RgbImage};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("line {line}: malformed number {token:?}")]
    BadNumber { line: usize, token: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: face has {corners} corners, need at least 3")]
    DegenerateFace { line: usize, corners: usize },
    #[error("line {line}: {kind} index {index} out of range (have {count})")]
    IndexOutOfRange {
        line: usize,
        kind: &'static str,
        index: i64,
        count: usize,
    },
    #[error("PPM: {0}")]
    Ppm(String),
    #[error("key file: {0}")]
    Key(String),
}
