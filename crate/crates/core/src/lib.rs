//! Encryption of textured 3D models with keystreams from the Lu chaotic
//! system.
//!
//! A model is split into three parts that are enciphered independently,
//! each under its own trajectory key:
//!
//! * vertices: every coordinate is multiplied by a keystream value in `[1, 2)`;
//! * polygons: face corners are reordered by the argsort of a keystream;
//! * texture: bytes are DNA-encoded, DNA-added to a key image and
//!   complemented under a keystream mask.
//!
//! Decryption applies the inverses. [`formats`] reads and writes OBJ, PPM
//! and key files; [`analysis`] holds the security and timing measurements.

pub mod analysis;
pub mod chaos;
pub mod cipher;
pub mod cli;
pub mod dnacode;
pub mod formats;

pub use chaos::{generate_stream, Keystream, LuKey, LuParams, LuState};
pub use cipher::{decrypt_model, encrypt_model, CipherError, CipherText};
pub use formats::{KeyBundle, RgbImage, TexturedModel};
