//! Phase ciphers for vertices, polygons and texture, and the compositor that
//! runs all three over a textured model.
//!
//! Each phase has a keyed entry point (`encrypt_*` / `decrypt_*`) that
//! derives its keystream from a [`LuKey`], and a pure core that takes the
//! already-quantized keystream. The cores are what the unit tests exercise
//! with hand-picked streams.

use std::sync::OnceLock;

use thiserror::Error;

use crate::chaos::{self, ChaosError, LuKey, StreamConfig};
use crate::dnacode::{decode_byte, encode_byte};
use crate::formats::{Face, FormatError, KeyBundle, RgbImage, TexturedModel};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CipherError {
    #[error("keystream generation failed: {0}")]
    Keystream(#[from] ChaosError),
    #[error("invalid model: {0}")]
    Model(#[from] FormatError),
    #[error("keystream has {got} values, need {need}")]
    StreamLength { got: usize, need: usize },
}

fn stream(key: &LuKey, count: usize) -> Result<Vec<f64>, ChaosError> {
    Ok(chaos::Keystream::generate(key, &StreamConfig::default(), count)?.into_values())
}

fn check_len(got: usize, need: usize) -> Result<(), CipherError> {
    if got == need {
        Ok(())
    } else {
        Err(CipherError::StreamLength { got, need })
    }
}

// ---------------------------------------------------------------- vertices

/// Per-coordinate multipliers in `[1, 2)` for `n` vertices.
pub fn vertex_multipliers(key: &LuKey, n: usize) -> Result<Vec<f64>, CipherError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(stream(key, 3 * n)?
        .into_iter()
        .map(chaos::to_multiplier)
        .collect())
}

/// Coordinate `j` of the flattened vertex list times `multipliers[j]`.
pub fn scale_vertices(
    verts: &[[f64; 3]],
    multipliers: &[f64],
) -> Result<Vec<[f64; 3]>, CipherError> {
    check_len(multipliers.len(), 3 * verts.len())?;
    Ok(verts
        .iter()
        .zip(multipliers.chunks_exact(3))
        .map(|(v, m)| [v[0] * m[0], v[1] * m[1], v[2] * m[2]])
        .collect())
}

pub fn unscale_vertices(
    verts: &[[f64; 3]],
    multipliers: &[f64],
) -> Result<Vec<[f64; 3]>, CipherError> {
    check_len(multipliers.len(), 3 * verts.len())?;
    Ok(verts
        .iter()
        .zip(multipliers.chunks_exact(3))
        .map(|(v, m)| [v[0] / m[0], v[1] / m[1], v[2] / m[2]])
        .collect())
}

pub fn encrypt_vertices(verts: &[[f64; 3]], key: &LuKey) -> Result<Vec<[f64; 3]>, CipherError> {
    scale_vertices(verts, &vertex_multipliers(key, verts.len())?)
}

pub fn decrypt_vertices(verts: &[[f64; 3]], key: &LuKey) -> Result<Vec<[f64; 3]>, CipherError> {
    unscale_vertices(verts, &vertex_multipliers(key, verts.len())?)
}

// ---------------------------------------------------------------- polygons

/// Corner reordering derived from a keystream: output slot `r` takes input
/// corner `forward[r]`, i.e. `forward` is the stable ascending argsort of the
/// sort keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationPlan {
    forward: Vec<usize>,
}

impl PermutationPlan {
    pub fn from_sort_keys(keys: &[f64]) -> Self {
        let mut forward: Vec<usize> = (0..keys.len()).collect();
        // sort_by is stable: equal keys keep their original order
        forward.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
        Self { forward }
    }

    /// Plan for `len` corners under `key`.
    pub fn for_key(key: &LuKey, len: usize) -> Result<Self, CipherError> {
        if len <= 1 {
            return Ok(Self {
                forward: (0..len).collect(),
            });
        }
        let keys: Vec<f64> = stream(key, len)?.into_iter().map(chaos::to_unit).collect();
        Ok(Self::from_sort_keys(&keys))
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.forward.iter().map(|&src| items[src].clone()).collect()
    }

    pub fn invert<T: Clone>(&self, items: &[T]) -> Vec<T> {
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (slot, &src) in self.forward.iter().enumerate() {
            out[src] = Some(items[slot].clone());
        }
        out.into_iter()
            .map(|c| c.expect("plan is a permutation"))
            .collect()
    }
}

fn regroup(corners: Vec<crate::formats::Corner>, faces: &[Face]) -> Vec<Face> {
    let mut it = corners.into_iter();
    faces
        .iter()
        .map(|f| Face(it.by_ref().take(f.arity()).collect()))
        .collect()
}

/// Moves whole corners (with their texcoord/normal indices) according to
/// `plan`, keeping each face's arity.
pub fn permute_faces(faces: &[Face], plan: &PermutationPlan) -> Result<Vec<Face>, CipherError> {
    let flat: Vec<_> = faces.iter().flat_map(|f| f.0.iter().copied()).collect();
    check_len(plan.len(), flat.len())?;
    Ok(regroup(plan.apply(&flat), faces))
}

pub fn unpermute_faces(faces: &[Face], plan: &PermutationPlan) -> Result<Vec<Face>, CipherError> {
    let flat: Vec<_> = faces.iter().flat_map(|f| f.0.iter().copied()).collect();
    check_len(plan.len(), flat.len())?;
    Ok(regroup(plan.invert(&flat), faces))
}

fn corner_total(faces: &[Face]) -> usize {
    faces.iter().map(Face::arity).sum()
}

pub fn encrypt_polygons(faces: &[Face], key: &LuKey) -> Result<Vec<Face>, CipherError> {
    permute_faces(faces, &PermutationPlan::for_key(key, corner_total(faces))?)
}

pub fn decrypt_polygons(faces: &[Face], key: &LuKey) -> Result<Vec<Face>, CipherError> {
    unpermute_faces(faces, &PermutationPlan::for_key(key, corner_total(faces))?)
}

// ----------------------------------------------------------------- texture

struct ByteTables {
    // add[p][k] = decode(encode(p) + encode(k)); also the subtraction table
    add: Vec<[u8; 256]>,
    complement: [u8; 256],
}

fn tables() -> &'static ByteTables {
    static TABLES: OnceLock<ByteTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let add = (0..=255u8)
            .map(|p| {
                let dp = encode_byte(p);
                std::array::from_fn(|k| decode_byte(dp + encode_byte(k as u8)))
            })
            .collect();
        let complement = std::array::from_fn(|b| decode_byte(encode_byte(b as u8).complement()));
        ByteTables { add, complement }
    })
}

/// DNA-adds `key_bytes[i]` to `plain[i]` and complements bytes whose mask
/// bit is 1.
pub fn cipher_bytes(plain: &[u8], key_bytes: &[u8], mask: &[u8]) -> Result<Vec<u8>, CipherError> {
    check_len(key_bytes.len(), plain.len())?;
    check_len(mask.len(), plain.len())?;
    let t = tables();
    Ok(plain
        .iter()
        .zip(key_bytes)
        .zip(mask)
        .map(|((&p, &k), &m)| {
            let sum = t.add[p as usize][k as usize];
            if m != 0 {
                t.complement[sum as usize]
            } else {
                sum
            }
        })
        .collect())
}

/// Inverse of [`cipher_bytes`]: undo the complement, then DNA-subtract.
pub fn decipher_bytes(
    cipher: &[u8],
    key_bytes: &[u8],
    mask: &[u8],
) -> Result<Vec<u8>, CipherError> {
    check_len(key_bytes.len(), cipher.len())?;
    check_len(mask.len(), cipher.len())?;
    let t = tables();
    Ok(cipher
        .iter()
        .zip(key_bytes)
        .zip(mask)
        .map(|((&c, &k), &m)| {
            let sum = if m != 0 { t.complement[c as usize] } else { c };
            // subtraction coincides with addition in this group
            t.add[sum as usize][k as usize]
        })
        .collect())
}

/// Key image bytes and complement mask bits for `n` byte positions.
pub fn texture_streams(
    k1: &LuKey,
    k2: &LuKey,
    n: usize,
) -> Result<(Vec<u8>, Vec<u8>), CipherError> {
    let (key_bytes, mask) = std::thread::scope(|s| {
        let kb = s.spawn(|| stream(k1, n));
        let mask = stream(k2, n);
        (kb.join().expect("keystream thread panicked"), mask)
    });
    Ok((
        key_bytes?.into_iter().map(chaos::to_byte).collect(),
        mask?.into_iter().map(chaos::to_bit).collect(),
    ))
}

type ByteOp = fn(&[u8], &[u8], &[u8]) -> Result<Vec<u8>, CipherError>;

fn transform_texture(
    img: &RgbImage,
    k1: &LuKey,
    k2: &LuKey,
    op: ByteOp,
) -> Result<RgbImage, CipherError> {
    let planes = img.to_planes();
    let (key_bytes, mask) = texture_streams(k1, k2, planes.len())?;
    let out = op(&planes, &key_bytes, &mask)?;
    Ok(RgbImage::from_planes(img.width(), img.height(), &out)?)
}

pub fn encrypt_texture(img: &RgbImage, k1: &LuKey, k2: &LuKey) -> Result<RgbImage, CipherError> {
    transform_texture(img, k1, k2, cipher_bytes)
}

pub fn decrypt_texture(img: &RgbImage, k1: &LuKey, k2: &LuKey) -> Result<RgbImage, CipherError> {
    transform_texture(img, k1, k2, decipher_bytes)
}

// ------------------------------------------------------------------- model

/// An encrypted model together with its encrypted texture.
#[derive(Debug, Clone, PartialEq)]
pub struct CipherText {
    pub model: TexturedModel,
    pub texture: RgbImage,
}

type Phases = (
    Result<Vec<[f64; 3]>, CipherError>,
    Result<Vec<Face>, CipherError>,
    Result<RgbImage, CipherError>,
);

fn run_phases(
    m: &TexturedModel,
    tex: &RgbImage,
    kb: &KeyBundle,
    encrypt: bool,
) -> Result<(TexturedModel, RgbImage), CipherError> {
    m.validate()?;
    let (verts, faces, texture): Phases = std::thread::scope(|s| {
        let verts = s.spawn(|| {
            if encrypt {
                encrypt_vertices(&m.vertices, &kb.vertices_key)
            } else {
                decrypt_vertices(&m.vertices, &kb.vertices_key)
            }
        });
        let faces = s.spawn(|| {
            if encrypt {
                encrypt_polygons(&m.faces, &kb.polygons_key)
            } else {
                decrypt_polygons(&m.faces, &kb.polygons_key)
            }
        });
        let texture = if encrypt {
            encrypt_texture(tex, &kb.texture1_key, &kb.texture2_key)
        } else {
            decrypt_texture(tex, &kb.texture1_key, &kb.texture2_key)
        };
        (
            verts.join().expect("vertex phase panicked"),
            faces.join().expect("polygon phase panicked"),
            texture,
        )
    });
    let model = TexturedModel {
        vertices: verts?,
        texcoords: m.texcoords.clone(),
        normals: m.normals.clone(),
        faces: faces?,
        passthrough: m.passthrough.clone(),
    };
    Ok((model, texture?))
}

pub fn encrypt_model(
    m: &TexturedModel,
    tex: &RgbImage,
    kb: &KeyBundle,
) -> Result<CipherText, CipherError> {
    let (model, texture) = run_phases(m, tex, kb, true)?;
    Ok(CipherText { model, texture })
}

pub fn decrypt_model(
    c: &CipherText,
    kb: &KeyBundle,
) -> Result<(TexturedModel, RgbImage), CipherError> {
    run_phases(&c.model, &c.texture, kb, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::Corner;

    fn tri(a: usize, b: usize, c: usize) -> Face {
        Face::from_vertices(&[a, b, c])
    }

    #[test]
    fn vertex_scaling_examples() {
        let m = [1.5, 1.25, 1.75];
        assert_eq!(
            scale_vertices(&[[2.0, 4.0, 8.0]], &m).unwrap(),
            vec![[3.0, 5.0, 14.0]]
        );
        assert_eq!(
            unscale_vertices(&[[3.0, 5.0, 14.0]], &m).unwrap(),
            vec![[2.0, 4.0, 8.0]]
        );
        assert_eq!(scale_vertices(&[[0.0, 1.0, 0.0]], &m).unwrap()[0][0], 0.0);
        assert!(scale_vertices(&[[0.0; 3]], &m[..2]).is_err());
    }

    #[test]
    fn empty_vertices() {
        let key = KeyBundle::default().vertices_key;
        assert!(encrypt_vertices(&[], &key).unwrap().is_empty());
        assert!(decrypt_vertices(&[], &key).unwrap().is_empty());
    }

    #[test]
    fn stubbed_permutation() {
        let plan = PermutationPlan::from_sort_keys(&[0.9, 0.1, 0.5, 0.7, 0.3, 0.2]);
        assert_eq!(plan.forward(), &[1, 5, 4, 2, 3, 0]);
        let faces = vec![tri(1, 2, 3), tri(4, 5, 6)];
        let enc = permute_faces(&faces, &plan).unwrap();
        assert_eq!(enc, vec![tri(2, 6, 5), tri(3, 4, 1)]);
        assert_eq!(unpermute_faces(&enc, &plan).unwrap(), faces);
    }

    #[test]
    fn ties_keep_original_order() {
        let plan = PermutationPlan::from_sort_keys(&[0.5, 0.1, 0.5, 0.1]);
        assert_eq!(plan.forward(), &[1, 3, 0, 2]);
    }

    #[test]
    fn corners_move_as_units() {
        let faces = vec![Face(vec![
            Corner::with(1, Some(7), Some(9)),
            Corner::with(2, Some(8), None),
            Corner::new(3),
            Corner::with(4, None, Some(1)),
        ])];
        let plan = PermutationPlan::from_sort_keys(&[0.4, 0.3, 0.2, 0.1]);
        let enc = permute_faces(&faces, &plan).unwrap();
        assert_eq!(
            enc[0].corners(),
            &[
                Corner::with(4, None, Some(1)),
                Corner::new(3),
                Corner::with(2, Some(8), None),
                Corner::with(1, Some(7), Some(9)),
            ]
        );
    }

    #[test]
    fn short_corner_lists_are_untouched() {
        let key = KeyBundle::default().polygons_key;
        assert!(encrypt_polygons(&[], &key).unwrap().is_empty());
        let one = vec![Face(vec![Corner::new(1)])];
        assert_eq!(encrypt_polygons(&one, &key).unwrap(), one);
        assert_eq!(decrypt_polygons(&one, &key).unwrap(), one);
    }

    #[test]
    fn texture_byte_examples() {
        assert_eq!(cipher_bytes(&[123], &[0], &[0]).unwrap(), vec![209]);
        assert_eq!(cipher_bytes(&[123], &[0], &[1]).unwrap(), vec![46]);
        assert_eq!(decipher_bytes(&[209], &[0], &[0]).unwrap(), vec![123]);
        assert_eq!(decipher_bytes(&[46], &[0], &[1]).unwrap(), vec![123]);
    }

    #[test]
    fn cccc_key_byte_is_identity() {
        let plain: Vec<u8> = (0..=255).collect();
        let out = cipher_bytes(&plain, &[170; 256], &[0; 256]).unwrap();
        assert_eq!(out, plain);
    }

    #[test]
    fn texture_bytes_roundtrip_exhaustive() {
        let plain: Vec<u8> = (0..=255)
            .flat_map(|p| std::iter::repeat_n(p, 512))
            .collect();
        let keys: Vec<u8> = (0..plain.len()).map(|i| (i % 256) as u8).collect();
        let mask: Vec<u8> = (0..plain.len()).map(|i| ((i / 256) % 2) as u8).collect();
        let enc = cipher_bytes(&plain, &keys, &mask).unwrap();
        assert_eq!(decipher_bytes(&enc, &keys, &mask).unwrap(), plain);
    }

    #[test]
    fn one_pixel_model() {
        let m = TexturedModel::default();
        let tex = RgbImage::filled(1, 1, [10, 20, 30]).unwrap();
        let kb = KeyBundle::default();
        let c = encrypt_model(&m, &tex, &kb).unwrap();
        assert_eq!(c.model, m);
        assert_eq!((c.texture.width(), c.texture.height()), (1, 1));
        let (m2, t2) = decrypt_model(&c, &kb).unwrap();
        assert_eq!(m2, m);
        assert_eq!(t2, tex);
    }

    #[test]
    fn invalid_model_is_rejected() {
        let m = TexturedModel {
            vertices: vec![[0.0; 3]],
            faces: vec![tri(1, 2, 3)],
            ..Default::default()
        };
        let tex = RgbImage::filled(1, 1, [0; 3]).unwrap();
        assert!(matches!(
            encrypt_model(&m, &tex, &KeyBundle::default()),
            Err(CipherError::Model(_))
        ));
    }
}
