#![allow(dead_code)]

use std::path::PathBuf;

use lumesh::chaos::LuKey;
use lumesh::formats::{parse_obj, parse_ppm, Corner, Face, KeyBundle, RgbImage, TexturedModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn load_model(name: &str) -> TexturedModel {
    parse_obj(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub fn load_texture(name: &str) -> RgbImage {
    parse_ppm(&std::fs::read(fixture(name)).unwrap()).unwrap()
}

/// Random valid model: mixed triangles and quads, optional texcoord and
/// normal indices, a few passthrough lines.
pub fn random_model(rng: &mut ChaCha8Rng, n_vertices: usize, n_faces: usize) -> TexturedModel {
    let coord = |rng: &mut ChaCha8Rng| {
        let v: f64 = rng.gen_range(-1e3..1e3);
        if rng.gen_bool(0.05) {
            0.0
        } else {
            v
        }
    };
    let vertices: Vec<[f64; 3]> = (0..n_vertices)
        .map(|_| [coord(rng), coord(rng), coord(rng)])
        .collect();
    let n_tex = rng.gen_range(0..=n_vertices.min(64));
    let n_norm = rng.gen_range(0..=n_vertices.min(64));
    let texcoords = (0..n_tex).map(|_| [rng.gen(), rng.gen()]).collect();
    let normals = (0..n_norm)
        .map(|_| {
            [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ]
        })
        .collect();
    let faces = if n_vertices == 0 {
        Vec::new()
    } else {
        (0..n_faces)
            .map(|_| {
                let arity = if rng.gen_bool(0.5) { 3 } else { 4 };
                Face(
                    (0..arity)
                        .map(|_| {
                            let t =
                                (n_tex > 0 && rng.gen_bool(0.7)).then(|| rng.gen_range(1..=n_tex));
                            let nn = (n_norm > 0 && rng.gen_bool(0.5))
                                .then(|| rng.gen_range(1..=n_norm));
                            Corner::with(rng.gen_range(1..=n_vertices), t, nn)
                        })
                        .collect(),
                )
            })
            .collect()
    };
    TexturedModel {
        vertices,
        texcoords,
        normals,
        faces,
        passthrough: vec![
            "# generated".into(),
            "mtllib m.mtl".into(),
            "o thing".into(),
        ],
    }
}

pub fn random_texture(rng: &mut ChaCha8Rng, width: usize, height: usize) -> RgbImage {
    let pixels = (0..width * height).map(|_| rng.gen()).collect();
    RgbImage::new(width, height, pixels).unwrap()
}

/// Key bundle with each value drawn near the default keys, inside the
/// attractor's basin.
pub fn random_keys(rng: &mut ChaCha8Rng) -> KeyBundle {
    let base = KeyBundle::default().keys();
    KeyBundle::from_keys(base.map(|k| {
        LuKey::new(
            k.x0 + rng.gen_range(-2.0..2.0),
            k.y0 + rng.gen_range(-2.0..2.0),
            k.z0 + rng.gen_range(-2.0..2.0),
        )
    }))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn max_relative_error(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| (0..3).map(move |i| (x[i], y[i])))
        .map(|(x, y)| {
            if x == y {
                0.0
            } else {
                (x - y).abs() / x.abs().max(y.abs())
            }
        })
        .fold(0.0, f64::max)
}
