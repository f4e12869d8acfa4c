//! Security and performance measurements: occupancy lattices, coordinate
//! histograms, byte entropy, wrong-key diffs and timing runs.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cipher::{decrypt_model, encrypt_model, CipherError};
use crate::formats::{Face, KeyBundle, RgbImage, TexturedModel};

/// Lattice resolution used when none is given.
pub const DEFAULT_RESOLUTION: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("vertex list is empty")]
    NoVertices,
    #[error("{0} must be at least 1")]
    ZeroParameter(&'static str),
    #[error(transparent)]
    Cipher(#[from] CipherError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Axis-aligned bounding box as `(min, max)` per axis.
fn bounds(verts: &[[f64; 3]]) -> Option<[(f64, f64); 3]> {
    let first = verts.first()?;
    let mut b = [
        (first[0], first[0]),
        (first[1], first[1]),
        (first[2], first[2]),
    ];
    for v in verts {
        for (axis, range) in b.iter_mut().enumerate() {
            range.0 = range.0.min(v[axis]);
            range.1 = range.1.max(v[axis]);
        }
    }
    Some(b)
}

/// Bin of `value` among `bins` equal cells over `[lo, hi]`; the upper
/// boundary falls in the last cell and a zero-extent range has one cell.
fn cell(value: f64, lo: f64, hi: f64, bins: usize) -> usize {
    let extent = hi - lo;
    if extent.is_nan() || extent <= 0.0 {
        return 0;
    }
    let i = ((value - lo) / extent * bins as f64).floor();
    (i.max(0.0) as usize).min(bins - 1)
}

/// Voxelized vertex set with occupied-cell counts per z-column.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyLattice {
    resolution: usize,
    // index x * R * R + y * R + z
    occupied: Vec<bool>,
    /// `per_column_z[i][j]`: occupied cells in column `(i, j)` along z.
    pub per_column_z: Vec<Vec<usize>>,
}

impl OccupancyLattice {
    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn is_occupied(&self, i: usize, j: usize, k: usize) -> bool {
        let r = self.resolution;
        self.occupied[(i * r + j) * r + k]
    }

    pub fn occupied_count(&self) -> usize {
        self.occupied.iter().filter(|&&o| o).count()
    }

    /// Occupied-cell counts per column along `axis`, indexed by the two
    /// remaining axes in x, y, z order.
    pub fn column_counts(&self, axis: Axis) -> Vec<Vec<usize>> {
        let r = self.resolution;
        let mut counts = vec![vec![0usize; r]; r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    if self.is_occupied(i, j, k) {
                        let (a, b) = match axis {
                            Axis::X => (j, k),
                            Axis::Y => (i, k),
                            Axis::Z => (i, j),
                        };
                        counts[a][b] += 1;
                    }
                }
            }
        }
        counts
    }

    /// `per_column_z` flattened row-major.
    pub fn z_counts_flat(&self) -> Vec<usize> {
        self.per_column_z.iter().flatten().copied().collect()
    }
}

pub fn occupancy(verts: &[[f64; 3]], resolution: usize) -> Result<OccupancyLattice, AnalysisError> {
    if resolution == 0 {
        return Err(AnalysisError::ZeroParameter("resolution"));
    }
    let b = bounds(verts).ok_or(AnalysisError::NoVertices)?;
    let r = resolution;
    let mut occupied = vec![false; r * r * r];
    for v in verts {
        let [i, j, k]: [usize; 3] = std::array::from_fn(|a| cell(v[a], b[a].0, b[a].1, r));
        occupied[(i * r + j) * r + k] = true;
    }
    let mut per_column_z = vec![vec![0usize; r]; r];
    for (i, row) in per_column_z.iter_mut().enumerate() {
        for (j, count) in row.iter_mut().enumerate() {
            let base = (i * r + j) * r;
            *count = occupied[base..base + r].iter().filter(|&&o| o).count();
        }
    }
    Ok(OccupancyLattice {
        resolution: r,
        occupied,
        per_column_z,
    })
}

/// Per-axis equal-width histogram over that axis' `[min, max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisHistogram {
    pub min: f64,
    pub max: f64,
    pub counts: Vec<usize>,
}

pub fn coordinate_histogram(
    verts: &[[f64; 3]],
    bins: usize,
) -> Result<[AxisHistogram; 3], AnalysisError> {
    if bins == 0 {
        return Err(AnalysisError::ZeroParameter("bins"));
    }
    let b = bounds(verts).ok_or(AnalysisError::NoVertices)?;
    Ok(std::array::from_fn(|axis| {
        let (lo, hi) = b[axis];
        let mut counts = vec![0; bins];
        for v in verts {
            counts[cell(v[axis], lo, hi, bins)] += 1;
        }
        AxisHistogram {
            min: lo,
            max: hi,
            counts,
        }
    }))
}

/// Shannon entropy in bits of a byte sequence.
pub fn entropy_of(bytes: impl IntoIterator<Item = u8>) -> f64 {
    let mut hist = [0u64; 256];
    let mut total = 0u64;
    for b in bytes {
        hist[b as usize] += 1;
        total += 1;
    }
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    hist.iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum::<f64>()
        .max(0.0)
}

/// Entropy of the 256-bin histogram over all channel bytes.
pub fn byte_entropy(img: &RgbImage) -> f64 {
    entropy_of(img.as_bytes())
}

/// Pearson correlation; 0 when either side has zero variance.
pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    if n == 0 {
        return 0.0;
    }
    let mean = |s: &[f64]| s[..n].iter().sum::<f64>() / n as f64;
    let (ma, mb) = (mean(a), mean(b));
    let (mut cov, mut va, mut vb) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (da, db) = (a[i] - ma, b[i] - mb);
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if va == 0.0 || vb == 0.0 {
        0.0
    } else {
        cov / (va * vb).sqrt()
    }
}

/// How closely a decryption matches the original.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffReport {
    pub vertex_match_fraction: f64,
    pub faces_equal: bool,
    /// Fraction of face corners identical at the same position.
    pub corner_match_fraction: f64,
    pub texture_byte_match_fraction: f64,
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Matches over the common prefix divided by the longer length; two empty
/// sequences match fully.
fn match_fraction<T>(a: &[T], b: &[T], eq: impl Fn(&T, &T) -> bool) -> f64 {
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 1.0;
    }
    let hits = a.iter().zip(b).filter(|(x, y)| eq(x, y)).count();
    hits as f64 / longest as f64
}

pub fn diff_models(
    a: (&TexturedModel, &RgbImage),
    b: (&TexturedModel, &RgbImage),
    tol: f64,
) -> DiffReport {
    let (ma, ta) = a;
    let (mb, tb) = b;
    let vertex_match_fraction = match_fraction(&ma.vertices, &mb.vertices, |x, y| {
        (0..3).all(|i| close(x[i], y[i], tol))
    });
    let corners = |faces: &[Face]| faces.iter().flat_map(|f| f.0.clone()).collect::<Vec<_>>();
    let corner_match_fraction =
        match_fraction(&corners(&ma.faces), &corners(&mb.faces), |x, y| x == y);
    let bytes_a: Vec<u8> = ta.as_bytes().collect();
    let bytes_b: Vec<u8> = tb.as_bytes().collect();
    DiffReport {
        vertex_match_fraction,
        faces_equal: ma.faces == mb.faces,
        corner_match_fraction,
        texture_byte_match_fraction: match_fraction(&bytes_a, &bytes_b, |x, y| x == y),
    }
}

/// Random model with `n` vertices in the unit cube and `2n` triangles.
pub fn synthetic_model(n: usize, seed: u64) -> TexturedModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices = (0..n)
        .map(|_| [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()])
        .collect();
    let faces = if n == 0 {
        Vec::new()
    } else {
        (0..2 * n)
            .map(|_| {
                let mut idx = || rng.gen_range(1..=n);
                Face::from_vertices(&[idx(), idx(), idx()])
            })
            .collect()
    };
    TexturedModel {
        vertices,
        faces,
        ..Default::default()
    }
}

pub fn synthetic_texture(width: usize, height: usize, seed: u64) -> RgbImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pixels = (0..width * height).map(|_| rng.gen()).collect();
    RgbImage::new(width, height, pixels).expect("dimensions match pixel count")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub vertices: usize,
    pub encrypt_seconds: f64,
    pub decrypt_seconds: f64,
}

/// Times encrypt and decrypt of synthetic models (`2n` triangles, 256x256
/// texture) with the default keys. Each timing is the median of `repeats`.
pub fn bench_with(vertex_counts: &[usize], repeats: usize) -> Result<Vec<BenchRow>, AnalysisError> {
    if repeats == 0 {
        return Err(AnalysisError::ZeroParameter("repeats"));
    }
    let kb = KeyBundle::default();
    let tex = synthetic_texture(256, 256, 0x7e57);
    let median = |mut v: Vec<f64>| {
        v.sort_by(f64::total_cmp);
        v[v.len() / 2]
    };
    vertex_counts
        .iter()
        .map(|&n| {
            let model = synthetic_model(n, n as u64);
            let mut enc_times = Vec::with_capacity(repeats);
            let mut dec_times = Vec::with_capacity(repeats);
            for _ in 0..repeats {
                let start = Instant::now();
                let ct = encrypt_model(&model, &tex, &kb)?;
                enc_times.push(start.elapsed().as_secs_f64());
                let start = Instant::now();
                let plain = decrypt_model(&ct, &kb)?;
                dec_times.push(start.elapsed().as_secs_f64());
                debug_assert_eq!(plain.0.faces, model.faces);
            }
            Ok(BenchRow {
                vertices: n,
                encrypt_seconds: median(enc_times),
                decrypt_seconds: median(dec_times),
            })
        })
        .collect()
}

pub fn bench(vertex_counts: &[usize]) -> Result<Vec<BenchRow>, AnalysisError> {
    bench_with(vertex_counts, 3)
}

/// Brute-force key space: `keys` values at `digits` decimal digits each,
/// as a power of two.
pub fn key_space_bits(keys: u32, digits: u32) -> f64 {
    f64::from(keys) * f64::from(digits) * 10f64.log2()
}
