//! Command-line front end.
//!
//! Every subcommand writes either files or tab-separated text on stdout;
//! failures surface as a single-line diagnostic from `main`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{self, DEFAULT_RESOLUTION};
use crate::chaos::LuParams;
use crate::cipher::{decrypt_model, encrypt_model, CipherText};
use crate::formats::{self, KeyBundle, RgbImage, TexturedModel};

#[derive(Debug, Parser)]
#[command(
    name = "lumesh",
    version,
    about = "Encrypt textured 3D models with Lu-system keystreams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encrypt an OBJ model and its PPM texture.
    Encrypt(CryptArgs),
    /// Decrypt a model/texture pair produced by `encrypt`.
    Decrypt(CryptArgs),
    /// Statistical analysis; writes TSV to stdout.
    Analyze(AnalyzeArgs),
    /// Time encryption and decryption of synthetic models.
    Bench(BenchArgs),
    /// Key-space summary and system parameters.
    Info(InfoArgs),
}

#[derive(Debug, Args)]
pub struct CryptArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub texture: PathBuf,
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Occupied cells per z-column: <model.obj>
    Occupancy,
    /// Per-axis coordinate histograms: <model.obj>
    Histogram,
    /// Byte entropy: <image.ppm>...
    Entropy,
    /// Compare two decryptions: <a.obj> <a.ppm> <b.obj> <b.ppm>
    Diff,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    #[arg(long, default_value_t = 32)]
    pub bins: usize,
    /// Relative tolerance for vertex comparison in `diff`.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    /// Key file to validate; the built-in defaults are described otherwise.
    #[arg(long)]
    pub key: Option<PathBuf>,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Encrypt(args) => run_encrypt(&args, out),
        Command::Decrypt(args) => run_decrypt(&args, out),
        Command::Analyze(args) => run_analyze(&args, out),
        Command::Bench(args) => run_bench(&args, out),
        Command::Info(args) => run_info(&args, out),
    }
}

pub fn load_model(path: &Path) -> Result<TexturedModel> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    formats::parse_obj(&text).with_context(|| format!("{}", path.display()))
}

pub fn load_texture(path: &Path) -> Result<RgbImage> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    formats::parse_ppm(&bytes).with_context(|| format!("{}", path.display()))
}

pub fn load_keys(path: &Path) -> Result<KeyBundle> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read key file {}", path.display()))?;
    formats::parse_keyfile(&text).with_context(|| format!("{}", path.display()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

/// Output stem: the model's file stem without a trailing `.enc`.
fn output_stem(model: &Path) -> String {
    let stem = model
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "model".into());
    match stem.strip_suffix(".enc") {
        Some(s) if !s.is_empty() => s.to_string(),
        _ => stem,
    }
}

fn crypt(args: &CryptArgs, out: &mut dyn Write, encrypt: bool) -> Result<()> {
    let keys = load_keys(&args.key)?;
    let model = load_model(&args.model)?;
    let texture = load_texture(&args.texture)?;
    fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;

    let start = Instant::now();
    let (model, texture) = if encrypt {
        let ct = encrypt_model(&model, &texture, &keys)?;
        (ct.model, ct.texture)
    } else {
        decrypt_model(&CipherText { model, texture }, &keys)?
    };
    let elapsed = start.elapsed().as_secs_f64();

    let tag = if encrypt { "enc" } else { "dec" };
    let stem = output_stem(&args.model);
    let obj_path = args.out.join(format!("{stem}.{tag}.obj"));
    let ppm_path = args.out.join(format!("{stem}.{tag}.ppm"));
    write_file(&obj_path, formats::write_obj(&model).as_bytes())?;
    write_file(&ppm_path, &formats::write_ppm(&texture))?;

    writeln!(out, "vertices\t{}", model.vertices.len())?;
    writeln!(out, "faces\t{}", model.faces.len())?;
    writeln!(out, "width\t{}", texture.width())?;
    writeln!(out, "height\t{}", texture.height())?;
    writeln!(out, "seconds\t{elapsed:.6}")?;
    writeln!(out, "model\t{}", obj_path.display())?;
    writeln!(out, "texture\t{}", ppm_path.display())?;
    Ok(())
}

pub fn run_encrypt(args: &CryptArgs, out: &mut dyn Write) -> Result<()> {
    crypt(args, out, true)
}

pub fn run_decrypt(args: &CryptArgs, out: &mut dyn Write) -> Result<()> {
    crypt(args, out, false)
}

fn expect_inputs(args: &AnalyzeArgs, n: usize, what: &str) -> Result<()> {
    if args.inputs.len() != n {
        bail!(
            "mode {:?} takes {what}, got {} input(s)",
            args.mode,
            args.inputs.len()
        );
    }
    Ok(())
}

pub fn run_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    match args.mode {
        Mode::Occupancy => {
            expect_inputs(args, 1, "one model")?;
            let model = load_model(&args.inputs[0])?;
            let lat = analysis::occupancy(&model.vertices, args.resolution)?;
            writeln!(out, "i\tj\tcount")?;
            for (i, row) in lat.per_column_z.iter().enumerate() {
                for (j, count) in row.iter().enumerate() {
                    writeln!(out, "{i}\t{j}\t{count}")?;
                }
            }
        }
        Mode::Histogram => {
            expect_inputs(args, 1, "one model")?;
            let model = load_model(&args.inputs[0])?;
            let hists = analysis::coordinate_histogram(&model.vertices, args.bins)?;
            writeln!(out, "axis\tbin\tlo\thi\tcount")?;
            for (name, h) in ["x", "y", "z"].iter().zip(&hists) {
                let width = (h.max - h.min) / args.bins as f64;
                for (b, count) in h.counts.iter().enumerate() {
                    let lo = h.min + width * b as f64;
                    writeln!(out, "{name}\t{b}\t{lo}\t{}\t{count}", lo + width)?;
                }
            }
        }
        Mode::Entropy => {
            if let [single] = &args.inputs[..] {
                writeln!(out, "{:.6}", analysis::byte_entropy(&load_texture(single)?))?;
            } else {
                for path in &args.inputs {
                    let e = analysis::byte_entropy(&load_texture(path)?);
                    writeln!(out, "{}\t{e:.6}", path.display())?;
                }
            }
        }
        Mode::Diff => {
            expect_inputs(args, 4, "<a.obj> <a.ppm> <b.obj> <b.ppm>")?;
            let a = (load_model(&args.inputs[0])?, load_texture(&args.inputs[1])?);
            let b = (load_model(&args.inputs[2])?, load_texture(&args.inputs[3])?);
            let r = analysis::diff_models((&a.0, &a.1), (&b.0, &b.1), args.tol);
            writeln!(out, "vertex_match_fraction\t{:.6}", r.vertex_match_fraction)?;
            writeln!(out, "faces_equal\t{}", r.faces_equal)?;
            writeln!(out, "corner_match_fraction\t{:.6}", r.corner_match_fraction)?;
            writeln!(
                out,
                "texture_byte_match_fraction\t{:.6}",
                r.texture_byte_match_fraction
            )?;
        }
    }
    Ok(())
}

pub fn run_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    let rows = analysis::bench_with(&args.sizes, args.repeats)?;
    writeln!(out, "vertices\tencrypt_seconds\tdecrypt_seconds")?;
    for r in rows {
        writeln!(
            out,
            "{}\t{:.6}\t{:.6}",
            r.vertices, r.encrypt_seconds, r.decrypt_seconds
        )?;
    }
    Ok(())
}

/// Decimal digits of precision assumed per key value.
pub const KEY_DIGITS: u32 = 15;

pub fn run_info(args: &InfoArgs, out: &mut dyn Write) -> Result<()> {
    let keys = match &args.key {
        Some(path) => {
            let kb = load_keys(path)?;
            writeln!(out, "key_file\t{}", path.display())?;
            kb
        }
        None => KeyBundle::default(),
    };
    let n = keys.values().len() as u32;
    let bits = analysis::key_space_bits(n, KEY_DIGITS);
    let p = LuParams::default();
    writeln!(out, "keys\t{n}")?;
    writeln!(out, "digits_per_key\t{KEY_DIGITS}")?;
    writeln!(out, "key_space\t10^{}", n * KEY_DIGITS)?;
    writeln!(out, "key_space_bits\t{}", bits.round())?;
    writeln!(out, "key_space_bits_exact\t{bits:.4}")?;
    writeln!(out, "parameters\ta={} b={} c={}", p.a, p.b, p.c)?;
    Ok(())
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
