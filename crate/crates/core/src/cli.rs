//! `patchlock` command-line surface.
//!
//! The three roles of a deployment map onto subcommands: the model owner runs
//! `gen-model`/`keygen`/`encrypt-model`, a client runs `encrypt-image`, and
//! the provider runs `infer` on what it receives. `verify`, `attack-sim` and
//! `keyspace` are audit tools.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::image::{decrypt_image, encrypt_image, CodecError};
use crate::infer::{softmax, Engine, InferError};
use crate::keys::{KeyError, KeyPair, Seed};
use crate::model::{
    encrypt_model, load_model, save_model, ConvMixerParams, ModelConfig, ModelError,
};
use crate::pnm::{self, PnmError};
use crate::verify::{self, VerifyError};

pub const THREADS_ENV: &str = "PATCHLOCK_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "patchlock",
    version,
    about = "Keyed block-wise image and ConvMixer model encryption"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive a key pair from two seeds and write a PLK1 key file.
    Keygen {
        #[arg(long)]
        seed1: u64,
        #[arg(long)]
        seed2: u64,
        /// Block size M (must equal the model's patch size).
        #[arg(long)]
        block: usize,
        #[arg(long, default_value_t = 3)]
        channels: usize,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Encrypt a PPM/PGM image block-wise.
    EncryptImage {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        block: usize,
        input: PathBuf,
        output: PathBuf,
    },
    /// Invert `encrypt-image`.
    DecryptImage {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        block: usize,
        input: PathBuf,
        output: PathBuf,
    },
    /// Transform the patch-embedding weights of a CMX1 model.
    EncryptModel {
        #[arg(long)]
        key: PathBuf,
        input: PathBuf,
        output: PathBuf,
    },
    /// Classify one image; prints the class index and probabilities.
    Infer {
        #[arg(long)]
        model: PathBuf,
        image: PathBuf,
    },
    /// Check that encrypted model + encrypted images reproduce plain logits.
    Verify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long, default_value_t = 16)]
        images: usize,
        #[arg(long, default_value_t = 1e-4)]
        tol: f32,
        /// Seed for the random test images.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the key-space size for a block of N pixels.
    Keyspace {
        #[arg(long)]
        pb: usize,
    },
    /// Query the encrypted model with images encrypted under random wrong keys.
    AttackSim {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long, default_value_t = 100)]
        keys: usize,
        #[arg(long, default_value_t = 64)]
        images: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Write a CMX1 model with random weights and calibrated batch norm.
    GenModel {
        /// C,H,W,P,d,L,kernel,classes
        #[arg(long, value_parser = parse_spec)]
        spec: ModelConfig,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("Usage: {0}")]
    Usage(String),
    #[error("Io: {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Key(#[from] KeyError),
    #[error("{0}")]
    Codec(#[from] CodecError),
    #[error("{0}")]
    Model(#[from] ModelError),
    #[error("{0}")]
    Infer(#[from] InferError),
    #[error("{0}")]
    Verify(#[from] VerifyError),
    #[error("{path}: {source}")]
    Pnm { path: PathBuf, source: PnmError },
}

fn parse_spec(s: &str) -> Result<ModelConfig, String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [channels, height, width, patch, dim, depth, kernel, classes] = v[..] else {
        return Err(format!(
            "expected 8 comma-separated values, got {}",
            v.len()
        ));
    };
    let cfg = ModelConfig {
        channels,
        height,
        width,
        patch,
        dim,
        depth,
        kernel,
        classes,
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Writes through a temporary file in the same directory and renames it into
/// place, so a failed run never leaves a partial file behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.to_owned(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut builder = tempfile::Builder::new();
    // temp files default to owner-only; outputs get the usual mode
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        builder.permissions(std::fs::Permissions::from_mode(0o644));
    }
    let mut tmp = builder.tempfile_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn load_key(path: &Path) -> Result<KeyPair, CliError> {
    Ok(KeyPair::from_bytes(&read(path)?)?)
}

fn load_params(path: &Path) -> Result<ConvMixerParams, CliError> {
    Ok(load_model(&read(path)?)?)
}

fn load_image(path: &Path) -> Result<crate::image::RgbImage, CliError> {
    pnm::decode(&read(path)?).map_err(|source| CliError::Pnm {
        path: path.to_owned(),
        source,
    })
}

fn encode_image(path: &Path, img: &crate::image::RgbImage) -> Result<Vec<u8>, CliError> {
    pnm::encode(img).map_err(|source| CliError::Pnm {
        path: path.to_owned(),
        source,
    })
}

fn key_for_model(keys: &KeyPair, params: &ConvMixerParams) -> Result<(), CliError> {
    let rows = params.config.patch_len();
    if keys.p_b() != rows {
        return Err(ModelError::KeyMismatch {
            key: keys.p_b(),
            rows,
        }
        .into());
    }
    Ok(())
}

/// Runs one command; `Ok(false)` means a check ran and failed.
pub fn execute(command: Command, out: &mut (dyn Write + Send)) -> Result<bool, CliError> {
    let w = |out: &mut (dyn Write + Send), s: String| {
        out.write_all(s.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
    };
    match command {
        Command::Keygen {
            seed1,
            seed2,
            block,
            channels,
            output,
        } => {
            let keys = KeyPair::new(Seed(seed1), Seed(seed2), block, channels)?;
            write_atomic(&output, &keys.to_bytes())?;
            w(
                out,
                format!("wrote {} (p_b = {})\n", output.display(), keys.p_b()),
            )?;
        }
        Command::EncryptImage {
            key,
            block,
            input,
            output,
        } => {
            let keys = load_key(&key)?;
            let img = encrypt_image(&load_image(&input)?, &keys, block)?;
            write_atomic(&output, &encode_image(&output, &img)?)?;
        }
        Command::DecryptImage {
            key,
            block,
            input,
            output,
        } => {
            let keys = load_key(&key)?;
            let img = decrypt_image(&load_image(&input)?, &keys, block)?;
            write_atomic(&output, &encode_image(&output, &img)?)?;
        }
        Command::EncryptModel { key, input, output } => {
            let keys = load_key(&key)?;
            let params = load_params(&input)?;
            write_atomic(&output, &save_model(&encrypt_model(&params, &keys)?))?;
        }
        Command::Infer { model, image } => {
            let params = load_params(&model)?;
            let logits = Engine::new(&params)?.forward(&load_image(&image)?)?;
            let probs: Vec<String> = softmax(&logits).iter().map(|p| format!("{p:.6}")).collect();
            w(
                out,
                format!(
                    "class {}\nprobabilities {}\n",
                    logits.argmax(),
                    probs.join(",")
                ),
            )?;
        }
        Command::Verify {
            model,
            key,
            images,
            tol,
            seed,
        } => {
            if images == 0 {
                return Err(CliError::Usage("--images must be at least 1".into()));
            }
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(CliError::Usage(format!(
                    "--tol must be a non-negative number, got {tol}"
                )));
            }
            let params = load_params(&model)?;
            let keys = load_key(&key)?;
            key_for_model(&keys, &params)?;
            let report = verify::verify_equivalence(&params, &keys, images, tol, seed)?;
            w(
                out,
                format!(
                    "images {}\nmax_deviation {:e}\ntolerance {:e}\nargmax_agreement {:.6}\n{}\n",
                    report.n_images,
                    report.max_deviation,
                    report.tolerance,
                    report.argmax_agreement(),
                    if report.passed() { "PASS" } else { "FAIL" }
                ),
            )?;
            return Ok(report.passed());
        }
        Command::Keyspace { pb } => {
            w(out, format!("{}\n", verify::keyspace_bits(pb)?))?;
        }
        Command::AttackSim {
            model,
            key,
            keys,
            images,
            seed,
            output,
        } => {
            if keys == 0 || images == 0 {
                return Err(CliError::Usage(
                    "--keys and --images must be at least 1".into(),
                ));
            }
            let params = load_params(&model)?;
            let correct = load_key(&key)?;
            key_for_model(&correct, &params)?;
            let report = verify::random_key_attack(&params, &correct, keys, images, seed)?;
            write_atomic(&output, &verify::emit_report(&report))?;
            let mut text = format!(
                "keys {}\nimages {}\nmin_mean_logit_dev {:e}\npooled_top1_agreement {:.6}\n",
                report.n_keys,
                report.n_images,
                report.min_mean_deviation(),
                report.pooled_agreement()
            );
            if let Some(plain) = &report.plain_image {
                text += &format!(
                    "plain_image_mean_logit_dev {:e}\nplain_image_top1_agreement {:.6}\n",
                    plain.mean_logit_dev, plain.top1_agreement
                );
            }
            text += if report.passed() { "PASS\n" } else { "FAIL\n" };
            w(out, text)?;
            return Ok(report.passed());
        }
        Command::GenModel { spec, seed, output } => {
            let params = verify::calibrated_model(spec, seed)?;
            write_atomic(&output, &save_model(&params))?;
        }
    }
    Ok(true)
}

fn thread_count() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = thread_count().and_then(|threads| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n);
        }
        let pool = builder
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
        let mut buf = Vec::new();
        let ok = pool.install(|| execute(cli.command, &mut buf));
        let _ = out.write_all(&buf);
        ok
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
