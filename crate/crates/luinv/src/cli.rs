//! Command-line interface: `invariants`, `equiv`, `random`, `verify`.
//!
//! [`run`] parses arguments, executes one subcommand, and returns the
//! process exit code instead of exiting, so the whole surface is callable
//! in-process. Codes:
//!
//! | code | meaning                                     |
//! |------|---------------------------------------------|
//! | 0    | success / states equivalent / checks passed |
//! | 1    | malformed input or usage error              |
//! | 2    | state not generic                           |
//! | 3    | state not symmetric under `--symmetric`     |
//! | 4    | states distinct                             |
//! | 5    | verification suite failed                   |

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formats::{
    load_state_file, payload_from_bloch, payload_from_density, FingerprintReport, Metadata,
    StateFile, WitnessReport,
};
use crate::invariants::{genericity, invariants6_symmetric, invariants9};
use crate::orbit::{equivalent, equivalent_symmetric};
use crate::quantum::{act, haar_rotation_pair, random_density, random_state, StateKind};
use crate::{tol, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_NON_GENERIC: i32 = 2;
pub const EXIT_NOT_SYMMETRIC: i32 = 3;
pub const EXIT_DISTINCT: i32 = 4;
pub const EXIT_VERIFY_FAILED: i32 = 5;

/// Exit code an error maps to.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Malformed(_)
        | Error::Io(_)
        | Error::NotAState { .. }
        | Error::NotUnitary { .. }
        | Error::NotRotation { .. } => EXIT_MALFORMED,
        Error::NonGeneric { .. } | Error::DegenerateInvariants { .. } => EXIT_NON_GENERIC,
        Error::NotSymmetric { .. } => EXIT_NOT_SYMMETRIC,
    }
}

#[derive(Parser)]
#[command(
    name = "luinv",
    version,
    about = "Local-unitary invariants, canonical forms, and orbit equivalence for two-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariant fingerprint of a state file
    Invariants(InvariantsArgs),
    /// Decide whether two state files lie on the same local-unitary orbit
    Equiv(EquivArgs),
    /// Sample random states, or random points of one state's orbit
    Random(RandomArgs),
    /// Run randomized self-checks of the library
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct InvariantsArgs {
    /// State file (JSON)
    file: PathBuf,
    /// Compute the six invariants of the diagonal action on a symmetric
    /// state instead of the nine general ones
    #[arg(long)]
    symmetric: bool,
    /// Genericity tolerance
    #[arg(long, env = "LUINV_TOL", default_value_t = tol::GENERICITY)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
}

#[derive(Args)]
struct EquivArgs {
    /// First state file
    a: PathBuf,
    /// Second state file
    b: PathBuf,
    /// Compare under the diagonal action on symmetric states
    #[arg(long)]
    symmetric: bool,
    /// Genericity threshold and witness residual bound
    #[arg(long, env = "LUINV_TOL", default_value_t = tol::EQUIVALENCE)]
    tol: f64,
    /// Write the witness report (JSON) here
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// Ginibre-sampled density matrix, emitted as a density file
    Density,
    /// Uniform real Bloch entries in [-1, 1], emitted as a bloch file
    Bloch,
    /// Like bloch but with u1 = u2 and symmetric C
    Symmetric,
}

impl KindArg {
    fn name(self) -> &'static str {
        match self {
            KindArg::Density => "density",
            KindArg::Bloch => "bloch",
            KindArg::Symmetric => "symmetric",
        }
    }
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Density)]
    kind: KindArg,
    #[arg(long, env = "LUINV_SEED", default_value_t = 0)]
    seed: u64,
    /// How many states to emit
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Emit random points of this state's orbit instead (`--kind` is
    /// ignored; output is always bloch-kind)
    #[arg(long)]
    orbit_of: Option<PathBuf>,
    /// Write one pretty-printed file per state into this directory
    /// instead of one compact JSON line per state on stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Json,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long, env = "LUINV_SEED", default_value_t = 7)]
    seed: u64,
    /// Trials per check
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = VerifyFormat::Json)]
    format: VerifyFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Invariance,
    Canonical,
    Independence,
    All,
}

impl From<SuiteArg> for verify::Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Identities => verify::Suite::Identities,
            SuiteArg::Invariance => verify::Suite::Invariance,
            SuiteArg::Canonical => verify::Suite::Canonical,
            SuiteArg::Independence => verify::Suite::Independence,
            SuiteArg::All => verify::Suite::All,
        }
    }
}

/// Parses `args` (`argv[0]` included) and runs one subcommand, returning the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_MALFORMED,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Invariants(a) => cmd_invariants(a),
        Command::Equiv(a) => cmd_equiv(a),
        Command::Random(a) => cmd_random(a),
        Command::Verify(a) => cmd_verify(a),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        error_exit_code(&e)
    })
}

fn cmd_invariants(a: InvariantsArgs) -> Result<i32> {
    let loaded = load_state_file(&a.file)?;
    let b = &loaded.bloch;
    let inv: Vec<Complex64> = if a.symmetric {
        invariants6_symmetric(b)?.as_array().to_vec()
    } else {
        invariants9(b).as_array().to_vec()
    };
    let gen = genericity(b, a.tol);
    let report = FingerprintReport::new(loaded.input_hash, a.symmetric, &inv, gen, a.tol);
    match a.format {
        ReportFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        ReportFormat::Csv => print!("{}", report.to_csv()),
    }
    if report.generic {
        Ok(EXIT_OK)
    } else {
        eprintln!("note: state is not generic ({gen})");
        Ok(EXIT_NON_GENERIC)
    }
}

fn cmd_equiv(a: EquivArgs) -> Result<i32> {
    let first = load_state_file(&a.a)?;
    let second = load_state_file(&a.b)?;
    let verdict = if a.symmetric {
        equivalent_symmetric(&first.bloch, &second.bloch, a.tol)?
    } else {
        equivalent(&first.bloch, &second.bloch, a.tol)?
    };
    if let Some(path) = &a.witness_out {
        let report = WitnessReport::new(&verdict, a.tol);
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        std::fs::write(path, text)?;
    }
    println!(
        "{} residual={:.3e} tol={:.1e}",
        if verdict.equivalent { "EQUIVALENT" } else { "DISTINCT" },
        verdict.residual,
        a.tol
    );
    Ok(if verdict.equivalent { EXIT_OK } else { EXIT_DISTINCT })
}

fn cmd_random(a: RandomArgs) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let meta = |label: String, index: usize| {
        Some(Metadata {
            label: Some(label),
            seed: Some(a.seed),
            index: Some(index as u64),
        })
    };
    let files: Vec<StateFile> = if let Some(path) = &a.orbit_of {
        let base = load_state_file(path)?;
        (0..a.count)
            .map(|i| {
                let g = haar_rotation_pair(&mut rng);
                StateFile {
                    payload: payload_from_bloch(&act(&g, &base.bloch)),
                    metadata: meta(format!("orbit-copy-{i}"), i),
                }
            })
            .collect()
    } else {
        (0..a.count)
            .map(|i| {
                let payload = match a.kind {
                    KindArg::Density => payload_from_density(&random_density(&mut rng)),
                    KindArg::Bloch => {
                        payload_from_bloch(&random_state(&mut rng, StateKind::GenericBloch))
                    }
                    KindArg::Symmetric => {
                        payload_from_bloch(&random_state(&mut rng, StateKind::Symmetric))
                    }
                };
                StateFile {
                    payload,
                    metadata: meta(format!("random-{}-{i}", a.kind.name()), i),
                }
            })
            .collect()
    };
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir)?;
        for (i, file) in files.iter().enumerate() {
            let path = dir.join(format!("state-{i:03}.json"));
            let mut text = serde_json::to_string_pretty(file).expect("state serializes");
            text.push('\n');
            std::fs::write(&path, text)?;
            println!("{}", path.display());
        }
    } else {
        for file in &files {
            println!("{}", serde_json::to_string(file).expect("state serializes"));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs) -> Result<i32> {
    let report = verify::run(a.suite.into(), a.seed, a.trials);
    match a.format {
        VerifyFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        VerifyFormat::Text => print!("{}", report.to_text()),
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{CMat3, CVec3};
    use crate::quantum::BlochMatrix;
    use std::path::Path;

    fn write_state(dir: &Path, name: &str, b: &BlochMatrix) -> PathBuf {
        let path = dir.join(name);
        let file = StateFile {
            payload: payload_from_bloch(b),
            metadata: None,
        };
        std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
        path
    }

    fn worked_example() -> BlochMatrix {
        BlochMatrix::new(
            CVec3::from_real(1.0, 0.0, 0.0),
            CVec3::from_real(2.0, 0.0, 0.0),
            CMat3::from_real([[1.0, 0.0, 1.0], [0.0, 2.0, 0.0], [1.0, 0.0, 3.0]]),
        )
    }

    fn bell() -> BlochMatrix {
        BlochMatrix::new(
            CVec3::zero(),
            CVec3::zero(),
            CMat3::from_real([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]),
        )
    }

    #[test]
    fn help_and_version_exit_zero() {
        assert_eq!(run(["luinv", "--help"]), 0);
        assert_eq!(run(["luinv", "--version"]), 0);
        assert_eq!(run(["luinv", "invariants", "--help"]), 0);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["luinv"]), 1);
        assert_eq!(run(["luinv", "frobnicate"]), 1);
        assert_eq!(run(["luinv", "equiv", "only-one.json"]), 1);
        assert_eq!(run(["luinv", "random", "--kind", "werner"]), 1);
    }

    #[test]
    fn invariants_exit_codes_cover_the_contract() {
        let dir = tempfile::tempdir().unwrap();
        let worked = write_state(dir.path(), "worked.json", &worked_example());
        let bell = write_state(dir.path(), "bell.json", &bell());
        let missing = dir.path().join("missing.json");
        let truncated = dir.path().join("truncated.json");
        std::fs::write(&truncated, &std::fs::read(&worked).unwrap()[..40]).unwrap();

        let arg = |p: &PathBuf| p.to_str().unwrap().to_owned();
        assert_eq!(run(["luinv", "invariants", &arg(&worked)]), 0);
        assert_eq!(run(["luinv", "invariants", &arg(&bell)]), 2);
        assert_eq!(run(["luinv", "invariants", &arg(&truncated)]), 1);
        assert_eq!(run(["luinv", "invariants", &arg(&missing)]), 1);
        // Asymmetric input under --symmetric.
        assert_eq!(run(["luinv", "invariants", "--symmetric", &arg(&worked)]), 3);
        // Symmetric but non-generic input: symmetry passes, genericity fails.
        assert_eq!(run(["luinv", "invariants", "--symmetric", &arg(&bell)]), 2);
    }

    #[test]
    fn equiv_exit_codes_cover_the_contract() {
        let dir = tempfile::tempdir().unwrap();
        let worked = write_state(dir.path(), "worked.json", &worked_example());
        let bell = write_state(dir.path(), "bell.json", &bell());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rotated = write_state(
            dir.path(),
            "rotated.json",
            &act(&haar_rotation_pair(&mut rng), &worked_example()),
        );
        let other = write_state(
            dir.path(),
            "other.json",
            &crate::quantum::random_generic_state(
                &mut rng,
                StateKind::GenericBloch,
                tol::GENERICITY,
            ),
        );
        let witness = dir.path().join("witness.json");

        let arg = |p: &PathBuf| p.to_str().unwrap().to_owned();
        assert_eq!(
            run([
                "luinv",
                "equiv",
                &arg(&worked),
                &arg(&rotated),
                "--witness-out",
                &arg(&witness),
            ]),
            0
        );
        let w: serde_json::Value =
            serde_json::from_slice(&std::fs::read(&witness).unwrap()).unwrap();
        assert_eq!(w["equivalent"], true);
        assert!(w["g1"].is_array());

        assert_eq!(run(["luinv", "equiv", &arg(&worked), &arg(&other)]), 4);
        assert_eq!(run(["luinv", "equiv", &arg(&bell), &arg(&worked)]), 2);
        assert_eq!(run(["luinv", "equiv", &arg(&worked), &arg(&bell)]), 2);
    }

    #[test]
    fn random_out_dir_writes_parseable_states_of_the_requested_kind() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("states");
        assert_eq!(
            run([
                "luinv",
                "random",
                "--kind",
                "symmetric",
                "--seed",
                "9",
                "--count",
                "3",
                "--out",
                out.to_str().unwrap(),
            ]),
            0
        );
        let mut names: Vec<_> = std::fs::read_dir(&out)
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        names.sort();
        assert_eq!(names.len(), 3);
        for p in &names {
            let loaded = load_state_file(p).unwrap();
            assert!(crate::quantum::is_symmetric_state(&loaded.bloch, tol::SYMMETRY));
            assert_eq!(loaded.file.metadata.unwrap().seed, Some(9));
        }
    }

    #[test]
    fn orbit_of_emits_states_equivalent_to_the_base() {
        let dir = tempfile::tempdir().unwrap();
        let base = write_state(dir.path(), "base.json", &worked_example());
        let out = dir.path().join("orbit");
        assert_eq!(
            run([
                "luinv",
                "random",
                "--orbit-of",
                base.to_str().unwrap(),
                "--count",
                "2",
                "--seed",
                "3",
                "--out",
                out.to_str().unwrap(),
            ]),
            0
        );
        for entry in std::fs::read_dir(&out).unwrap() {
            let loaded = load_state_file(&entry.unwrap().path()).unwrap();
            let verdict =
                equivalent(&worked_example(), &loaded.bloch, tol::EQUIVALENCE).unwrap();
            assert!(verdict.equivalent, "residual {}", verdict.residual);
        }
    }

    #[test]
    fn verify_subcommand_passes_quickly_on_a_small_run() {
        assert_eq!(
            run(["luinv", "verify", "--suite", "identities", "--trials", "5"]),
            0
        );
    }
}
