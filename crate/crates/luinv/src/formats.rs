//! On-disk formats: state files, fingerprint reports, witness reports.
//!
//! A state file is a JSON object with a `kind` tag and a `payload`:
//!
//! ```text
//! {"kind": "density", "payload": [[[re, im], …×4], …×4]}
//! {"kind": "bloch",   "payload": {"u1": […×3], "u2": […×3], "C": [[…×3], …×3]}}
//! ```
//!
//! Scalars may be written either as a bare number or as an `[re, im]`
//! pair; output always uses pairs. An optional `metadata` object carries a
//! label and the seed/index that produced the state. Density payloads
//! must have unit trace; nothing else is assumed, so non-Hermitian
//! matrices (complexified states) are accepted.
//!
//! Reports embed a schema tag, the tool version, and a `sha256:…` digest
//! of the exact input bytes, so a fingerprint can always be traced back
//! to the file it came from. Serialization goes through serde_json, whose
//! shortest-round-trip float printing makes byte-identical reruns.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::invariants::GenericityReport;
use crate::linalg::{CMat3, CVec3};
use crate::quantum::{BlochMatrix, DensityMatrix, Mat4};

/// Trace slack accepted when reading a density payload. Looser than the
/// structural tolerance so files printed with ~8 significant digits still
/// load.
pub const DENSITY_TRACE_TOL: f64 = 1e-8;

pub const FINGERPRINT_SCHEMA: &str = "fingerprint/1";
pub const WITNESS_SCHEMA: &str = "witness/1";

/// One JSON scalar: accepted as `x` or `[re, im]`, always written as a
/// pair.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum ComplexScalar {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexScalar {
    pub fn to_complex(self) -> Complex64 {
        match self {
            ComplexScalar::Real(re) => Complex64::new(re, 0.0),
            ComplexScalar::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

impl From<Complex64> for ComplexScalar {
    fn from(z: Complex64) -> Self {
        ComplexScalar::Pair([z.re, z.im])
    }
}

impl Serialize for ComplexScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [re, im] = match *self {
            ComplexScalar::Real(re) => [re, 0.0],
            ComplexScalar::Pair(p) => p,
        };
        [re, im].serialize(s)
    }
}

/// The tagged state content of a file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum StatePayload {
    Density([[ComplexScalar; 4]; 4]),
    Bloch {
        u1: [ComplexScalar; 3],
        u2: [ComplexScalar; 3],
        #[serde(rename = "C")]
        c: [[ComplexScalar; 3]; 3],
    },
}

/// Optional provenance attached to a state file.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
}

/// A full state file: payload plus optional metadata.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(flatten)]
    pub payload: StatePayload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl StatePayload {
    /// Converts the payload to a Bloch matrix, enforcing unit trace on
    /// density payloads.
    pub fn to_bloch(&self) -> Result<BlochMatrix> {
        match self {
            StatePayload::Density(rows) => {
                let mut m = Mat4::zero();
                for i in 0..4 {
                    for j in 0..4 {
                        m.0[i][j] = rows[i][j].to_complex();
                    }
                }
                let trace = m.trace();
                let dev = (trace - Complex64::from(1.0)).norm();
                if dev > DENSITY_TRACE_TOL {
                    return Err(Error::Malformed(format!(
                        "density payload has trace {trace}, expected 1 within {DENSITY_TRACE_TOL:e}"
                    )));
                }
                let rho = DensityMatrix::with_trace_tol(m, false, DENSITY_TRACE_TOL)
                    .map_err(|e| Error::Malformed(e.to_string()))?;
                Ok(crate::quantum::density_to_bloch(&rho))
            }
            StatePayload::Bloch { u1, u2, c } => {
                let vec = |a: &[ComplexScalar; 3]| {
                    CVec3::new(a[0].to_complex(), a[1].to_complex(), a[2].to_complex())
                };
                let mut cm = CMat3::zero();
                for i in 0..3 {
                    for j in 0..3 {
                        cm.m[i][j] = c[i][j].to_complex();
                    }
                }
                Ok(BlochMatrix::new(vec(u1), vec(u2), cm))
            }
        }
    }
}

fn scalar_vec3(v: &CVec3) -> [ComplexScalar; 3] {
    v.as_array().map(ComplexScalar::from)
}

fn scalar_mat3(m: &CMat3) -> [[ComplexScalar; 3]; 3] {
    m.m.map(|row| row.map(ComplexScalar::from))
}

/// Bloch-kind payload for a state.
pub fn payload_from_bloch(b: &BlochMatrix) -> StatePayload {
    StatePayload::Bloch {
        u1: scalar_vec3(&b.u1),
        u2: scalar_vec3(&b.u2),
        c: scalar_mat3(&b.c),
    }
}

/// Density-kind payload for a state.
pub fn payload_from_density(d: &DensityMatrix) -> StatePayload {
    StatePayload::Density(d.matrix().0.map(|row| row.map(ComplexScalar::from)))
}

/// `sha256:<hex>` digest of raw bytes.
pub fn sha256_tag(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// A state file parsed and validated, with the digest of its exact bytes.
#[derive(Clone, Debug)]
pub struct LoadedState {
    pub file: StateFile,
    pub bloch: BlochMatrix,
    pub input_hash: String,
}

/// Parses state-file bytes; every syntax or content problem surfaces as
/// [`Error::Malformed`].
pub fn parse_state_bytes(bytes: &[u8]) -> Result<LoadedState> {
    let file: StateFile = serde_json::from_slice(bytes)
        .map_err(|e| Error::Malformed(format!("invalid state JSON: {e}")))?;
    let bloch = file.payload.to_bloch()?;
    Ok(LoadedState {
        file,
        bloch,
        input_hash: sha256_tag(bytes),
    })
}

/// Reads and parses one state file from disk.
pub fn load_state_file(path: &Path) -> Result<LoadedState> {
    let bytes = std::fs::read(path)?;
    parse_state_bytes(&bytes)
}

/// Invariant fingerprint of one state, ready for JSON or CSV output.
#[derive(Clone, Debug, Serialize)]
pub struct FingerprintReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub input_hash: String,
    pub symmetric: bool,
    pub invariant_count: usize,
    /// `[re, im]` per invariant, f₁ first.
    pub invariants: Vec<[f64; 2]>,
    pub generic: bool,
    pub genericity: GenericityReport,
    pub tolerance: f64,
}

impl FingerprintReport {
    pub fn new(
        input_hash: String,
        symmetric: bool,
        invariants: &[Complex64],
        genericity: GenericityReport,
        tolerance: f64,
    ) -> Self {
        FingerprintReport {
            schema: FINGERPRINT_SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            input_hash,
            symmetric,
            invariant_count: invariants.len(),
            invariants: invariants.iter().map(|z| [z.re, z.im]).collect(),
            generic: genericity.is_generic(),
            genericity,
            tolerance,
        }
    }

    /// Two-line CSV: header and one row, invariants flattened to
    /// `f<k>_re`/`f<k>_im` columns.
    pub fn to_csv(&self) -> String {
        let mut header = String::from("input_hash,symmetric,generic,tolerance");
        let mut row = format!(
            "{},{},{},{}",
            self.input_hash, self.symmetric, self.generic, self.tolerance
        );
        for (k, [re, im]) in self.invariants.iter().enumerate() {
            header.push_str(&format!(",f{0}_re,f{0}_im", k + 1));
            row.push_str(&format!(",{re},{im}"));
        }
        format!("{header}\n{row}\n")
    }
}

/// Outcome of an orbit comparison, ready for JSON output. The witness
/// rotations are present exactly when the verdict is positive.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub equivalent: bool,
    pub residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g1: Option<[[ComplexScalar; 3]; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g2: Option<[[ComplexScalar; 3]; 3]>,
}

impl WitnessReport {
    pub fn new(verdict: &crate::orbit::EquivalenceVerdict, tolerance: f64) -> Self {
        let pair = verdict.witness.as_ref();
        WitnessReport {
            schema: WITNESS_SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            equivalent: verdict.equivalent,
            residual: verdict.residual,
            tolerance,
            weyl_index: verdict.weyl_index,
            g1: pair.map(|p| scalar_mat3(p.g1())),
            g2: pair.map(|p| scalar_mat3(p.g2())),
        }
    }
}
