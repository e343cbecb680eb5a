//! Result envelopes and the on-disk cache.
//!
//! A cache hit requires an exact match of curve digest, engine version and
//! convention flags, and the body must verify against its own digest;
//! anything else is recomputed. Writes are atomic (temp file + rename).

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};
use trxy_core::corr::Tables;
use trxy_core::curve::CurveSpec;
use trxy_core::MRat;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CONVENTION: &str = "omega(0)_{1,0} = -y dx; B = dz1 dz2/(z1-z2)^2";

#[derive(Serialize, Deserialize, Clone)]
pub struct ResultEnvelope {
    pub curve_hash: String,
    pub g: u32,
    pub m: u32,
    pub n: u32,
    pub engine_version: String,
    pub convention: String,
    /// Formula used to produce the body (provenance for differential testing).
    pub method: String,
    pub seed: u64,
    pub body: MRat,
    pub body_digest: String,
}

pub fn digest_str(data: &str) -> String {
    let mut h = Sha256::new();
    h.update(data.as_bytes());
    hex_of(&h.finalize())
}

fn hex_of(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn curve_digest(curve: &CurveSpec) -> String {
    digest_str(&curve.to_json())
}

pub fn body_digest(body: &MRat) -> String {
    digest_str(&serde_json::to_string(body).expect("body serialization"))
}

impl ResultEnvelope {
    pub fn new(
        curve: &CurveSpec,
        g: u32,
        m: u32,
        n: u32,
        method: &str,
        seed: u64,
        body: MRat,
    ) -> Self {
        let body_digest = body_digest(&body);
        ResultEnvelope {
            curve_hash: curve_digest(curve),
            g,
            m,
            n,
            engine_version: ENGINE_VERSION.to_string(),
            convention: CONVENTION.to_string(),
            method: method.to_string(),
            seed,
            body,
            body_digest,
        }
    }

    pub fn is_valid_for(&self, curve_hash: &str) -> bool {
        self.curve_hash == curve_hash
            && self.engine_version == ENGINE_VERSION
            && self.convention == CONVENTION
            && self.body_digest == body_digest(&self.body)
    }
}

pub struct Cache {
    pub dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> std::io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache {
            dir: dir.to_path_buf(),
        })
    }

    pub fn path_for(&self, curve_hash: &str, g: u32, m: u32, n: u32) -> PathBuf {
        self.dir
            .join(format!("{}_g{g}_m{m}_n{n}.json", &curve_hash[..16]))
    }

    pub fn load(&self, curve_hash: &str, g: u32, m: u32, n: u32) -> Option<ResultEnvelope> {
        let path = self.path_for(curve_hash, g, m, n);
        let text = fs::read_to_string(path).ok()?;
        let env: ResultEnvelope = serde_json::from_str(&text).ok()?;
        if env.is_valid_for(curve_hash) && (env.g, env.m, env.n) == (g, m, n) {
            Some(env)
        } else {
            None
        }
    }

    /// Atomic write: temp file in the same directory, then rename.
    pub fn store(&self, env: &ResultEnvelope) -> std::io::Result<PathBuf> {
        let path = self.path_for(&env.curve_hash, env.g, env.m, env.n);
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string_pretty(env).expect("envelope serialization");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Seeds the in-memory tables from every valid cached envelope for the
    /// curve, so a re-run recomputes nothing.
    pub fn preseed(&self, tables: &Tables, curve_hash: &str) -> usize {
        let mut count = 0;
        let Ok(read) = fs::read_dir(&self.dir) else {
            return 0;
        };
        for entry in read.flatten() {
            let Ok(text) = fs::read_to_string(entry.path()) else {
                continue;
            };
            let Ok(env) = serde_json::from_str::<ResultEnvelope>(&text) else {
                continue;
            };
            if env.is_valid_for(curve_hash) {
                tables.inject(env.g, env.m, env.n, env.body.clone());
                count += 1;
            }
        }
        count
    }
}
