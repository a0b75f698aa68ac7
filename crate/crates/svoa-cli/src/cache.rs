//! Persistent, content-hashed storage for the mode-product cache.  A cache
//! file stores the serialized entries together with a SHA-256 digest; a
//! digest mismatch is treated as corruption and the file is ignored, which
//! simply triggers recomputation.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::str::FromStr;
use svoa::fock::{Monomial, State};
use svoa::lattice::LVec;
use svoa::scalar::{Frac, Scalar};
use svoa::vertexop::Algebra;

#[derive(Serialize, Deserialize)]
struct MonoDto {
    mom: Vec<i32>,
    osc: Vec<(u8, u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct StateDto {
    terms: Vec<(MonoDto, [String; 4])>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    y: i64,
    digest: String,
    entries: Vec<(MonoDto, String, MonoDto, StateDto)>,
}

const VERSION: u32 = 1;

fn mono_to_dto(m: &Monomial) -> MonoDto {
    MonoDto {
        mom: m.mom.0.to_vec(),
        osc: m.osc.clone(),
    }
}

fn mono_from_dto(d: &MonoDto) -> Option<Monomial> {
    let arr: [i32; 18] = d.mom.clone().try_into().ok()?;
    Some(Monomial::with_osc(LVec(arr), d.osc.iter().copied()))
}

fn state_to_dto(s: &State) -> StateDto {
    StateDto {
        terms: s
            .terms
            .iter()
            .map(|(m, c)| {
                let q = c.coeffs();
                (
                    mono_to_dto(m),
                    [
                        q[0].to_string(),
                        q[1].to_string(),
                        q[2].to_string(),
                        q[3].to_string(),
                    ],
                )
            })
            .collect(),
    }
}

fn state_from_dto(d: &StateDto) -> Option<State> {
    let mut s = State::zero();
    for (m, q) in &d.terms {
        let mono = mono_from_dto(m)?;
        let mut c = [
            BigRational::from_str(&q[0]).ok()?,
            BigRational::from_str(&q[1]).ok()?,
            BigRational::from_str(&q[2]).ok()?,
            BigRational::from_str(&q[3]).ok()?,
        ];
        // Array construction order matches the scalar basis {1, z, z^2, z^3}.
        let scalar = Scalar::from_coeffs(std::mem::take(&mut c).map(|x| x));
        s.add_term(mono, scalar);
    }
    Some(s)
}

fn frac_to_string(f: &Frac) -> String {
    format!("{}/{}", f.numer(), f.denom())
}

fn frac_from_string(s: &str) -> Option<Frac> {
    let (a, b) = s.split_once('/')?;
    Some(Frac::new(a.parse().ok()?, b.parse().ok()?))
}

fn path_for(dir: &str, y: i64) -> std::path::PathBuf {
    std::path::Path::new(dir).join(format!("modeprod-v{VERSION}-y{y}.json"))
}

fn digest_of(entries: &[(MonoDto, String, MonoDto, StateDto)]) -> String {
    let body = serde_json::to_vec(entries).expect("serializable");
    let mut h = Sha256::new();
    h.update(&body);
    format!("{:x}", h.finalize())
}

/// Load cached entries into the algebra; silently skips missing or corrupt
/// files.
pub fn load(alg: &Algebra, dir: &str, y: i64) {
    let path = path_for(dir, y);
    let Ok(text) = std::fs::read_to_string(&path) else {
        return;
    };
    let Ok(file) = serde_json::from_str::<CacheFile>(&text) else {
        eprintln!("warning: unreadable cache file {}", path.display());
        return;
    };
    if file.version != VERSION || file.y != y {
        return;
    }
    if digest_of(&file.entries) != file.digest {
        eprintln!(
            "warning: cache digest mismatch, recomputing ({})",
            path.display()
        );
        return;
    }
    let mut entries = Vec::with_capacity(file.entries.len());
    for (a, n, b, s) in &file.entries {
        let (Some(ma), Some(nf), Some(mb), Some(st)) = (
            mono_from_dto(a),
            frac_from_string(n),
            mono_from_dto(b),
            state_from_dto(s),
        ) else {
            eprintln!("warning: malformed cache entry, recomputing");
            return;
        };
        entries.push(((ma, nf, mb), st));
    }
    alg.cache_load(entries);
}

/// Persist the algebra's mode-product cache.
pub fn save(alg: &Algebra, dir: &str, y: i64) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let entries: Vec<(MonoDto, String, MonoDto, StateDto)> = alg
        .cache_dump()
        .iter()
        .map(|((a, n, b), s)| {
            (
                mono_to_dto(a),
                frac_to_string(n),
                mono_to_dto(b),
                state_to_dto(s),
            )
        })
        .collect();
    let digest = digest_of(&entries);
    let file = CacheFile {
        version: VERSION,
        y,
        digest,
        entries,
    };
    let path = path_for(dir, y);
    std::fs::write(&path, serde_json::to_string(&file).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())
}

pub fn inspect(dir: &str) -> Result<Value, String> {
    let mut files = Vec::new();
    let rd = match std::fs::read_dir(dir) {
        Ok(rd) => rd,
        Err(_) => return Ok(json!({"files": files})),
    };
    for entry in rd.flatten() {
        let name = entry.file_name().to_string_lossy().to_string();
        if !name.starts_with("modeprod-") || !name.ends_with(".json") {
            continue;
        }
        let size = entry.metadata().map(|m| m.len()).unwrap_or(0);
        let count = std::fs::read_to_string(entry.path())
            .ok()
            .and_then(|t| serde_json::from_str::<CacheFile>(&t).ok())
            .map(|f| {
                let valid = digest_of(&f.entries) == f.digest;
                json!({"entries": f.entries.len(), "valid": valid})
            })
            .unwrap_or(json!({"entries": 0, "valid": false}));
        files.push(json!({"file": name, "bytes": size, "summary": count}));
    }
    Ok(json!({"files": files}))
}

pub fn clear(dir: &str) -> Result<usize, String> {
    let mut removed = 0usize;
    let rd = match std::fs::read_dir(dir) {
        Ok(rd) => rd,
        Err(_) => return Ok(0),
    };
    for entry in rd.flatten() {
        let name = entry.file_name().to_string_lossy().to_string();
        if name.starts_with("modeprod-") && name.ends_with(".json") {
            std::fs::remove_file(entry.path()).map_err(|e| e.to_string())?;
            removed += 1;
        }
    }
    Ok(removed)
}
