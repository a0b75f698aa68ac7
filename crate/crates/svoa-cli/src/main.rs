//! Command-line front end for the vertex operator superalgebra engine:
//! verification workflows, JSON reports, and a persistent mode-product
//! cache.  Exit code 0 means every verdict passed, 1 means a check failed,
//! 2 means the command could not be run.

mod cache;

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use svoa::brst::{nilpotency_certificate, q};
use svoa::cohomology::{
    cohomology_dim, complex_slice, gamma_matrices, matmul, representatives,
};
use svoa::fields::{standard_ope_table, Fields};
use svoa::fock::{grade, State};
use svoa::gkm;
use svoa::lattice::{LVec, DIM, METRIC};
use svoa::linalg;
use svoa::physalg;
use svoa::qseries;
use svoa::scalar::{frac, Frac, Scalar};
use svoa::smallspace::enumerate_sector;

#[derive(Parser)]
#[command(name = "svoa", version, about = "Exact verification suite for the superstring vertex algebra")]
struct Cli {
    /// Lattice parameter y (the rational scaling of the fermionic factor).
    #[arg(long, global = true)]
    y: Option<i64>,
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for the persistent mode-product cache.
    #[arg(long, global = true)]
    cache_dir: Option<String>,
    /// Key-value configuration file (keys: y, height, cache_dir).
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every entry of the standard OPE table.
    OpeTable,
    /// Verify the BRST nilpotency certificate and Q^2 = 0 on samples.
    BrstCheck,
    /// Dimension of one graded sector of the small Fock space.
    Sector {
        #[arg(long, allow_hyphen_values = true)]
        norm: i64,
        #[arg(long, allow_hyphen_values = true)]
        picture: String,
        #[arg(long, allow_hyphen_values = true)]
        ghost: String,
    },
    /// BRST cohomology dimensions at fixed momentum and picture.
    Cohomology {
        #[arg(long, allow_hyphen_values = true)]
        norm: i64,
        #[arg(long, allow_hyphen_values = true)]
        picture: String,
        /// Ghost numbers to compute, comma separated.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        ghost: String,
    },
    /// Euler characteristic of a ghost-number slice of the complex.
    EulerPoincare {
        #[arg(long, allow_hyphen_values = true)]
        norm: i64,
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        picture: String,
    },
    /// Clifford algebra and charge conjugation checks for the spin fields.
    GammaCheck,
    /// Lie bracket of two named fields.
    Bracket {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Supersymmetry algebra relations on the massless states.
    SusyCheck,
    /// Antisymmetry and Jacobi identities modulo exact states.
    JacobiCheck,
    /// The multiplicity or denominator q-series.
    Qseries {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// The partition trace identity, both sides exact.
    TraceIdentity {
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// The truncated denominator identity of the fake monster superalgebra.
    DenominatorCheck {
        #[arg(long)]
        height: Option<i64>,
        /// Reference vector as ten doubled integer coordinates.
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
    },
    /// Cartan matrix of the norm-zero simple roots up to a height bound.
    Cartan {
        #[arg(long, default_value_t = 2)]
        height: i64,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Inspect or clear the persistent cache.
    Cache {
        #[arg(value_parser = ["inspect", "clear"])]
        action: String,
    },
}

struct Config {
    y: i64,
    height: i64,
    cache_dir: Option<String>,
}

fn load_config(cli: &Cli) -> Result<Config, String> {
    let mut y: Option<i64> = std::env::var("SVOA_Y").ok().and_then(|v| v.parse().ok());
    let mut height: Option<i64> = std::env::var("SVOA_HEIGHT")
        .ok()
        .and_then(|v| v.parse().ok());
    let mut cache_dir = std::env::var("SVOA_CACHE_DIR").ok();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("config: {e}"))?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("malformed config line: {line}"))?;
            match k.trim() {
                "y" => y = Some(v.trim().parse().map_err(|e| format!("config y: {e}"))?),
                "height" => {
                    height = Some(v.trim().parse().map_err(|e| format!("config height: {e}"))?)
                }
                "cache_dir" => cache_dir = Some(v.trim().to_string()),
                other => return Err(format!("unknown config key: {other}")),
            }
        }
    }
    Ok(Config {
        y: cli.y.or(y).unwrap_or(1),
        height: height.unwrap_or(6),
        cache_dir: cli.cache_dir.clone().or(cache_dir),
    })
}

fn parse_frac(s: &str) -> Result<Frac, String> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: i64 = a.trim().parse().map_err(|e| format!("{s}: {e}"))?;
        let d: i64 = b.trim().parse().map_err(|e| format!("{s}: {e}"))?;
        Ok(frac(n, d))
    } else {
        let n: i64 = s.parse().map_err(|e| format!("{s}: {e}"))?;
        Ok(frac(n, 1))
    }
}

/// The standard test momenta: a primitive null vector for norm 0, a norm -2
/// vector otherwise.
fn momentum_for_norm(norm: i64) -> Result<LVec, String> {
    let mut a = [0i32; DIM];
    match norm {
        0 => {
            a[0] = 2;
            a[9] = 2;
        }
        -2 => {
            a[0] = 2;
            a[1] = 2;
            a[9] = 4;
        }
        other => return Err(format!("unsupported norm {other}; use 0 or -2")),
    }
    Ok(LVec(a))
}

fn fields_with_cache(cfg: &Config) -> Fields {
    let f = Fields::new(cfg.y);
    if let Some(dir) = &cfg.cache_dir {
        cache::load(&f.alg, dir, cfg.y);
    }
    f
}

fn finish_cache(cfg: &Config, f: &Fields) {
    if let Some(dir) = &cfg.cache_dir {
        if let Err(e) = cache::save(&f.alg, dir, cfg.y) {
            eprintln!("warning: cache save failed: {e}");
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((pass, payload)) => {
            if cli.json {
                let report = json!({"pass": pass, "payload": payload});
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print_text(&payload, 0);
                println!("verdict: {}", if pass { "pass" } else { "fail" });
            }
            std::process::exit(if pass { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn print_text(v: &Value, indent: usize) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{}{}:", "  ".repeat(indent), k);
                        print_text(val, indent + 1);
                    }
                    _ => println!("{}{}: {}", "  ".repeat(indent), k, val),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => print_text(item, indent),
                    _ => println!("{}- {}", "  ".repeat(indent), item),
                }
            }
        }
        other => println!("{}{}", "  ".repeat(indent), other),
    }
}

fn run(cli: &Cli) -> Result<(bool, Value), String> {
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::OpeTable => {
            let f = fields_with_cache(&cfg);
            let table = standard_ope_table(&f);
            let mut failed = Vec::new();
            for entry in &table {
                let report = f.verify_ope(f.f(&entry.a), f.f(&entry.b), &entry.expect);
                if !report.ok {
                    failed.push(format!("{} {}", entry.a, entry.b));
                }
            }
            finish_cache(&cfg, &f);
            Ok((
                failed.is_empty(),
                json!({"entries": table.len(), "failed": failed}),
            ))
        }
        Command::BrstCheck => {
            let f = fields_with_cache(&cfg);
            let (qj, dv) = nilpotency_certificate(&f);
            let cert = qj == dv;
            let mut squares = true;
            for name in ["b", "c", "beta", "gamma", "xi", "tau_M", "Sd0", "Pt1"] {
                if !q(&f, &q(&f, f.f(name))).is_zero() {
                    squares = false;
                }
            }
            finish_cache(&cfg, &f);
            Ok((
                cert && squares,
                json!({"certificate": cert, "squares": squares}),
            ))
        }
        Command::Sector {
            norm,
            picture,
            ghost,
        } => {
            let f = fields_with_cache(&cfg);
            let alpha = momentum_for_norm(*norm)?;
            let p = parse_frac(picture)?;
            let n = parse_frac(ghost)?;
            let sec = enumerate_sector(&f, &alpha, p, n).map_err(|e| e.to_string())?;
            finish_cache(&cfg, &f);
            Ok((true, json!({"dim": sec.dim()})))
        }
        Command::Cohomology {
            norm,
            picture,
            ghost,
        } => {
            let f = fields_with_cache(&cfg);
            let alpha = momentum_for_norm(*norm)?;
            let p = parse_frac(picture)?;
            let mut dims = BTreeMap::new();
            for part in ghost.split(',') {
                let n = part
                    .trim()
                    .parse::<i64>()
                    .map_err(|e| format!("ghost {part}: {e}"))?;
                let d = cohomology_dim(&f, &alpha, p, n).map_err(|e| e.to_string())?;
                dims.insert(n.to_string(), d);
            }
            finish_cache(&cfg, &f);
            Ok((true, json!({"dims": dims})))
        }
        Command::EulerPoincare { norm, picture } => {
            let f = fields_with_cache(&cfg);
            let alpha = momentum_for_norm(*norm)?;
            let p = parse_frac(picture)?;
            let slice = complex_slice(&f, &alpha, p, -2, 4).map_err(|e| e.to_string())?;
            let mut h = BTreeMap::new();
            for n in -1..=3i64 {
                h.insert(n.to_string(), slice.h_dim(n));
            }
            let euler = slice.euler();
            let expected = -(qseries::c_coeff((-norm / 2) as usize)
                .to_i64()
                .unwrap_or(0));
            finish_cache(&cfg, &f);
            Ok((
                euler == expected,
                json!({"dims": slice.dims, "h": h, "euler": euler, "expected": expected}),
            ))
        }
        Command::GammaCheck => {
            let f = fields_with_cache(&cfg);
            let pass = gamma_check(&f);
            finish_cache(&cfg, &f);
            Ok((pass.0, pass.1))
        }
        Command::Bracket { u, v } => {
            let f = fields_with_cache(&cfg);
            let b = physalg::lie_bracket(&f, f.f(u), f.f(v)).map_err(|e| e.to_string())?;
            finish_cache(&cfg, &f);
            Ok((true, json!({"bracket": b.to_string()})))
        }
        Command::SusyCheck => {
            let f = fields_with_cache(&cfg);
            let result = susy_check(&f)?;
            finish_cache(&cfg, &f);
            Ok(result)
        }
        Command::JacobiCheck => {
            let f = fields_with_cache(&cfg);
            let result = jacobi_check(&f)?;
            finish_cache(&cfg, &f);
            Ok(result)
        }
        Command::Qseries { kind, order } => {
            let series = match kind.as_str() {
                "c" => qseries::c_series(*order),
                "a" => qseries::a_series(*order),
                other => return Err(format!("unknown series kind {other}")),
            };
            let coeffs: Vec<String> = series.coeffs.iter().map(|c| c.to_string()).collect();
            Ok((true, json!({"kind": kind, "coeffs": coeffs})))
        }
        Command::TraceIdentity { order } => {
            let lhs = qseries::trace_lattice_side(*order);
            let rhs = qseries::trace_closed_side(*order);
            let equal = lhs == rhs;
            let coeffs: Vec<String> = rhs.coeffs.iter().map(|c| c.to_string()).collect();
            Ok((equal, json!({"equal": equal, "coeffs": coeffs})))
        }
        Command::DenominatorCheck { height, r } => {
            let n = height.unwrap_or(cfg.height);
            let rv = match r {
                None => gkm::default_r(),
                Some(text) => {
                    let coords: Vec<i16> = text
                        .split(',')
                        .map(|x| x.trim().parse().map_err(|e| format!("r: {e}")))
                        .collect::<Result<_, _>>()?;
                    let arr: [i16; 10] =
                        coords.try_into().map_err(|_| "r needs 10 coordinates")?;
                    if !gkm::Lat10::contains(&arr) {
                        return Err("r is not a lattice vector".into());
                    }
                    gkm::Lat10(arr)
                }
            };
            let report = gkm::denominator_check(&rv, n).map_err(|e| e.to_string())?;
            let mismatches: Vec<Value> = report
                .mismatches
                .iter()
                .take(20)
                .map(|(v, a, b)| json!({"vector": v.0.to_vec(), "lhs": a.to_string(), "rhs": b.to_string()}))
                .collect();
            Ok((
                report.mismatches.is_empty(),
                json!({
                    "height": report.height_bound,
                    "roots": report.num_roots,
                    "lhs_terms": report.lhs_terms,
                    "rhs_terms": report.rhs_terms,
                    "mismatches": mismatches,
                }),
            ))
        }
        Command::Cartan { height, format } => {
            let table =
                gkm::enumerate_positive_roots(&gkm::default_r(), *height).map_err(|e| e.to_string())?;
            let data = gkm::cartan_matrix(&table);
            if format == "csv" {
                let mut lines = Vec::new();
                for row in &data.matrix {
                    lines.push(
                        row.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(","),
                    );
                }
                Ok((true, json!({"csv": lines.join("\n")})))
            } else {
                Ok((
                    true,
                    json!({
                        "simple_roots": data.simple_roots.iter().map(|v| v.0.to_vec()).collect::<Vec<_>>(),
                        "matrix": data.matrix,
                        "multiplicity": [data.multiplicity.0, data.multiplicity.1],
                    }),
                ))
            }
        }
        Command::Cache { action } => {
            let dir = cfg
                .cache_dir
                .clone()
                .ok_or("cache command requires --cache-dir")?;
            match action.as_str() {
                "inspect" => {
                    let info = cache::inspect(&dir)?;
                    Ok((true, info))
                }
                "clear" => {
                    let removed = cache::clear(&dir)?;
                    Ok((true, json!({"removed": removed})))
                }
                _ => unreachable!(),
            }
        }
    }
}

fn gamma_check(f: &Fields) -> (bool, Value) {
    let gd = gamma_matrices(f);
    let mut ok = true;
    let mut notes = Vec::new();
    // Clifford relations.
    for mu in 0..10 {
        for nu in mu..10 {
            let ab = matmul(&gd.gamma[mu], &gd.gamma[nu]);
            let ba = matmul(&gd.gamma[nu], &gd.gamma[mu]);
            for i in 0..32 {
                for j in 0..32 {
                    let mut want = Scalar::zero();
                    if mu == nu && i == j {
                        want = Scalar::from_int(2 * METRIC[mu]);
                    }
                    if ab[i][j].clone() + ba[i][j].clone() != want {
                        ok = false;
                        notes.push(format!("clifford failure at ({mu},{nu})"));
                    }
                }
            }
        }
    }
    // Charge conjugation: antisymmetric, full rank, Gamma^mu C symmetric.
    let mut c_rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..32 {
        c_rows.push(gd.conj[i].clone());
        for j in 0..32 {
            if gd.conj[i][j] != -gd.conj[j][i].clone() {
                ok = false;
                notes.push("C not antisymmetric".into());
            }
        }
    }
    if linalg::rank(c_rows) != 32 {
        ok = false;
        notes.push("C not invertible".into());
    }
    for mu in 0..10 {
        let gc = matmul(&gd.gamma[mu], &gd.conj);
        for i in 0..32 {
            for j in 0..32 {
                if gc[i][j] != gc[j][i] {
                    ok = false;
                    notes.push(format!("Gamma^{mu} C not symmetric"));
                }
            }
        }
    }
    notes.dedup();
    (ok, json!({"notes": notes}))
}

fn susy_check(f: &Fields) -> Result<(bool, Value), String> {
    let gd = gamma_matrices(f);
    let inv_s2 = Scalar::inv_sqrt2();
    let mut ok = true;
    for a in 0..16usize {
        for b in 0..16usize {
            let got = physalg::half_bracket(f, f.f(&format!("Qd{a}")), f.f(&format!("Qd{b}")))
                .map_err(|e| e.to_string())?;
            let mut want = State::zero();
            for mu in 0..10usize {
                let mut c = Scalar::zero();
                for k in 0..32 {
                    c += &gd.gamma[mu][a][k] * &gd.conj[k][b];
                }
                c = c * Scalar::from_int(METRIC[mu]) * inv_s2.clone();
                want = want + f.f(&format!("P{}", mu + 1)).scale(&c);
            }
            if got != want {
                ok = false;
            }
        }
    }
    let mut commutes = true;
    for mu in [0usize, 5, 9] {
        for a in [0usize, 7] {
            let br = physalg::lie_bracket(f, f.f(&format!("P{}", mu + 1)), f.f(&format!("Qd{a}")))
                .map_err(|e| e.to_string())?;
            if !br.is_zero() {
                commutes = false;
            }
        }
    }
    Ok((
        ok && commutes,
        json!({"supercharge_bracket": ok, "momentum_commutes": commutes}),
    ))
}

fn jacobi_check(f: &Fields) -> Result<(bool, Value), String> {
    let mut a = [0i32; DIM];
    a[0] = 2;
    a[9] = 2;
    let alpha = LVec(a);
    let e1 = representatives(f, &alpha, frac(-1, 1), 1).map_err(|e| e.to_string())?[0].clone();
    let s1 = representatives(f, &alpha, frac(-1, 2), 1).map_err(|e| e.to_string())?[0].clone();
    let reps: Vec<(LVec, State)> = vec![
        (LVec::zero(), f.f("P1").clone()),
        (LVec::zero(), f.f("Qd0").clone()),
        (alpha, e1),
        (alpha, s1),
    ];
    let mut checked = 0usize;
    let mut ok = true;
    for (au, u) in &reps {
        for (av, v) in &reps {
            let d = physalg::antisymmetry_defect(f, u, v).map_err(|e| e.to_string())?;
            checked += 1;
            if d.is_zero() {
                continue;
            }
            let g = grade(&f.alg.lat, &d).map_err(|e| e.to_string())?;
            if !physalg::is_exact_canonical(f, &(*au + *av), g.picture, 1, &d)
                .map_err(|e| e.to_string())?
            {
                ok = false;
            }
        }
    }
    for (i, j, k) in [(0usize, 1, 2), (0, 2, 3), (1, 2, 3), (2, 2, 3)] {
        let (ai, ui) = &reps[i];
        let (aj, uj) = &reps[j];
        let (ak, uk) = &reps[k];
        let d = physalg::jacobi_defect(f, ui, uj, uk).map_err(|e| e.to_string())?;
        checked += 1;
        if d.is_zero() {
            continue;
        }
        let g = grade(&f.alg.lat, &d).map_err(|e| e.to_string())?;
        if !physalg::is_exact_canonical(f, &(*ai + *aj + *ak), g.picture, 1, &d)
            .map_err(|e| e.to_string())?
        {
            ok = false;
        }
    }
    Ok((ok, json!({"checked": checked})))
}
