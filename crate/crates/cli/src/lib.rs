//! Orchestration behind the `primlink` binary: input loading, the analysis
//! pipeline, report rendering, and cache handling.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use primlink::cache::StructureCache;
use primlink::exact_int::Int;
use primlink::cohomchk::{completeness_verdict_with, CompletenessReport, PrimeSelection, Status, VerdictOptions};
use primlink::exactla::{smith_normal_form, IntMatrix, MatrixDoc};
use primlink::freelie::{lyndon_basis, witt_dimension, FreeLieAlgebra};
use primlink::LinkingDiagram;

pub const CACHE_ENV: &str = "PRIMLINK_CACHE_DIR";

/// Process exit statuses.
pub mod exit {
    pub const VERIFIED: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    pub max_degree: usize,
    pub primes: PrimeSelection,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub dropped: Option<usize>,
}

/// What a subcommand prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome { code: exit::INPUT_ERROR, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// `$PRIMLINK_CACHE_DIR`, else `$XDG_CACHE_HOME/primlink`, else
/// `$HOME/.cache/primlink`.
pub fn default_cache_dir() -> Option<PathBuf> {
    let nonempty = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    nonempty(CACHE_ENV)
        .or_else(|| nonempty("XDG_CACHE_HOME").map(|p| p.join("primlink")))
        .or_else(|| nonempty("HOME").map(|p| p.join(".cache").join("primlink")))
}

fn read_input(path: &Path) -> Result<Vec<u8>, String> {
    fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

pub fn analyze(config: &RunConfig) -> Outcome {
    let bytes = match read_input(&config.input) {
        Ok(b) => b,
        Err(e) => return Outcome::input_error(e),
    };
    let diagram = match LinkingDiagram::from_json_slice(&bytes) {
        Ok(d) => d,
        Err(e) => return Outcome::input_error(e),
    };
    if config.max_degree < 2 {
        return Outcome::input_error(format!("--max-degree must be at least 2, got {}", config.max_degree));
    }
    let alg = FreeLieAlgebra::new(diagram.components());
    let cache = config.cache_dir.as_ref().map(StructureCache::new);
    if let Some(c) = &cache {
        c.load_into(&alg, config.max_degree);
    }
    let options =
        VerdictOptions { primes: config.primes.clone(), max_degree: config.max_degree, dropped: config.dropped };
    let report = match completeness_verdict_with(&alg, &diagram, &options) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e),
    };
    let mut stderr = String::new();
    if let Some(c) = &cache {
        if let Err(e) = c.store_from(&alg, config.max_degree) {
            let _ = writeln!(stderr, "warning: cache not written to {}: {e}", c.dir().display());
        }
    }
    let stdout = match config.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => render_report(&report),
    };
    let code = if report.is_verified() { exit::VERIFIED } else { exit::FAILED };
    Outcome { code, stdout, stderr }
}

pub fn render_report(r: &CompletenessReport) -> String {
    let mut s = String::new();
    let d = r.diagram.components;
    let _ = writeln!(s, "link with {d} component{}", if d == 1 { "" } else { "s" });
    for row in &r.diagram.linking {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        let _ = writeln!(s, "  [{}]", cells.join(" "));
    }
    let _ = writeln!(s, "primitive: {} (failing primes: {})", r.primitivity.primitive, r.primitivity.failing);
    let _ = writeln!(s, "relators (component {} dropped):", r.dropped);
    if r.relators.is_empty() {
        let _ = writeln!(s, "  none");
    }
    for rel in &r.relators {
        let _ = writeln!(s, "  W_{} = {}", rel.component, rel.element);
    }
    let _ = writeln!(s, "degree  dim L_k  rank (L/r)_k  torsion");
    for (dr, dim) in r.quotient_profile.degrees().iter().zip(&r.lie_dimensions) {
        let torsion: Vec<String> = dr.divisors.iter().map(ToString::to_string).collect();
        let torsion = if torsion.is_empty() { "-".to_owned() } else { torsion.join(",") };
        let _ = writeln!(s, "{:>6}  {:>7}  {:>12}  {}", dr.degree, dim, dr.rank, torsion);
    }
    for pr in &r.per_prime {
        let _ = writeln!(s, "p = {}:", pr.prime);
        let _ = writeln!(s, "  q-primitive: {}", pr.q_primitive);
        match pr.torsion_degree {
            Some(k) => {
                let _ = writeln!(s, "  {}-torsion in L/r from degree {k}", pr.prime);
            }
            None => {
                let _ = writeln!(s, "  L/r has no {}-torsion through degree {}", pr.prime, r.max_degree);
            }
        }
        if let Some(c) = &pr.certificate {
            let cells: Vec<String> = c
                .degrees
                .iter()
                .map(|v| format!("{}:{}/{}{}", v.degree, v.rank, v.expected_rank, if v.passed { "" } else { "!" }))
                .collect();
            let _ = writeln!(
                s,
                "  certificate on {} generators (degree:rank/expected): {} -> {}",
                c.generators,
                cells.join(" "),
                if c.passed() { "pass" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            s,
            "  cohomology dims computed {:?}, expected {:?}",
            pr.cohomology.computed, pr.cohomology.expected
        );
    }
    match &r.status {
        Status::VerifiedUpToDegree { degree } => {
            let _ = writeln!(s, "verified up to degree {degree}");
        }
        Status::Failed { reasons } => {
            let _ = writeln!(s, "FAILED:");
            for reason in reasons {
                let _ = writeln!(s, "  {reason}");
            }
        }
    }
    s
}

/// Enumerated Lyndon basis sizes beside the necklace formula, k = 1..=maxk.
pub fn liedims(d: usize, maxk: usize) -> Outcome {
    if d == 0 || maxk == 0 {
        return Outcome::input_error("-d and -k must be at least 1");
    }
    if d > u8::MAX as usize {
        return Outcome::input_error("at most 255 generators are supported");
    }
    let mut out = String::from("degree  basis  witt\n");
    let mut agree = true;
    for k in 1..=maxk {
        let enumerated = lyndon_basis(d, k).len();
        let formula = witt_dimension(d, k);
        agree &= formula == enumerated.into();
        let _ = writeln!(out, "{k:>6}  {enumerated:>5}  {formula:>4}");
    }
    let code = if agree { exit::VERIFIED } else { exit::FAILED };
    let stderr = if agree { String::new() } else { "error: basis count and formula disagree\n".to_owned() };
    Outcome { code, stdout: out, stderr }
}

pub fn snf(path: &Path, format: Format) -> Outcome {
    let bytes = match read_input(path) {
        Ok(b) => b,
        Err(e) => return Outcome::input_error(e),
    };
    let a = match IntMatrix::from_json_slice(&bytes) {
        Ok(m) => m,
        Err(e) => return Outcome::input_error(e),
    };
    let f = smith_normal_form(&a);
    let divisors: Vec<String> = f.divisors().iter().map(ToString::to_string).collect();
    let stdout = match format {
        Format::Json => {
            let doc = serde_json::json!({
                "left": MatrixDoc::from(&f.left),
                "diagonal": MatrixDoc::from(&f.diagonal),
                "right": MatrixDoc::from(&f.right),
                "divisors": f.divisors().into_iter().map(Int).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Text => format!(
            "divisors: [{}]\nS =\n{}U =\n{}V =\n{}",
            divisors.join(", "),
            f.diagonal,
            f.left,
            f.right
        ),
    };
    Outcome { code: exit::VERIFIED, stdout, stderr: String::new() }
}
