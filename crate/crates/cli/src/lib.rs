//! Polytope I/O, run configuration and command implementations behind the
//! `hstar` binary. Commands return their rendered output and an exit code
//! so they can be driven from tests without spawning processes.

use hstar_core::corpus::{all_builtins, builtin};
use hstar_core::ehrhart::{
    boundary_hstar, eisenbud_harris_check, hstar, is_unimodal, local_hstar, macaulay_check,
};
use hstar_core::field::PrimeField;
use hstar_core::lattice::LatticePolytope;
use hstar_core::lefschetz::{
    corollary_suite, verify_claim, Claim, FieldChoice, FlagStrategy, RunPlan, VerificationReport,
};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use thiserror::Error;

pub const OUTPUT_SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: malformed polytope file: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Core(#[from] hstar_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// On-disk polytope record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub name: String,
    pub vertices: Vec<Vec<i64>>,
}

impl PolytopeFile {
    pub fn into_polytope(self) -> CliResult<LatticePolytope> {
        Ok(LatticePolytope::new(self.name, self.vertices)?)
    }
}

pub fn read_polytope_file(path: &Path) -> CliResult<LatticePolytope> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let file: PolytopeFile =
        serde_json::from_str(&text).map_err(|source| CliError::Json { path: shown, source })?;
    file.into_polytope()
}

/// A built-in name or a path to a polytope file. Existing files win.
pub fn load_polytope(arg: &str) -> CliResult<LatticePolytope> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(p) = builtin(arg) {
            return Ok(p?);
        }
    }
    read_polytope_file(path)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Random,
}

impl FromStr for Mode {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "random" => Ok(Mode::Random),
            _ => Err(CliError::Usage(format!("mode must be exact or random, got {s:?}"))),
        }
    }
}

/// Characteristic of the specialization field: 2, or an odd prime (`p`
/// selects 2^61 - 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Characteristic {
    Two,
    Prime(u64),
}

impl FromStr for Characteristic {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "2" => Ok(Characteristic::Two),
            "p" => Ok(Characteristic::Prime(PrimeField::mersenne61().modulus())),
            n => {
                let p: u64 = n
                    .parse()
                    .map_err(|_| CliError::Usage(format!("char must be 2, p or a prime, got {n:?}")))?;
                PrimeField::new(p)?;
                Ok(Characteristic::Prime(p))
            }
        }
    }
}

pub fn parse_flag_strategy(s: &str) -> CliResult<FlagStrategy> {
    match s {
        "first" => Ok(FlagStrategy::First),
        "all" => Ok(FlagStrategy::All),
        _ => s
            .strip_prefix("count:")
            .and_then(|n| n.parse().ok())
            .filter(|&n: &usize| n >= 1)
            .map(FlagStrategy::Count)
            .ok_or_else(|| CliError::Usage(format!("flag strategy must be first, all or count:n, got {s:?}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            _ => Err(CliError::Usage(format!("output must be json or text, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub char: Characteristic,
    pub field_bits: u32,
    pub seed: u64,
    pub trials: usize,
    pub flag_strategy: FlagStrategy,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Random,
            char: Characteristic::Two,
            field_bits: 32,
            seed: 1,
            trials: 5,
            flag_strategy: FlagStrategy::First,
            output: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.trials == 0 {
            return Err(CliError::Usage("trials must be at least 1".into()));
        }
        if !(1..=64).contains(&self.field_bits) {
            return Err(CliError::Usage("field bits must lie in 1..=64".into()));
        }
        Ok(())
    }

    /// Exact mode forces the characteristic 2 backend.
    pub fn plan(&self) -> CliResult<RunPlan> {
        self.validate()?;
        let field = match (self.mode, self.char) {
            (Mode::Exact, _) | (_, Characteristic::Two) => FieldChoice::Gf2k(self.field_bits),
            (Mode::Random, Characteristic::Prime(p)) => FieldChoice::Prime(p),
        };
        let mut plan = RunPlan::random(field, self.seed, self.trials);
        plan.exact = self.mode == Mode::Exact;
        plan.flags = self.flag_strategy;
        Ok(plan)
    }
}

pub fn parse_claims(list: &[String]) -> CliResult<Vec<Claim>> {
    let mut out = Vec::new();
    for item in list.iter().flat_map(|s| s.split(',')) {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        if item == "all" {
            out.extend(Claim::ALL);
        } else {
            out.push(item.parse::<Claim>()?);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("no claims given".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// What `info` reports about one polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfoSummary {
    pub schema: u32,
    pub name: String,
    pub dim: usize,
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub lattice_points: usize,
    pub interior_points: usize,
    pub idp: bool,
    pub idp_witness: Option<Vec<i64>>,
    pub reflexive: bool,
    pub interior_generation_height: u32,
    pub h_star: Vec<i64>,
    pub normalized_volume: i64,
    pub a_polynomial: Vec<i64>,
    pub local_h_star: Vec<i64>,
    pub h_star_unimodal: bool,
    pub h_star_m_vector: bool,
    pub eisenbud_harris: bool,
}

pub fn info(p: &LatticePolytope) -> CliResult<InfoSummary> {
    let h = hstar(p);
    let (idp, witness) = p.is_idp();
    Ok(InfoSummary {
        schema: OUTPUT_SCHEMA,
        name: p.name().to_string(),
        dim: p.dim(),
        ambient_dim: p.ambient_dim(),
        vertices: p.vertices().to_vec(),
        lattice_points: p.num_lattice_points(),
        interior_points: p.lattice_points().iter().filter(|m| m.interior).count(),
        idp,
        idp_witness: witness.map(|m| {
            let mut v = p.lift(&m);
            v.push(m.height as i64);
            v
        }),
        reflexive: p.is_reflexive(),
        interior_generation_height: p.interior_generation_height(),
        normalized_volume: h.normalized_volume(),
        h_star_unimodal: is_unimodal(&h.h_star),
        h_star_m_vector: macaulay_check(&h.h_star),
        eisenbud_harris: eisenbud_harris_check(&h.h_star),
        h_star: h.h_star,
        a_polynomial: boundary_hstar(p).h_star,
        local_h_star: local_hstar(p)?.ell_star,
    })
}

/// Rendered output plus exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub text: String,
    pub exit_code: i32,
}

fn render<T: Serialize>(value: &T, format: OutputFormat) -> String {
    let json = serde_json::to_value(value).expect("reports serialize");
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut out = String::new();
            text_lines(&json, "", &mut out);
            out
        }
    }
}

/// Flattens JSON into `path: value` lines.
fn text_lines(v: &serde_json::Value, prefix: &str, out: &mut String) {
    use serde_json::Value;
    let scalar_list = |a: &Vec<Value>| a.iter().all(|x| !x.is_object() && !x.is_array());
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(x, &key, out);
            }
        }
        Value::Array(a) if !scalar_list(a) => {
            for (i, x) in a.iter().enumerate() {
                text_lines(x, &format!("{prefix}[{i}]"), out);
            }
        }
        _ => {
            let _ = writeln!(out, "{prefix}: {v}");
        }
    }
}

pub fn cmd_info(arg: &str, format: OutputFormat) -> CliResult<CommandOutput> {
    let p = load_polytope(arg)?;
    Ok(CommandOutput {
        text: render(&info(&p)?, format),
        exit_code: EXIT_OK,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyOutput {
    pub schema: u32,
    pub polytope: String,
    pub config: RunConfig,
    pub reports: Vec<VerificationReport>,
}

pub fn verify(p: &LatticePolytope, claims: &[Claim], config: &RunConfig) -> CliResult<VerifyOutput> {
    let plan = config.plan()?;
    let reports = claims
        .iter()
        .map(|&c| verify_claim(p, c, &plan))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerifyOutput {
        schema: OUTPUT_SCHEMA,
        polytope: p.name().to_string(),
        config: config.clone(),
        reports,
    })
}

pub fn cmd_verify(arg: &str, claims: &[Claim], config: &RunConfig) -> CliResult<CommandOutput> {
    let p = load_polytope(arg)?;
    let out = verify(&p, claims, config)?;
    let refuted = out.reports.iter().any(|r| r.status.is_refuted());
    Ok(CommandOutput {
        text: render(&out, config.output),
        exit_code: if refuted { EXIT_REFUTED } else { EXIT_OK },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub file: String,
    pub name: String,
    pub dim: usize,
    pub idp: bool,
    pub reflexive: bool,
    pub h_star: Vec<i64>,
    pub h_star_unimodal: bool,
    pub local_h_star: Vec<i64>,
    pub eisenbud_harris: bool,
    pub corollaries: String,
    /// Sub-checks failing outside their hypothesis.
    pub outside_hypothesis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanOutput {
    pub schema: u32,
    pub config: RunConfig,
    pub rows: Vec<ScanRow>,
    pub refutations: usize,
    pub warnings: Vec<String>,
}

pub fn scan(dir: &Path, config: &RunConfig) -> CliResult<ScanOutput> {
    config.validate()?;
    let entries = fs::read_dir(dir).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut refutations = 0;
    for path in files {
        let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        let p = match read_polytope_file(&path) {
            Ok(p) => p,
            Err(e) => {
                warnings.push(format!("skipped {file}: {e}"));
                continue;
            }
        };
        let summary = info(&p)?;
        let report = corollary_suite(&p);
        if report.status.is_refuted() {
            refutations += 1;
        }
        rows.push(ScanRow {
            file,
            name: summary.name,
            dim: summary.dim,
            idp: summary.idp,
            reflexive: summary.reflexive,
            h_star: summary.h_star,
            h_star_unimodal: summary.h_star_unimodal,
            local_h_star: summary.local_h_star,
            eisenbud_harris: summary.eisenbud_harris,
            corollaries: report.status.label().to_string(),
            outside_hypothesis: report
                .checks
                .iter()
                .filter(|c| !c.applies && !c.holds)
                .map(|c| c.name.clone())
                .collect(),
        });
    }
    Ok(ScanOutput {
        schema: OUTPUT_SCHEMA,
        config: config.clone(),
        rows,
        refutations,
        warnings,
    })
}

pub fn cmd_scan(dir: &Path, config: &RunConfig) -> CliResult<CommandOutput> {
    let out = scan(dir, config)?;
    Ok(CommandOutput {
        text: render(&out, config.output),
        exit_code: if out.refutations > 0 { EXIT_REFUTED } else { EXIT_OK },
    })
}

/// Polytope file JSON with one vertex per line.
pub fn polytope_file_text(name: &str, vertices: &[Vec<i64>]) -> String {
    let rows: Vec<String> = vertices
        .iter()
        .map(|v| format!("    {}", serde_json::to_string(v).expect("serializable")))
        .collect();
    format!(
        "{{\n  \"name\": {},\n  \"vertices\": [\n{}\n  ]\n}}\n",
        serde_json::to_string(name).expect("serializable"),
        rows.join(",\n")
    )
}

/// Writes every built-in as `<name>.json` into `dir`.
pub fn export_corpus(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| CliError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::new();
    for p in all_builtins() {
        let path = dir.join(format!("{}.json", p.name()));
        let text = polytope_file_text(p.name(), p.vertices());
        fs::write(&path, text).map_err(io(&path))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polytope_file_text_round_trips() {
        let text = polytope_file_text("t", &[vec![0, 0], vec![1, -2]]);
        let back: PolytopeFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.name, "t");
        assert_eq!(back.vertices, vec![vec![0, 0], vec![1, -2]]);
    }

    #[test]
    fn flag_strategies_parse() {
        assert_eq!(parse_flag_strategy("first").unwrap(), FlagStrategy::First);
        assert_eq!(parse_flag_strategy("count:3").unwrap(), FlagStrategy::Count(3));
        assert!(parse_flag_strategy("count:0").is_err());
        assert!(parse_flag_strategy("some").is_err());
    }

    #[test]
    fn claims_parse() {
        let c = parse_claims(&["linear,parseval".into(), "linear".into()]).unwrap();
        assert_eq!(c, vec![Claim::Parseval, Claim::Linear]);
        assert_eq!(parse_claims(&["all".into()]).unwrap().len(), 12);
        assert!(parse_claims(&["bogus".into()]).is_err());
    }

    #[test]
    fn exact_mode_forces_char_two() {
        let cfg = RunConfig {
            mode: Mode::Exact,
            char: "p".parse().unwrap(),
            ..RunConfig::default()
        };
        let plan = cfg.plan().unwrap();
        assert!(plan.exact);
        assert_eq!(plan.field, FieldChoice::Gf2k(32));
        assert!(RunConfig { trials: 0, ..RunConfig::default() }.plan().is_err());
    }

    #[test]
    fn characteristic_rejects_composites() {
        assert!("15".parse::<Characteristic>().is_err());
        assert_eq!("7".parse::<Characteristic>().unwrap(), Characteristic::Prime(7));
    }

    #[test]
    fn text_output_flattens() {
        let mut s = String::new();
        text_lines(&serde_json::json!({"a": [1, 2], "b": {"c": "x"}}), "", &mut s);
        assert_eq!(s, "a: [1,2]\nb.c: \"x\"\n");
    }
}
