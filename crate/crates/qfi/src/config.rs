//! Run configuration: a TOML subset read key by key, so that every field is
//! either consumed or reported. See `docs/config.md` for the grammar.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qfi_core::linalg::DEFAULT_KERNEL_TOL;
use qfi_core::locality::RoeTolerances;
use qfi_core::models::{Boundary, ModelKind, ModelSpec};
use toml::{Table, Value};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown key `{key}`{hint}")]
    UnknownKey { key: String, hint: String },
    #[error("missing required field `{0}`")]
    Missing(String),
    #[error("invalid field `{field}`: {reason}")]
    Field { field: String, reason: String },
}

impl ConfigError {
    fn field(field: &str, reason: impl Into<String>) -> Self {
        Self::Field { field: field.to_string(), reason: reason.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Build,
    Index,
    Sweep,
    Locality,
    Verify,
}

impl Command {
    pub const ALL: [Command; 5] = [Self::Build, Self::Index, Self::Sweep, Self::Locality, Self::Verify];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Build => "build",
            Self::Index => "index",
            Self::Sweep => "sweep",
            Self::Locality => "locality",
            Self::Verify => "verify",
        }
    }

    /// Sections the command reads besides `tolerances`.
    fn sections(&self) -> &'static [&'static str] {
        match self {
            Self::Build => &["model"],
            Self::Index => &["model", "reference", "symmetry", "index"],
            Self::Sweep => &["model", "reference", "symmetry", "index", "sweep"],
            Self::Locality => &["model", "reference", "locality"],
            Self::Verify => &["verify"],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command `{s}`"))
    }
}

/// Named symmetry operators built from the model geometry.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SymmetrySpec {
    /// Chiral symmetries `κ`; only `kramers` is known.
    pub kappas: Vec<String>,
    /// Group elements: `identity`, `fermion_parity`, `time_reversal`.
    pub group: Vec<String>,
}

pub const KAPPA_NAMES: [&str; 1] = ["kramers"];
pub const GROUP_NAMES: [&str; 3] = ["identity", "fermion_parity", "time_reversal"];

#[derive(Clone, Debug, PartialEq)]
pub struct SweepAxis {
    pub param: String,
    pub grid: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    pub kernel: f64,
    /// Singular-value threshold for spectral flow and homotopy samples.
    pub gap: f64,
    /// Near-zero window for edge modes; `None` means a tenth of the bulk gap.
    pub edge: Option<f64>,
    pub cayley: f64,
    pub roe: RoeTolerances,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { kernel: DEFAULT_KERNEL_TOL, gap: 1e-8, edge: None, cayley: 1e-10, roe: RoeTolerances::default() }
    }
}

/// Optional extras of `index` and `sweep`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IndexOptions {
    pub homotopy_trials: usize,
    /// Select sites with first coordinate below this value for the
    /// half-space experiment.
    pub edge_cut: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LocalityOptions {
    /// Center site index; defaults to the middle site.
    pub center: Option<usize>,
    /// Ball radii; defaults to `0, 1, …` up to the largest distance.
    pub radii: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Complex dimensions of the random pairs.
    pub sizes: Vec<usize>,
    pub pairs: usize,
    /// Largest norm of the rotation generator `K` in `J₁ = e^K J₀ e^{−K}`.
    pub rotation: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { sizes: vec![4, 8, 16], pairs: 20, rotation: 0.9 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub run_id: Option<String>,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub model: Option<ModelSpec>,
    pub reference: Option<ModelSpec>,
    pub symmetry: SymmetrySpec,
    pub sweep: Option<SweepAxis>,
    pub tolerances: Tolerances,
    pub index: IndexOptions,
    pub locality: LocalityOptions,
    pub verify: VerifyOptions,
    /// Unknown keys tolerated in lenient mode.
    pub warnings: Vec<String>,
}

/// A table whose keys are ticked off as they are read.
struct Section<'a> {
    path: String,
    table: &'a Table,
    used: BTreeSet<&'a str>,
}

impl<'a> Section<'a> {
    fn new(path: &str, table: &'a Table) -> Self {
        Self { path: path.to_string(), table, used: BTreeSet::new() }
    }

    fn name(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    fn take(&mut self, key: &str) -> Option<&'a Value> {
        let (k, v) = self.table.get_key_value(key)?;
        self.used.insert(k.as_str());
        Some(v)
    }

    fn string(&mut self, key: &str) -> Result<Option<String>, ConfigError> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(ConfigError::field(&self.name(key), "expected a string")),
        }
    }

    fn float(&mut self, key: &str) -> Result<Option<f64>, ConfigError> {
        let name = self.name(key);
        self.take(key).map(|v| as_float(v, &name)).transpose()
    }

    fn tolerance(&mut self, key: &str, default: f64) -> Result<f64, ConfigError> {
        let name = self.name(key);
        match self.float(key)? {
            None => Ok(default),
            Some(v) if v.is_finite() && v >= 0.0 => Ok(v),
            Some(_) => Err(ConfigError::field(&name, "must be finite and non-negative")),
        }
    }

    fn uint(&mut self, key: &str) -> Result<Option<u64>, ConfigError> {
        let name = self.name(key);
        self.take(key).map(|v| as_uint(v, &name)).transpose()
    }

    fn int(&mut self, key: &str) -> Result<Option<i64>, ConfigError> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::Integer(i)) => Ok(Some(*i)),
            Some(_) => Err(ConfigError::field(&self.name(key), "expected an integer")),
        }
    }

    fn array(&mut self, key: &str) -> Result<Option<&'a Vec<Value>>, ConfigError> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::Array(a)) => Ok(Some(a)),
            Some(_) => Err(ConfigError::field(&self.name(key), "expected an array")),
        }
    }

    fn floats(&mut self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        let name = self.name(key);
        self.array(key)?.map(|a| a.iter().map(|v| as_float(v, &name)).collect()).transpose()
    }

    fn strings(&mut self, key: &str) -> Result<Option<Vec<String>>, ConfigError> {
        let name = self.name(key);
        self.array(key)?
            .map(|a| {
                a.iter()
                    .map(|v| {
                        v.as_str().map(str::to_string).ok_or_else(|| ConfigError::field(&name, "expected strings"))
                    })
                    .collect()
            })
            .transpose()
    }

    fn table(&mut self, key: &str) -> Result<Option<Section<'a>>, ConfigError> {
        let name = self.name(key);
        match self.take(key) {
            None => Ok(None),
            Some(Value::Table(t)) => Ok(Some(Section::new(&name, t))),
            Some(_) => Err(ConfigError::field(&name, "expected a table")),
        }
    }

    fn unused(&self) -> Vec<String> {
        self.table.keys().filter(|k| !self.used.contains(k.as_str())).map(|k| self.name(k)).collect()
    }

    /// Rejects unread keys in strict mode, otherwise records them.
    fn finish(self, strict: bool, warnings: &mut Vec<String>, hint: &str) -> Result<(), ConfigError> {
        for key in self.unused() {
            if strict {
                return Err(ConfigError::UnknownKey { key, hint: hint.to_string() });
            }
            warnings.push(format!("ignored unknown key `{key}`"));
        }
        Ok(())
    }
}

fn as_float(v: &Value, name: &str) -> Result<f64, ConfigError> {
    match v {
        Value::Float(x) => Ok(*x),
        Value::Integer(i) => Ok(*i as f64),
        _ => Err(ConfigError::field(name, "expected a number")),
    }
}

fn as_uint(v: &Value, name: &str) -> Result<u64, ConfigError> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as u64),
        _ => Err(ConfigError::field(name, "expected a non-negative integer")),
    }
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parses and validates a configuration with strict key checking.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_with(text, true)
}

pub fn parse_config_with(text: &str, strict: bool) -> Result<RunConfig, ConfigError> {
    let table: Table = text.parse().map_err(|e: toml::de::Error| {
        let (line, column) = e.span().map_or((1, 1), |s| line_column(text, s.start));
        ConfigError::Parse { line, column, message: e.message().trim().to_string() }
    })?;
    let mut warnings = Vec::new();
    let mut root = Section::new("", &table);

    let command: Command = root
        .string("command")?
        .ok_or_else(|| ConfigError::Missing("command".into()))?
        .parse()
        .map_err(|e: String| ConfigError::field("command", e))?;
    let run_id = root.string("run_id")?;
    if run_id.as_deref().is_some_and(|s| s.is_empty() || s.contains([',', '"', '\n', '\r'])) {
        return Err(ConfigError::field("run_id", "must be nonempty without commas, quotes or newlines"));
    }
    let seed = root.uint("seed")?.unwrap_or(0);
    let output = root.string("output")?.map(PathBuf::from);

    for key in ["model", "reference", "symmetry", "index", "sweep", "locality", "verify"] {
        if table.contains_key(key) && !command.sections().contains(&key) {
            return Err(ConfigError::field(key, format!("section is not used by command `{command}`")));
        }
    }

    let tolerances = match root.table("tolerances")? {
        Some(s) => parse_tolerances(s, strict, &mut warnings)?,
        None => Tolerances::default(),
    };
    let model = match root.table("model")? {
        Some(s) => Some(parse_model(s, None, strict, &mut warnings)?),
        None if command != Command::Verify => return Err(ConfigError::Missing("model".into())),
        None => None,
    };
    let reference = match &model {
        Some(m) if command.sections().contains(&"reference") => Some(match root.table("reference")? {
            Some(s) => parse_model(s, Some(m), strict, &mut warnings)?,
            None => default_reference(m)?,
        }),
        _ => None,
    };
    let symmetry = match root.table("symmetry")? {
        Some(s) => parse_symmetry(s, strict, &mut warnings)?,
        None => SymmetrySpec::default(),
    };
    let index = match root.table("index")? {
        Some(mut s) => {
            let homotopy_trials = s.uint("homotopy_trials")?.unwrap_or(0) as usize;
            let edge_cut = s.int("edge_cut")?;
            s.finish(strict, &mut warnings, "")?;
            IndexOptions { homotopy_trials, edge_cut }
        }
        None => IndexOptions::default(),
    };
    let sweep = match root.table("sweep")? {
        Some(s) => Some(parse_sweep(s, model.as_ref(), strict, &mut warnings)?),
        None if command == Command::Sweep => return Err(ConfigError::Missing("sweep".into())),
        None => None,
    };
    let locality = match root.table("locality")? {
        Some(mut s) => {
            let center = s.uint("center")?.map(|c| c as usize);
            let radii = s.floats("radii")?;
            if let Some(r) = &radii {
                check_grid("locality.radii", r)?;
                if r[0] < 0.0 {
                    return Err(ConfigError::field("locality.radii", "radii must be non-negative"));
                }
            }
            s.finish(strict, &mut warnings, "")?;
            LocalityOptions { center, radii }
        }
        None => LocalityOptions::default(),
    };
    let verify = match root.table("verify")? {
        Some(s) => parse_verify(s, strict, &mut warnings)?,
        None => VerifyOptions::default(),
    };
    root.finish(strict, &mut warnings, "")?;

    Ok(RunConfig {
        command,
        run_id,
        seed,
        output,
        model,
        reference,
        symmetry,
        sweep,
        tolerances,
        index,
        locality,
        verify,
        warnings,
    })
}

fn parse_tolerances(mut s: Section<'_>, strict: bool, warnings: &mut Vec<String>) -> Result<Tolerances, ConfigError> {
    let d = Tolerances::default();
    let kernel = s.tolerance("kernel", d.kernel)?;
    let gap = s.tolerance("gap", d.gap)?;
    let edge = match s.float("edge")? {
        Some(v) if v.is_finite() && v > 0.0 => Some(v),
        Some(_) => return Err(ConfigError::field("tolerances.edge", "must be finite and positive")),
        None => None,
    };
    let cayley = s.tolerance("cayley", d.cayley)?;
    let roe = RoeTolerances {
        entry_tol: s.tolerance("entry", d.roe.entry_tol)?,
        max_radius: s.tolerance("max_radius", d.roe.max_radius)?,
        rank_tol: s.tolerance("rank", d.roe.rank_tol)?,
        rank_fraction: s.tolerance("rank_fraction", d.roe.rank_fraction)?,
    };
    s.finish(strict, warnings, "")?;
    Ok(Tolerances { kernel, gap, edge, cayley, roe })
}

fn parse_size(s: &mut Section<'_>) -> Result<Option<Vec<usize>>, ConfigError> {
    let name = s.name("size");
    match s.take("size") {
        None => Ok(None),
        Some(v @ Value::Integer(_)) => Ok(Some(vec![as_uint(v, &name)? as usize])),
        Some(Value::Array(a)) => {
            Ok(Some(a.iter().map(|v| as_uint(v, &name).map(|u| u as usize)).collect::<Result<_, _>>()?))
        }
        Some(_) => Err(ConfigError::field(&name, "expected an integer or an array of integers")),
    }
}

/// Reads a model table; `base` supplies the size and boundary of a reference.
fn parse_model(
    mut s: Section<'_>,
    base: Option<&ModelSpec>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<ModelSpec, ConfigError> {
    let path = s.path.clone();
    let kind: ModelKind = match s.string("kind")? {
        Some(k) => k.parse().map_err(|e: qfi_core::Error| ConfigError::field(&s.name("kind"), e.to_string()))?,
        None if base.is_some() => ModelKind::AtomicTrivial,
        None => return Err(ConfigError::Missing(s.name("kind"))),
    };
    let size = match (parse_size(&mut s)?, base) {
        (Some(v), _) => v,
        (None, Some(b)) => b.size.clone(),
        (None, None) => return Err(ConfigError::Missing(s.name("size"))),
    };
    let boundary = match s.string("boundary")? {
        Some(b) => Boundary::from_str(&b).map_err(|e| ConfigError::field(&s.name("boundary"), e.to_string()))?,
        None => base.map_or(Boundary::Periodic, |b| b.boundary),
    };
    let mut spec = ModelSpec::new(kind, &size, boundary);
    if let Some(g) = s.float("gap_tol")? {
        spec.gap_tol = g;
    }
    for &(name, _) in kind.params() {
        if let Some(v) = s.float(name)? {
            spec = spec.with(name, v);
        }
    }
    if let Some(b) = base.filter(|_| kind == ModelKind::AtomicTrivial && !spec.params.contains_key("orbitals")) {
        spec = spec.with("orbitals", base_orbitals(b)?);
    }
    let accepted: Vec<&str> = kind.params().iter().map(|p| p.0).collect();
    s.finish(strict, warnings, &format!(" ({kind} accepts kind, size, boundary, gap_tol, {})", accepted.join(", ")))?;
    spec.validate().map_err(|e| ConfigError::field(&path, e.to_string()))?;
    Ok(spec)
}

fn base_orbitals(m: &ModelSpec) -> Result<f64, ConfigError> {
    let g = m.geometry().map_err(|e| ConfigError::field("model", e.to_string()))?;
    Ok(g.orbitals() as f64)
}

/// `atomic_trivial` on the model's lattice with the same orbital count.
fn default_reference(m: &ModelSpec) -> Result<ModelSpec, ConfigError> {
    Ok(ModelSpec::atomic(&m.size, m.boundary).with("orbitals", base_orbitals(m)?))
}

fn parse_symmetry(mut s: Section<'_>, strict: bool, warnings: &mut Vec<String>) -> Result<SymmetrySpec, ConfigError> {
    let kappas = s.strings("kappas")?.unwrap_or_default();
    let group = s.strings("group")?.unwrap_or_default();
    for k in &kappas {
        if !KAPPA_NAMES.contains(&k.as_str()) {
            return Err(ConfigError::field("symmetry.kappas", format!("unknown kappa `{k}`")));
        }
    }
    for g in &group {
        if !GROUP_NAMES.contains(&g.as_str()) {
            return Err(ConfigError::field("symmetry.group", format!("unknown group element `{g}`")));
        }
    }
    s.finish(strict, warnings, "")?;
    Ok(SymmetrySpec { kappas, group })
}

fn check_grid(field: &str, grid: &[f64]) -> Result<(), ConfigError> {
    if grid.is_empty() {
        return Err(ConfigError::field(field, "grid must be nonempty"));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(ConfigError::field(field, "grid values must be finite"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ConfigError::field(field, "grid must be strictly increasing"));
    }
    Ok(())
}

/// Grid `start, start + step, …` up to `stop`, rounded to twelve decimals so
/// that decimal steps print cleanly.
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..n).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12).collect()
}

fn parse_sweep(
    mut s: Section<'_>,
    model: Option<&ModelSpec>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<SweepAxis, ConfigError> {
    let param = s.string("param")?.ok_or_else(|| ConfigError::Missing("sweep.param".into()))?;
    if let Some(m) = model {
        if !m.kind.params().iter().any(|p| p.0 == param) {
            return Err(ConfigError::field("sweep.param", format!("{} has no parameter `{param}`", m.kind)));
        }
    }
    let explicit = s.floats("grid")?;
    let range = (s.float("start")?, s.float("stop")?, s.float("step")?);
    let grid = match (explicit, range) {
        (Some(g), (None, None, None)) => g,
        (None, (Some(a), Some(b), Some(h))) => {
            if !(h > 0.0 && h.is_finite() && a.is_finite() && b.is_finite() && a <= b) {
                return Err(ConfigError::field("sweep.step", "need start <= stop and a positive finite step"));
            }
            linear_grid(a, b, h)
        }
        (None, (None, None, None)) => return Err(ConfigError::Missing("sweep.grid".into())),
        _ => return Err(ConfigError::field("sweep.grid", "give either grid or all of start, stop, step")),
    };
    check_grid("sweep.grid", &grid)?;
    s.finish(strict, warnings, "")?;
    Ok(SweepAxis { param, grid })
}

fn parse_verify(mut s: Section<'_>, strict: bool, warnings: &mut Vec<String>) -> Result<VerifyOptions, ConfigError> {
    let d = VerifyOptions::default();
    let sizes = match s.array("sizes")? {
        Some(a) => a.iter().map(|v| as_uint(v, "verify.sizes").map(|u| u as usize)).collect::<Result<Vec<_>, _>>()?,
        None => d.sizes,
    };
    if sizes.is_empty() || sizes.iter().any(|&n| n == 0 || n % 2 == 1) {
        return Err(ConfigError::field("verify.sizes", "sizes must be a nonempty list of positive even dimensions"));
    }
    let pairs = s.uint("pairs")?.map_or(d.pairs, |p| p as usize);
    if pairs == 0 {
        return Err(ConfigError::field("verify.pairs", "must be positive"));
    }
    let rotation = s.float("rotation")?.unwrap_or(d.rotation);
    if !(rotation > 0.0 && rotation < 1.0) {
        return Err(ConfigError::field("verify.rotation", "must lie in (0, 1) so that ||J0 - J1|| < 2"));
    }
    s.finish(strict, warnings, "")?;
    Ok(VerifyOptions { sizes, pairs, rotation })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "command = \"index\"\n[model]\nkind = \"kitaev_chain\"\nsize = 40\nmu = 0.5\n";

    #[test]
    fn minimal_index_config_fills_defaults() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.command, Command::Index);
        let m = c.model.unwrap();
        assert_eq!(m.boundary, Boundary::Periodic);
        assert_eq!(m.param("t").unwrap(), 1.0);
        assert_eq!(m.param("mu").unwrap(), 0.5);
        let r = c.reference.unwrap();
        assert_eq!(r.kind, ModelKind::AtomicTrivial);
        assert_eq!(r.size, vec![40]);
        assert_eq!(c.tolerances, Tolerances::default());
        assert_eq!(c.seed, 0);
    }

    #[test]
    fn unknown_parameter_is_named() {
        let text = MINIMAL.replace("mu = 0.5", "mue = 0.5");
        let e = parse_config(&text).unwrap_err();
        assert!(matches!(&e, ConfigError::UnknownKey { key, .. } if key == "model.mue"), "{e}");
        assert!(e.to_string().contains("mue"));
        let lenient = parse_config_with(&text, false).unwrap();
        assert_eq!(lenient.warnings.len(), 1);
    }

    #[test]
    fn sweep_range_gives_nine_points() {
        let text = MINIMAL.replace("index", "sweep") + "[sweep]\nparam = \"mu\"\nstart = 0\nstop = 4\nstep = 0.5\n";
        let s = parse_config(&text).unwrap().sweep.unwrap();
        assert_eq!(s.grid, vec![0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0]);
        let text =
            MINIMAL.replace("index", "sweep") + "[sweep]\nparam = \"mu\"\ngrid = [0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4]\n";
        assert_eq!(parse_config(&text).unwrap().sweep.unwrap().grid.len(), 9);
    }

    #[test]
    fn grids_must_be_sorted_and_nonempty() {
        for grid in ["[]", "[1, 0]", "[0, 0]"] {
            let text = MINIMAL.replace("index", "sweep") + &format!("[sweep]\nparam = \"mu\"\ngrid = {grid}\n");
            assert!(matches!(parse_config(&text), Err(ConfigError::Field { .. })), "{grid}");
        }
        let text = MINIMAL.replace("index", "sweep") + "[sweep]\nparam = \"nu\"\ngrid = [0]\n";
        assert!(parse_config(&text).unwrap_err().to_string().contains("nu"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_config("command = \"index\"\n[model\n").unwrap_err();
        assert!(matches!(e, ConfigError::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn sections_must_belong_to_the_command() {
        let text = MINIMAL.to_string() + "[verify]\npairs = 3\n";
        assert!(matches!(parse_config(&text), Err(ConfigError::Field { field, .. }) if field == "verify"));
        assert!(matches!(parse_config("[model]\nkind = \"atomic_trivial\"\nsize = 2\n"), Err(ConfigError::Missing(_))));
        assert!(parse_config("command = \"verify\"\n").is_ok());
    }

    #[test]
    fn reference_inherits_lattice() {
        let text = MINIMAL.to_string() + "[reference]\nkind = \"kitaev_chain\"\nmu = 4\n";
        let r = parse_config(&text).unwrap().reference.unwrap();
        assert_eq!(r.kind, ModelKind::KitaevChain);
        assert_eq!(r.size, vec![40]);
        assert_eq!(r.param("mu").unwrap(), 4.0);
    }
}
