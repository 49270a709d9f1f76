use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Parser, Serialize, Deserialize)]
#[command(name = "zigzag", version, about = "Frustrated spin-S zig-zag ladder sweeps")]
#[serde(deny_unknown_fields)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Common {
    /// JSON object whose keys override the matching flags.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Output CSV path (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, global = true, env = "ZIGZAG_JOBS", default_value_t = 0)]
    pub jobs: usize,
    /// Keep rows already present in `--out` and compute only the missing points.
    #[arg(long, global = true)]
    pub resume: bool,
}

#[derive(Debug, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Ground energies and low spectra by exact diagonalization.
    Ed(EdArgs),
    /// Classical phase labels on a coupling grid.
    Phase(PhaseArgs),
    /// Spin-wave and dimer fluctuation spectra and energies.
    Rpa(RpaArgs),
    /// Perturbative excitation energies and critical couplings.
    Perturb(PerturbArgs),
    /// Fidelity of exact rung states against local references.
    Fidelity(FidelityArgs),
}

/// Coupling grid shared by the ED-backed commands.
#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridArgs {
    /// Comma-separated spins, e.g. `1/2,1,3/2`.
    #[arg(long, value_delimiter = ',', default_value = "1/2")]
    pub spins: Vec<String>,
    #[arg(long, default_value_t = 4)]
    pub rungs: usize,
    /// `periodic` or `open`.
    #[arg(long, default_value = "periodic")]
    pub boundary: String,
    /// Derived coupling, e.g. `J2=Jp/2`.
    #[arg(long)]
    pub line: Option<String>,
    /// Fixed coupling, e.g. `Jp=0.6`; repeatable.
    #[arg(long)]
    pub fixed: Vec<String>,
    /// `VAR min:max:steps`; repeat for a Cartesian grid.
    #[arg(long, num_args = 2, value_names = ["VAR", "RANGE"])]
    pub sweep: Vec<String>,
}

#[derive(Debug, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Ladder description in JSON; replaces the grid.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Report this many lowest levels instead of the relative energy.
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long, default_value = "auto")]
    pub solver: String,
    /// Visit every Sz sector.
    #[arg(long)]
    pub full_sweep: bool,
}

#[derive(Debug, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseArgs {
    /// `min:max:steps` for J'/J.
    #[arg(long = "Jp", default_value = "0:2:100")]
    pub jp: String,
    /// `min:max:steps` for J2/J.
    #[arg(long = "J2", default_value = "0:1.2:100")]
    pub j2: String,
    #[arg(long, default_value = "1/2")]
    pub spin: String,
    /// Include the dimer product state among the candidates.
    #[arg(long)]
    pub with_dimer: bool,
}

#[derive(Debug, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RpaArgs {
    /// Dimer-line dispersion for `--gamma`.
    #[arg(long, conflicts_with = "spiral")]
    pub dispersion: bool,
    /// Spin-wave branches over the classical state at `--Jp`, `--J2`.
    #[arg(long)]
    pub spiral: bool,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Momenta for spectra.
    #[arg(long, default_value_t = 64)]
    pub rungs: usize,
    #[arg(long = "Jp", default_value_t = 0.6)]
    pub jp: f64,
    #[arg(long = "J2", default_value_t = 0.3)]
    pub j2: f64,
    #[arg(long, default_value = "1/2")]
    pub spin: String,
    /// `single-site`, `pair` or `all`.
    #[arg(long, default_value = "all")]
    pub method: String,
    /// Energy curves: fixed coupling, e.g. `Jp=0.6`.
    #[arg(long)]
    pub fixed: Vec<String>,
    /// Energy curves: `VAR min:max:steps`.
    #[arg(long, num_args = 2, value_names = ["VAR", "RANGE"])]
    pub sweep: Vec<String>,
    /// Energy curves: derived coupling, e.g. `J2=Jp/2`.
    #[arg(long)]
    pub line: Option<String>,
    /// Join ED ground energies on a periodic ring of `--ed-rungs`.
    #[arg(long)]
    pub with_ed: bool,
    #[arg(long, default_value_t = 4)]
    pub ed_rungs: usize,
}

#[derive(Debug, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbArgs {
    #[arg(long, value_delimiter = ',', default_value = "1/2,1,3/2,2,5/2,3")]
    pub spins: Vec<String>,
    /// All sector energies at `--spin`, `--jp`.
    #[arg(long)]
    pub sectors: bool,
    /// Gap table next to ED at `--spin` on `--jp-grid`.
    #[arg(long)]
    pub with_ed: bool,
    #[arg(long, default_value = "1/2")]
    pub spin: String,
    #[arg(long, default_value_t = 0.5)]
    pub jp: f64,
    #[arg(long, default_value = "0.05:0.95:19")]
    pub jp_grid: String,
    #[arg(long, default_value_t = 6)]
    pub rungs: usize,
}

#[derive(Debug, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FidelityArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// `singlet` or `srmf`.
    #[arg(long, default_value = "singlet")]
    pub reference: String,
}

impl Cli {
    /// Parses `argv` and applies the `--config` overrides.
    pub fn load<I, T>(argv: I) -> Result<Cli, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(argv)?;
        let Some(path) = cli.common.config.clone() else {
            return Ok(cli);
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let overrides: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let Value::Object(overrides) = overrides else {
            return Err(CliError::Config("config must be a JSON object".into()));
        };
        let mut tree = serde_json::to_value(&cli).map_err(|e| CliError::Config(e.to_string()))?;
        let common_keys: Vec<String> = tree["common"]
            .as_object()
            .map(|o| o.keys().cloned().collect())
            .unwrap_or_default();
        let command = tree["command"]
            .as_object()
            .and_then(|o| o.keys().next().cloned())
            .expect("subcommand present");
        for (key, value) in overrides {
            let slot = if common_keys.contains(&key) {
                &mut tree["common"][&key]
            } else {
                let inner = &mut tree["command"][&command];
                // flattened grid flags live one level down
                if inner.get("grid").is_some_and(|g| g.get(&key).is_some()) {
                    &mut inner["grid"][&key]
                } else {
                    &mut inner[&key]
                }
            };
            *slot = coerce(slot, value);
        }
        let mut merged: Cli = serde_json::from_value(tree).map_err(|e| CliError::Config(e.to_string()))?;
        merged.common.config = Some(path);
        Ok(merged)
    }
}

/// Lets config files use the flag spelling: `"1/2,1"` for lists, numbers
/// for string-valued flags.
fn coerce(existing: &Value, value: Value) -> Value {
    match (existing, value) {
        (Value::Array(_), Value::String(text)) => Value::Array(
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| Value::String(t.to_string()))
                .collect(),
        ),
        (Value::String(_), Value::Number(n)) => Value::String(n.to_string()),
        (_, v) => v,
    }
}
