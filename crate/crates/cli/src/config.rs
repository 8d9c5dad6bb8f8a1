//! Command-line flags, the optional TOML config file, and their merge.
//!
//! Precedence per setting (and per grid axis): flag, then config file, then
//! the mode's default. The config file comes from `--config`, falling back to
//! the `ICOBR_CONFIG` environment variable.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Deserialize;

use crate::error::CliError;
use crate::grid::AxisSpec;

pub const CONFIG_ENV: &str = "ICOBR_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Build and certify the deterministic scheme at every grid point.
    DetVerify,
    /// Deterministic sum capacity against the outer region.
    DetCapacity,
    /// Symbolic level diagrams of a block.
    DetTrace,
    /// Gaussian bounds, achievable rates and per-point checks.
    GaussRates,
    /// Per-regime worst gaps between outer bound and achievable rate.
    GaussGapAudit,
    /// Rate lost by fixing the duplexing factor at one half.
    DuplexingAudit,
    /// Normalized deterministic capacity over cross-link and relay ratios.
    Fig3,
    /// Whether strong interference beats no interference.
    InterferenceUseful,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::DetVerify => "det-verify",
            Mode::DetCapacity => "det-capacity",
            Mode::DetTrace => "det-trace",
            Mode::GaussRates => "gauss-rates",
            Mode::GaussGapAudit => "gauss-gap-audit",
            Mode::DuplexingAudit => "duplexing-audit",
            Mode::Fig3 => "fig3",
            Mode::InterferenceUseful => "interference-useful",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    /// Aligned level diagrams (det-trace only).
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "icobr", version, about = "Capacity sweeps and audits for the interference channel with an out-of-band relay")]
pub struct Args {
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Grid axis, repeatable: `name=min:max:step`, `name=log:lo:hi:count` or `name=v1,v2,...`.
    #[arg(long = "grid", value_name = "AXIS=SPEC")]
    pub grid: Vec<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    /// TOML config file (falls back to $ICOBR_CONFIG).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    mode: Option<Mode>,
    out: Option<PathBuf>,
    format: Option<Format>,
    workers: Option<usize>,
    #[serde(default)]
    grid: BTreeMap<String, toml::Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub mode: Mode,
    /// Axes given explicitly; missing axes take the mode's defaults.
    pub grid: BTreeMap<String, AxisSpec>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub workers: Option<usize>,
}

fn toml_axis(path: &Path, axis: &str, v: &toml::Value) -> Result<AxisSpec, CliError> {
    let bad = |what: &str| CliError::Config {
        path: path.to_path_buf(),
        message: format!("grid.{axis}: {what}"),
    };
    let scalar = |v: &toml::Value| match v {
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Float(f) => Ok(f.to_string()),
        toml::Value::String(s) => Ok(s.clone()),
        _ => Err(bad("entries must be numbers or strings")),
    };
    match v {
        toml::Value::String(s) => s.parse().map_err(|e: CliError| bad(&e.to_string())),
        toml::Value::Array(items) if !items.is_empty() => {
            Ok(AxisSpec::List(items.iter().map(scalar).collect::<Result<_, _>>()?))
        }
        toml::Value::Integer(_) | toml::Value::Float(_) => Ok(AxisSpec::List(vec![scalar(v)?])),
        _ => Err(bad("expected a spec string, a number, or a non-empty array")),
    }
}

fn load_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| CliError::Config {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

impl SweepConfig {
    /// Merges flags over the config file; `env_config` is the value of `ICOBR_CONFIG`.
    pub fn resolve(args: Args, env_config: Option<PathBuf>) -> Result<Self, CliError> {
        let path = args.config.or(env_config.filter(|p| !p.as_os_str().is_empty()));
        let (file, path) = match path {
            Some(p) => (load_config(&p)?, p),
            None => (ConfigFile::default(), PathBuf::new()),
        };
        let mut grid = BTreeMap::new();
        for (axis, v) in &file.grid {
            grid.insert(axis.clone(), toml_axis(&path, axis, v)?);
        }
        for g in &args.grid {
            let (axis, spec) = g
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("--grid expects AXIS=SPEC, got {g:?}")))?;
            grid.insert(axis.trim().to_string(), spec.parse()?);
        }
        let mode = args
            .mode
            .or(file.mode)
            .ok_or_else(|| CliError::usage("--mode is required (flag or config file)"))?;
        let format = args.format.or(file.format).unwrap_or(if mode == Mode::DetTrace {
            Format::Text
        } else {
            Format::Csv
        });
        let workers = args.workers.or(file.workers);
        if workers == Some(0) {
            return Err(CliError::usage("--workers must be at least 1"));
        }
        Ok(SweepConfig {
            mode,
            grid,
            out: args.out.or(file.out),
            format,
            workers,
        })
    }

    /// The given axis spec, or `default` when the axis was not set.
    pub fn axis(&self, name: &str, default: &str) -> AxisSpec {
        self.grid
            .get(name)
            .cloned()
            .unwrap_or_else(|| default.parse().expect("valid default spec"))
    }

    pub fn check_axes(&self, allowed: &[&str]) -> Result<(), CliError> {
        for axis in self.grid.keys() {
            if !allowed.contains(&axis.as_str()) {
                return Err(CliError::usage(format!(
                    "mode {} has no axis {axis:?}; axes: {}",
                    self.mode.name(),
                    allowed.join(", ")
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn args(v: &[&str]) -> Args {
        Args::parse_from(std::iter::once("icobr").chain(v.iter().copied()))
    }

    #[test]
    fn flags_override_config_per_axis() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            f,
            "mode = \"det-capacity\"\nformat = \"json\"\nworkers = 3\n[grid]\nn_d = \"0:2:1\"\nn_c = [1, 2]"
        )
        .unwrap();
        let p = f.path().to_str().unwrap();
        let c = SweepConfig::resolve(args(&["--config", p, "--grid", "n_d=5", "--format", "csv"]), None).unwrap();
        assert_eq!(c.mode, Mode::DetCapacity);
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.workers, Some(3));
        assert_eq!(c.grid["n_d"], AxisSpec::List(vec!["5".into()]));
        assert_eq!(c.grid["n_c"], AxisSpec::List(vec!["1".into(), "2".into()]));
    }

    #[test]
    fn env_config_is_a_fallback() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "mode = \"fig3\"").unwrap();
        let c = SweepConfig::resolve(args(&[]), Some(f.path().into())).unwrap();
        assert_eq!(c.mode, Mode::Fig3);
        let c = SweepConfig::resolve(args(&["--mode", "det-trace"]), Some(f.path().into())).unwrap();
        assert_eq!(c.mode, Mode::DetTrace);
        assert_eq!(c.format, Format::Text);
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(SweepConfig::resolve(args(&[]), None), Err(CliError::Usage(_))));
        assert!(SweepConfig::resolve(args(&["--mode", "fig3", "--grid", "n_d"]), None).is_err());
        assert!(SweepConfig::resolve(args(&["--mode", "fig3", "--workers", "0"]), None).is_err());
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "mode = \"fig3\"\ncolour = 1").unwrap();
        let e = SweepConfig::resolve(args(&[]), Some(f.path().into())).unwrap_err();
        assert!(matches!(e, CliError::Config { .. }));
    }

    #[test]
    fn mode_names_match_flag_values() {
        for m in Mode::value_variants() {
            assert_eq!(m.to_possible_value().unwrap().get_name(), m.name());
        }
    }
}
