//! Flag and config-file resolution.

use std::path::{Path, PathBuf};

use clap::Args;
use hnstrat::{Cocharacter, GroupDatum, NewtonPoint, Rational};
use serde::Deserialize;

use crate::error::CliError;
use crate::output::Format;
use crate::parse;

/// Options shared by every subcommand. Any of them may also come from the
/// TOML file given by `--config`; flags win on conflict.
#[derive(Args, Debug, Default, Clone)]
pub struct Options {
    /// Group as gl:N
    #[arg(long, global = true, value_name = "gl:N")]
    pub group: Option<String>,

    /// Degree of the basic class defining the inner form (0 = split)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub twist: Option<i64>,

    /// Cocharacter mu as a comma separated integer list, in any order
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "LIST")]
    pub mu: Option<String>,

    /// Newton point as a comma separated list of p/q, weakly decreasing
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "LIST")]
    pub nu: Option<String>,

    /// Basic isocrystal as simple blocks d/h,d/h,...
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "BLOCKS")]
    pub b: Option<String>,

    /// Block-scalar modification as d/h:a,... (twist a defaults to 0)
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "BLOCKS")]
    pub instance: Option<String>,

    /// Standard Levi as block sizes n1,n2,...
    #[arg(long, global = true, value_name = "SIZES")]
    pub levi: Option<String>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Also report the bound computed with 2rho next to the rho bound
    #[arg(long, global = true)]
    pub strict_paper: bool,

    /// Recompute results by brute force and fail on any mismatch
    #[arg(long, global = true)]
    pub oracle: bool,

    /// Worker threads for per-class sweeps (0 = all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// TOML file with defaults for the options above
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    group: Option<String>,
    twist: Option<i64>,
    mu: Option<String>,
    nu: Option<String>,
    b: Option<String>,
    instance: Option<String>,
    levi: Option<String>,
    format: Option<Format>,
    strict_paper: Option<bool>,
    oracle: Option<bool>,
    jobs: Option<usize>,
}

fn read_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
}

/// Fully parsed options.
#[derive(Debug, Clone)]
pub struct Settings {
    rank: Option<usize>,
    twist: i64,
    mu: Option<Vec<i64>>,
    nu: Option<Vec<Rational>>,
    b: Option<Vec<(i64, i64)>>,
    instance: Option<Vec<(i64, i64, i64)>>,
    levi: Option<Vec<usize>>,
    pub format: Format,
    pub strict_paper: bool,
    pub oracle: bool,
    pub jobs: usize,
}

fn parsed<T>(
    flag: &str,
    raw: Option<String>,
    f: fn(&str) -> Result<T, String>,
) -> Result<Option<T>, CliError> {
    raw.map(|s| f(&s).map_err(|e| CliError::Usage(format!("--{flag}: {e}"))))
        .transpose()
}

impl Settings {
    pub fn resolve(opts: Options) -> Result<Self, CliError> {
        let file = match &opts.config {
            Some(path) => read_config(path)?,
            None => FileConfig::default(),
        };
        Ok(Self {
            rank: parsed("group", opts.group.or(file.group), parse::group)?,
            twist: opts.twist.or(file.twist).unwrap_or(0),
            mu: parsed("mu", opts.mu.or(file.mu), parse::integers)?,
            nu: parsed("nu", opts.nu.or(file.nu), parse::rationals)?,
            b: parsed("b", opts.b.or(file.b), parse::blocks)?,
            instance: parsed("instance", opts.instance.or(file.instance), parse::instance)?,
            levi: parsed("levi", opts.levi.or(file.levi), parse::parts)?,
            format: opts.format.or(file.format).unwrap_or_default(),
            strict_paper: opts.strict_paper || file.strict_paper.unwrap_or(false),
            oracle: opts.oracle || file.oracle.unwrap_or(false),
            jobs: opts.jobs.or(file.jobs).unwrap_or(0),
        })
    }

    fn missing(flag: &str) -> CliError {
        CliError::Usage(format!("--{flag} is required for this command"))
    }

    pub fn group(&self) -> Result<GroupDatum, CliError> {
        let n = self.rank.ok_or_else(|| Self::missing("group"))?;
        Ok(GroupDatum::new(n, self.twist)?)
    }

    pub fn has_group(&self) -> bool {
        self.rank.is_some()
    }

    /// `mu` as entered, checked against the rank of `g` when given.
    pub fn mu(&self, g: Option<&GroupDatum>) -> Result<Cocharacter, CliError> {
        let raw = self.mu.clone().ok_or_else(|| Self::missing("mu"))?;
        if raw.is_empty() {
            return Err(CliError::Usage("--mu is empty".into()));
        }
        if let Some(g) = g {
            if raw.len() != g.n {
                return Err(CliError::Domain(format!(
                    "mu has {} entries but the group has rank {}",
                    raw.len(),
                    g.n
                )));
            }
        }
        Ok(Cocharacter::new(raw)?)
    }

    pub fn nu(&self) -> Result<NewtonPoint, CliError> {
        let raw = self.nu.clone().ok_or_else(|| Self::missing("nu"))?;
        Ok(NewtonPoint::new(raw)?)
    }

    pub fn has_nu(&self) -> bool {
        self.nu.is_some()
    }

    pub fn b(&self) -> Result<Vec<(i64, i64)>, CliError> {
        self.b.clone().ok_or_else(|| Self::missing("b"))
    }

    pub fn instance(&self) -> Result<Vec<(i64, i64, i64)>, CliError> {
        self.instance
            .clone()
            .ok_or_else(|| Self::missing("instance"))
    }

    pub fn levi(&self) -> Option<&[usize]> {
        self.levi.as_deref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(
            &path,
            "group = \"gl:3\"\nmu = \"1,0,0\"\nformat = \"csv\"\noracle = true\n",
        )
        .unwrap();
        let opts = Options {
            mu: Some("2,0,0".into()),
            config: Some(path),
            ..Options::default()
        };
        let s = Settings::resolve(opts).unwrap();
        assert_eq!(s.group().unwrap(), GroupDatum::split(3).unwrap());
        assert_eq!(s.mu(None).unwrap().entries(), &[2, 0, 0]);
        assert_eq!(s.format, Format::Csv);
        assert!(s.oracle);
    }

    #[test]
    fn unknown_keys_are_usage_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "colour = 1\n").unwrap();
        let err = Settings::resolve(Options {
            config: Some(path),
            ..Options::default()
        })
        .unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
    }

    #[test]
    fn malformed_lists_are_usage_errors() {
        let opts = Options {
            nu: Some("1/2,x".into()),
            ..Options::default()
        };
        assert!(matches!(Settings::resolve(opts), Err(CliError::Usage(_))));
    }
}
