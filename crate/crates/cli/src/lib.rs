//! Subcommand implementations behind the `adaptecc` binary.
//!
//! Every command loads a [`Config`], applies the command-line overrides,
//! renders all of its CSV output in memory and only then writes the files,
//! so a failing run leaves the output directory untouched.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use adaptecc_core::config::{parse_config, parse_config_str, Config};
use adaptecc_core::csv;
use adaptecc_core::gainlab::{ber_sweep, coding_gain_at, BerCurve};
use adaptecc_core::simkernel::{compare_schemes, detail_records, run_simulation, Scheme, SimContext, SimReport};

/// Options shared by every subcommand.
#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub config: Option<PathBuf>,
    pub seed: Option<u64>,
    pub out: PathBuf,
}

pub fn load_config(flags: &Flags) -> Result<Config> {
    let mut cfg = match &flags.config {
        Some(path) => parse_config(path).with_context(|| format!("loading {}", path.display()))?,
        None => parse_config_str("")?,
    };
    if let Some(seed) = flags.seed {
        cfg.field.seed = seed;
    }
    Ok(cfg)
}

fn write_all(out: &Path, files: Vec<(String, String)>) -> Result<Vec<PathBuf>> {
    files
        .into_iter()
        .map(|(name, body)| {
            csv::write_atomic(out, &name, &body).with_context(|| format!("writing {}", out.join(&name).display()))
        })
        .collect()
}

/// File-name stem for a codec label, e.g. `CC-Hard` -> `cc_hard`.
fn stem(label: &str) -> String {
    label.to_ascii_lowercase().replace('-', "_")
}

fn sweeps(cfg: &Config) -> Result<Vec<BerCurve>> {
    let budget = cfg.budget();
    cfg.chains()?
        .iter()
        .map(|chain| Ok(ber_sweep(chain, &cfg.ber_grid_db, &budget, cfg.field.seed, cfg.exec())?))
        .collect()
}

/// BER curves for every chain, one `ber_<codec>.csv` each.
pub fn cmd_ber(cfg: &Config, out: &Path) -> Result<Vec<PathBuf>> {
    let files = sweeps(cfg)?
        .iter()
        .map(|c| (format!("ber_{}.csv", stem(&c.codec_label)), csv::ber_curve(c)))
        .collect();
    write_all(out, files)
}

/// Coding gains at the configured target BER, written to `gains.csv`.
pub fn cmd_gain(cfg: &Config, out: &Path) -> Result<Vec<PathBuf>> {
    let curves = sweeps(cfg)?;
    let (uncoded, coded) = curves.split_first().context("no uncoded curve")?;
    let results = coded
        .iter()
        .map(|c| coding_gain_at(c, uncoded, cfg.target_ber))
        .collect::<Result<Vec<_>, _>>()?;
    write_all(out, vec![("gains.csv".into(), csv::gains(&results))])
}

/// Critical distances of the configured policy, written to `dcr.csv`.
pub fn cmd_dcr(cfg: &Config, out: &Path) -> Result<Vec<PathBuf>> {
    let table = cfg.policy()?;
    write_all(out, vec![("dcr.csv".into(), csv::critical_distances(&table))])
}

fn simulate(cfg: &Config) -> Result<SimReport> {
    let table = cfg.policy()?;
    let ctx = SimContext {
        policy: &table,
        params: &cfg.link,
    };
    Ok(run_simulation(&cfg.field, &Scheme::ALL, &ctx, cfg.exec())?)
}

/// Per-scheme round series (`series_<scheme>.csv`), plus every node record
/// in `detail.csv` when `detail` is set.
pub fn cmd_simulate(cfg: &Config, out: &Path, detail: bool) -> Result<Vec<PathBuf>> {
    let report = simulate(cfg)?;
    let mut files: Vec<(String, String)> = report
        .series
        .iter()
        .map(|s| (format!("series_{}.csv", stem(s.scheme.as_str())), csv::scheme_series(s)))
        .collect();
    if detail {
        let table = cfg.policy()?;
        let ctx = SimContext {
            policy: &table,
            params: &cfg.link,
        };
        let records = detail_records(&cfg.field, &Scheme::ALL, &ctx, cfg.exec())?;
        files.push(("detail.csv".into(), csv::detail(&records)));
    }
    write_all(out, files)
}

/// Final net savings ranked best first, written to `compare.csv`. Returns
/// the CSV text as well so the caller can echo it.
pub fn cmd_compare(cfg: &Config, out: &Path) -> Result<(Vec<PathBuf>, String)> {
    let rows = compare_schemes(&simulate(cfg)?)?;
    let body = csv::comparison(&rows);
    Ok((write_all(out, vec![("compare.csv".into(), body.clone())])?, body))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems() {
        assert_eq!(stem("CC-Hard"), "cc_hard");
        assert_eq!(stem("fixed-RS"), "fixed_rs");
        assert_eq!(stem("uncoded"), "uncoded");
    }

    #[test]
    fn seed_flag_overrides_config() {
        let flags = Flags {
            seed: Some(7),
            ..Flags::default()
        };
        assert_eq!(load_config(&flags).unwrap().field.seed, 7);
        assert_eq!(load_config(&Flags::default()).unwrap().field.seed, 1);
    }

    #[test]
    fn missing_config_names_path() {
        let flags = Flags {
            config: Some(PathBuf::from("/nonexistent/x.conf")),
            ..Flags::default()
        };
        let err = format!("{:#}", load_config(&flags).unwrap_err());
        assert!(err.contains("/nonexistent/x.conf"), "{err}");
    }
}
