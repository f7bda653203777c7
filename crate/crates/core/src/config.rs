//! Flat `key = value` configuration.
//!
//! One assignment per line; `#` starts a comment; blank lines are ignored.
//! Unknown keys, repeated keys, unparsable values and out-of-range values are
//! rejected with the offending key and line number. Every key is optional and
//! falls back to the default listed in [`KEYS`].

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::codecs::gf::default_primitive_poly;
use crate::codecs::{CodecError, ConvCodec, ConvSpec, RsCodec, RsSpec};
use crate::exec::Exec;
use crate::gainlab::{linear_grid, BerBudget, Chain};
use crate::linkbudget::LinkBudgetParams;
use crate::policy::{build_policy, CodecLabel, CodecProfile, PolicyError, PolicyTable};
use crate::simkernel::FieldConfig;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { key: String, line: usize },
    #[error("line {line}: key `{key}` given more than once")]
    Duplicate { key: String, line: usize },
    #[error("line {line}: cannot parse `{key}` value `{value}`: {reason}")]
    Parse {
        key: String,
        line: usize,
        value: String,
        reason: String,
    },
    #[error("line {line}: `{key}` out of range: {reason}")]
    Range { key: String, line: usize, reason: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// Every accepted key with its default, in the order of the shipped file.
pub const KEYS: &[(&str, &str)] = &[
    ("frequency_hz", "2.45e9"),
    ("data_rate_bps", "250e3"),
    ("noise_figure_db", "5"),
    ("ebn0_db", "6.76"),
    ("eta", "0.0030"),
    ("snr", "0.0202"),
    ("bandwidth_hz", "2e6"),
    ("temperature_k", "290"),
    ("boltzmann_j_per_k", "1.380649e-23"),
    ("account_rate_expansion", "false"),
    ("rs_symbol_bits", "5"),
    ("rs_n", "31"),
    ("rs_k", "21"),
    ("rs_field_poly", "default"),
    ("rs_first_root", "1"),
    ("conv_constraint_length", "7"),
    ("conv_generators", "171,133"),
    ("conv_terminated", "true"),
    ("frame_bytes", "127"),
    ("gain_rs_db", "1.44"),
    ("gain_cch_db", "2.13"),
    ("gain_ccs_db", "4.13"),
    ("decoder_energy_rs_j", "1.5e-15"),
    ("decoder_energy_cch_j", "5e-15"),
    ("decoder_energy_ccs_j", "1.5e-14"),
    ("target_ber", "1e-3"),
    ("boost_margin_db", "0"),
    ("area_width_m", "100"),
    ("area_height_m", "100"),
    ("nodes", "500"),
    ("rounds", "100"),
    ("seed", "1"),
    ("static_deployment", "false"),
    ("ber_grid_db", "0:8:0.5"),
    ("ber_min_bits", "200000"),
    ("ber_min_errors", "100"),
    ("ber_max_bits", "2000000"),
    ("parallel", "true"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub link: LinkBudgetParams,
    pub rs: RsSpec,
    pub conv: ConvSpec,
    pub frame_bytes: usize,
    /// Coding gains in dB, RS / CC-Hard / CC-Soft.
    pub gains_db: [f64; 3],
    /// Decoder energy per bit in joules, RS / CC-Hard / CC-Soft.
    pub decoder_energy_j: [f64; 3],
    pub target_ber: f64,
    pub boost_margin_db: f64,
    pub field: FieldConfig,
    pub ber_grid_db: Vec<f64>,
    pub ber_min_bits: u64,
    pub ber_min_errors: u64,
    pub ber_max_bits: u64,
    pub parallel: bool,
}

impl Default for Config {
    fn default() -> Self {
        parse_config_str("").expect("built-in defaults are valid")
    }
}

impl Config {
    pub fn exec(&self) -> Exec {
        Exec::from_flag(self.parallel)
    }

    pub fn budget(&self) -> BerBudget {
        BerBudget {
            min_bits: self.ber_min_bits,
            min_errors: self.ber_min_errors,
            max_bits: self.ber_max_bits,
            frame_bits: self.frame_bytes * 8,
            ..BerBudget::default()
        }
    }

    /// Uncoded, RS, CC-Hard, CC-Soft.
    pub fn chains(&self) -> Result<Vec<Chain>, CodecError> {
        let rs = RsCodec::new(self.rs)?;
        let conv = ConvCodec::new(self.conv.clone())?;
        Ok(vec![Chain::Uncoded, Chain::Rs(rs), Chain::ConvHard(conv.clone()), Chain::ConvSoft(conv)])
    }

    pub fn profiles(&self) -> [CodecProfile; 3] {
        let rates = [self.rs.rate(), self.conv.rate(), self.conv.rate()];
        [0, 1, 2].map(|i| CodecProfile {
            label: CodecLabel::ALL[i],
            gain_db: self.gains_db[i],
            code_rate: rates[i],
            decoder_energy_per_bit: self.decoder_energy_j[i],
        })
    }

    pub fn policy(&self) -> Result<PolicyTable, PolicyError> {
        build_policy(&self.profiles(), &self.link, self.boost_margin_db)
    }
}

pub fn parse_config(path: &Path) -> Result<Config, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config_str(&text)
}

struct Entry<'a> {
    key: &'static str,
    line: usize,
    value: &'a str,
}

impl Entry<'_> {
    fn parse_err(&self, reason: impl ToString) -> ConfigError {
        ConfigError::Parse {
            key: self.key.into(),
            line: self.line,
            value: self.value.into(),
            reason: reason.to_string(),
        }
    }

    fn range_err(&self, reason: impl Into<String>) -> ConfigError {
        ConfigError::Range {
            key: self.key.into(),
            line: self.line,
            reason: reason.into(),
        }
    }

    fn f64(&self) -> Result<f64, ConfigError> {
        let v: f64 = self.value.parse().map_err(|e| self.parse_err(e))?;
        if !v.is_finite() {
            return Err(self.range_err("must be finite"));
        }
        Ok(v)
    }

    fn positive(&self) -> Result<f64, ConfigError> {
        let v = self.f64()?;
        if v <= 0.0 {
            return Err(self.range_err(format!("{v} must be > 0")));
        }
        Ok(v)
    }

    fn non_negative(&self) -> Result<f64, ConfigError> {
        let v = self.f64()?;
        if v < 0.0 {
            return Err(self.range_err(format!("{v} must be >= 0")));
        }
        Ok(v)
    }

    /// Integer in `[min, max]`; negative input is a range error, not a parse
    /// error.
    fn int(&self, min: i128, max: i128) -> Result<i128, ConfigError> {
        let v: i128 = self.value.parse().map_err(|e| self.parse_err(e))?;
        if v < min || v > max {
            return Err(self.range_err(format!("{v} outside [{min}, {max}]")));
        }
        Ok(v)
    }

    fn bool(&self) -> Result<bool, ConfigError> {
        match self.value {
            "true" | "yes" | "on" | "1" => Ok(true),
            "false" | "no" | "off" | "0" => Ok(false),
            _ => Err(self.parse_err("expected true or false")),
        }
    }
}

fn parse_grid(e: &Entry<'_>) -> Result<Vec<f64>, ConfigError> {
    let grid = if e.value.contains(':') {
        let parts: Vec<&str> = e.value.split(':').collect();
        if parts.len() != 3 {
            return Err(e.parse_err("expected start:stop:step"));
        }
        let nums = parts
            .iter()
            .map(|p| p.trim().parse::<f64>().map_err(|x| e.parse_err(x)))
            .collect::<Result<Vec<_>, _>>()?;
        if nums.iter().any(|x| !x.is_finite()) || nums[2] <= 0.0 || nums[1] < nums[0] {
            return Err(e.range_err("need finite start <= stop and step > 0"));
        }
        linear_grid(nums[0], nums[1], nums[2])
    } else {
        e.value
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|x| e.parse_err(x)))
            .collect::<Result<Vec<_>, _>>()?
    };
    if grid.is_empty() || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(e.range_err("grid must be non-empty and strictly increasing"));
    }
    Ok(grid)
}

fn parse_generators(e: &Entry<'_>) -> Result<Vec<u32>, ConfigError> {
    e.value
        .split(',')
        .map(|g| u32::from_str_radix(g.trim(), 8).map_err(|x| e.parse_err(format!("octal generator: {x}"))))
        .collect()
}

fn parse_poly(e: &Entry<'_>) -> Result<Option<u32>, ConfigError> {
    if e.value == "default" {
        return Ok(None);
    }
    let parsed = match e.value.strip_prefix("0x") {
        Some(hex) => u32::from_str_radix(hex, 16),
        None => e.value.parse(),
    };
    parsed.map(Some).map_err(|x| e.parse_err(x))
}

pub fn parse_config_str(text: &str) -> Result<Config, ConfigError> {
    let mut given: Vec<Entry<'_>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let (key, value) = (key.trim(), value.trim());
        let known = KEYS
            .iter()
            .find(|(k, _)| *k == key)
            .ok_or_else(|| ConfigError::UnknownKey { key: key.into(), line })?
            .0;
        if given.iter().any(|e| e.key == known) {
            return Err(ConfigError::Duplicate { key: key.into(), line });
        }
        given.push(Entry { key: known, line, value });
    }
    let entry = |key: &'static str| -> Entry<'_> {
        given
            .iter()
            .find(|e| e.key == key)
            .map(|e| Entry { key, line: e.line, value: e.value })
            .unwrap_or_else(|| Entry {
                key,
                line: 0,
                value: KEYS.iter().find(|(k, _)| *k == key).expect("known key").1,
            })
    };

    let snr = {
        let e = entry("snr");
        if e.value == "none" {
            None
        } else {
            Some(e.positive()?)
        }
    };
    let link = LinkBudgetParams {
        carrier_frequency: entry("frequency_hz").positive()?,
        spectral_efficiency: entry("eta").positive()?,
        ebn0_required_db: entry("ebn0_db").f64()?,
        noise_figure_db: entry("noise_figure_db").f64()?,
        boltzmann: entry("boltzmann_j_per_k").positive()?,
        temperature: entry("temperature_k").positive()?,
        bandwidth: entry("bandwidth_hz").positive()?,
        info_rate: entry("data_rate_bps").positive()?,
        snr_override: snr,
        account_rate_expansion: entry("account_rate_expansion").bool()?,
    };

    let symbol_bits = entry("rs_symbol_bits").int(2, 8)? as u32;
    let rs = RsSpec {
        symbol_bits,
        n: entry("rs_n").int(2, 255)? as usize,
        k: entry("rs_k").int(1, 254)? as usize,
        field_poly: parse_poly(&entry("rs_field_poly"))?
            .unwrap_or_else(|| default_primitive_poly(symbol_bits).expect("2..=8 has a default")),
        first_root: entry("rs_first_root").int(0, 254)? as u32,
    };
    RsCodec::new(rs).map_err(|e| ConfigError::Invalid(e.to_string()))?;

    let conv = ConvSpec {
        constraint_length: entry("conv_constraint_length").int(2, 12)? as u32,
        generators: parse_generators(&entry("conv_generators"))?,
        terminated: entry("conv_terminated").bool()?,
    };
    ConvCodec::new(conv.clone()).map_err(|e| ConfigError::Invalid(e.to_string()))?;

    let target = entry("target_ber");
    let target_ber = target.f64()?;
    if !(target_ber > 0.0 && target_ber < 1.0) {
        return Err(target.range_err(format!("{target_ber} outside (0, 1)")));
    }

    let min_bits = entry("ber_min_bits").int(1, u64::MAX as i128)? as u64;
    let max_entry = entry("ber_max_bits");
    let max_bits = max_entry.int(1, u64::MAX as i128)? as u64;
    if max_bits < min_bits {
        return Err(max_entry.range_err("must be >= ber_min_bits"));
    }

    let config = Config {
        link,
        rs,
        conv,
        frame_bytes: entry("frame_bytes").int(1, 1 << 20)? as usize,
        gains_db: [
            entry("gain_rs_db").non_negative()?,
            entry("gain_cch_db").non_negative()?,
            entry("gain_ccs_db").non_negative()?,
        ],
        decoder_energy_j: [
            entry("decoder_energy_rs_j").non_negative()?,
            entry("decoder_energy_cch_j").non_negative()?,
            entry("decoder_energy_ccs_j").non_negative()?,
        ],
        target_ber,
        boost_margin_db: entry("boost_margin_db").non_negative()?,
        field: FieldConfig {
            width: entry("area_width_m").positive()?,
            height: entry("area_height_m").positive()?,
            nodes: entry("nodes").int(1, u32::MAX as i128)? as usize,
            rounds: entry("rounds").int(1, u32::MAX as i128)? as usize,
            seed: entry("seed").int(0, u64::MAX as i128)? as u64,
            static_deployment: entry("static_deployment").bool()?,
        },
        ber_grid_db: parse_grid(&entry("ber_grid_db"))?,
        ber_min_bits: min_bits,
        ber_min_errors: entry("ber_min_errors").int(0, u64::MAX as i128)? as u64,
        ber_max_bits: max_bits,
        parallel: entry("parallel").bool()?,
    };
    Ok(config)
}

/// The default configuration as a commented file.
pub fn default_config_text() -> String {
    let mut out = String::from("# adaptecc configuration; every key is optional\n");
    for (k, v) in KEYS {
        out.push_str(&format!("{k} = {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = parse_config_str("").unwrap();
        assert_eq!(c.link.carrier_frequency, 2.45e9);
        assert_eq!(c.link.info_rate, 250e3);
        assert_eq!(c.link.noise_figure_db, 5.0);
        assert_eq!(c.link.ebn0_required_db, 6.76);
        assert_eq!(c.link.snr_override, Some(0.0202));
        assert_eq!(c.link.spectral_efficiency, 0.0030);
        assert_eq!(c.rs, RsSpec::default());
        assert_eq!(c.conv, ConvSpec::default());
        assert_eq!(c.field, FieldConfig::default());
        assert_eq!(c.ber_grid_db.len(), 17);
        assert_eq!(c.link, LinkBudgetParams::default());
    }

    #[test]
    fn default_text_roundtrips() {
        assert_eq!(parse_config_str(&default_config_text()).unwrap(), Config::default());
    }

    #[test]
    fn negative_nodes_is_range_error() {
        match parse_config_str("nodes = -1") {
            Err(ConfigError::Range { key, line, .. }) => assert_eq!((key.as_str(), line), ("nodes", 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors_name_key_and_line() {
        let err = parse_config_str("# c\nseed = 3\nbogus = 1\n").unwrap_err();
        assert!(matches!(&err, ConfigError::UnknownKey { key, line: 3 } if key == "bogus"));
        let err = parse_config_str("seed = x").unwrap_err();
        assert!(err.to_string().contains("seed") && err.to_string().contains("line 1"));
        assert!(matches!(parse_config_str("seed = 1\nseed = 2"), Err(ConfigError::Duplicate { line: 2, .. })));
        assert!(matches!(parse_config_str("seed 1"), Err(ConfigError::Syntax { line: 1 })));
        assert!(matches!(parse_config_str("target_ber = 2"), Err(ConfigError::Range { .. })));
        assert!(matches!(parse_config_str("frequency_hz = 0"), Err(ConfigError::Range { .. })));
        assert!(matches!(parse_config_str("rs_k = 40"), Err(ConfigError::Invalid(_))));
        assert!(matches!(parse_config_str("conv_generators = 171,9"), Err(ConfigError::Parse { .. })));
    }

    #[test]
    fn overrides_apply() {
        let c = parse_config_str(
            "snr = none\nrs_symbol_bits = 3\nrs_n = 7\nrs_k = 3\nconv_constraint_length = 3\nconv_generators = 7, 5\nber_grid_db = 1, 2.5, 4\nstatic_deployment = true\naccount_rate_expansion = yes # trailing\n",
        )
        .unwrap();
        assert_eq!(c.link.snr_override, None);
        assert_eq!(c.rs, RsSpec::new(3, 7, 3));
        assert_eq!(c.conv.generators, vec![0o7, 0o5]);
        assert_eq!(c.ber_grid_db, vec![1.0, 2.5, 4.0]);
        assert!(c.field.static_deployment && c.link.account_rate_expansion);
    }

    #[test]
    fn rs_poly_hex() {
        let c = parse_config_str("rs_symbol_bits = 8\nrs_n = 255\nrs_k = 223\nrs_field_poly = 0x11d").unwrap();
        assert_eq!(c.rs.field_poly, 0x11D);
    }

    #[test]
    fn default_policy_builds() {
        let c = Config::default();
        let t = c.policy().unwrap();
        let [a, b, d] = t.thresholds();
        assert!(0.0 < a && a < b && b < d);
    }
}
