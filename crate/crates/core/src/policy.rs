//! Critical distances and distance-driven codec selection.
//!
//! Coding saves `ΔE(d) = (P_U(d)/R)·(1 − 10^(−G/10))` of transmit energy per
//! bit but costs `E_dec` per bit at the decoder. The critical distance of a
//! codec is where the two are equal; `ΔE` grows with `d²`, so the solution is
//! closed-form.
//!
//! With three codecs ordered by coding gain (RS, CC-Hard, CC-Soft) and their
//! critical distances `D_RS < D_CCH < D_CCS`, selection is piecewise:
//!
//! | distance                 | codec   | transmit power            |
//! |--------------------------|---------|---------------------------|
//! | `d ≤ D_RS`               | RS      | coded power               |
//! | `D_RS < d ≤ D_CCH`       | CC-Hard | coded power               |
//! | `D_CCH < d ≤ D_CCS`      | CC-Soft | coded power               |
//! | `d > D_CCS`              | CC-Soft | coded power + boost margin|
//!
//! Ties at a threshold go to the lower-gain codec.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linkbudget::{self, db_to_linear, LinkBudgetParams, LinkError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolicyError {
    #[error("policy configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Link(#[from] LinkError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodecLabel {
    Rs,
    CcHard,
    CcSoft,
}

impl CodecLabel {
    pub const ALL: [CodecLabel; 3] = [CodecLabel::Rs, CodecLabel::CcHard, CodecLabel::CcSoft];

    pub fn as_str(self) -> &'static str {
        match self {
            CodecLabel::Rs => "RS",
            CodecLabel::CcHard => "CC-Hard",
            CodecLabel::CcSoft => "CC-Soft",
        }
    }
}

impl fmt::Display for CodecLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodecLabel {
    type Err = PolicyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "RS" | "rs" => Ok(CodecLabel::Rs),
            "CC-Hard" | "cc-hard" | "cch" => Ok(CodecLabel::CcHard),
            "CC-Soft" | "cc-soft" | "ccs" => Ok(CodecLabel::CcSoft),
            other => Err(PolicyError::Config(format!("unknown codec label `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodecProfile {
    pub label: CodecLabel,
    pub gain_db: f64,
    pub code_rate: f64,
    pub decoder_energy_per_bit: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalDistance {
    Finite(f64),
    /// No distance makes the transmit saving cover the decoder energy.
    Unreachable,
}

impl CriticalDistance {
    /// Unreachable maps to `+∞`.
    pub fn meters(self) -> f64 {
        match self {
            CriticalDistance::Finite(d) => d,
            CriticalDistance::Unreachable => f64::INFINITY,
        }
    }
}

/// Fraction of the uncoded per-bit energy that a codec saves at any distance.
pub fn saving_fraction(profile: &CodecProfile, params: &LinkBudgetParams) -> f64 {
    let residual = 1.0 / db_to_linear(profile.gain_db);
    if params.account_rate_expansion {
        1.0 - residual / profile.code_rate
    } else {
        1.0 - residual
    }
}

/// Net per-bit benefit of a codec at distance `d`: transmit saving minus
/// decoder energy.
pub fn net_benefit(profile: &CodecProfile, distance: f64, params: &LinkBudgetParams) -> Result<f64, PolicyError> {
    let rec = linkbudget::EnergyRecord::at_distance(distance, profile.gain_db, profile.code_rate, params)?;
    Ok(rec.saving - profile.decoder_energy_per_bit)
}

fn validate_profile(profile: &CodecProfile) -> Result<(), PolicyError> {
    if !(profile.gain_db.is_finite() && profile.gain_db >= 0.0) {
        return Err(PolicyError::Config(format!("{}: gain_db {} must be >= 0", profile.label, profile.gain_db)));
    }
    if !(profile.decoder_energy_per_bit.is_finite() && profile.decoder_energy_per_bit >= 0.0) {
        return Err(PolicyError::Config(format!(
            "{}: decoder energy {} must be >= 0",
            profile.label, profile.decoder_energy_per_bit
        )));
    }
    if !(profile.code_rate > 0.0 && profile.code_rate <= 1.0) {
        return Err(PolicyError::Config(format!(
            "{}: code rate {} outside (0, 1]",
            profile.label, profile.code_rate
        )));
    }
    Ok(())
}

/// Distance at which the transmit-energy saving equals the decoder energy.
pub fn critical_distance(profile: &CodecProfile, params: &LinkBudgetParams) -> Result<CriticalDistance, PolicyError> {
    validate_profile(profile)?;
    params.validate()?;
    if profile.decoder_energy_per_bit == 0.0 {
        return Ok(CriticalDistance::Finite(0.0));
    }
    let fraction = saving_fraction(profile, params);
    if fraction <= 0.0 {
        return Ok(CriticalDistance::Unreachable);
    }
    let snr = linkbudget::required_snr(params)?;
    let noise = linkbudget::noise_power(params)?;
    let lambda = params.wavelength();
    let d2 = profile.decoder_energy_per_bit * params.info_rate * lambda * lambda
        / (snr * noise * (4.0 * PI).powi(2) * fraction);
    Ok(CriticalDistance::Finite(d2.sqrt()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyEntry {
    pub profile: CodecProfile,
    pub critical_distance: CriticalDistance,
}

/// Three codecs ordered by gain with strictly increasing critical distances.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyTable {
    entries: Vec<PolicyEntry>,
    boost_margin_db: f64,
}

impl PolicyTable {
    pub fn entries(&self) -> &[PolicyEntry] {
        &self.entries
    }

    pub fn boost_margin_db(&self) -> f64 {
        self.boost_margin_db
    }

    /// Critical distances in ascending gain order.
    pub fn thresholds(&self) -> [f64; 3] {
        [0, 1, 2].map(|i| self.entries[i].critical_distance.meters())
    }

    pub fn profile(&self, label: CodecLabel) -> &CodecProfile {
        &self
            .entries
            .iter()
            .find(|e| e.profile.label == label)
            .expect("policy table holds all three codecs")
            .profile
    }
}

pub fn build_policy(
    profiles: &[CodecProfile],
    params: &LinkBudgetParams,
    boost_margin_db: f64,
) -> Result<PolicyTable, PolicyError> {
    if profiles.len() != 3 {
        return Err(PolicyError::Config(format!("expected exactly 3 codec profiles, got {}", profiles.len())));
    }
    for (i, a) in profiles.iter().enumerate() {
        if profiles[..i].iter().any(|b| b.label == a.label) {
            return Err(PolicyError::Config(format!("duplicate codec label {}", a.label)));
        }
    }
    if !(boost_margin_db.is_finite() && boost_margin_db >= 0.0) {
        return Err(PolicyError::Config(format!("boost margin {boost_margin_db} dB must be >= 0")));
    }
    let mut entries = profiles
        .iter()
        .map(|p| {
            Ok(PolicyEntry {
                profile: *p,
                critical_distance: critical_distance(p, params)?,
            })
        })
        .collect::<Result<Vec<_>, PolicyError>>()?;
    entries.sort_by(|a, b| a.profile.gain_db.total_cmp(&b.profile.gain_db));
    for w in entries.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        if hi.profile.gain_db <= lo.profile.gain_db {
            return Err(PolicyError::Config(format!(
                "gains of {} and {} must be strictly increasing ({} dB vs {} dB)",
                lo.profile.label, hi.profile.label, lo.profile.gain_db, hi.profile.gain_db
            )));
        }
        if hi.critical_distance.meters() <= lo.critical_distance.meters() {
            return Err(PolicyError::Config(format!(
                "critical distances of {} and {} must be strictly increasing ({} m vs {} m)",
                lo.profile.label,
                hi.profile.label,
                lo.critical_distance.meters(),
                hi.critical_distance.meters()
            )));
        }
    }
    Ok(PolicyTable { entries, boost_margin_db })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub label: CodecLabel,
    pub gain_db: f64,
    pub tx_power: f64,
    pub boosted: bool,
}

pub fn select(distance: f64, table: &PolicyTable, params: &LinkBudgetParams) -> Result<Selection, PolicyError> {
    let [_, _, top] = table.thresholds();
    let entry = table
        .entries
        .iter()
        .find(|e| distance <= e.critical_distance.meters())
        .unwrap_or(&table.entries[2]);
    let boosted = distance > top;
    let mut tx_power = linkbudget::coded_tx_power(distance, entry.profile.gain_db, params)?;
    if boosted {
        tx_power *= db_to_linear(table.boost_margin_db);
    }
    Ok(Selection {
        label: entry.profile.label,
        gain_db: entry.profile.gain_db,
        tx_power,
        boosted,
    })
}
