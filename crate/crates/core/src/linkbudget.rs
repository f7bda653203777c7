//! Free-space transmit power and per-bit energy accounting.
//!
//! The required transmit power at distance `d` is
//!
//! ```text
//! P_tx = (S/N)_req · m·K·T·B · (4πd/λ)²
//! ```
//!
//! where `(S/N)_req` is either a configured override or `η · Eb/N0`. A code
//! with coding gain `G` dB lowers the required power by `10^(G/10)`. Energy per
//! bit is power divided by the information rate `R`.
//!
//! Everything here works in watts and joules; dB only appears in the inputs
//! that are naturally quoted in dB (noise figure, Eb/N0, coding gain) and in
//! [`watts_to_dbm`].

use std::f64::consts::PI;

use thiserror::Error;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const BOLTZMANN: f64 = 1.380_649e-23;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinkError {
    #[error("invalid parameter `{name}`: {value} ({reason})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
}

fn invalid(name: &'static str, value: f64, reason: &'static str) -> LinkError {
    LinkError::InvalidParameter {
        name,
        value,
        reason,
    }
}

fn require_positive(name: &'static str, value: f64) -> Result<(), LinkError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(invalid(name, value, "must be finite and > 0"))
    }
}

/// Physical parameters of the radio link.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkBudgetParams {
    pub carrier_frequency: f64,
    /// η, information rate over bandwidth.
    pub spectral_efficiency: f64,
    pub ebn0_required_db: f64,
    /// Receiver noise figure; the linear noise factor `m` is derived from it.
    pub noise_figure_db: f64,
    pub boltzmann: f64,
    pub temperature: f64,
    pub bandwidth: f64,
    pub info_rate: f64,
    /// Used verbatim as the required S/N when present.
    pub snr_override: Option<f64>,
    /// Divide coded transmit power by `R · code_rate` instead of `R`.
    pub account_rate_expansion: bool,
}

impl Default for LinkBudgetParams {
    /// 802.15.4 at 2.45 GHz, 250 kbps, NF 5 dB, Eb/N0 6.76 dB, η 0.0030,
    /// S/N 0.0202, 2 MHz channel, 290 K.
    fn default() -> Self {
        LinkBudgetParams {
            carrier_frequency: 2.45e9,
            spectral_efficiency: 0.0030,
            ebn0_required_db: 6.76,
            noise_figure_db: 5.0,
            boltzmann: BOLTZMANN,
            temperature: 290.0,
            bandwidth: 2.0e6,
            info_rate: 250.0e3,
            snr_override: Some(0.0202),
            account_rate_expansion: false,
        }
    }
}

impl LinkBudgetParams {
    pub fn validate(&self) -> Result<(), LinkError> {
        require_positive("carrier_frequency", self.carrier_frequency)?;
        require_positive("spectral_efficiency", self.spectral_efficiency)?;
        require_positive("boltzmann", self.boltzmann)?;
        require_positive("temperature", self.temperature)?;
        require_positive("bandwidth", self.bandwidth)?;
        require_positive("info_rate", self.info_rate)?;
        if !self.ebn0_required_db.is_finite() {
            return Err(invalid("ebn0_required_db", self.ebn0_required_db, "must be finite"));
        }
        if !self.noise_figure_db.is_finite() {
            return Err(invalid("noise_figure_db", self.noise_figure_db, "must be finite"));
        }
        if let Some(snr) = self.snr_override {
            require_positive("snr_override", snr)?;
        }
        Ok(())
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_frequency
    }

    /// Linear noise factor `m`.
    pub fn noise_factor(&self) -> f64 {
        db_to_linear(self.noise_figure_db)
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn watts_to_dbm(w: f64) -> f64 {
    linear_to_db(w) + 30.0
}

/// Receiver noise power `m·K·T·B` in watts.
pub fn noise_power(params: &LinkBudgetParams) -> Result<f64, LinkError> {
    params.validate()?;
    Ok(params.noise_factor() * params.boltzmann * params.temperature * params.bandwidth)
}

/// Required linear S/N at the receiver.
pub fn required_snr(params: &LinkBudgetParams) -> Result<f64, LinkError> {
    params.validate()?;
    Ok(match params.snr_override {
        Some(snr) => snr,
        None => params.spectral_efficiency * db_to_linear(params.ebn0_required_db),
    })
}

fn check_distance(distance: f64) -> Result<(), LinkError> {
    if distance.is_finite() && distance >= 0.0 {
        Ok(())
    } else {
        Err(invalid("distance", distance, "must be finite and >= 0"))
    }
}

/// Transmit power without coding at `distance` meters.
pub fn uncoded_tx_power(distance: f64, params: &LinkBudgetParams) -> Result<f64, LinkError> {
    check_distance(distance)?;
    let path = 4.0 * PI * distance / params.wavelength();
    Ok(required_snr(params)? * noise_power(params)? * path * path)
}

/// Transmit power when a code with `gain_db` of coding gain is used.
pub fn coded_tx_power(distance: f64, gain_db: f64, params: &LinkBudgetParams) -> Result<f64, LinkError> {
    if !(gain_db.is_finite() && gain_db >= 0.0) {
        return Err(invalid("gain_db", gain_db, "must be finite and >= 0"));
    }
    Ok(uncoded_tx_power(distance, params)? / db_to_linear(gain_db))
}

/// Energy per information bit for a transmit power.
pub fn tx_energy_per_bit(power: f64, params: &LinkBudgetParams) -> Result<f64, LinkError> {
    require_positive("info_rate", params.info_rate)?;
    if !(power.is_finite() && power >= 0.0) {
        return Err(invalid("power", power, "must be finite and >= 0"));
    }
    Ok(power / params.info_rate)
}

/// Energy per information bit for coded transmission.
///
/// Same as [`tx_energy_per_bit`] unless `account_rate_expansion` is set, in
/// which case the channel bit rate `R / code_rate` is charged.
pub fn coded_energy_per_bit(power: f64, code_rate: f64, params: &LinkBudgetParams) -> Result<f64, LinkError> {
    let per_bit = tx_energy_per_bit(power, params)?;
    if params.account_rate_expansion {
        if !(code_rate > 0.0 && code_rate <= 1.0) {
            return Err(invalid("code_rate", code_rate, "must be in (0, 1]"));
        }
        Ok(per_bit / code_rate)
    } else {
        Ok(per_bit)
    }
}

pub fn energy_saving(energy_uncoded: f64, energy_coded: f64) -> f64 {
    energy_uncoded - energy_coded
}

/// Per-bit accounting for one transmission.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyRecord {
    pub tx_power_uncoded: f64,
    pub tx_power_coded: f64,
    pub energy_uncoded: f64,
    pub energy_coded: f64,
    pub saving: f64,
}

impl EnergyRecord {
    /// Accounts a transmission at `tx_power_coded` against the uncoded power
    /// needed for the same distance.
    pub fn new(
        tx_power_uncoded: f64,
        tx_power_coded: f64,
        code_rate: f64,
        params: &LinkBudgetParams,
    ) -> Result<Self, LinkError> {
        let energy_uncoded = tx_energy_per_bit(tx_power_uncoded, params)?;
        let energy_coded = coded_energy_per_bit(tx_power_coded, code_rate, params)?;
        Ok(EnergyRecord {
            tx_power_uncoded,
            tx_power_coded,
            energy_uncoded,
            energy_coded,
            saving: energy_saving(energy_uncoded, energy_coded),
        })
    }

    pub fn at_distance(distance: f64, gain_db: f64, code_rate: f64, params: &LinkBudgetParams) -> Result<Self, LinkError> {
        let pu = uncoded_tx_power(distance, params)?;
        let pc = coded_tx_power(distance, gain_db, params)?;
        Self::new(pu, pc, code_rate, params)
    }
}
