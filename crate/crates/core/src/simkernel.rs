//! Multi-round sensor-field simulation.
//!
//! Nodes live in a `width × height` field with the sink at the origin corner.
//! Each round every node is placed uniformly at random (or kept at its initial
//! position with `static_deployment`), its distance to the sink is computed,
//! and each scheme picks a codec and transmit power for that distance. Node
//! `j` in round `r` draws from its own RNG stream, so positions are the same
//! for every scheme and independent of execution order.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::exec::Exec;
use crate::linkbudget::{self, EnergyRecord, LinkBudgetParams, LinkError};
use crate::policy::{self, CodecLabel, PolicyError, PolicyTable};
use crate::rng::stream_rng;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("simulation configuration error: {0}")]
    Config(String),
    #[error("comparison error: {0}")]
    Comparison(String),
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    Link(#[from] LinkError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Adaptive,
    FixedRs,
    FixedCcHard,
    FixedCcSoft,
    Uncoded,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Adaptive,
        Scheme::FixedRs,
        Scheme::FixedCcHard,
        Scheme::FixedCcSoft,
        Scheme::Uncoded,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Adaptive => "adaptive",
            Scheme::FixedRs => "fixed-RS",
            Scheme::FixedCcHard => "fixed-CCH",
            Scheme::FixedCcSoft => "fixed-CCS",
            Scheme::Uncoded => "uncoded",
        }
    }

    fn fixed_codec(self) -> Option<CodecLabel> {
        match self {
            Scheme::FixedRs => Some(CodecLabel::Rs),
            Scheme::FixedCcHard => Some(CodecLabel::CcHard),
            Scheme::FixedCcSoft => Some(CodecLabel::CcSoft),
            _ => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| SimError::Config(format!("unknown scheme `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldConfig {
    pub width: f64,
    pub height: f64,
    pub nodes: usize,
    pub rounds: usize,
    pub seed: u64,
    pub static_deployment: bool,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            width: 100.0,
            height: 100.0,
            nodes: 500,
            rounds: 100,
            seed: 1,
            static_deployment: false,
        }
    }
}

impl FieldConfig {
    fn validate(&self) -> Result<(), SimError> {
        if !(self.width.is_finite() && self.width > 0.0 && self.height.is_finite() && self.height > 0.0) {
            return Err(SimError::Config(format!("field {} x {} must be positive", self.width, self.height)));
        }
        if self.nodes == 0 {
            return Err(SimError::Config("node count must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub width: f64,
    pub height: f64,
    pub seed: u64,
    pub static_deployment: bool,
    /// Initial node positions; the sink sits at `(0, 0)`.
    pub positions: Vec<(f64, f64)>,
}

/// Uniform position in `(0, w] × (0, h]`, which keeps the distance to the
/// corner sink strictly positive.
fn draw_position<R: Rng>(rng: &mut R, width: f64, height: f64) -> (f64, f64) {
    let x = width * (1.0 - rng.random::<f64>());
    let y = height * (1.0 - rng.random::<f64>());
    (x, y)
}

fn node_stream(round: usize, node: usize) -> u64 {
    ((round as u64) << 32) | node as u64
}

/// Initial deployment: node `j` draws from stream `(0, j)`.
pub fn deploy(config: &FieldConfig) -> Result<Deployment, SimError> {
    config.validate()?;
    let positions = (0..config.nodes)
        .map(|j| draw_position(&mut stream_rng(config.seed, node_stream(0, j)), config.width, config.height))
        .collect();
    Ok(Deployment {
        width: config.width,
        height: config.height,
        seed: config.seed,
        static_deployment: config.static_deployment,
        positions,
    })
}

impl Deployment {
    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    /// Position of `node` in `round` (0-based). Round 0 uses the initial
    /// deployment; later rounds redraw unless the deployment is static.
    pub fn position(&self, round: usize, node: usize) -> (f64, f64) {
        if round == 0 || self.static_deployment {
            self.positions[node]
        } else {
            draw_position(&mut stream_rng(self.seed, node_stream(round, node)), self.width, self.height)
        }
    }

    pub fn distance(&self, round: usize, node: usize) -> f64 {
        let (x, y) = self.position(round, node);
        x.hypot(y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub round: usize,
    pub node: usize,
    pub distance: f64,
    pub scheme: Scheme,
    pub codec: Option<CodecLabel>,
    pub boosted: bool,
    pub tx_power: f64,
    pub energy_uncoded: f64,
    pub energy_coded: f64,
    pub saving: f64,
    pub net_saving: f64,
}

/// Everything a round needs besides the deployment.
#[derive(Debug, Clone)]
pub struct SimContext<'a> {
    pub policy: &'a PolicyTable,
    pub params: &'a LinkBudgetParams,
}

fn make_record(round: usize, node: usize, distance: f64, scheme: Scheme, ctx: &SimContext<'_>) -> Result<RoundRecord, SimError> {
    let uncoded_power = linkbudget::uncoded_tx_power(distance, ctx.params)?;
    let (codec, boosted, tx_power) = match scheme {
        Scheme::Uncoded => (None, false, uncoded_power),
        Scheme::Adaptive => {
            let s = policy::select(distance, ctx.policy, ctx.params)?;
            (Some(s.label), s.boosted, s.tx_power)
        }
        fixed => {
            let label = fixed.fixed_codec().expect("fixed scheme");
            let gain = ctx.policy.profile(label).gain_db;
            (Some(label), false, linkbudget::coded_tx_power(distance, gain, ctx.params)?)
        }
    };
    let (energy, decoder) = match codec {
        Some(label) => {
            let p = ctx.policy.profile(label);
            (EnergyRecord::new(uncoded_power, tx_power, p.code_rate, ctx.params)?, p.decoder_energy_per_bit)
        }
        None => (EnergyRecord::new(uncoded_power, tx_power, 1.0, ctx.params)?, 0.0),
    };
    Ok(RoundRecord {
        round,
        node,
        distance,
        scheme,
        codec,
        boosted,
        tx_power,
        energy_uncoded: energy.energy_uncoded,
        energy_coded: energy.energy_coded,
        saving: energy.saving,
        net_saving: energy.saving - decoder,
    })
}

/// Records for every node in `round` under `scheme`.
pub fn run_round(
    deployment: &Deployment,
    round: usize,
    scheme: Scheme,
    ctx: &SimContext<'_>,
) -> Result<Vec<RoundRecord>, SimError> {
    (0..deployment.node_count())
        .map(|node| make_record(round, node, deployment.distance(round, node), scheme, ctx))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeSeries {
    pub scheme: Scheme,
    /// Network-mean transmit power per round, watts.
    pub mean_tx_power: Vec<f64>,
    pub mean_saving: Vec<f64>,
    pub cum_mean_saving: Vec<f64>,
    pub mean_net_saving: Vec<f64>,
    pub cum_mean_net_saving: Vec<f64>,
    /// Number of node-round records that were boosted.
    pub boosted_records: usize,
}

impl SchemeSeries {
    pub fn final_saving(&self) -> f64 {
        *self.cum_mean_saving.last().expect("at least one round")
    }

    pub fn final_net_saving(&self) -> f64 {
        *self.cum_mean_net_saving.last().expect("at least one round")
    }

    pub fn overall_mean_tx_power(&self) -> f64 {
        self.mean_tx_power.iter().sum::<f64>() / self.mean_tx_power.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub rounds: usize,
    pub series: Vec<SchemeSeries>,
}

impl SimReport {
    pub fn scheme(&self, scheme: Scheme) -> Option<&SchemeSeries> {
        self.series.iter().find(|s| s.scheme == scheme)
    }
}

fn cumulative_mean(values: &[f64]) -> Vec<f64> {
    let mut total = 0.0;
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            total += v;
            total / (i + 1) as f64
        })
        .collect()
}

fn mean_by<F: Fn(&RoundRecord) -> f64>(records: &[RoundRecord], f: F) -> f64 {
    records.iter().map(f).sum::<f64>() / records.len() as f64
}

/// Runs `schemes` over `config.rounds` rounds. Rounds are independent work
/// items and are dispatched through `exec`.
pub fn run_simulation(
    config: &FieldConfig,
    schemes: &[Scheme],
    ctx: &SimContext<'_>,
    exec: Exec,
) -> Result<SimReport, SimError> {
    if config.rounds == 0 {
        return Err(SimError::Config("rounds must be >= 1".into()));
    }
    let deployment = deploy(config)?;
    let series = schemes
        .iter()
        .map(|&scheme| {
            let per_round = exec.map_indexed(config.rounds, |r| {
                let recs = run_round(&deployment, r, scheme, ctx)?;
                let boosted = recs.iter().filter(|x| x.boosted).count();
                Ok::<_, SimError>((
                    mean_by(&recs, |x| x.tx_power),
                    mean_by(&recs, |x| x.saving),
                    mean_by(&recs, |x| x.net_saving),
                    boosted,
                ))
            });
            let per_round = per_round.into_iter().collect::<Result<Vec<_>, _>>()?;
            let mean_tx_power: Vec<f64> = per_round.iter().map(|r| r.0).collect();
            let mean_saving: Vec<f64> = per_round.iter().map(|r| r.1).collect();
            let mean_net_saving: Vec<f64> = per_round.iter().map(|r| r.2).collect();
            Ok(SchemeSeries {
                scheme,
                cum_mean_saving: cumulative_mean(&mean_saving),
                cum_mean_net_saving: cumulative_mean(&mean_net_saving),
                mean_tx_power,
                mean_saving,
                mean_net_saving,
                boosted_records: per_round.iter().map(|r| r.3).sum(),
            })
        })
        .collect::<Result<Vec<_>, SimError>>()?;
    Ok(SimReport { rounds: config.rounds, series })
}

/// All per-node records, round-major then scheme then node.
pub fn detail_records(
    config: &FieldConfig,
    schemes: &[Scheme],
    ctx: &SimContext<'_>,
    exec: Exec,
) -> Result<Vec<RoundRecord>, SimError> {
    let deployment = deploy(config)?;
    let rounds = exec.map_indexed(config.rounds, |r| {
        let mut out = Vec::new();
        for &s in schemes {
            out.extend(run_round(&deployment, r, s, ctx)?);
        }
        Ok::<_, SimError>(out)
    });
    let mut all = Vec::new();
    for r in rounds {
        all.extend(r?);
    }
    Ok(all)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub scheme: Scheme,
    pub final_net_saving: f64,
    pub final_saving: f64,
    pub rank: usize,
}

/// Final cumulative-mean net savings, best first. Needs the adaptive scheme
/// and all three fixed schemes.
pub fn compare_schemes(report: &SimReport) -> Result<Vec<ComparisonRow>, SimError> {
    let required = [Scheme::Adaptive, Scheme::FixedRs, Scheme::FixedCcHard, Scheme::FixedCcSoft];
    let missing: Vec<&str> = required
        .iter()
        .filter(|s| report.scheme(**s).is_none())
        .map(|s| s.as_str())
        .collect();
    if !missing.is_empty() {
        return Err(SimError::Comparison(format!("report lacks scheme(s): {}", missing.join(", "))));
    }
    let mut rows: Vec<ComparisonRow> = report
        .series
        .iter()
        .map(|s| ComparisonRow {
            scheme: s.scheme,
            final_net_saving: s.final_net_saving(),
            final_saving: s.final_saving(),
            rank: 0,
        })
        .collect();
    rows.sort_by(|a, b| {
        b.final_net_saving
            .total_cmp(&a.final_net_saving)
            .then(a.scheme.cmp(&b.scheme))
    });
    for (i, r) in rows.iter_mut().enumerate() {
        r.rank = i + 1;
    }
    Ok(rows)
}
