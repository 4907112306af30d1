//! Deterministic parallel parameter sweeps over walk configurations.
//!
//! A sweep substitutes grid values into a base game configuration, runs one
//! independent evolution per grid point, and collects observable rows in a
//! fixed lexicographic order so the output never depends on scheduling.

use crate::error::{Error, Result};
use crate::observables::ObservableSeries;
use crate::walk::{evolve, GameSpec, InitialCoin, Sequence};
use crate::CoinParams;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Which scalar of the base configuration a sweep axis varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisName {
    Phi,
    Theta,
    Varphi,
    AlphaA,
    BetaA,
    GammaA,
    AlphaB,
    BetaB,
    GammaB,
}

impl AxisName {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxisName::Phi => "phi",
            AxisName::Theta => "theta",
            AxisName::Varphi => "varphi",
            AxisName::AlphaA => "alpha_a",
            AxisName::BetaA => "beta_a",
            AxisName::GammaA => "gamma_a",
            AxisName::AlphaB => "alpha_b",
            AxisName::BetaB => "beta_b",
            AxisName::GammaB => "gamma_b",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "phi" => AxisName::Phi,
            "theta" => AxisName::Theta,
            "varphi" => AxisName::Varphi,
            "alpha_a" => AxisName::AlphaA,
            "beta_a" => AxisName::BetaA,
            "gamma_a" => AxisName::GammaA,
            "alpha_b" => AxisName::AlphaB,
            "beta_b" => AxisName::BetaB,
            "gamma_b" => AxisName::GammaB,
            other => {
                return Err(Error::InvalidAxis {
                    name: other.to_string(),
                    reason: "unknown axis name".into(),
                })
            }
        })
    }
}

/// Uniform inclusive grid over one named parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub name: AxisName,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepAxis {
    pub fn new(name: AxisName, start: f64, stop: f64, points: usize) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(Error::InvalidAxis {
                name: name.as_str().to_string(),
                reason: format!("need finite start < stop, got [{start}, {stop}]"),
            });
        }
        if points < 2 {
            return Err(Error::InvalidAxis {
                name: name.as_str().to_string(),
                reason: format!("need at least 2 points, got {points}"),
            });
        }
        Ok(Self { name, start, stop, points })
    }

    /// Grid value i, inclusive endpoints: start + i*(stop-start)/(points-1).
    pub fn value(&self, i: usize) -> f64 {
        self.start + i as f64 * (self.stop - self.start) / (self.points - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordMode {
    FinalOnly,
    FullSeries,
}

impl RecordMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RecordMode::FinalOnly => "final_only",
            RecordMode::FullSeries => "full_series",
        }
    }
}

/// Base configuration every grid point starts from.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseConfig {
    pub game: GameSpec,
    pub initial: InitialCoin,
    pub steps: usize,
}

/// A full sweep: base configuration, zero to two axes, and what to record.
///
/// Zero axes degenerates to a single evolution of the base configuration,
/// which lets multi-panel presets carry fixed-value line plots.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: BaseConfig,
    pub axes: Vec<SweepAxis>,
    pub record_mode: RecordMode,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.len() > 2 {
            return Err(Error::InvalidSweep(format!(
                "at most 2 axes supported, got {}",
                self.axes.len()
            )));
        }
        if self.axes.len() == 2 && self.axes[0].name == self.axes[1].name {
            return Err(Error::InvalidSweep(format!(
                "axis names must be distinct, both are {}",
                self.axes[0].name.as_str()
            )));
        }
        if self.base.steps == 0 {
            return Err(Error::InvalidSweep("steps must be >= 1".into()));
        }
        Ok(())
    }
}

/// One output row: axis coordinates, step (full series only), and the three
/// observables.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis1: Option<f64>,
    pub axis2: Option<f64>,
    pub step: Option<usize>,
    pub expected_position: f64,
    pub delta_p: f64,
    pub entropy: f64,
}

/// Result table plus the spec it came from.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

fn substitute(base: &BaseConfig, axis: AxisName, value: f64) -> Result<BaseConfig> {
    let mut cfg = base.clone();
    match axis {
        AxisName::Phi => cfg.game.origin_phase = value,
        AxisName::Theta => {
            cfg.initial = InitialCoin::new(value, cfg.initial.varphi())?;
        }
        AxisName::Varphi => {
            // inclusive grids may land exactly on 2*pi; fold it back
            cfg.initial = InitialCoin::new(cfg.initial.theta(), value.rem_euclid(TAU))?;
        }
        AxisName::AlphaA => cfg.game.coin_a = cfg.game.coin_a.with_alpha(value)?,
        AxisName::BetaA => cfg.game.coin_a = cfg.game.coin_a.with_beta(value)?,
        AxisName::GammaA => cfg.game.coin_a = cfg.game.coin_a.with_gamma(value)?,
        AxisName::AlphaB => cfg.game.coin_b = cfg.game.coin_b.with_alpha(value)?,
        AxisName::BetaB => cfg.game.coin_b = cfg.game.coin_b.with_beta(value)?,
        AxisName::GammaB => cfg.game.coin_b = cfg.game.coin_b.with_gamma(value)?,
    }
    Ok(cfg)
}

fn run_point(
    cfg: &BaseConfig,
    axis1: Option<f64>,
    axis2: Option<f64>,
    mode: RecordMode,
) -> Result<Vec<SweepRow>> {
    let mut series = ObservableSeries::default();
    let mut obs_err = None;
    evolve(&cfg.game, cfg.initial, cfg.steps, |state| {
        if obs_err.is_none() {
            if let Err(e) = series.push_from(state) {
                obs_err = Some(e);
            }
        }
    })?;
    if let Some(e) = obs_err {
        return Err(e);
    }
    let rows = match mode {
        RecordMode::FinalOnly => {
            let last = series.len() - 1;
            vec![SweepRow {
                axis1,
                axis2,
                step: None,
                expected_position: series.expected_position[last],
                delta_p: series.delta_p[last],
                entropy: series.entropy[last],
            }]
        }
        RecordMode::FullSeries => (0..series.len())
            .map(|t| SweepRow {
                axis1,
                axis2,
                step: Some(t + 1),
                expected_position: series.expected_position[t],
                delta_p: series.delta_p[t],
                entropy: series.entropy[t],
            })
            .collect(),
    };
    Ok(rows)
}

/// Run a sweep: one independent evolution per grid point, in parallel,
/// rows ordered by (axis1 index, axis2 index, step).
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    // enumerate grid points lexicographically
    let points: Vec<(Option<f64>, Option<f64>)> = match spec.axes.len() {
        0 => vec![(None, None)],
        1 => (0..spec.axes[0].points)
            .map(|i| (Some(spec.axes[0].value(i)), None))
            .collect(),
        _ => {
            let (a1, a2) = (&spec.axes[0], &spec.axes[1]);
            (0..a1.points)
                .flat_map(|i| (0..a2.points).map(move |j| (Some(a1.value(i)), Some(a2.value(j)))))
                .collect()
        }
    };

    let per_point: Vec<Result<Vec<SweepRow>>> = points
        .par_iter()
        .enumerate()
        .map(|(index, &(v1, v2))| {
            let mut cfg = spec.base.clone();
            if let Some(v) = v1 {
                cfg = substitute(&cfg, spec.axes[0].name, v).map_err(|e| wrap(index, v1, v2, e))?;
            }
            if let Some(v) = v2 {
                cfg = substitute(&cfg, spec.axes[1].name, v).map_err(|e| wrap(index, v1, v2, e))?;
            }
            run_point(&cfg, v1, v2, spec.record_mode).map_err(|e| wrap(index, v1, v2, e))
        })
        .collect();

    let mut rows = Vec::new();
    for r in per_point {
        rows.extend(r?);
    }
    Ok(SweepResult { spec: spec.clone(), rows })
}

fn wrap(index: usize, v1: Option<f64>, v2: Option<f64>, source: Error) -> Error {
    Error::SweepPoint {
        index,
        context: format!("axis values {v1:?}, {v2:?}"),
        source: Box::new(source),
    }
}

/// Coin parameters of the two reference games used throughout the
/// experiment presets.
pub fn reference_coins() -> (CoinParams, CoinParams) {
    (
        CoinParams::new(2.395, 0.513, 0.909).expect("finite"),
        CoinParams::new(2.611, 1.176, 2.313).expect("finite"),
    )
}

/// A named figure-family preset: one or more labeled sweeps.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub sweeps: Vec<(String, SweepSpec)>,
}

pub const PRESET_NAMES: [&str; 8] = [
    "phase-scan",
    "phase-lines",
    "initial-state-scan",
    "beta-scan",
    "beta-pair-scan",
    "alpha-scan",
    "gamma-scan",
    "alpha-gamma-scan",
];

const DEFAULT_STEPS: usize = 100;
const LINE_POINTS: usize = 128;
const GRID_POINTS: usize = 64;

fn base(sequence: &str, phi: f64) -> BaseConfig {
    let (ca, cb) = reference_coins();
    BaseConfig {
        game: GameSpec::new(ca, cb, Sequence::parse(sequence).expect("valid"), phi)
            .expect("finite"),
        initial: InitialCoin::symmetric(),
        steps: DEFAULT_STEPS,
    }
}

/// Build the fully specified sweep plan for a named experiment family.
///
/// Every preset records its origin phase explicitly; families that the
/// source figures split across panels (per sequence or per coin) expand to
/// one labeled sweep per panel.
pub fn preset(name: &str) -> Result<Preset> {
    let axis = SweepAxis::new;
    let sweeps: Vec<(String, SweepSpec)> = match name {
        // E[x] heatmaps over (step, phi) for each sequence
        "phase-scan" => ["A", "B", "AB", "ABB"]
            .iter()
            .map(|seq| {
                (
                    seq.to_lowercase(),
                    SweepSpec {
                        base: base(seq, 0.0),
                        axes: vec![axis(AxisName::Phi, 0.0, TAU, LINE_POINTS).unwrap()],
                        record_mode: RecordMode::FullSeries,
                    },
                )
            })
            .collect(),
        // E[x](t) line plots at five selected phases, per sequence
        "phase-lines" => {
            let phis: [(&str, f64); 5] = [
                ("0", 0.0),
                ("pi4", PI / 4.0),
                ("pi2", FRAC_PI_2),
                ("pi", PI),
                ("3pi2", 1.5 * PI),
            ];
            let mut v = Vec::new();
            for seq in ["A", "B", "AB", "ABB"] {
                for (tag, phi) in phis {
                    v.push((
                        format!("{}_phi_{}", seq.to_lowercase(), tag),
                        SweepSpec {
                            base: base(seq, phi),
                            axes: vec![],
                            record_mode: RecordMode::FullSeries,
                        },
                    ));
                }
            }
            v
        }
        // E[x] after 100 steps over the (theta, varphi) initial-coin plane
        "initial-state-scan" => ["A", "B", "AB", "ABB"]
            .iter()
            .map(|seq| {
                (
                    seq.to_lowercase(),
                    SweepSpec {
                        base: base(seq, FRAC_PI_2),
                        axes: vec![
                            axis(AxisName::Theta, 0.0, PI, GRID_POINTS).unwrap(),
                            axis(AxisName::Varphi, 0.0, TAU, GRID_POINTS).unwrap(),
                        ],
                        record_mode: RecordMode::FinalOnly,
                    },
                )
            })
            .collect(),
        // single-coin E[x] vs beta in the losing range [0, pi/2]
        "beta-scan" => vec![
            (
                "coin_a".into(),
                SweepSpec {
                    base: base("A", FRAC_PI_2),
                    axes: vec![axis(AxisName::BetaA, 0.0, FRAC_PI_2, LINE_POINTS).unwrap()],
                    record_mode: RecordMode::FinalOnly,
                },
            ),
            (
                "coin_b".into(),
                SweepSpec {
                    base: base("B", FRAC_PI_2),
                    axes: vec![axis(AxisName::BetaB, 0.0, FRAC_PI_2, LINE_POINTS).unwrap()],
                    record_mode: RecordMode::FinalOnly,
                },
            ),
        ],
        // (beta_A, beta_B) plane for the composite sequences
        "beta-pair-scan" => ["AB", "ABB"]
            .iter()
            .map(|seq| {
                (
                    seq.to_lowercase(),
                    SweepSpec {
                        base: base(seq, FRAC_PI_2),
                        axes: vec![
                            axis(AxisName::BetaA, 0.0, FRAC_PI_2, GRID_POINTS).unwrap(),
                            axis(AxisName::BetaB, 0.0, FRAC_PI_2, GRID_POINTS).unwrap(),
                        ],
                        record_mode: RecordMode::FinalOnly,
                    },
                )
            })
            .collect(),
        // E[x] vs alpha at beta = 45 deg, gamma = 0
        "alpha-scan" => {
            let fixed = CoinParams::new(0.0, PI / 4.0, 0.0).expect("finite");
            [("coin_a", AxisName::AlphaA, "A"), ("coin_b", AxisName::AlphaB, "B")]
                .iter()
                .map(|&(label, ax, seq)| {
                    let mut b = base(seq, FRAC_PI_2);
                    b.game.coin_a = fixed;
                    b.game.coin_b = fixed;
                    (
                        label.to_string(),
                        SweepSpec {
                            base: b,
                            axes: vec![axis(ax, 0.0, TAU, LINE_POINTS).unwrap()],
                            record_mode: RecordMode::FinalOnly,
                        },
                    )
                })
                .collect()
        }
        // E[x] vs gamma at beta = 45 deg, alpha = 0
        "gamma-scan" => {
            let fixed = CoinParams::new(0.0, PI / 4.0, 0.0).expect("finite");
            [("coin_a", AxisName::GammaA, "A"), ("coin_b", AxisName::GammaB, "B")]
                .iter()
                .map(|&(label, ax, seq)| {
                    let mut b = base(seq, FRAC_PI_2);
                    b.game.coin_a = fixed;
                    b.game.coin_b = fixed;
                    (
                        label.to_string(),
                        SweepSpec {
                            base: b,
                            axes: vec![axis(ax, 0.0, TAU, LINE_POINTS).unwrap()],
                            record_mode: RecordMode::FinalOnly,
                        },
                    )
                })
                .collect()
        }
        // (alpha, gamma) plane at beta = 45 deg, per coin
        "alpha-gamma-scan" => {
            let fixed = CoinParams::new(0.0, PI / 4.0, 0.0).expect("finite");
            [
                ("coin_a", AxisName::AlphaA, AxisName::GammaA, "A"),
                ("coin_b", AxisName::AlphaB, AxisName::GammaB, "B"),
            ]
            .iter()
            .map(|&(label, ax1, ax2, seq)| {
                let mut b = base(seq, FRAC_PI_2);
                b.game.coin_a = fixed;
                b.game.coin_b = fixed;
                (
                    label.to_string(),
                    SweepSpec {
                        base: b,
                        axes: vec![
                            axis(ax1, 0.0, TAU, GRID_POINTS).unwrap(),
                            axis(ax2, 0.0, TAU, GRID_POINTS).unwrap(),
                        ],
                        record_mode: RecordMode::FinalOnly,
                    },
                )
            })
            .collect()
        }
        other => {
            return Err(Error::UnknownPreset {
                got: other.to_string(),
                valid: PRESET_NAMES.join(", "),
            })
        }
    };
    let name = PRESET_NAMES
        .iter()
        .find(|&&n| n == name)
        .expect("matched above");
    Ok(Preset { name, sweeps })
}
