//! Run configuration and its flat `key = value` file format.
//!
//! ```text
//! # comment
//! scenario = fig5b-wdd-p3
//! schedule = wdd
//! p = 0.029999999999999999
//! position = gaussian
//! sigma0 = 10
//! ```
//!
//! Every key is optional in a file; missing keys keep their defaults.
//! [`RunConfig::to_kv`] always writes every key, so a written file reads
//! back to an identical config.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qwalk_core::{
    bloch_grid, fourier, hadamard, CoinSchedule, Disorder, EnsembleConfig, GaussianSpec,
    PositionInit, RealizationPolicy, TransientDirection, TransientShape,
};

use crate::error::{config_err, CliError, Result};
use crate::format::fmt_g17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScheduleKind {
    Hadamard,
    Fourier,
    Sdd2,
    SddInf,
    Ado2,
    AdoInf,
    Switch2,
    SwitchInf,
    Wdd,
    Transient,
    PeriodicFourier,
}

const SCHEDULE_NAMES: [(ScheduleKind, &str); 11] = [
    (ScheduleKind::Hadamard, "hadamard"),
    (ScheduleKind::Fourier, "fourier"),
    (ScheduleKind::Sdd2, "sdd2"),
    (ScheduleKind::SddInf, "sddinf"),
    (ScheduleKind::Ado2, "ado2"),
    (ScheduleKind::AdoInf, "adoinf"),
    (ScheduleKind::Switch2, "switch2"),
    (ScheduleKind::SwitchInf, "switchinf"),
    (ScheduleKind::Wdd, "wdd"),
    (ScheduleKind::Transient, "transient"),
    (ScheduleKind::PeriodicFourier, "periodic-fourier"),
];

impl fmt::Display for ScheduleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = SCHEDULE_NAMES
            .iter()
            .find(|(k, _)| k == self)
            .map(|(_, n)| *n)
            .expect("every kind is named");
        f.write_str(name)
    }
}

impl FromStr for ScheduleKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        SCHEDULE_NAMES
            .iter()
            .find(|(_, n)| *n == s)
            .map(|(k, _)| *k)
            .ok_or_else(|| {
                let names: Vec<_> = SCHEDULE_NAMES.iter().map(|(_, n)| *n).collect();
                format!(
                    "unknown schedule '{s}' (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

pub fn parse_shape(s: &str) -> Result<TransientShape, String> {
    match s {
        "linear" => Ok(TransientShape::Linear),
        "quadratic" => Ok(TransientShape::Quadratic),
        "negative-quadratic" => Ok(TransientShape::NegativeQuadratic),
        _ => Err(format!(
            "unknown transient '{s}' (expected linear, quadratic, negative-quadratic)"
        )),
    }
}

pub fn shape_name(s: TransientShape) -> &'static str {
    match s {
        TransientShape::Linear => "linear",
        TransientShape::Quadratic => "quadratic",
        TransientShape::NegativeQuadratic => "negative-quadratic",
    }
}

pub fn parse_direction(s: &str) -> Result<TransientDirection, String> {
    match s {
        "h2s" => Ok(TransientDirection::OrderToDisorder),
        "s2h" => Ok(TransientDirection::DisorderToOrder),
        _ => Err(format!("unknown direction '{s}' (expected h2s, s2h)")),
    }
}

pub fn direction_name(d: TransientDirection) -> &'static str {
    match d {
        TransientDirection::OrderToDisorder => "h2s",
        TransientDirection::DisorderToOrder => "s2h",
    }
}

pub fn parse_policy(s: &str) -> Result<RealizationPolicy, String> {
    match s {
        "shared" => Ok(RealizationPolicy::Shared),
        "per-qubit" => Ok(RealizationPolicy::PerQubit),
        _ => Err(format!("unknown policy '{s}' (expected shared, per-qubit)")),
    }
}

pub fn policy_name(p: RealizationPolicy) -> &'static str {
    match p {
        RealizationPolicy::Shared => "shared",
        RealizationPolicy::PerQubit => "per-qubit",
    }
}

/// Schedule choice plus the parameters any variant may need.
///
/// `dt` is the block length for `ado*`, the switch step for `switch*` and the
/// period for `periodic-fourier`. Transient schedules use `steps` as horizon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScheduleSpec {
    pub kind: ScheduleKind,
    pub p: f64,
    pub dt: usize,
    pub transient: TransientShape,
    pub direction: TransientDirection,
}

impl Default for ScheduleSpec {
    fn default() -> Self {
        Self {
            kind: ScheduleKind::Hadamard,
            p: 0.5,
            dt: 100,
            transient: TransientShape::Quadratic,
            direction: TransientDirection::OrderToDisorder,
        }
    }
}

impl ScheduleSpec {
    pub fn of(kind: ScheduleKind) -> Self {
        Self {
            kind,
            ..Self::default()
        }
    }

    pub fn build(&self, steps: usize) -> CoinSchedule {
        use ScheduleKind::*;
        match self.kind {
            Hadamard => CoinSchedule::Ordered(hadamard()),
            Fourier => CoinSchedule::Ordered(fourier()),
            Sdd2 => CoinSchedule::Sdd2,
            SddInf => CoinSchedule::SddInf,
            Ado2 | AdoInf => CoinSchedule::Alternating {
                inner: if self.kind == Ado2 {
                    Disorder::TwoCoin
                } else {
                    Disorder::Su2
                },
                block: self.dt,
                ordered: hadamard(),
            },
            Switch2 | SwitchInf => CoinSchedule::DisorderThenOrder {
                inner: if self.kind == Switch2 {
                    Disorder::TwoCoin
                } else {
                    Disorder::Su2
                },
                switch_after: self.dt,
                ordered: hadamard(),
            },
            Wdd => CoinSchedule::WeakConst { p: self.p },
            Transient => CoinSchedule::WeakTransient {
                shape: self.transient,
                direction: self.direction,
                horizon: steps,
            },
            PeriodicFourier => CoinSchedule::PeriodicFourier { period: self.dt },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PositionSpec {
    Local,
    Gaussian { sigma0: f64, cutoff: u32 },
}

impl PositionSpec {
    pub fn gaussian(sigma0: f64) -> Self {
        Self::Gaussian {
            sigma0,
            cutoff: GaussianSpec::DEFAULT_CUTOFF,
        }
    }

    pub fn init(&self) -> PositionInit {
        match *self {
            Self::Local => PositionInit::Local,
            Self::Gaussian { sigma0, cutoff } => {
                PositionInit::Gaussian(GaussianSpec::with_cutoff(sigma0, cutoff))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub scenario: String,
    pub schedule: ScheduleSpec,
    pub position: PositionSpec,
    pub steps: usize,
    /// Shared α and β increment of the Bloch grid.
    pub grid_step: f64,
    pub seed: u64,
    pub policy: RealizationPolicy,
    pub realizations: u32,
    /// Reference step for p-scans.
    pub tref: usize,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scenario: "run".into(),
            schedule: ScheduleSpec::default(),
            position: PositionSpec::Local,
            steps: 1000,
            grid_step: 0.1,
            seed: 1,
            policy: RealizationPolicy::Shared,
            realizations: 1,
            tref: 100,
            out: PathBuf::from("out"),
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, String>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| format!("invalid value '{value}' for {key}: {e}"))
}

impl RunConfig {
    /// Ensemble description; validates the grid and schedule parameters.
    pub fn ensemble(&self) -> Result<EnsembleConfig> {
        if !self
            .scenario
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c))
            || self.scenario.is_empty()
        {
            return config_err(format!(
                "scenario name '{}' must be nonempty and use only [A-Za-z0-9._-]",
                self.scenario
            ));
        }
        let grid = bloch_grid(self.grid_step, self.grid_step)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let schedule = self.schedule.build(self.steps);
        schedule
            .validate(self.steps)
            .map_err(|e| CliError::Config(e.to_string()))?;
        if let PositionSpec::Gaussian { sigma0, cutoff } = self.position {
            GaussianSpec::with_cutoff(sigma0, cutoff)
                .validate()
                .map_err(|e| CliError::Config(e.to_string()))?;
        }
        if self.realizations == 0 {
            return config_err("realizations must be at least 1");
        }
        Ok(EnsembleConfig {
            grid,
            init: self.position.init(),
            schedule,
            steps: self.steps,
            seed: self.seed,
            policy: self.policy,
            realizations: self.realizations,
        })
    }

    /// Sets one key. Unknown keys are an error.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "scenario" => self.scenario = value.to_string(),
            "schedule" => self.schedule.kind = value.parse()?,
            "p" => self.schedule.p = parse_value(key, value)?,
            "dt" => self.schedule.dt = parse_value(key, value)?,
            "transient" => self.schedule.transient = parse_shape(value)?,
            "direction" => self.schedule.direction = parse_direction(value)?,
            "position" => {
                self.position = match value {
                    "local" => PositionSpec::Local,
                    "gaussian" => match self.position {
                        g @ PositionSpec::Gaussian { .. } => g,
                        PositionSpec::Local => PositionSpec::gaussian(1.0),
                    },
                    _ => {
                        return Err(format!(
                            "unknown position '{value}' (expected local, gaussian)"
                        ))
                    }
                }
            }
            "sigma0" => {
                let sigma0 = parse_value(key, value)?;
                self.position = match self.position {
                    PositionSpec::Gaussian { cutoff, .. } => {
                        PositionSpec::Gaussian { sigma0, cutoff }
                    }
                    PositionSpec::Local => PositionSpec::gaussian(sigma0),
                }
            }
            "cutoff" => {
                let cutoff = parse_value(key, value)?;
                if let PositionSpec::Gaussian { sigma0, .. } = self.position {
                    self.position = PositionSpec::Gaussian { sigma0, cutoff };
                }
            }
            "steps" => self.steps = parse_value(key, value)?,
            "grid_step" => self.grid_step = parse_value(key, value)?,
            "seed" => self.seed = parse_value(key, value)?,
            "policy" => self.policy = parse_policy(value)?,
            "realizations" => self.realizations = parse_value(key, value)?,
            "tref" => self.tref = parse_value(key, value)?,
            "out" => self.out = PathBuf::from(value),
            _ => return Err(format!("unknown key '{key}'")),
        }
        Ok(())
    }

    /// Every key in a fixed order.
    pub fn to_kv(&self) -> Vec<(&'static str, String)> {
        let mut kv = vec![
            ("scenario", self.scenario.clone()),
            ("schedule", self.schedule.kind.to_string()),
            ("p", fmt_g17(self.schedule.p)),
            ("dt", self.schedule.dt.to_string()),
            ("transient", shape_name(self.schedule.transient).to_string()),
            (
                "direction",
                direction_name(self.schedule.direction).to_string(),
            ),
        ];
        match self.position {
            PositionSpec::Local => kv.push(("position", "local".into())),
            PositionSpec::Gaussian { sigma0, cutoff } => {
                kv.push(("position", "gaussian".into()));
                kv.push(("sigma0", fmt_g17(sigma0)));
                kv.push(("cutoff", cutoff.to_string()));
            }
        }
        kv.extend([
            ("steps", self.steps.to_string()),
            ("grid_step", fmt_g17(self.grid_step)),
            ("seed", self.seed.to_string()),
            ("policy", policy_name(self.policy).to_string()),
            ("realizations", self.realizations.to_string()),
            ("tref", self.tref.to_string()),
            ("out", self.out.display().to_string()),
        ]);
        kv
    }

    pub fn to_text(&self) -> String {
        write_kv(&self.to_kv())
    }

    /// Parses config text on top of the defaults.
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut cfg = Self::default();
        for (line_no, key, value) in parse_kv(text, origin)? {
            cfg.set(&key, &value).map_err(|msg| CliError::Parse {
                path: origin.to_path_buf(),
                line: line_no,
                msg,
            })?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path)
    }
}

pub fn write_kv<K: AsRef<str>>(kv: &[(K, String)]) -> String {
    kv.iter()
        .map(|(k, v)| format!("{} = {}\n", k.as_ref(), v))
        .collect()
}

/// `(line number, key, value)` for each non-blank, non-comment line.
pub fn parse_kv(text: &str, origin: &Path) -> Result<Vec<(usize, String, String)>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                return None;
            }
            Some(match line.split_once('=') {
                Some((k, v)) if !k.trim().is_empty() => {
                    Ok((i + 1, k.trim().to_string(), v.trim().to_string()))
                }
                _ => Err(CliError::Parse {
                    path: origin.to_path_buf(),
                    line: i + 1,
                    msg: format!("expected 'key = value', found '{line}'"),
                }),
            })
        })
        .collect()
}
