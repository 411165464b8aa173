//! Entanglement averaged over a Bloch-sphere grid of initial qubits.
//!
//! Qubits are evolved in parallel; per-step means are reduced afterwards in
//! ascending qubit order with compensated summation, so the output does not
//! depend on the worker count.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::coins::CoinMatrix;
use crate::entanglement::entropy;
use crate::error::{domain, Result};
use crate::evolution::reduced_series;
use crate::scalar::{CompensatedSum, Scalar};
use crate::schedule::{generate_sequence_on_stream, stream_id, CoinSchedule, CoinSequence};
use crate::state::{make_gaussian_state, make_local_state, GaussianSpec, QubitSpec, WalkState};

/// Grid of initial qubits `α = k·Δα ≤ π`, `β = m·Δβ ≤ 2π`, α-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochGrid {
    pub alpha_step: f64,
    pub beta_step: f64,
    pub qubits: Vec<QubitSpec>,
}

impl BlochGrid {
    pub const DEFAULT_STEP: f64 = 0.1;

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    /// Grid made of explicitly listed qubits.
    pub fn from_qubits(qubits: Vec<QubitSpec>) -> Result<Self> {
        for q in &qubits {
            q.validate()?;
        }
        Ok(Self {
            alpha_step: f64::NAN,
            beta_step: f64::NAN,
            qubits,
        })
    }
}

impl Default for BlochGrid {
    fn default() -> Self {
        bloch_grid(Self::DEFAULT_STEP, Self::DEFAULT_STEP).expect("default grid steps are positive")
    }
}

/// Multiples of `step` up to `upper`, tolerating rounding at the upper end.
fn grid_axis(step: f64, upper: f64) -> Vec<f64> {
    let slack = 1e-12 * upper;
    (0..)
        .map(|k| k as f64 * step)
        .take_while(|x| *x <= upper + slack)
        .map(|x| x.min(upper))
        .collect()
}

pub fn bloch_grid(alpha_step: f64, beta_step: f64) -> Result<BlochGrid> {
    for (name, s) in [("alpha", alpha_step), ("beta", beta_step)] {
        if !(s.is_finite() && s > 0.0) {
            return domain(format!("{name} grid step {s} must be positive"));
        }
    }
    let betas = grid_axis(beta_step, 2.0 * PI);
    let qubits = grid_axis(alpha_step, PI)
        .into_iter()
        .flat_map(|a| betas.iter().map(move |b| QubitSpec::new(a, *b)))
        .collect();
    Ok(BlochGrid {
        alpha_step,
        beta_step,
        qubits,
    })
}

/// Initial position distribution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PositionInit {
    Local,
    Gaussian(GaussianSpec),
}

impl PositionInit {
    pub fn build<T: Scalar>(&self, qubit: QubitSpec, steps: usize) -> Result<WalkState<T>> {
        match self {
            Self::Local => make_local_state(qubit, steps),
            Self::Gaussian(g) => make_gaussian_state(qubit, g, steps),
        }
    }
}

/// Whether a disorder realization is shared by all qubits of the grid.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RealizationPolicy {
    #[default]
    Shared,
    PerQubit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleConfig {
    pub grid: BlochGrid,
    pub init: PositionInit,
    pub schedule: CoinSchedule,
    pub steps: usize,
    pub seed: u64,
    pub policy: RealizationPolicy,
    /// Independent disorder realizations averaged on the outside.
    pub realizations: u32,
}

impl EnsembleConfig {
    pub fn new(grid: BlochGrid, init: PositionInit, schedule: CoinSchedule, steps: usize) -> Self {
        Self {
            grid,
            init,
            schedule,
            steps,
            seed: 0,
            policy: RealizationPolicy::Shared,
            realizations: 1,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_policy(mut self, policy: RealizationPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn with_realizations(mut self, realizations: u32) -> Self {
        self.realizations = realizations;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleResult<T> {
    /// `⟨S_E(t)⟩` for `t = 0..=steps`.
    pub mean_entropy: Vec<T>,
    /// Standard error across realizations, when more than one was run.
    pub stderr: Option<Vec<T>>,
    /// Final-step entropy of each qubit, averaged over realizations.
    pub final_entropy: Vec<T>,
    pub config: EnsembleConfig,
}

impl<T: Scalar> EnsembleResult<T> {
    pub fn at(&self, t: usize) -> Option<T> {
        self.mean_entropy.get(t).copied()
    }
}

/// `S_E(t)` for `t = 0..=N` of a single walk.
pub fn entropy_series<T: Scalar>(
    qubit: QubitSpec,
    init: &PositionInit,
    coins: &[CoinMatrix<T>],
) -> Result<Vec<T>> {
    let mut state = init.build::<T>(qubit, coins.len())?;
    reduced_series(&mut state, coins)?
        .iter()
        .map(entropy)
        .collect()
}

fn mean_over<T: Scalar>(rows: &[Vec<T>], t: usize) -> T {
    let total = rows
        .iter()
        .map(|r| r[t])
        .collect::<CompensatedSum<T>>()
        .total();
    total / T::lit(rows.len() as f64)
}

/// Per-qubit series for one realization.
fn realization_series<T: Scalar>(cfg: &EnsembleConfig, realization: u32) -> Result<Vec<Vec<T>>> {
    let shared = match cfg.policy {
        RealizationPolicy::Shared => Some(
            generate_sequence_on_stream(
                &cfg.schedule,
                cfg.steps,
                cfg.seed,
                stream_id(realization, 0),
            )?
            .matrices::<T>()?,
        ),
        RealizationPolicy::PerQubit => None,
    };
    cfg.grid
        .qubits
        .par_iter()
        .enumerate()
        .map(|(i, q)| match &shared {
            Some(coins) => entropy_series(*q, &cfg.init, coins),
            None => {
                let slot = u32::try_from(i + 1).expect("grid size fits in u32");
                let coins = generate_sequence_on_stream(
                    &cfg.schedule,
                    cfg.steps,
                    cfg.seed,
                    stream_id(realization, slot),
                )?
                .matrices::<T>()?;
                entropy_series(*q, &cfg.init, &coins)
            }
        })
        .collect()
}

/// Average entanglement over the grid, for every time step.
pub fn average_entanglement<T: Scalar>(cfg: &EnsembleConfig) -> Result<EnsembleResult<T>> {
    if cfg.grid.is_empty() {
        return domain("Bloch grid is empty");
    }
    if cfg.realizations == 0 {
        return domain("at least one realization is required");
    }
    cfg.schedule.validate(cfg.steps)?;

    let distinct = if cfg.schedule.is_random() {
        cfg.realizations
    } else {
        1
    };
    let mut means: Vec<Vec<T>> = Vec::with_capacity(distinct as usize);
    let mut finals: Vec<Vec<T>> = Vec::with_capacity(distinct as usize);
    for r in 0..distinct {
        let rows = realization_series::<T>(cfg, r)?;
        means.push((0..=cfg.steps).map(|t| mean_over(&rows, t)).collect());
        finals.push(rows.iter().map(|row| row[cfg.steps]).collect());
    }

    let mean_entropy: Vec<T> = (0..=cfg.steps).map(|t| mean_over(&means, t)).collect();
    let final_entropy = (0..cfg.grid.len()).map(|i| mean_over(&finals, i)).collect();
    let stderr = (cfg.realizations > 1).then(|| {
        if distinct == 1 {
            return vec![T::zero(); cfg.steps + 1];
        }
        let r = T::lit(distinct as f64);
        (0..=cfg.steps)
            .map(|t| {
                let m = mean_entropy[t];
                let ss = means
                    .iter()
                    .map(|row| (row[t] - m) * (row[t] - m))
                    .collect::<CompensatedSum<T>>()
                    .total();
                (ss / (r - T::one()) / r).sqrt()
            })
            .collect()
    });
    Ok(EnsembleResult {
        mean_entropy,
        stderr,
        final_entropy,
        config: cfg.clone(),
    })
}

/// Grid average for one explicit coin sequence, e.g. a replayed realization.
pub fn average_over_sequence<T: Scalar>(
    grid: &BlochGrid,
    init: &PositionInit,
    seq: &CoinSequence,
) -> Result<Vec<T>> {
    if grid.is_empty() {
        return domain("Bloch grid is empty");
    }
    let coins = seq.matrices::<T>()?;
    let rows = grid
        .qubits
        .par_iter()
        .map(|q| entropy_series(*q, init, &coins))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=seq.len()).map(|t| mean_over(&rows, t)).collect())
}

/// Relative improvement `⟨S_E(t_ref)⟩_ADO / ⟨S_E(t_ref)⟩_SDD − 1`.
pub fn eta<T: Scalar>(ado: &EnsembleResult<T>, sdd: &EnsembleResult<T>, t_ref: usize) -> Result<T> {
    let (Some(a), Some(s)) = (ado.at(t_ref), sdd.at(t_ref)) else {
        return domain(format!("series do not reach t_ref = {t_ref}"));
    };
    if s == T::zero() {
        return domain("reference entanglement is zero; η undefined");
    }
    Ok(a / s - T::one())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PScan<T> {
    pub t_ref: usize,
    /// `(p, ⟨S_E(t_ref)⟩)`, sorted by `p`.
    pub entries: Vec<(f64, T)>,
}

impl<T: Scalar> PScan<T> {
    /// Entry with the largest entanglement; the smallest `p` wins ties.
    pub fn argmax(&self) -> Option<(f64, T)> {
        self.entries
            .iter()
            .copied()
            .fold(None, |best, e| match best {
                Some((_, v)) if v >= e.1 => best,
                _ => Some(e),
            })
    }
}

/// Scans constant Fourier probabilities, all sharing the seed of `base`.
///
/// `base.schedule` and `base.steps` are replaced by `WeakConst { p }` and `t_ref`.
pub fn best_p_scan<T: Scalar>(
    p_values: &[f64],
    base: &EnsembleConfig,
    t_ref: usize,
) -> Result<PScan<T>> {
    if let Some(p) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return domain(format!("scan probability {p} outside [0, 1]"));
    }
    let mut ps = p_values.to_vec();
    ps.sort_by(f64::total_cmp);
    let entries = ps
        .into_iter()
        .map(|p| {
            let cfg = EnsembleConfig {
                schedule: CoinSchedule::WeakConst { p },
                steps: t_ref,
                ..base.clone()
            };
            let res = average_entanglement::<T>(&cfg)?;
            Ok((p, res.mean_entropy[t_ref]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PScan { t_ref, entries })
}
