//! Coin schedules: which coin is applied at each time step.
//!
//! Steps are indexed `t = 1..=N`. A sequence is materialized up front from a
//! seeded ChaCha8 stream so a single realization can be replayed for every
//! initial qubit of an ensemble.
//!
//! Stream rule: the generator for a run is `ChaCha8Rng::seed_from_u64(seed)`
//! with its 64-bit stream id set by [`stream_id`]. Draws are consumed in
//! increasing `t`; ordered steps consume nothing.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coins::{
    coin_matrix, fourier, hadamard, sample_su2_uniform, sample_two_coin, CoinMatrix, CoinParams,
    UnitDraw,
};
use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Seeded generator for one stream.
pub fn seeded_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream id for realization `realization` and ensemble slot `slot`.
///
/// Slot 0 is the shared sequence; slot `i + 1` belongs to qubit `i` when
/// every qubit draws its own realization.
pub const fn stream_id(realization: u32, slot: u32) -> u64 {
    ((realization as u64) << 32) | slot as u64
}

/// Kind of strong disorder drawn at a disordered step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Disorder {
    /// Fair choice between Hadamard and Fourier.
    TwoCoin,
    /// Uniform over the `(q, θ, φ)` box.
    Su2,
}

impl Disorder {
    fn draw<R: UnitDraw + ?Sized>(self, rng: &mut R) -> CoinParams {
        match self {
            Disorder::TwoCoin => sample_two_coin(0.5, rng).expect("0.5 is a valid probability"),
            Disorder::Su2 => sample_su2_uniform(rng),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransientShape {
    Linear,
    Quadratic,
    NegativeQuadratic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransientDirection {
    /// Hadamard walk at `t = 0` towards the fair two-coin mix at `t = N`.
    OrderToDisorder,
    /// The reverse.
    DisorderToOrder,
}

/// Fourier probability of the time-dependent weak-disorder schedules.
pub fn transient_p(
    shape: TransientShape,
    direction: TransientDirection,
    t: usize,
    horizon: usize,
) -> Result<f64> {
    if horizon == 0 {
        return domain("transient horizon N must be at least 1");
    }
    if t > horizon {
        return domain(format!("step {t} outside [0, {horizon}]"));
    }
    let (t, n) = (t as f64, horizon as f64);
    let nn = 2.0 * n * n;
    use TransientDirection::*;
    use TransientShape::*;
    let p = match (direction, shape) {
        (OrderToDisorder, Linear) => t / (2.0 * n),
        (OrderToDisorder, Quadratic) => t * t / nn,
        (OrderToDisorder, NegativeQuadratic) => 0.5 - (t - n) * (t - n) / nn,
        (DisorderToOrder, Linear) => -(t - n) / (2.0 * n),
        (DisorderToOrder, Quadratic) => (t - n) * (t - n) / nn,
        (DisorderToOrder, NegativeQuadratic) => 0.5 - t * t / nn,
    };
    Ok(p.clamp(0.0, 0.5))
}

/// Rule producing the coin of each step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoinSchedule {
    /// Same coin at every step.
    Ordered(CoinParams),
    /// Fresh fair Hadamard/Fourier choice every step.
    Sdd2,
    /// Fresh uniform `(q, θ, φ)` coin every step.
    SddInf,
    /// `block` disordered steps, then `block` steps of `ordered`, repeating.
    Alternating {
        inner: Disorder,
        block: usize,
        ordered: CoinParams,
    },
    /// Disordered for `t ≤ switch_after`, then `ordered` for the rest of the walk.
    DisorderThenOrder {
        inner: Disorder,
        switch_after: usize,
        ordered: CoinParams,
    },
    /// Fourier with constant probability `p`, Hadamard otherwise.
    WeakConst { p: f64 },
    /// Fourier with probability `transient_p(shape, direction, t, horizon)`.
    WeakTransient {
        shape: TransientShape,
        direction: TransientDirection,
        horizon: usize,
    },
    /// Hadamard walk with a Fourier coin at every multiple of `period`.
    PeriodicFourier { period: usize },
}

impl CoinSchedule {
    pub fn is_random(&self) -> bool {
        !matches!(self, Self::Ordered(_) | Self::PeriodicFourier { .. })
    }

    /// Checks parameters against a walk of `steps` steps.
    pub fn validate(&self, steps: usize) -> Result<()> {
        match *self {
            Self::Ordered(c) => c.validate(),
            Self::Sdd2 | Self::SddInf => Ok(()),
            Self::Alternating { block, ordered, .. } => {
                if block == 0 || block > steps {
                    return domain(format!("alternation block {block} outside [1, {steps}]"));
                }
                ordered.validate()
            }
            Self::DisorderThenOrder { ordered, .. } => ordered.validate(),
            Self::WeakConst { p } => {
                if !(0.0..=1.0).contains(&p) {
                    return domain(format!("Fourier probability {p} outside [0, 1]"));
                }
                Ok(())
            }
            Self::WeakTransient { horizon, .. } => {
                if horizon == 0 || steps > horizon {
                    return domain(format!(
                        "transient horizon {horizon} must be ≥ 1 and cover {steps} steps"
                    ));
                }
                Ok(())
            }
            Self::PeriodicFourier { period } => {
                if period == 0 {
                    return domain("Fourier period must be positive");
                }
                Ok(())
            }
        }
    }

    /// Coin for step `t` (1-based), drawing from `rng` when the step is random.
    fn coin_at<R: UnitDraw + ?Sized>(&self, t: usize, rng: &mut R) -> Result<CoinParams> {
        Ok(match *self {
            Self::Ordered(c) => c,
            Self::Sdd2 => Disorder::TwoCoin.draw(rng),
            Self::SddInf => Disorder::Su2.draw(rng),
            Self::Alternating {
                inner,
                block,
                ordered,
            } => {
                if ((t - 1) / block).is_multiple_of(2) {
                    inner.draw(rng)
                } else {
                    ordered
                }
            }
            Self::DisorderThenOrder {
                inner,
                switch_after,
                ordered,
            } => {
                if t <= switch_after {
                    inner.draw(rng)
                } else {
                    ordered
                }
            }
            Self::WeakConst { p } => sample_two_coin(p, rng)?,
            Self::WeakTransient {
                shape,
                direction,
                horizon,
            } => sample_two_coin(transient_p(shape, direction, t, horizon)?, rng)?,
            Self::PeriodicFourier { period } => {
                if t.is_multiple_of(period) {
                    fourier()
                } else {
                    hadamard()
                }
            }
        })
    }
}

impl fmt::Display for CoinSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let disorder = |d: &Disorder| match d {
            Disorder::TwoCoin => "2",
            Disorder::Su2 => "inf",
        };
        match self {
            Self::Ordered(c) if *c == hadamard() => write!(f, "hadamard"),
            Self::Ordered(c) if *c == fourier() => write!(f, "fourier"),
            Self::Ordered(c) => write!(f, "ordered(q={}, theta={}, phi={})", c.q, c.theta, c.phi),
            Self::Sdd2 => write!(f, "sdd2"),
            Self::SddInf => write!(f, "sddinf"),
            Self::Alternating { inner, block, .. } => {
                write!(f, "ado{}(dt={block})", disorder(inner))
            }
            Self::DisorderThenOrder {
                inner,
                switch_after,
                ..
            } => write!(f, "switch{}(t={switch_after})", disorder(inner)),
            Self::WeakConst { p } => write!(f, "wdd(p={p})"),
            Self::WeakTransient {
                shape,
                direction,
                horizon,
            } => write!(f, "transient({shape:?}, {direction:?}, N={horizon})"),
            Self::PeriodicFourier { period } => write!(f, "periodic-fourier({period})"),
        }
    }
}

/// Materialized coin sequence, `coins[t - 1]` is the coin of step `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoinSequence {
    pub coins: Vec<CoinParams>,
    pub seed: u64,
    pub stream: u64,
    /// `None` for sequences read back from a file.
    pub schedule: Option<CoinSchedule>,
}

impl CoinSequence {
    pub fn from_coins(coins: Vec<CoinParams>) -> Result<Self> {
        for c in &coins {
            c.validate()?;
        }
        Ok(Self {
            coins,
            seed: 0,
            stream: 0,
            schedule: None,
        })
    }

    pub fn len(&self) -> usize {
        self.coins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coins.is_empty()
    }

    pub fn matrices<T: Scalar>(&self) -> Result<Vec<CoinMatrix<T>>> {
        self.coins.iter().map(coin_matrix).collect()
    }

    pub fn count(&self, coin: CoinParams) -> usize {
        self.coins.iter().filter(|c| **c == coin).count()
    }
}

/// Sequence of `steps` coins on stream 0 of `seed`.
pub fn generate_sequence(schedule: &CoinSchedule, steps: usize, seed: u64) -> Result<CoinSequence> {
    generate_sequence_on_stream(schedule, steps, seed, 0)
}

pub fn generate_sequence_on_stream(
    schedule: &CoinSchedule,
    steps: usize,
    seed: u64,
    stream: u64,
) -> Result<CoinSequence> {
    schedule.validate(steps)?;
    let mut rng = seeded_stream(seed, stream);
    let coins = (1..=steps)
        .map(|t| schedule.coin_at(t, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoinSequence {
        coins,
        seed,
        stream,
        schedule: Some(*schedule),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use TransientDirection::*;
    use TransientShape::*;

    #[test]
    fn transient_table_values() {
        let n = 1000;
        assert_eq!(transient_p(Linear, OrderToDisorder, 0, n).unwrap(), 0.0);
        assert_eq!(transient_p(Linear, OrderToDisorder, n, n).unwrap(), 0.5);
        assert_eq!(
            transient_p(Quadratic, OrderToDisorder, 500, n).unwrap(),
            0.125
        );
        assert_eq!(
            transient_p(NegativeQuadratic, DisorderToOrder, 0, n).unwrap(),
            0.5
        );
        assert_eq!(transient_p(Linear, DisorderToOrder, 250, n).unwrap(), 0.375);
        assert_eq!(
            transient_p(Quadratic, DisorderToOrder, 500, n).unwrap(),
            0.125
        );
        assert_eq!(
            transient_p(NegativeQuadratic, OrderToDisorder, 500, n).unwrap(),
            0.375
        );
        assert!(transient_p(Linear, OrderToDisorder, n + 1, n).is_err());
        assert!(transient_p(Linear, OrderToDisorder, 0, 0).is_err());
    }

    #[test]
    fn transient_endpoints_exact() {
        for shape in [Linear, Quadratic, NegativeQuadratic] {
            assert_eq!(transient_p(shape, OrderToDisorder, 0, 1000).unwrap(), 0.0);
            assert_eq!(
                transient_p(shape, OrderToDisorder, 1000, 1000).unwrap(),
                0.5
            );
            assert_eq!(transient_p(shape, DisorderToOrder, 0, 1000).unwrap(), 0.5);
            assert_eq!(
                transient_p(shape, DisorderToOrder, 1000, 1000).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn ordered_and_weak_zero() {
        let s = generate_sequence(&CoinSchedule::WeakConst { p: 0.0 }, 5, 1).unwrap();
        assert_eq!(s.coins, vec![hadamard(); 5]);
        let o = generate_sequence(&CoinSchedule::Ordered(hadamard()), 5, 1).unwrap();
        assert_eq!(o.coins, s.coins);
    }

    #[test]
    fn weak_half_equals_sdd2() {
        let a = generate_sequence(&CoinSchedule::WeakConst { p: 0.5 }, 500, 77).unwrap();
        let b = generate_sequence(&CoinSchedule::Sdd2, 500, 77).unwrap();
        assert_eq!(a.coins, b.coins);
    }

    #[test]
    fn alternating_blocks() {
        let sched = CoinSchedule::Alternating {
            inner: Disorder::TwoCoin,
            block: 10,
            ordered: hadamard(),
        };
        let s = generate_sequence(&sched, 40, 3).unwrap();
        assert!(s.coins[10..20].iter().all(|c| *c == hadamard()));
        assert!(s.coins[30..40].iter().all(|c| *c == hadamard()));
        // disordered blocks are random: with this seed they contain Fourier coins
        assert!(s.coins[0..10].iter().any(|c| *c == fourier()));
        assert!(s.coins[20..30].iter().any(|c| *c == fourier()));
    }

    #[test]
    fn alternating_su2_half_ordered() {
        let sched = CoinSchedule::Alternating {
            inner: Disorder::Su2,
            block: 25,
            ordered: hadamard(),
        };
        let s = generate_sequence(&sched, 1000, 8).unwrap();
        assert_eq!(s.count(hadamard()), 500);
    }

    #[test]
    fn alternating_rejects_bad_block() {
        let bad = |block| CoinSchedule::Alternating {
            inner: Disorder::TwoCoin,
            block,
            ordered: hadamard(),
        };
        assert!(generate_sequence(&bad(0), 10, 0).is_err());
        assert!(generate_sequence(&bad(11), 10, 0).is_err());
        assert!(generate_sequence(&bad(10), 10, 0).is_ok());
    }

    #[test]
    fn disorder_then_order_switches_once() {
        let sched = CoinSchedule::DisorderThenOrder {
            inner: Disorder::Su2,
            switch_after: 50,
            ordered: hadamard(),
        };
        let s = generate_sequence(&sched, 200, 1).unwrap();
        assert!(s.coins[..50].iter().all(|c| *c != hadamard()));
        assert!(s.coins[50..].iter().all(|c| *c == hadamard()));
    }

    #[test]
    fn periodic_fourier_count() {
        let s = generate_sequence(&CoinSchedule::PeriodicFourier { period: 33 }, 1000, 0).unwrap();
        assert_eq!(s.count(fourier()), 30);
        assert_eq!(s.coins[32], fourier());
        assert_eq!(s.coins[31], hadamard());
    }

    #[test]
    fn sdd2_fourier_fraction() {
        let s = generate_sequence(&CoinSchedule::Sdd2, 100_000, 12345).unwrap();
        let frac = s.count(fourier()) as f64 / s.len() as f64;
        assert!((frac - 0.5).abs() < 0.01);
    }

    #[test]
    fn deterministic_and_stream_separated() {
        let a = generate_sequence(&CoinSchedule::SddInf, 100, 9).unwrap();
        let b = generate_sequence(&CoinSchedule::SddInf, 100, 9).unwrap();
        let c =
            generate_sequence_on_stream(&CoinSchedule::SddInf, 100, 9, stream_id(1, 0)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.coins, c.coins);
    }

    #[test]
    fn transient_requires_horizon_cover() {
        let sched = CoinSchedule::WeakTransient {
            shape: Linear,
            direction: OrderToDisorder,
            horizon: 100,
        };
        assert!(generate_sequence(&sched, 101, 0).is_err());
        let s = generate_sequence(&sched, 100, 0).unwrap();
        assert_eq!(s.len(), 100);
    }
}
