//! Unitary walk step: coin on the spin, then the spin-conditional shift.
//!
//! The step runs in place over the current support. Spin-down amplitude moves
//! left onto an index that has already been read; spin-up amplitude moves
//! right and is held in a one-site carry until its target has been read.
//! The reduced coin accumulators of the new state are gathered in the same pass.

use num_complex::Complex;

use crate::coins::CoinMatrix;
use crate::entanglement::{reduce_coin, ReducedCoinState};
use crate::error::{QwError, Result};
use crate::scalar::Scalar;
use crate::schedule::CoinSequence;
use crate::state::{position_variance, WalkState};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepReport<T> {
    pub step_index: usize,
    pub norm_after: T,
    pub support_halfwidth: i64,
}

impl<T: Scalar> StepReport<T> {
    pub fn of(step_index: usize, state: &WalkState<T>) -> Self {
        Self {
            step_index,
            norm_after: state.norm_sqr(),
            support_halfwidth: state.support_halfwidth(),
        }
    }
}

fn capacity_error<T: Scalar>(state: &WalkState<T>) -> QwError {
    let support = state.support();
    let window = state.window();
    QwError::Capacity {
        lo: support.start() - 1,
        hi: support.end() + 1,
        window_lo: *window.start(),
        window_hi: *window.end(),
    }
}

/// Applies one step and returns the reduced coin state after it.
pub fn step_reduced<T: Scalar>(
    state: &mut WalkState<T>,
    coin: &CoinMatrix<T>,
) -> Result<ReducedCoinState<T>> {
    let (lo, hi) = state.support;
    if lo == 0 || hi + 1 >= state.up.len() {
        return Err(capacity_error(state));
    }
    let CoinMatrix { c00, c01, c10, c11 } = *coin;
    let zero = Complex::new(T::zero(), T::zero());

    let up = &mut state.up[..];
    let down = &mut state.down[..];
    let mut carry = zero;
    let (mut a_sum, mut b_sum, mut g_sum) = (T::zero(), T::zero(), zero);
    for k in lo..=hi {
        let (a, b) = (up[k], down[k]);
        up[k] = carry;
        carry = c00 * a + c01 * b;
        let left = c10 * a + c11 * b;
        down[k - 1] = left;
        // site k-1 is final now
        let u = up[k - 1];
        a_sum += u.norm_sqr();
        b_sum += left.norm_sqr();
        g_sum += u * left.conj();
    }
    down[hi] = zero;
    up[hi + 1] = carry;
    a_sum += up[hi].norm_sqr() + carry.norm_sqr();

    state.support = (lo - 1, hi + 1);
    Ok(ReducedCoinState::new(a_sum, b_sum, g_sum))
}

/// One unitary step in place.
pub fn step<T: Scalar>(state: &mut WalkState<T>, coin: &CoinMatrix<T>) -> Result<()> {
    step_reduced(state, coin).map(|_| ())
}

pub fn evolve_matrices<T: Scalar>(state: &mut WalkState<T>, coins: &[CoinMatrix<T>]) -> Result<()> {
    coins.iter().try_for_each(|c| step(state, c))
}

/// Applies every coin of `seq` in increasing `t`.
pub fn evolve<T: Scalar>(state: &mut WalkState<T>, seq: &CoinSequence) -> Result<()> {
    evolve_matrices(state, &seq.matrices()?)
}

/// Evolves while handing `(t, state)` to `observer` for `t = 0..=N`.
pub fn evolve_observed<T, F>(
    state: &mut WalkState<T>,
    coins: &[CoinMatrix<T>],
    mut observer: F,
) -> Result<()>
where
    T: Scalar,
    F: FnMut(usize, &WalkState<T>),
{
    observer(0, state);
    for (i, c) in coins.iter().enumerate() {
        step(state, c)?;
        observer(i + 1, state);
    }
    Ok(())
}

/// Reduced coin states for `t = 0..=N`.
pub fn reduced_series<T: Scalar>(
    state: &mut WalkState<T>,
    coins: &[CoinMatrix<T>],
) -> Result<Vec<ReducedCoinState<T>>> {
    let mut out = Vec::with_capacity(coins.len() + 1);
    out.push(reduce_coin(state));
    for c in coins {
        out.push(step_reduced(state, c)?);
    }
    Ok(out)
}

/// Position variance for `t = 0..=N`.
pub fn variance_series<T: Scalar>(
    state: &mut WalkState<T>,
    coins: &[CoinMatrix<T>],
) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(coins.len() + 1);
    evolve_observed(state, coins, |_, s| out.push(position_variance(s)))?;
    Ok(out)
}
