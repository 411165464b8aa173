//! Reduced coin density matrix and its von Neumann entropy.
//!
//! Tracing out position leaves the 2×2 matrix `[[A, γ], [γ*, B]]` with
//! `A = Σ|a(j)|²`, `B = Σ|b(j)|²`, `γ = Σ a(j) b*(j)`. Its eigenvalues have
//! the closed form `λ± = 1/2 ± √(1/4 − A(1−A) + |γ|²)`.

use num_complex::Complex;

use crate::error::{QwError, Result};
use crate::scalar::{CompensatedSum, Scalar};
use crate::state::WalkState;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedCoinState<T> {
    /// `A`, total spin-up weight.
    pub up_weight: T,
    /// `B`, total spin-down weight.
    pub down_weight: T,
    /// `γ`, spin coherence.
    pub coherence: Complex<T>,
}

impl<T: Scalar> ReducedCoinState<T> {
    pub fn new(up_weight: T, down_weight: T, coherence: Complex<T>) -> Self {
        Self {
            up_weight,
            down_weight,
            coherence,
        }
    }

    pub fn trace(&self) -> T {
        self.up_weight + self.down_weight
    }

    /// `A·B − |γ|²`, the determinant.
    pub fn determinant(&self) -> T {
        self.up_weight * self.down_weight - self.coherence.norm_sqr()
    }

    /// Eigenvalues `(λ+, λ−)`, clamped into `[0, 1]`. A `λ−` within a few ulps
    /// of zero is rounding residue of a pure state and returned as exactly 0.
    pub fn eigenvalues(&self) -> Result<(T, T)> {
        let a = self.up_weight;
        let quarter = T::lit(0.25);
        let radicand = quarter - a * (T::one() - a) + self.coherence.norm_sqr();
        let tol = T::clamp_tolerance();
        if radicand < -tol || radicand > quarter + tol || radicand.is_nan() {
            return Err(QwError::NumericalConsistency {
                radicand: radicand.to_f64().unwrap_or(f64::NAN),
            });
        }
        let root = radicand.max(T::zero()).min(quarter).sqrt();
        let half = T::lit(0.5);
        let minus = half - root;
        if minus < T::lit(8.0) * T::epsilon() {
            return Ok((T::one(), T::zero()));
        }
        Ok((half + root, minus))
    }
}

/// Partial trace over position.
pub fn reduce_coin<T: Scalar>(state: &WalkState<T>) -> ReducedCoinState<T> {
    let (lo, hi) = state.support;
    let mut a = CompensatedSum::new();
    let mut b = CompensatedSum::new();
    let mut g_re = CompensatedSum::new();
    let mut g_im = CompensatedSum::new();
    for k in lo..=hi {
        let (u, d) = (state.up[k], state.down[k]);
        a.add(u.norm_sqr());
        b.add(d.norm_sqr());
        let g = u * d.conj();
        g_re.add(g.re);
        g_im.add(g.im);
    }
    ReducedCoinState::new(
        a.total(),
        b.total(),
        Complex::new(g_re.total(), g_im.total()),
    )
}

/// `−x log₂ x` with `0 log 0 = 0`.
#[inline]
fn entropy_term<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        -x * x.log2()
    } else {
        T::zero()
    }
}

/// Base-2 von Neumann entropy of the reduced coin state, in `[0, 1]`.
pub fn entropy<T: Scalar>(rc: &ReducedCoinState<T>) -> Result<T> {
    let (plus, minus) = rc.eigenvalues()?;
    Ok((entropy_term(plus) + entropy_term(minus)).min(T::one()))
}
