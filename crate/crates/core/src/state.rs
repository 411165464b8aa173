//! Joint coin-position state of the walker and its initial-state constructors.
//!
//! Amplitudes live in a fixed window of lattice sites that is sized up front
//! from the number of planned steps, so the stepping kernel never reallocates.
//! Spin-up and spin-down amplitudes are stored in two parallel arrays.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::scalar::{CompensatedSum, Scalar};

/// Initial coin state on the Bloch sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitSpec {
    /// Polar angle, `[0, π]`.
    pub alpha: f64,
    /// Azimuthal angle, `[0, 2π]`.
    pub beta: f64,
}

impl QubitSpec {
    pub const fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=PI).contains(&self.alpha) {
            return domain(format!("alpha = {} outside [0, π]", self.alpha));
        }
        if !(0.0..=2.0 * PI).contains(&self.beta) {
            return domain(format!("beta = {} outside [0, 2π]", self.beta));
        }
        Ok(())
    }
}

/// Two-component coin spinor `(up, down)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spinor<T> {
    pub up: Complex<T>,
    pub down: Complex<T>,
}

impl<T: Scalar> Spinor<T> {
    pub fn norm_sqr(&self) -> T {
        self.up.norm_sqr() + self.down.norm_sqr()
    }
}

/// Spinor `(cos(α/2), e^{iβ} sin(α/2))`.
pub fn make_qubit<T: Scalar>(spec: QubitSpec) -> Result<Spinor<T>> {
    spec.validate()?;
    let half = T::lit(spec.alpha) / T::lit(2.0);
    Ok(Spinor {
        up: Complex::new(half.cos(), T::zero()),
        down: Complex::from_polar(half.sin(), T::lit(spec.beta)),
    })
}

/// Truncated Gaussian position profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianSpec {
    /// Initial standard deviation of the position distribution, in sites.
    pub sigma0: f64,
    /// Sites `|j| > cutoff` are dropped before renormalization.
    pub cutoff: u32,
}

impl GaussianSpec {
    pub const DEFAULT_CUTOFF: u32 = 100;

    pub const fn new(sigma0: f64) -> Self {
        Self {
            sigma0,
            cutoff: Self::DEFAULT_CUTOFF,
        }
    }

    pub const fn with_cutoff(sigma0: f64, cutoff: u32) -> Self {
        Self { sigma0, cutoff }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma0.is_finite() && self.sigma0 > 0.0) {
            return domain(format!("sigma0 = {} must be positive", self.sigma0));
        }
        Ok(())
    }
}

/// Unnormalized position amplitudes `exp(-j²/4σ₀²) / (2πσ₀²)^{1/4}` for
/// `j = -cutoff..=cutoff`, before truncation renormalization.
pub fn gaussian_amplitudes<T: Scalar>(g: &GaussianSpec) -> Result<Vec<T>> {
    g.validate()?;
    let sigma = T::lit(g.sigma0);
    let prefactor = (T::lit(2.0) * T::PI() * sigma * sigma).powf(T::lit(-0.25));
    let c = g.cutoff as i64;
    Ok((-c..=c)
        .map(|j| {
            let j = T::lit(j as f64);
            prefactor * (-(j * j) / (T::lit(4.0) * sigma * sigma)).exp()
        })
        .collect())
}

/// Coin-position amplitudes on a fixed lattice window.
///
/// Site `origin_offset + k` is stored at index `k`. `support` tracks the
/// index range that may hold nonzero amplitude; everything outside is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkState<T> {
    pub(crate) origin_offset: i64,
    pub(crate) up: Vec<Complex<T>>,
    pub(crate) down: Vec<Complex<T>>,
    pub(crate) support: (usize, usize),
}

impl<T: Scalar> WalkState<T> {
    /// Builds a state from raw amplitudes. The support is taken to be the whole window.
    pub fn from_amplitudes(
        origin_offset: i64,
        up: Vec<Complex<T>>,
        down: Vec<Complex<T>>,
    ) -> Result<Self> {
        if up.len() != down.len() || up.is_empty() {
            return domain(format!(
                "amplitude arrays must be nonempty and equal length (got {} and {})",
                up.len(),
                down.len()
            ));
        }
        let support = (0, up.len() - 1);
        let mut state = Self {
            origin_offset,
            up,
            down,
            support,
        };
        state.shrink_support();
        Ok(state)
    }

    /// Zero state on sites `lo..=hi` with empty-looking support at `lo`.
    fn zeros(lo: i64, hi: i64) -> Self {
        let len = (hi - lo + 1) as usize;
        Self {
            origin_offset: lo,
            up: vec![Complex::new(T::zero(), T::zero()); len],
            down: vec![Complex::new(T::zero(), T::zero()); len],
            support: (0, 0),
        }
    }

    fn shrink_support(&mut self) {
        let nonzero = |k: &usize| {
            self.up[*k] != Complex::new(T::zero(), T::zero())
                || self.down[*k] != Complex::new(T::zero(), T::zero())
        };
        let lo = (0..self.up.len()).find(nonzero);
        let hi = (0..self.up.len()).rev().find(nonzero);
        self.support = match (lo, hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => (0, 0),
        };
    }

    pub fn origin_offset(&self) -> i64 {
        self.origin_offset
    }

    pub fn up_amps(&self) -> &[Complex<T>] {
        &self.up
    }

    pub fn down_amps(&self) -> &[Complex<T>] {
        &self.down
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    /// Lattice sites covered by the storage window.
    pub fn window(&self) -> RangeInclusive<i64> {
        self.origin_offset..=self.origin_offset + self.up.len() as i64 - 1
    }

    /// Lattice sites that may carry nonzero amplitude.
    pub fn support(&self) -> RangeInclusive<i64> {
        self.origin_offset + self.support.0 as i64..=self.origin_offset + self.support.1 as i64
    }

    pub fn support_halfwidth(&self) -> i64 {
        self.support().start().abs().max(self.support().end().abs())
    }

    /// `(a(j), b(j))`, zero outside the window.
    pub fn amplitude(&self, site: i64) -> (Complex<T>, Complex<T>) {
        let k = site - self.origin_offset;
        if k < 0 || k as usize >= self.up.len() {
            let z = Complex::new(T::zero(), T::zero());
            return (z, z);
        }
        (self.up[k as usize], self.down[k as usize])
    }

    pub fn norm_sqr(&self) -> T {
        let (lo, hi) = self.support;
        (lo..=hi)
            .map(|k| self.up[k].norm_sqr() + self.down[k].norm_sqr())
            .collect::<CompensatedSum<T>>()
            .total()
    }

    /// Multiplies every amplitude by `z`.
    pub fn scale(&mut self, z: Complex<T>) {
        for amp in self.up.iter_mut().chain(self.down.iter_mut()) {
            *amp *= z;
        }
    }
}

/// Qubit placed on site 0, window `[-planned_steps, planned_steps]`.
pub fn make_local_state<T: Scalar>(qubit: QubitSpec, planned_steps: usize) -> Result<WalkState<T>> {
    let spinor = make_qubit::<T>(qubit)?;
    let n = planned_steps as i64;
    let mut state = WalkState::zeros(-n, n);
    let k = n as usize;
    state.up[k] = spinor.up;
    state.down[k] = spinor.down;
    state.support = (k, k);
    Ok(state)
}

/// Qubit spread over a truncated Gaussian, renormalized to unit norm.
///
/// Window is `[-cutoff - planned_steps, cutoff + planned_steps]`.
pub fn make_gaussian_state<T: Scalar>(
    qubit: QubitSpec,
    g: &GaussianSpec,
    planned_steps: usize,
) -> Result<WalkState<T>> {
    let spinor = make_qubit::<T>(qubit)?;
    let profile = gaussian_amplitudes::<T>(g)?;
    let weight = profile
        .iter()
        .map(|x| *x * *x)
        .collect::<CompensatedSum<T>>()
        .total();
    let renorm = weight.sqrt().recip();

    let c = g.cutoff as i64;
    let n = planned_steps as i64;
    let mut state = WalkState::zeros(-c - n, c + n);
    let first = planned_steps;
    for (offset, amp) in profile.iter().enumerate() {
        let f = *amp * renorm;
        state.up[first + offset] = spinor.up * f;
        state.down[first + offset] = spinor.down * f;
    }
    state.support = (first, first + 2 * g.cutoff as usize);
    Ok(state)
}

/// `(j, |a(j)|² + |b(j)|²)` for every support site with nonzero probability.
pub fn position_probabilities<T: Scalar>(state: &WalkState<T>) -> Vec<(i64, T)> {
    let (lo, hi) = state.support;
    (lo..=hi)
        .filter_map(|k| {
            let p = state.up[k].norm_sqr() + state.down[k].norm_sqr();
            (p != T::zero()).then(|| (state.origin_offset + k as i64, p))
        })
        .collect()
}

/// `Σ j² p(j) − (Σ j p(j))²`.
pub fn position_variance<T: Scalar>(state: &WalkState<T>) -> T {
    let mut first = CompensatedSum::new();
    let mut second = CompensatedSum::new();
    for (j, p) in position_probabilities(state) {
        let j = T::lit(j as f64);
        first.add(j * p);
        second.add(j * j * p);
    }
    let mean = first.total();
    second.total() - mean * mean
}
