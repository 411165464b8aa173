//! SU(2) coins in the three-parameter `(q, θ, φ)` family and their random sampling.
//!
//! ```text
//! C = [  √q            √(1-q)·e^{iθ}      ]
//!     [  √(1-q)·e^{iφ}  -√q·e^{i(θ+φ)}     ]
//! ```

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex;
use rand::Rng;

use crate::error::{domain, Result};
use crate::scalar::Scalar;
use crate::state::Spinor;

/// Coin parameters. `q` sets the bias, `theta` and `phi` the relative phases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinParams {
    pub q: f64,
    pub theta: f64,
    pub phi: f64,
}

impl CoinParams {
    pub const fn new(q: f64, theta: f64, phi: f64) -> Self {
        Self { q, theta, phi }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.q) {
            return domain(format!("coin q = {} outside [0, 1]", self.q));
        }
        for (name, v) in [("theta", self.theta), ("phi", self.phi)] {
            if !(0.0..=2.0 * PI).contains(&v) {
                return domain(format!("coin {name} = {v} outside [0, 2π]"));
            }
        }
        Ok(())
    }

    /// Maps three unit draws `r ∈ [0, 1)` to `(r_q, 2π r_θ, 2π r_φ)`.
    pub fn from_unit_draws(r_q: f64, r_theta: f64, r_phi: f64) -> Self {
        Self::new(r_q, 2.0 * PI * r_theta, 2.0 * PI * r_phi)
    }
}

pub const fn hadamard() -> CoinParams {
    CoinParams::new(0.5, 0.0, 0.0)
}

pub const fn fourier() -> CoinParams {
    CoinParams::new(0.5, FRAC_PI_2, FRAC_PI_2)
}

/// Row-major 2×2 complex matrix acting on `(up, down)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinMatrix<T> {
    pub c00: Complex<T>,
    pub c01: Complex<T>,
    pub c10: Complex<T>,
    pub c11: Complex<T>,
}

impl<T: Scalar> CoinMatrix<T> {
    pub fn from_rows(rows: [[Complex<T>; 2]; 2]) -> Self {
        Self {
            c00: rows[0][0],
            c01: rows[0][1],
            c10: rows[1][0],
            c11: rows[1][1],
        }
    }

    pub fn rows(&self) -> [[Complex<T>; 2]; 2] {
        [[self.c00, self.c01], [self.c10, self.c11]]
    }

    #[inline]
    pub fn apply(&self, s: Spinor<T>) -> Spinor<T> {
        Spinor {
            up: self.c00 * s.up + self.c01 * s.down,
            down: self.c10 * s.up + self.c11 * s.down,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            c00: self.c00 * rhs.c00 + self.c01 * rhs.c10,
            c01: self.c00 * rhs.c01 + self.c01 * rhs.c11,
            c10: self.c10 * rhs.c00 + self.c11 * rhs.c10,
            c11: self.c10 * rhs.c01 + self.c11 * rhs.c11,
        }
    }

    pub fn determinant(&self) -> Complex<T> {
        self.c00 * self.c11 - self.c01 * self.c10
    }

    /// Largest entrywise deviation of `C·C†` from the identity.
    pub fn unitarity_error(&self) -> T {
        let r0 = self.c00.norm_sqr() + self.c01.norm_sqr();
        let r1 = self.c10.norm_sqr() + self.c11.norm_sqr();
        let off = self.c00 * self.c10.conj() + self.c01 * self.c11.conj();
        (r0 - T::one())
            .abs()
            .max((r1 - T::one()).abs())
            .max(off.norm())
    }
}

/// Builds the coin matrix for `p`.
pub fn coin_matrix<T: Scalar>(p: &CoinParams) -> Result<CoinMatrix<T>> {
    p.validate()?;
    let q = T::lit(p.q);
    let (theta, phi) = (T::lit(p.theta), T::lit(p.phi));
    let diag = q.sqrt();
    let off = (T::one() - q).sqrt();
    Ok(CoinMatrix {
        c00: Complex::new(diag, T::zero()),
        c01: Complex::from_polar(off, theta),
        c10: Complex::from_polar(off, phi),
        c11: -Complex::from_polar(diag, theta + phi),
    })
}

/// Source of uniform draws on `[0, 1)`.
///
/// Implemented for every [`rand::Rng`]; tests may substitute a scripted source.
pub trait UnitDraw {
    fn unit(&mut self) -> f64;
}

impl<R: Rng + ?Sized> UnitDraw for R {
    #[inline]
    fn unit(&mut self) -> f64 {
        self.random::<f64>()
    }
}

/// Uniform draw over the parameter box `q ∈ [0,1)`, `θ, φ ∈ [0, 2π)`.
///
/// This is uniform in the parameters, not Haar measure on SU(2).
/// Consumes three draws in the order `q, θ, φ`.
pub fn sample_su2_uniform<R: UnitDraw + ?Sized>(rng: &mut R) -> CoinParams {
    let r_q = rng.unit();
    let r_theta = rng.unit();
    let r_phi = rng.unit();
    CoinParams::from_unit_draws(r_q, r_theta, r_phi)
}

/// Fourier with probability `prob_fourier`, Hadamard otherwise. Consumes one draw.
pub fn sample_two_coin<R: UnitDraw + ?Sized>(prob_fourier: f64, rng: &mut R) -> Result<CoinParams> {
    if !(0.0..=1.0).contains(&prob_fourier) {
        return domain(format!("Fourier probability {prob_fourier} outside [0, 1]"));
    }
    Ok(if rng.unit() < prob_fourier {
        fourier()
    } else {
        hadamard()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::seeded_stream;
    use std::collections::VecDeque;
    use std::f64::consts::FRAC_1_SQRT_2;

    struct Scripted(VecDeque<f64>);

    impl UnitDraw for Scripted {
        fn unit(&mut self) -> f64 {
            self.0.pop_front().expect("scripted draw")
        }
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn max_dev(a: &CoinMatrix<f64>, b: [[Complex<f64>; 2]; 2]) -> f64 {
        let ra = a.rows();
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (ra[i][j] - b[i][j]).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn named_coins() {
        let s = FRAC_1_SQRT_2;
        let h = coin_matrix::<f64>(&hadamard()).unwrap();
        assert!(max_dev(&h, [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]) < 1e-15);
        let f = coin_matrix::<f64>(&fourier()).unwrap();
        assert!(max_dev(&f, [[c(s, 0.0), c(0.0, s)], [c(0.0, s), c(s, 0.0)]]) < 1e-15);
        let z = coin_matrix::<f64>(&CoinParams::new(1.0, 0.0, 0.0)).unwrap();
        assert!(
            max_dev(
                &z,
                [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]
            ) < 1e-15
        );
    }

    #[test]
    fn fourier_squared_on_spin_up() {
        // F² = [[0, i], [i, 0]], so F²|↑⟩ = i|↓⟩
        let f = coin_matrix::<f64>(&fourier()).unwrap();
        let out = f.apply(f.apply(Spinor {
            up: c(1.0, 0.0),
            down: c(0.0, 0.0),
        }));
        assert!(out.up.norm() < 1e-15);
        assert!((out.down - c(0.0, 1.0)).norm() < 1e-15);
        let f2 = f.mul(&f);
        assert!(
            max_dev(
                &f2,
                [[c(0.0, 0.0), c(0.0, 1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]
            ) < 1e-15
        );
    }

    #[test]
    fn random_coins_are_unitary() {
        let mut rng = seeded_stream(11, 0);
        for _ in 0..10_000 {
            let m = coin_matrix::<f64>(&sample_su2_uniform(&mut rng)).unwrap();
            assert!(m.unitarity_error() < 1e-12);
            assert!((m.determinant().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_out_of_range_params() {
        assert!(coin_matrix::<f64>(&CoinParams::new(1.1, 0.0, 0.0)).is_err());
        assert!(coin_matrix::<f64>(&CoinParams::new(0.5, -0.1, 0.0)).is_err());
        assert!(coin_matrix::<f64>(&CoinParams::new(0.5, 0.0, 7.0)).is_err());
        assert!(sample_two_coin(1.5, &mut seeded_stream(0, 0)).is_err());
        assert!(sample_two_coin(-0.01, &mut seeded_stream(0, 0)).is_err());
    }

    #[test]
    fn forced_draws() {
        let mut s = Scripted(VecDeque::from([0.5, 0.0, 0.0, 0.5, 0.25, 0.25]));
        assert_eq!(sample_su2_uniform(&mut s), hadamard());
        assert_eq!(sample_su2_uniform(&mut s), fourier());
    }

    #[test]
    fn su2_sampling_moments() {
        let mut rng = seeded_stream(2024, 0);
        let n = 100_000;
        let (mut q, mut th) = (0.0, 0.0);
        for _ in 0..n {
            let p = sample_su2_uniform(&mut rng);
            q += p.q;
            th += p.theta;
        }
        assert!((q / n as f64 - 0.5).abs() < 0.01);
        assert!((th / n as f64 - PI).abs() < 0.03);
    }

    #[test]
    fn two_coin_limits_and_frequency() {
        let mut rng = seeded_stream(5, 0);
        for _ in 0..1000 {
            assert_eq!(sample_two_coin(0.0, &mut rng).unwrap(), hadamard());
            assert_eq!(sample_two_coin(1.0, &mut rng).unwrap(), fourier());
        }
        let n = 100_000;
        let fourier_count = (0..n)
            .filter(|_| sample_two_coin(0.5, &mut rng).unwrap() == fourier())
            .count();
        assert!((fourier_count as f64 / n as f64 - 0.5).abs() < 0.01);
    }

    #[test]
    fn identical_seeds_identical_draws() {
        let a: Vec<_> = {
            let mut r = seeded_stream(99, 3);
            (0..100).map(|_| sample_su2_uniform(&mut r)).collect()
        };
        let b: Vec<_> = {
            let mut r = seeded_stream(99, 3);
            (0..100).map(|_| sample_su2_uniform(&mut r)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn single_precision_matrix() {
        let m = coin_matrix::<f32>(&CoinParams::new(0.3, 1.0, 2.0)).unwrap();
        assert!(m.unitarity_error() < 1e-6);
    }
}
