//! Dense reference evolution for verification.
//!
//! Builds the full one-step operator `S·(C ⊗ 1)` as an explicit matrix on the
//! state's window (periodic at the edges, so every step matrix is unitary)
//! and multiplies the flattened state vector. Quadratic in the window size;
//! intended for small test lattices only.

use num_complex::Complex;

use crate::coins::CoinMatrix;
use crate::error::{QwError, Result};
use crate::scalar::Scalar;
use crate::schedule::CoinSequence;
use crate::state::WalkState;

/// Largest state-vector dimension the oracle accepts.
pub const MAX_DENSE_DIM: usize = 2048;

/// Square complex matrix, row-major. Basis index is `2·k + spin`, spin 0 = up.
#[derive(Clone, Debug)]
pub struct DenseOperator<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> DenseOperator<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.dim)
            .map(|r| {
                let row = &self.data[r * self.dim..(r + 1) * self.dim];
                row.iter()
                    .zip(v)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (m, x)| {
                        acc + *m * *x
                    })
            })
            .collect()
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..n {
                    acc += self.get(k, i).conj() * self.get(k, j);
                }
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((acc - Complex::new(target, T::zero())).norm());
            }
        }
        worst
    }
}

fn check_dim(sites: usize) -> Result<usize> {
    let dim = 2 * sites;
    if dim > MAX_DENSE_DIM {
        return Err(QwError::OracleTooLarge {
            dim,
            limit: MAX_DENSE_DIM,
        });
    }
    Ok(dim)
}

/// Explicit step operator on a ring of `sites` sites.
pub fn dense_step_operator<T: Scalar>(
    coin: &CoinMatrix<T>,
    sites: usize,
) -> Result<DenseOperator<T>> {
    let dim = check_dim(sites)?;
    let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    let rows = coin.rows();
    for k in 0..sites {
        let right = (k + 1) % sites;
        let left = (k + sites - 1) % sites;
        for (spin_in, (up, down)) in rows[0].iter().zip(&rows[1]).enumerate() {
            let col = 2 * k + spin_in;
            data[(2 * right) * dim + col] += *up;
            data[(2 * left + 1) * dim + col] += *down;
        }
    }
    Ok(DenseOperator { dim, data })
}

/// Evolves `state` through `seq` with dense matrix-vector products.
pub fn dense_oracle_evolve<T: Scalar>(
    state: &WalkState<T>,
    seq: &CoinSequence,
) -> Result<WalkState<T>> {
    let sites = state.len();
    check_dim(sites)?;
    let mut v: Vec<Complex<T>> = state
        .up_amps()
        .iter()
        .zip(state.down_amps())
        .flat_map(|(u, d)| [*u, *d])
        .collect();
    for coin in seq.matrices::<T>()? {
        v = dense_step_operator(&coin, sites)?.apply(&v);
    }
    let up = v.iter().step_by(2).copied().collect();
    let down = v.iter().skip(1).step_by(2).copied().collect();
    WalkState::from_amplitudes(state.origin_offset(), up, down)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::{coin_matrix, hadamard};
    use crate::evolution::{evolve, step};
    use crate::schedule::{generate_sequence, CoinSchedule};
    use crate::state::{make_local_state, QubitSpec};

    #[test]
    fn matches_single_hadamard_step() {
        let s0 = make_local_state::<f64>(QubitSpec::new(0.0, 0.0), 1).unwrap();
        let mut engine = s0.clone();
        step(&mut engine, &coin_matrix(&hadamard()).unwrap()).unwrap();
        let seq = generate_sequence(&CoinSchedule::Ordered(hadamard()), 1, 0).unwrap();
        let dense = dense_oracle_evolve(&s0, &seq).unwrap();
        for j in s0.window() {
            let (a, b) = engine.amplitude(j);
            let (da, db) = dense.amplitude(j);
            assert!((a - da).norm() < 1e-13 && (b - db).norm() < 1e-13);
        }
    }

    #[test]
    fn matches_engine_on_sdd2_walk() {
        let seq = generate_sequence(&CoinSchedule::Sdd2, 10, 31).unwrap();
        let s0 = make_local_state::<f64>(QubitSpec::new(0.9, 2.2), 10).unwrap();
        let mut engine = s0.clone();
        evolve(&mut engine, &seq).unwrap();
        let dense = dense_oracle_evolve(&s0, &seq).unwrap();
        let worst = s0
            .window()
            .map(|j| {
                let (a, b) = engine.amplitude(j);
                let (da, db) = dense.amplitude(j);
                (a - da).norm().max((b - db).norm())
            })
            .fold(0.0, f64::max);
        assert!(worst < 1e-12, "max deviation {worst}");
    }

    #[test]
    fn step_operator_is_unitary() {
        let seq = generate_sequence(&CoinSchedule::SddInf, 3, 2).unwrap();
        for coin in seq.matrices::<f64>().unwrap() {
            let u = dense_step_operator(&coin, 9).unwrap();
            assert!(u.unitarity_error() < 1e-12);
        }
    }

    #[test]
    fn refuses_large_lattices() {
        let s = make_local_state::<f64>(QubitSpec::new(0.0, 0.0), 1100).unwrap();
        let seq = generate_sequence(&CoinSchedule::Sdd2, 1, 0).unwrap();
        assert!(matches!(
            dense_oracle_evolve(&s, &seq),
            Err(QwError::OracleTooLarge { .. })
        ));
    }
}
