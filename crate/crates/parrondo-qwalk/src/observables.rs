//! Per-step diagnostics of a walk state: expected position, left/right
//! probability imbalance, and coin-position entanglement entropy.

use crate::error::{Error, Result};
use crate::walk::WalkState;
use num_complex::Complex64;

/// E[x] = sum_x x * P(x).
pub fn expected_position(state: &WalkState) -> f64 {
    state
        .positions()
        .map(|x| x as f64 * state.probability(x))
        .sum()
}

/// Delta P = sum_{x > 0} P(x) - sum_{x < 0} P(x). The origin is excluded
/// from both sums.
pub fn lr_probability_difference(state: &WalkState) -> f64 {
    let mut right = 0.0;
    let mut left = 0.0;
    for x in state.positions() {
        if x > 0 {
            right += state.probability(x);
        } else if x < 0 {
            left += state.probability(x);
        }
    }
    right - left
}

/// Position standard deviation sqrt(E[x^2] - E[x]^2).
pub fn position_std_dev(state: &WalkState) -> f64 {
    let mean = expected_position(state);
    let second: f64 = state
        .positions()
        .map(|x| (x as f64) * (x as f64) * state.probability(x))
        .sum();
    (second - mean * mean).max(0.0).sqrt()
}

/// Reduced coin density matrix rho_c, obtained by tracing out position.
#[derive(Debug, Clone, Copy)]
pub struct CoinDensityMatrix {
    pub rho00: f64,
    pub rho01: Complex64,
    pub rho11: f64,
}

impl CoinDensityMatrix {
    pub fn trace(&self) -> f64 {
        self.rho00 + self.rho11
    }

    pub fn determinant(&self) -> f64 {
        self.rho00 * self.rho11 - self.rho01.norm_sqr()
    }

    /// Eigenvalues in closed form. For unit trace they are
    /// 1/2 +- sqrt(1/4 - det).
    pub fn eigenvalues(&self) -> (f64, f64) {
        let half_tr = self.trace() / 2.0;
        let disc = (half_tr * half_tr - self.determinant()).max(0.0).sqrt();
        (half_tr + disc, half_tr - disc)
    }
}

/// rho_c = sum_x [[|a_x|^2, a_x conj(b_x)], [conj(a_x) b_x, |b_x|^2]].
pub fn reduced_coin_density(state: &WalkState) -> CoinDensityMatrix {
    let mut rho00 = 0.0;
    let mut rho11 = 0.0;
    let mut rho01 = Complex64::ZERO;
    for x in state.positions() {
        let (a, b) = state.amplitude(x);
        rho00 += a.norm_sqr();
        rho11 += b.norm_sqr();
        rho01 += a * b.conj();
    }
    CoinDensityMatrix { rho00, rho01, rho11 }
}

/// Eigenvalues below this are treated as exactly zero before the log,
/// absorbing ~1e-17 floating-point negatives.
const EIGENVALUE_FLOOR: f64 = 1e-15;

/// Slack permitted on the [0, 1] eigenvalue range before erroring.
const EIGENVALUE_SLACK: f64 = 1e-10;

/// Von Neumann entropy S = -sum lambda_i log2 lambda_i, in bits.
pub fn entanglement_entropy(rho: &CoinDensityMatrix) -> Result<f64> {
    let (l1, l2) = rho.eigenvalues();
    let mut s = 0.0;
    for lambda in [l1, l2] {
        if !(-EIGENVALUE_SLACK..=1.0 + EIGENVALUE_SLACK).contains(&lambda) {
            return Err(Error::InvalidEigenvalue(lambda));
        }
        let lambda = lambda.clamp(0.0, 1.0);
        if lambda > EIGENVALUE_FLOOR {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s)
}

/// Entropy of the coin after tracing out position, in bits.
pub fn coin_entropy(state: &WalkState) -> Result<f64> {
    entanglement_entropy(&reduced_coin_density(state))
}

/// Per-step record of the three diagnostics.
#[derive(Debug, Clone, Default)]
pub struct ObservableSeries {
    pub expected_position: Vec<f64>,
    pub delta_p: Vec<f64>,
    pub entropy: Vec<f64>,
}

impl ObservableSeries {
    pub fn push_from(&mut self, state: &WalkState) -> Result<()> {
        self.expected_position.push(expected_position(state));
        self.delta_p.push(lr_probability_difference(state));
        self.entropy.push(coin_entropy(state)?);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.expected_position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.expected_position.is_empty()
    }
}
