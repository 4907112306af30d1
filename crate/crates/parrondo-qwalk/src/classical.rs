//! Classical Parrondo baseline: the capital-mod-3 Markov analysis of Game B
//! and seeded Monte Carlo simulation of arbitrary A/B schedules.

use crate::error::{Error, Result};
use crate::walk::{CoinLabel, Sequence};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Bias parameter and the win probabilities it induces:
/// p_A = 1/2 - c, p_B1 = 1/10 - c, p_B2 = 3/4 - c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalParams {
    c: f64,
}

impl ClassicalParams {
    /// c must lie in [0, 1/10) so every win probability stays in (0, 1).
    pub fn new(c: f64) -> Result<Self> {
        if !c.is_finite() || !(0.0..0.1).contains(&c) {
            return Err(Error::InvalidBias(c));
        }
        Ok(Self { c })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn p_a(&self) -> f64 {
        0.5 - self.c
    }

    /// Game B coin used when capital mod 3 == 0.
    pub fn p_b1(&self) -> f64 {
        0.1 - self.c
    }

    /// Game B coin used otherwise.
    pub fn p_b2(&self) -> f64 {
        0.75 - self.c
    }
}

/// Row-stochastic 3x3 matrix over the states capital mod 3 = {0, 1, 2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionMatrix(pub [[f64; 3]; 3]);

/// Game B transition matrix. From state 0 the low-probability coin is
/// played; from states 1 and 2 the high-probability coin. A win moves
/// capital +1, a loss -1.
pub fn transition_matrix(params: ClassicalParams) -> TransitionMatrix {
    let (p1, p2) = (params.p_b1(), params.p_b2());
    TransitionMatrix([
        [0.0, p1, 1.0 - p1],
        [1.0 - p2, 0.0, p2],
        [p2, 1.0 - p2, 0.0],
    ])
}

/// Stationary distribution d with d T = d and sum(d) = 1, by direct linear
/// solve of (T^t - I) d = 0 with the last equation replaced by the
/// normalization constraint.
pub fn stationary_distribution(t: &TransitionMatrix) -> Result<[f64; 3]> {
    let m = &t.0;
    // rows 0..1: (T^t - I) d = 0; row 2: sum d = 1
    let mut a = [
        [m[0][0] - 1.0, m[1][0], m[2][0]],
        [m[0][1], m[1][1] - 1.0, m[2][1]],
        [1.0, 1.0, 1.0],
    ];
    let mut rhs = [0.0, 0.0, 1.0];
    // Gaussian elimination with partial pivoting
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() < 1e-14 {
            return Err(Error::SingularSystem(
                "stationary-distribution system is singular".into(),
            ));
        }
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in (col + 1)..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut d = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = rhs[row];
        for k in (row + 1)..3 {
            acc -= a[row][k] * d[k];
        }
        d[row] = acc / a[row][row];
    }
    // residual check on the original constraint
    for j in 0..3 {
        let resid = (0..3).map(|i| d[i] * m[i][j]).sum::<f64>() - d[j];
        if resid.abs() > 1e-10 {
            return Err(Error::SingularSystem(format!(
                "stationary residual {resid:e} too large"
            )));
        }
    }
    Ok(d)
}

/// Expected per-round gain of Game B at stationarity: d . w with
/// w = (2 p_B1 - 1, 2 p_B2 - 1, 2 p_B2 - 1).
pub fn game_b_expected_value(params: ClassicalParams) -> Result<f64> {
    let d = stationary_distribution(&transition_matrix(params))?;
    let w = [
        2.0 * params.p_b1() - 1.0,
        2.0 * params.p_b2() - 1.0,
        2.0 * params.p_b2() - 1.0,
    ];
    Ok(d.iter().zip(&w).map(|(di, wi)| di * wi).sum())
}

/// Monte Carlo record: per-step mean capital and its standard error.
#[derive(Debug, Clone)]
pub struct ClassicalTrajectory {
    pub mean_capital: Vec<f64>,
    pub stderr: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

/// Trials per parallel accumulation block; fixed so results do not depend
/// on the worker count.
const TRIAL_BLOCK: usize = 1024;

/// Simulate `trials` independent games of `steps` rounds each.
///
/// Capital starts at 0 and moves +1 on a win, -1 on a loss. Game A wins
/// with p_A; Game B picks its coin from capital mod 3 (nonnegative
/// modulo). Each trial draws from its own counter-derived RNG stream, so
/// results are reproducible and independent of the trial count.
pub fn simulate_classical(
    sequence: &Sequence,
    params: ClassicalParams,
    steps: usize,
    trials: usize,
    seed: u64,
) -> ClassicalTrajectory {
    assert!(steps >= 1 && trials >= 1);

    let block_results: Vec<(Vec<f64>, Vec<f64>)> = (0..trials)
        .step_by(TRIAL_BLOCK)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|block_start| {
            let block_end = (block_start + TRIAL_BLOCK).min(trials);
            let mut sum = vec![0.0; steps];
            let mut sumsq = vec![0.0; steps];
            for trial in block_start..block_end {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(trial as u64);
                let mut capital: i64 = 0;
                for t in 0..steps {
                    let p_win = match sequence.coin_for_step(t) {
                        CoinLabel::A => params.p_a(),
                        CoinLabel::B => {
                            if capital.rem_euclid(3) == 0 {
                                params.p_b1()
                            } else {
                                params.p_b2()
                            }
                        }
                    };
                    capital += if rng.random::<f64>() < p_win { 1 } else { -1 };
                    let cf = capital as f64;
                    sum[t] += cf;
                    sumsq[t] += cf * cf;
                }
            }
            (sum, sumsq)
        })
        .collect();

    // combine blocks in fixed order for bit-reproducibility
    let mut sum = vec![0.0; steps];
    let mut sumsq = vec![0.0; steps];
    for (bs, bq) in &block_results {
        for t in 0..steps {
            sum[t] += bs[t];
            sumsq[t] += bq[t];
        }
    }
    let n = trials as f64;
    let mean_capital: Vec<f64> = sum.iter().map(|s| s / n).collect();
    let stderr: Vec<f64> = sumsq
        .iter()
        .zip(&mean_capital)
        .map(|(&sq, &m)| ((sq / n - m * m).max(0.0) / n).sqrt())
        .collect();
    ClassicalTrajectory { mean_capital, stderr, trials, seed }
}
