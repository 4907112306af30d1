//! Discrete-time quantum walk engine.
//!
//! The walker lives on a 1D lattice x in [-L, L] with a two-level coin.
//! Each step applies the scheduled coin at every site (with an extra phase
//! e^{i phi} at x = 0) and then the conditional shift: coin-|0> amplitude
//! moves one site right, coin-|1> one site left.

use crate::coin::{apply_origin_phase, build_coin, CoinMatrix, CoinParams};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

/// Repeating game schedule over the alphabet {A, B}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence(String);

/// Which coin a step uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinLabel {
    A,
    B,
}

impl Sequence {
    pub fn parse(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|b| b == b'A' || b == b'B') {
            return Err(Error::InvalidSequence(s.to_string()));
        }
        Ok(Sequence(s.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Coin label for step `t`: the pattern repeats cyclically from its
    /// first letter at t = 0.
    pub fn coin_for_step(&self, t: usize) -> CoinLabel {
        match self.0.as_bytes()[t % self.0.len()] {
            b'A' => CoinLabel::A,
            _ => CoinLabel::B,
        }
    }
}

impl std::fmt::Display for Sequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Full definition of a quantum Parrondo game: two coins, the repetition
/// pattern, and the phase applied at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSpec {
    pub coin_a: CoinParams,
    pub coin_b: CoinParams,
    pub sequence: Sequence,
    pub origin_phase: f64,
}

impl GameSpec {
    pub fn new(
        coin_a: CoinParams,
        coin_b: CoinParams,
        sequence: Sequence,
        origin_phase: f64,
    ) -> Result<Self> {
        if !origin_phase.is_finite() {
            return Err(Error::NonFiniteAngle(origin_phase));
        }
        Ok(Self { coin_a, coin_b, sequence, origin_phase })
    }
}

/// Initial coin state cos(theta)|0> + e^{i varphi} sin(theta)|1>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialCoin {
    theta: f64,
    varphi: f64,
}

impl InitialCoin {
    pub fn new(theta: f64, varphi: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(Error::AngleOutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi]",
            });
        }
        if !varphi.is_finite() || !(0.0..TAU).contains(&varphi) {
            return Err(Error::AngleOutOfRange {
                name: "varphi",
                value: varphi,
                range: "[0, 2*pi)",
            });
        }
        Ok(Self { theta, varphi })
    }

    /// (|0> - i|1>)/sqrt(2), the walk's symmetric reference state.
    pub fn symmetric() -> Self {
        Self { theta: PI / 4.0, varphi: 1.5 * PI }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn varphi(&self) -> f64 {
        self.varphi
    }

    pub fn amplitudes(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.theta.cos(), 0.0),
            Complex64::from_polar(1.0, self.varphi) * self.theta.sin(),
        )
    }
}

/// The walker wavefunction: coin-|0> amplitude a_x and coin-|1> amplitude
/// b_x for every site x in [-L, L], plus the step counter.
#[derive(Debug, Clone)]
pub struct WalkState {
    half_width: usize,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    scratch_a: Vec<Complex64>,
    scratch_b: Vec<Complex64>,
    t: usize,
}

impl WalkState {
    /// Number of lattice sites, 2L + 1.
    pub fn site_count(&self) -> usize {
        2 * self.half_width + 1
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn step_count(&self) -> usize {
        self.t
    }

    #[inline]
    fn idx(&self, x: i64) -> usize {
        (x + self.half_width as i64) as usize
    }

    /// Amplitude pair (a_x, b_x) at site x.
    pub fn amplitude(&self, x: i64) -> (Complex64, Complex64) {
        let i = self.idx(x);
        (self.a[i], self.b[i])
    }

    /// P(x) = |a_x|^2 + |b_x|^2.
    pub fn probability(&self, x: i64) -> f64 {
        let i = self.idx(x);
        self.a[i].norm_sqr() + self.b[i].norm_sqr()
    }

    /// Iterator over all lattice positions, left to right.
    pub fn positions(&self) -> impl Iterator<Item = i64> + '_ {
        let l = self.half_width as i64;
        -l..=l
    }

    pub fn total_norm(&self) -> f64 {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .sum()
    }

    /// Maximum |amplitude difference| against another state on the same
    /// lattice.
    pub fn max_amplitude_deviation(&self, other: &WalkState) -> f64 {
        assert_eq!(self.half_width, other.half_width);
        self.a
            .iter()
            .zip(&other.a)
            .chain(self.b.iter().zip(&other.b))
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// Place the walker at the origin with the given coin state.
pub fn init_state(coin: InitialCoin, half_width: usize) -> WalkState {
    let n = 2 * half_width + 1;
    let mut a = vec![Complex64::ZERO; n];
    let mut b = vec![Complex64::ZERO; n];
    let (a0, b0) = coin.amplitudes();
    a[half_width] = a0;
    b[half_width] = b0;
    WalkState {
        half_width,
        a,
        b,
        scratch_a: vec![Complex64::ZERO; n],
        scratch_b: vec![Complex64::ZERO; n],
        t: 0,
    }
}

/// One walk step: coin (with phase at x = 0), then conditional shift.
///
/// Only sites inside the light cone |x| <= t carry amplitude; sites outside
/// are never written, so P(x) stays exactly zero there.
pub fn step(state: &mut WalkState, coin: &CoinMatrix, phi: f64) -> Result<()> {
    let l = state.half_width;
    if state.t + 1 > l {
        return Err(Error::Capacity { step: state.t + 1, half_width: l });
    }
    let origin_coin = apply_origin_phase(coin, phi)?;

    let t = state.t as i64;
    let c = l as i64; // center index offset
    // coin stage, in place, within the current cone
    for x in -t..=t {
        let i = (x + c) as usize;
        let m = if x == 0 { &origin_coin } else { coin };
        let (na, nb) = m.apply(state.a[i], state.b[i]);
        state.a[i] = na;
        state.b[i] = nb;
    }
    // shift stage into scratch: |0> right, |1> left
    let lo = ((-t - 1) + c) as usize;
    let hi = ((t + 1) + c) as usize;
    for i in lo..=hi {
        state.scratch_a[i] = Complex64::ZERO;
        state.scratch_b[i] = Complex64::ZERO;
    }
    for x in -t..=t {
        let i = (x + c) as usize;
        state.scratch_a[i + 1] = state.a[i];
        state.scratch_b[i - 1] = state.b[i];
    }
    // clear the old cone in the main buffers before swapping so stale
    // amplitudes never leak outside the new cone
    for x in -t..=t {
        let i = (x + c) as usize;
        state.a[i] = Complex64::ZERO;
        state.b[i] = Complex64::ZERO;
    }
    std::mem::swap(&mut state.a, &mut state.scratch_a);
    std::mem::swap(&mut state.b, &mut state.scratch_b);
    state.t += 1;
    Ok(())
}

/// Evolve a game for `steps` steps from the given initial coin state,
/// invoking `observer` after every step.
///
/// The lattice half-width is set to `steps`, so the light cone can never
/// touch the boundary.
pub fn evolve<F>(
    spec: &GameSpec,
    initial: InitialCoin,
    steps: usize,
    mut observer: F,
) -> Result<WalkState>
where
    F: FnMut(&WalkState),
{
    let coin_a = build_coin(spec.coin_a);
    let coin_b = build_coin(spec.coin_b);
    let mut state = init_state(initial, steps.max(1));
    for t in 0..steps {
        let coin = match spec.sequence.coin_for_step(t) {
            CoinLabel::A => &coin_a,
            CoinLabel::B => &coin_b,
        };
        step(&mut state, coin, spec.origin_phase)?;
        observer(&state);
    }
    Ok(state)
}

/// Max dense-oracle step count; the matrix is (2(2L+1))^2 entries.
pub const ORACLE_MAX_STEPS: usize = 8;

/// Reference evolution: build the full step unitary over the coin (x)
/// position basis as an explicit dense matrix and apply it by
/// matrix-vector multiplication.
///
/// Exists purely to cross-check `evolve`; limited to `ORACLE_MAX_STEPS`.
pub fn dense_oracle_evolve(
    spec: &GameSpec,
    initial: InitialCoin,
    steps: usize,
) -> Result<WalkState> {
    if steps > ORACLE_MAX_STEPS {
        return Err(Error::OracleCapacity(steps));
    }
    let l = steps.max(1);
    let sites = 2 * l + 1;
    let dim = 2 * sites;
    // basis index: 2*site + coin, site = x + l
    let index = |site: usize, coin: usize| 2 * site + coin;

    let coin_a = build_coin(spec.coin_a);
    let coin_b = build_coin(spec.coin_b);
    let build_unitary = |coin: &CoinMatrix| -> Result<Vec<Complex64>> {
        let origin_coin = apply_origin_phase(coin, spec.origin_phase)?;
        let mut u = vec![Complex64::ZERO; dim * dim];
        for site in 0..sites {
            let m = if site == l { &origin_coin } else { coin };
            // shift wraps periodically; the light cone keeps the wrap unused
            let right = (site + 1) % sites;
            let left = (site + sites - 1) % sites;
            u[index(right, 0) * dim + index(site, 0)] += m.m00;
            u[index(right, 0) * dim + index(site, 1)] += m.m01;
            u[index(left, 1) * dim + index(site, 0)] += m.m10;
            u[index(left, 1) * dim + index(site, 1)] += m.m11;
        }
        Ok(u)
    };
    let u_a = build_unitary(&coin_a)?;
    let u_b = build_unitary(&coin_b)?;

    let mut psi = vec![Complex64::ZERO; dim];
    let (a0, b0) = initial.amplitudes();
    psi[index(l, 0)] = a0;
    psi[index(l, 1)] = b0;

    let mut next = vec![Complex64::ZERO; dim];
    for t in 0..steps {
        let u = match spec.sequence.coin_for_step(t) {
            CoinLabel::A => &u_a,
            CoinLabel::B => &u_b,
        };
        for (row, slot) in next.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for col in 0..dim {
                acc += u[row * dim + col] * psi[col];
            }
            *slot = acc;
        }
        std::mem::swap(&mut psi, &mut next);
    }

    let mut state = init_state(initial, l);
    for site in 0..sites {
        state.a[site] = psi[index(site, 0)];
        state.b[site] = psi[index(site, 1)];
    }
    state.t = steps;
    Ok(state)
}
