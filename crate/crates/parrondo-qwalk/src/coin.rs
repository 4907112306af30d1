//! SU(2) coin operators for the quantum walk.
//!
//! A coin is parametrized by three angles (alpha, beta, gamma) and takes the
//! matrix form
//!
//! ```text
//! [ e^{i a} cos b    -e^{-i g} sin b ]
//! [ e^{i g} sin b     e^{-i a} cos b ]
//! ```
//!
//! which is unitary with determinant 1. The origin inhomogeneity is a scalar
//! phase e^{i phi} multiplying the whole matrix at lattice site x = 0.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Unitarity / determinant tolerance: ~100x f64 epsilon accumulation for a
/// 2x2 product.
pub const UNITARITY_TOL: f64 = 1e-12;

/// The three SU(2) angles defining a coin operator, in radians.
///
/// Angles are normalized into [0, 2*pi) on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl CoinParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        for &v in &[alpha, beta, gamma] {
            if !v.is_finite() {
                return Err(Error::NonFiniteAngle(v));
            }
        }
        Ok(Self {
            alpha: alpha.rem_euclid(TAU),
            beta: beta.rem_euclid(TAU),
            gamma: gamma.rem_euclid(TAU),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self::new(alpha, self.beta, self.gamma)
    }

    pub fn with_beta(self, beta: f64) -> Result<Self> {
        Self::new(self.alpha, beta, self.gamma)
    }

    pub fn with_gamma(self, gamma: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, gamma)
    }
}

/// Dense 2x2 complex coin matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix {
    pub m00: Complex64,
    pub m01: Complex64,
    pub m10: Complex64,
    pub m11: Complex64,
}

impl CoinMatrix {
    pub const IDENTITY: CoinMatrix = CoinMatrix {
        m00: Complex64::new(1.0, 0.0),
        m01: Complex64::new(0.0, 0.0),
        m10: Complex64::new(0.0, 0.0),
        m11: Complex64::new(1.0, 0.0),
    };

    /// Apply the matrix to a coin amplitude pair.
    #[inline]
    pub fn apply(&self, a: Complex64, b: Complex64) -> (Complex64, Complex64) {
        (self.m00 * a + self.m01 * b, self.m10 * a + self.m11 * b)
    }

    pub fn determinant(&self) -> Complex64 {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    /// Multiply every entry by the scalar phase e^{i phi}.
    pub fn scaled_by_phase(&self, phi: f64) -> CoinMatrix {
        let p = Complex64::from_polar(1.0, phi);
        CoinMatrix {
            m00: p * self.m00,
            m01: p * self.m01,
            m10: p * self.m10,
            m11: p * self.m11,
        }
    }
}

/// Build the SU(2) coin matrix for the given angles.
pub fn build_coin(params: CoinParams) -> CoinMatrix {
    let (alpha, beta, gamma) = (params.alpha(), params.beta(), params.gamma());
    let (sb, cb) = beta.sin_cos();
    CoinMatrix {
        m00: Complex64::from_polar(1.0, alpha) * cb,
        m01: -Complex64::from_polar(1.0, -gamma) * sb,
        m10: Complex64::from_polar(1.0, gamma) * sb,
        m11: Complex64::from_polar(1.0, -alpha) * cb,
    }
}

/// Multiply the coin by e^{i phi}, the origin inhomogeneity of the walk.
///
/// Preserves unitarity and the magnitude of every entry; the determinant
/// picks up e^{2i phi}. The phase is reduced mod 2*pi first, so phases
/// that are equal mod 2*pi construct bit-identical matrices.
pub fn apply_origin_phase(coin: &CoinMatrix, phi: f64) -> Result<CoinMatrix> {
    if !phi.is_finite() {
        return Err(Error::NonFiniteAngle(phi));
    }
    Ok(coin.scaled_by_phase(phi.rem_euclid(TAU)))
}

/// Max entrywise absolute deviation of M^dagger M from the identity.
pub fn unitarity_defect(m: &CoinMatrix) -> f64 {
    // M^dagger M entries
    let g00 = m.m00.conj() * m.m00 + m.m10.conj() * m.m10;
    let g01 = m.m00.conj() * m.m01 + m.m10.conj() * m.m11;
    let g10 = m.m01.conj() * m.m00 + m.m11.conj() * m.m10;
    let g11 = m.m01.conj() * m.m01 + m.m11.conj() * m.m11;
    let one = Complex64::new(1.0, 0.0);
    [(g00 - one).norm(), g01.norm(), g10.norm(), (g11 - one).norm()]
        .into_iter()
        .fold(0.0, f64::max)
}
