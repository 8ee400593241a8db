//! Helmholtz fundamental solution θ_α and the Cauchy kernel K_α.
//!
//! For α ≠ 0 with branch index p (see [`select_branch`]):
//!
//! ```text
//! θ_α(z) = (−1)^p (i/4) H₀^{(p)}(α|z|)
//! K_α(z) = (−1)^p (iα/4) (H₁^{(p)}(α|z|) z/|z| + H₀^{(p)}(α|z|))
//! ```
//!
//! and for α = 0, θ₀(z) = log|z| / 2π and K₀(z) = −z / (2π|z|²). Plane points
//! enter the quaternion algebra as `z = x·i1 + y·i2`. K_α = −∂_{−α}θ_α, and
//! ∂_α K_α = δ.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::quat::{CQuat, CVec3};
use crate::specfun::{hankel01_with, SeriesCfg};

/// Which Hankel function family the kernel uses: p = 1 or p = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    First,
    Second,
}

impl Branch {
    pub fn index(self) -> u8 {
        match self {
            Branch::First => 1,
            Branch::Second => 2,
        }
    }

    /// (−1)^p
    pub fn sign(self) -> f64 {
        match self {
            Branch::First => -1.0,
            Branch::Second => 1.0,
        }
    }
}

/// p = 1 when Im α > 0 or α is positive real, p = 2 when Im α < 0 or α is
/// negative real.
pub fn select_branch(alpha: Complex64) -> Result<Branch> {
    if alpha.im > 0.0 || (alpha.im == 0.0 && alpha.re > 0.0) {
        Ok(Branch::First)
    } else if alpha.im < 0.0 || (alpha.im == 0.0 && alpha.re < 0.0) {
        Ok(Branch::Second)
    } else {
        Err(Error::ZeroAlpha)
    }
}

/// Wave parameter α with its derived branch. Immutable after construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelCtx {
    alpha: Complex64,
    branch: Option<Branch>,
    series: SeriesCfg,
}

impl KernelCtx {
    pub fn new(alpha: Complex64) -> Self {
        Self::with_series(alpha, SeriesCfg::default())
    }

    pub fn with_series(alpha: Complex64, series: SeriesCfg) -> Self {
        KernelCtx { alpha, branch: select_branch(alpha).ok(), series }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// λ = α²
    pub fn lambda(&self) -> Complex64 {
        self.alpha * self.alpha
    }

    /// `None` exactly when α = 0 (closed-form kernel path).
    pub fn branch(&self) -> Option<Branch> {
        self.branch
    }

    pub fn is_degenerate(&self) -> bool {
        self.branch.is_none()
    }

    pub fn series(&self) -> &SeriesCfg {
        &self.series
    }

    /// The context for −α (used by the ∂_{−α} operators).
    pub fn negated(&self) -> KernelCtx {
        KernelCtx::with_series(-self.alpha, self.series)
    }

    fn hankels(&self, branch: Branch, r: f64) -> Result<(Complex64, Complex64)> {
        hankel01_with(&self.series, branch, self.alpha * r)
    }

    /// θ_α(z).
    pub fn theta(&self, z: Point2) -> Result<Complex64> {
        let r = z.norm();
        if r == 0.0 {
            return Err(Error::KernelAtOrigin);
        }
        match self.branch {
            None => Ok(Complex64::new(r.ln() / (2.0 * PI), 0.0)),
            Some(branch) => {
                let (h0, _) = self.hankels(branch, r)?;
                Ok(Complex64::new(0.0, 0.25) * branch.sign() * h0)
            }
        }
    }

    /// K_α(z) as a complex quaternion: scalar part K_{α,0}, vector part **K**_α.
    pub fn cauchy_kernel(&self, z: Point2) -> Result<CQuat> {
        let r = z.norm();
        if r == 0.0 {
            return Err(Error::KernelAtOrigin);
        }
        match self.branch {
            None => {
                let s = -1.0 / (2.0 * PI * r * r);
                Ok(CQuat::from_real([0.0, s * z.x, s * z.y, 0.0]))
            }
            Some(branch) => {
                let (h0, h1) = self.hankels(branch, r)?;
                let c = Complex64::new(0.0, 0.25) * self.alpha * branch.sign();
                let v = c * h1 / r;
                Ok(CQuat::new(c * h0, v * z.x, v * z.y, Complex64::new(0.0, 0.0)))
            }
        }
    }

    /// Splits K_α = S_α + φ_α with the explicit singular part
    /// S_α(z) = −(z/|z|² − α·log|z|) / 2π; φ_α is continuous at the origin.
    pub fn kernel_split(&self, z: Point2) -> Result<(CQuat, CQuat)> {
        if self.is_degenerate() {
            return Err(Error::ZeroAlpha);
        }
        let k = self.cauchy_kernel(z)?;
        let s = self.singular_part(z)?;
        Ok((s, k - s))
    }

    pub fn singular_part(&self, z: Point2) -> Result<CQuat> {
        let r2 = z.norm_sqr();
        if r2 == 0.0 {
            return Err(Error::KernelAtOrigin);
        }
        let scale = -1.0 / (2.0 * PI);
        let scalar = -self.alpha * (0.5 * r2.ln());
        Ok(CQuat::from_parts(
            scalar * scale,
            CVec3::new(
                Complex64::new(scale * z.x / r2, 0.0),
                Complex64::new(scale * z.y / r2, 0.0),
                Complex64::new(0.0, 0.0),
            ),
        ))
    }
}
