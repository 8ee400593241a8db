//! Complex quaternions ℍ(ℂ).
//!
//! A complex quaternion is `a = a0 + a1·i1 + a2·i2 + a3·i3` with complex
//! coefficients `ak`. The basis units satisfy `i1² = i2² = i3² = -1` and
//! `i1·i2 = i3` (cyclically); the complex unit `i` commutes with all of them.
//! Unlike real quaternions the algebra has zero divisors, and the product norm
//! only satisfies `|ab| ≤ √2·|a|·|b|`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::sum::KahanSum;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[[f64; 2]; 4]", into = "[[f64; 2]; 4]")]
pub struct CQuat {
    pub a0: Complex64,
    pub a1: Complex64,
    pub a2: Complex64,
    pub a3: Complex64,
}

impl CQuat {
    pub const ZERO: CQuat = CQuat::from_components([ZERO; 4]);
    pub const ONE: CQuat = CQuat::from_components([ONE, ZERO, ZERO, ZERO]);
    pub const I1: CQuat = CQuat::from_components([ZERO, ONE, ZERO, ZERO]);
    pub const I2: CQuat = CQuat::from_components([ZERO, ZERO, ONE, ZERO]);
    pub const I3: CQuat = CQuat::from_components([ZERO, ZERO, ZERO, ONE]);
    /// The complex imaginary unit `i` as a (central) scalar quaternion.
    pub const IM: CQuat =
        CQuat::from_components([Complex64::new(0.0, 1.0), ZERO, ZERO, ZERO]);

    pub const fn new(a0: Complex64, a1: Complex64, a2: Complex64, a3: Complex64) -> Self {
        CQuat { a0, a1, a2, a3 }
    }

    pub const fn from_components(c: [Complex64; 4]) -> Self {
        CQuat { a0: c[0], a1: c[1], a2: c[2], a3: c[3] }
    }

    pub fn from_real(r: [f64; 4]) -> Self {
        CQuat::from_components(r.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn scalar(s: Complex64) -> Self {
        CQuat::new(s, ZERO, ZERO, ZERO)
    }

    /// Scalar–vector assembly `s + v`.
    pub fn from_parts(s: Complex64, v: CVec3) -> Self {
        CQuat::new(s, v.0[0], v.0[1], v.0[2])
    }

    /// The plane point `x·i1 + y·i2`.
    pub fn from_plane(x: f64, y: f64) -> Self {
        CQuat::from_real([0.0, x, y, 0.0])
    }

    pub fn components(&self) -> [Complex64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.a0
    }

    pub fn vector_part(&self) -> CVec3 {
        CVec3([self.a1, self.a2, self.a3])
    }

    /// Quaternionic conjugate: negates the i1, i2, i3 coefficients only.
    pub fn conj(&self) -> Self {
        CQuat::new(self.a0, -self.a1, -self.a2, -self.a3)
    }

    /// Complex conjugation of every coefficient.
    pub fn complex_conj(&self) -> Self {
        CQuat::from_components(self.components().map(|c| c.conj()))
    }

    pub fn norm_sqr(&self) -> f64 {
        let mut acc = KahanSum::new();
        for c in self.components() {
            acc.add(c.re * c.re);
            acc.add(c.im * c.im);
        }
        acc.total()
    }

    /// Euclidean norm in ℝ⁸.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_real(&self) -> bool {
        self.components().iter().all(|c| c.im == 0.0)
    }

    /// True if the vector part vanishes exactly.
    pub fn is_scalar(&self) -> bool {
        self.a1 == ZERO && self.a2 == ZERO && self.a3 == ZERO
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CQuat::from_components(self.components().map(|c| c * s))
    }

    pub fn scale_real(&self, s: f64) -> Self {
        CQuat::from_components(self.components().map(|c| c * s))
    }

    /// `a · ā`, which for complex quaternions is the complex scalar Σ ak².
    pub fn conj_product(&self) -> Complex64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    /// Two-sided inverse `ā / (a ā)`; `None` for zero divisors.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.conj_product();
        if n.norm() <= f64::MIN_POSITIVE {
            return None;
        }
        Some(self.conj().scale(1.0 / n))
    }

    pub fn max_abs_diff(&self, other: &CQuat) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Quaternion product over complex coefficients.
pub fn quat_mul(a: CQuat, b: CQuat) -> CQuat {
    CQuat::new(
        a.a0 * b.a0 - a.a1 * b.a1 - a.a2 * b.a2 - a.a3 * b.a3,
        a.a0 * b.a1 + a.a1 * b.a0 + a.a2 * b.a3 - a.a3 * b.a2,
        a.a0 * b.a2 - a.a1 * b.a3 + a.a2 * b.a0 + a.a3 * b.a1,
        a.a0 * b.a3 + a.a1 * b.a2 - a.a2 * b.a1 + a.a3 * b.a0,
    )
}

impl Mul for CQuat {
    type Output = CQuat;
    fn mul(self, rhs: CQuat) -> CQuat {
        quat_mul(self, rhs)
    }
}

impl Mul<Complex64> for CQuat {
    type Output = CQuat;
    fn mul(self, rhs: Complex64) -> CQuat {
        self.scale(rhs)
    }
}

impl Mul<f64> for CQuat {
    type Output = CQuat;
    fn mul(self, rhs: f64) -> CQuat {
        self.scale_real(rhs)
    }
}

impl Add for CQuat {
    type Output = CQuat;
    fn add(self, rhs: CQuat) -> CQuat {
        CQuat::new(self.a0 + rhs.a0, self.a1 + rhs.a1, self.a2 + rhs.a2, self.a3 + rhs.a3)
    }
}

impl Sub for CQuat {
    type Output = CQuat;
    fn sub(self, rhs: CQuat) -> CQuat {
        CQuat::new(self.a0 - rhs.a0, self.a1 - rhs.a1, self.a2 - rhs.a2, self.a3 - rhs.a3)
    }
}

impl AddAssign for CQuat {
    fn add_assign(&mut self, rhs: CQuat) {
        *self = *self + rhs;
    }
}

impl SubAssign for CQuat {
    fn sub_assign(&mut self, rhs: CQuat) {
        *self = *self - rhs;
    }
}

impl Neg for CQuat {
    type Output = CQuat;
    fn neg(self) -> CQuat {
        CQuat::new(-self.a0, -self.a1, -self.a2, -self.a3)
    }
}

impl From<Complex64> for CQuat {
    fn from(s: Complex64) -> Self {
        CQuat::scalar(s)
    }
}

impl From<[[f64; 2]; 4]> for CQuat {
    fn from(raw: [[f64; 2]; 4]) -> Self {
        CQuat::from_components(raw.map(|[re, im]| Complex64::new(re, im)))
    }
}

impl From<CQuat> for [[f64; 2]; 4] {
    fn from(q: CQuat) -> Self {
        q.components().map(|c| [c.re, c.im])
    }
}

/// A vector of ℂ³ along i1, i2, i3.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec3(pub [Complex64; 3]);

impl CVec3 {
    pub const ZERO: CVec3 = CVec3([ZERO; 3]);

    pub fn new(v1: Complex64, v2: Complex64, v3: Complex64) -> Self {
        CVec3([v1, v2, v3])
    }

    /// Complex bilinear scalar product ⟨a, b⟩ = Σ ak bk (no conjugation).
    pub fn dot(&self, b: &CVec3) -> Complex64 {
        let a = &self.0;
        a[0] * b.0[0] + a[1] * b.0[1] + a[2] * b.0[2]
    }

    /// Vector product [a, b].
    pub fn cross(&self, b: &CVec3) -> CVec3 {
        let (a, b) = (&self.0, &b.0);
        CVec3([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    pub fn scale(&self, s: Complex64) -> CVec3 {
        CVec3(self.0.map(|c| c * s))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, rhs: CVec3) -> CVec3 {
        CVec3([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, rhs: CVec3) -> CVec3 {
        CVec3([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl Neg for CVec3 {
    type Output = CVec3;
    fn neg(self) -> CVec3 {
        CVec3(self.0.map(|c| -c))
    }
}

/// Scalar–vector pair view 𝓕 = (f0, f) of a complex quaternion.
///
/// Values are always produced from, and converted back to, [`CQuat`]; the pair
/// form exists so the vector formulas can be written as they are usually
/// stated, with ⟨·,·⟩ and [·,·].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PairField {
    pub f0: Complex64,
    pub fvec: CVec3,
}

impl PairField {
    pub fn new(f0: Complex64, fvec: CVec3) -> Self {
        PairField { f0, fvec }
    }

    /// ‖𝓕‖ with ‖𝓕‖² = |f0|² + ‖f‖².
    pub fn norm(&self) -> f64 {
        (self.f0.norm_sqr() + self.fvec.norm_sqr()).sqrt()
    }

    pub fn to_quat(self) -> CQuat {
        CQuat::from(self)
    }
}

impl From<CQuat> for PairField {
    fn from(q: CQuat) -> Self {
        PairField { f0: q.scalar_part(), fvec: q.vector_part() }
    }
}

impl From<PairField> for CQuat {
    fn from(p: PairField) -> Self {
        CQuat::from_parts(p.f0, p.fvec)
    }
}

/// Vectorial form of the product:
/// `ab = (a0 b0 − ⟨a, b⟩, [a, b] + a0 b + b0 a)`.
pub fn pair_mul(a: PairField, b: PairField) -> PairField {
    PairField {
        f0: a.f0 * b.f0 - a.fvec.dot(&b.fvec),
        fvec: a.fvec.cross(&b.fvec) + b.fvec.scale(a.f0) + a.fvec.scale(b.f0),
    }
}

/// Norm of a complex quaternion (free-function form).
pub fn norm(a: CQuat) -> f64 {
    a.norm()
}
