//! Finite-difference operators on lazily evaluated fields, and the claim
//! certification suite.
//!
//! Operators, with ∂ₖ = ∂/∂xₖ, M^a f = f·a and ^aM f = a·f:
//!
//! | variant | operator |
//! |---|---|
//! | `CauchyRiemannBar` | ∂̄ = ∂₁ + i∂₂ |
//! | `CauchyRiemann` | ∂ = ∂₁ − i∂₂ |
//! | `LeftDirac` | _st∂ = i1·∂₁ + i2·∂₂ |
//! | `LeftDiracBar` | _st∂̄ = ī1·∂₁ + ī2·∂₂ |
//! | `RightDirac` | ∂_st = ∂₁∘M^{i1} + ∂₂∘M^{i2} |
//! | `RightDiracBar` | ∂̄_st = ∂₁∘M^{ī1} + ∂₂∘M^{ī2} |
//! | `PerturbedRight(α)` | _α∂ = ∂_st + ^αM |
//! | `PerturbedLeft(α)` | ∂_α = _st∂ + M^α |
//! | `Laplacian` | Δ = ∂₁² + ∂₂² |
//! | `Helmholtz(λ)` | _λΔ = Δ + ^λM |

mod claims;
pub mod tolerances;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Curve, Point2};
use crate::quat::{CQuat, CVec3, PairField};

pub use claims::{certify, certify_all};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stencil {
    /// Second-order central differences; the Laplacian is the 5-point cross.
    ThreePoint,
    /// Fourth-order central differences on five points per axis.
    FivePoint,
}

impl Stencil {
    /// Furthest offset, in units of h, reached by one derivative.
    pub fn reach(self) -> i64 {
        match self {
            Stencil::ThreePoint => 1,
            Stencil::FivePoint => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Operator {
    Identity,
    CauchyRiemannBar,
    CauchyRiemann,
    LeftDirac,
    LeftDiracBar,
    RightDirac,
    RightDiracBar,
    PerturbedRight(Complex64),
    PerturbedLeft(Complex64),
    Laplacian,
    Helmholtz(Complex64),
    Neg(Box<Operator>),
    /// `Compose(a, b)` is a∘b.
    Compose(Box<Operator>, Box<Operator>),
}

impl Operator {
    pub fn compose(outer: Operator, inner: Operator) -> Operator {
        Operator::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn negate(op: Operator) -> Operator {
        Operator::Neg(Box::new(op))
    }

    /// Number of nested first-derivative layers.
    pub fn depth(&self) -> i64 {
        match self {
            Operator::Identity => 0,
            Operator::Laplacian | Operator::Helmholtz(_) => 1,
            Operator::Neg(a) => a.depth(),
            Operator::Compose(a, b) => a.depth() + b.depth(),
            _ => 1,
        }
    }
}

fn fmt_c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Identity => write!(f, "id"),
            Operator::CauchyRiemannBar => write!(f, "dbar"),
            Operator::CauchyRiemann => write!(f, "d"),
            Operator::LeftDirac => write!(f, "st_d"),
            Operator::LeftDiracBar => write!(f, "st_dbar"),
            Operator::RightDirac => write!(f, "d_st"),
            Operator::RightDiracBar => write!(f, "dbar_st"),
            Operator::PerturbedRight(a) => write!(f, "[{}]_d", fmt_c(*a)),
            Operator::PerturbedLeft(a) => write!(f, "d_[{}]", fmt_c(*a)),
            Operator::Laplacian => write!(f, "lap"),
            Operator::Helmholtz(l) => write!(f, "helm[{}]", fmt_c(*l)),
            Operator::Neg(a) => write!(f, "-({a})"),
            Operator::Compose(a, b) => write!(f, "({a})o({b})"),
        }
    }
}

/// Sample points with a spacing and stencil. Construction checks h > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct FDGrid {
    h: f64,
    stencil: Stencil,
    points: Vec<Point2>,
}

impl FDGrid {
    pub fn new(h: f64, stencil: Stencil, points: Vec<Point2>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidGrid(format!("spacing must be positive, got {h}")));
        }
        if points.is_empty() {
            return Err(Error::InvalidGrid("no sample points".into()));
        }
        Ok(FDGrid { h, stencil, points })
    }

    /// As [`FDGrid::new`], additionally requiring every point to keep more
    /// than twice the stencil reach of `op` away from Γ.
    pub fn with_clearance(h: f64, stencil: Stencil, points: Vec<Point2>, curve: &Curve, op: &Operator) -> Result<Self> {
        let g = FDGrid::new(h, stencil, points)?;
        let need = 2.0 * h * (stencil.reach() * op.depth().max(1)) as f64;
        for p in &g.points {
            let d = curve.distance(*p);
            if d <= need {
                return Err(Error::InvalidGrid(format!(
                    "point ({}, {}) is {d:.3e} from the curve, stencil needs more than {need:.3e}",
                    p.x, p.y
                )));
            }
        }
        Ok(g)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn stencil(&self) -> Stencil {
        self.stencil
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }
}

type Lattice<'a> = dyn Fn(i64, i64) -> Result<CQuat> + 'a;

fn diff(g: &Lattice<'_>, i: i64, j: i64, axis: usize, h: f64, st: Stencil) -> Result<CQuat> {
    let at = |k: i64| if axis == 0 { g(i + k, j) } else { g(i, j + k) };
    Ok(match st {
        Stencil::ThreePoint => (at(1)? - at(-1)?) * (0.5 / h),
        Stencil::FivePoint => (at(-2)? - at(2)? + (at(1)? - at(-1)?) * 8.0) * (1.0 / (12.0 * h)),
    })
}

fn laplacian(g: &Lattice<'_>, i: i64, j: i64, h: f64, st: Stencil) -> Result<CQuat> {
    let c = g(i, j)?;
    Ok(match st {
        Stencil::ThreePoint => (g(i + 1, j)? + g(i - 1, j)? + g(i, j + 1)? + g(i, j - 1)? - c * 4.0) * (1.0 / (h * h)),
        Stencil::FivePoint => {
            let near = g(i + 1, j)? + g(i - 1, j)? + g(i, j + 1)? + g(i, j - 1)?;
            let far = g(i + 2, j)? + g(i - 2, j)? + g(i, j + 2)? + g(i, j - 2)?;
            (near * 16.0 - far - c * 60.0) * (1.0 / (12.0 * h * h))
        }
    })
}

fn eval_op(op: &Operator, g: &Lattice<'_>, i: i64, j: i64, h: f64, st: Stencil) -> Result<CQuat> {
    let d1 = || diff(g, i, j, 0, h, st);
    let d2 = || diff(g, i, j, 1, h, st);
    let im = Complex64::new(0.0, 1.0);
    Ok(match op {
        Operator::Identity => g(i, j)?,
        Operator::CauchyRiemannBar => d1()? + d2()? * im,
        Operator::CauchyRiemann => d1()? - d2()? * im,
        Operator::LeftDirac => CQuat::I1 * d1()? + CQuat::I2 * d2()?,
        Operator::LeftDiracBar => CQuat::I1.conj() * d1()? + CQuat::I2.conj() * d2()?,
        Operator::RightDirac => d1()? * CQuat::I1 + d2()? * CQuat::I2,
        Operator::RightDiracBar => d1()? * CQuat::I1.conj() + d2()? * CQuat::I2.conj(),
        Operator::PerturbedRight(a) => d1()? * CQuat::I1 + d2()? * CQuat::I2 + CQuat::scalar(*a) * g(i, j)?,
        Operator::PerturbedLeft(a) => CQuat::I1 * d1()? + CQuat::I2 * d2()? + g(i, j)? * CQuat::scalar(*a),
        Operator::Laplacian => laplacian(g, i, j, h, st)?,
        Operator::Helmholtz(l) => laplacian(g, i, j, h, st)? + CQuat::scalar(*l) * g(i, j)?,
        Operator::Neg(a) => -eval_op(a, g, i, j, h, st)?,
        Operator::Compose(outer, inner) => {
            let inner_g = |a: i64, b: i64| eval_op(inner, g, a, b, h, st);
            eval_op(outer, &inner_g, i, j, h, st)?
        }
    })
}

/// Evaluates `field` on the integer lattice p + h·(i, j), memoized.
fn lattice_at<'a>(
    field: &'a (dyn Fn(Point2) -> Result<CQuat> + Sync),
    p: Point2,
    h: f64,
    cache: &'a RefCell<HashMap<(i64, i64), CQuat>>,
) -> impl Fn(i64, i64) -> Result<CQuat> + 'a {
    move |i, j| {
        if let Some(v) = cache.borrow().get(&(i, j)) {
            return Ok(*v);
        }
        let v = field(Point2::new(p.x + i as f64 * h, p.y + j as f64 * h))?;
        cache.borrow_mut().insert((i, j), v);
        Ok(v)
    }
}

/// Applies `op` at one point with spacing h.
pub fn apply_at(
    op: &Operator,
    field: &(dyn Fn(Point2) -> Result<CQuat> + Sync),
    p: Point2,
    h: f64,
    stencil: Stencil,
) -> Result<CQuat> {
    let cache = RefCell::new(HashMap::new());
    let g = lattice_at(field, p, h, &cache);
    eval_op(op, &g, 0, 0, h, stencil)
}

/// Applies `op` at every grid point, in grid order.
pub fn apply_operator(
    op: &Operator,
    field: &(dyn Fn(Point2) -> Result<CQuat> + Sync),
    grid: &FDGrid,
) -> Result<Vec<CQuat>> {
    grid.points.par_iter().map(|&p| apply_at(op, field, p, grid.h, grid.stencil)).collect()
}

/// Field value and first partials at p, in pair form.
pub struct PairJet {
    pub f: PairField,
    pub d1: PairField,
    pub d2: PairField,
}

impl PairJet {
    pub fn at(field: &(dyn Fn(Point2) -> Result<CQuat> + Sync), p: Point2, h: f64, st: Stencil) -> Result<Self> {
        let cache = RefCell::new(HashMap::new());
        let g = lattice_at(field, p, h, &cache);
        Ok(PairJet {
            f: PairField::from(g(0, 0)?),
            d1: PairField::from(diff(&g, 0, 0, 0, h, st)?),
            d2: PairField::from(diff(&g, 0, 0, 1, h, st)?),
        })
    }

    pub fn div(&self) -> Complex64 {
        self.d1.fvec.0[0] + self.d2.fvec.0[1]
    }

    pub fn rot(&self) -> CVec3 {
        CVec3::new(self.d2.fvec.0[2], -self.d1.fvec.0[2], self.d1.fvec.0[1] - self.d2.fvec.0[0])
    }

    pub fn grad0(&self) -> CVec3 {
        CVec3::new(self.d1.f0, self.d2.f0, Complex64::new(0.0, 0.0))
    }

    /// ∂_α f = (αf₀ − div **f**, **rot f** + α**f** + **grad** f₀).
    pub fn perturbed_left(&self, alpha: Complex64) -> PairField {
        PairField::new(alpha * self.f.f0 - self.div(), self.rot() + self.f.fvec.scale(alpha) + self.grad0())
    }

    /// _α∂ f = (αf₀ − div **f**, −**rot f** + α**f** + **grad** f₀).
    pub fn perturbed_right(&self, alpha: Complex64) -> PairField {
        PairField::new(alpha * self.f.f0 - self.div(), -self.rot() + self.f.fvec.scale(alpha) + self.grad0())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    /// Continuity statements, probed at finitely many points.
    ConsistentWith,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckPart {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub claim: String,
    pub statement: String,
    pub verdict: Verdict,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
    /// SHA-256 of the canonical JSON of the claim inputs.
    pub inputs_digest: String,
    pub scenarios: Vec<String>,
    pub resolutions: Vec<f64>,
    pub residuals: Vec<f64>,
    pub order_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_range: Option<[f64; 2]>,
    pub tolerance: f64,
    pub parts: Vec<CheckPart>,
    pub diagnostics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn final_residual(&self) -> f64 {
        self.residuals.last().copied().unwrap_or(f64::NAN)
    }
}

/// Residuals below this are round-off and carry no order information.
pub const ORDER_FLOOR: f64 = 1e-11;

/// log₂(r(h)/r(h/2)) when the last two resolutions differ by a factor 2.
pub fn order_estimate(resolutions: &[f64], residuals: &[f64]) -> Option<f64> {
    let n = residuals.len();
    if n < 2 || resolutions.len() != n || residuals[n - 1] < ORDER_FLOOR {
        return None;
    }
    let ratio = resolutions[n - 2] / resolutions[n - 1];
    if (ratio - 2.0).abs() > 1e-9 {
        return None;
    }
    let o = (residuals[n - 2] / residuals[n - 1]).log2();
    o.is_finite().then_some(o)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    TheoremJump,
    Theorem1Pair,
    CorollaryVector,
    Hyperholomorphy,
    System1,
    System2,
    Definition1,
    Factorizations,
}

impl Claim {
    pub const ALL: [Claim; 12] = [
        Claim::Lemma1,
        Claim::Lemma2,
        Claim::Lemma3,
        Claim::Lemma4,
        Claim::TheoremJump,
        Claim::Theorem1Pair,
        Claim::CorollaryVector,
        Claim::Hyperholomorphy,
        Claim::System1,
        Claim::System2,
        Claim::Definition1,
        Claim::Factorizations,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Lemma1 => "lemma1",
            Claim::Lemma2 => "lemma2",
            Claim::Lemma3 => "lemma3",
            Claim::Lemma4 => "lemma4",
            Claim::TheoremJump => "theorem-jump",
            Claim::Theorem1Pair => "theorem1-pair",
            Claim::CorollaryVector => "corollary-vector",
            Claim::Hyperholomorphy => "hyperholomorphy",
            Claim::System1 => "system1",
            Claim::System2 => "system2",
            Claim::Definition1 => "definition1",
            Claim::Factorizations => "factorizations",
        }
    }

    pub fn from_id(s: &str) -> Option<Claim> {
        Claim::ALL.into_iter().find(|c| c.id() == s)
    }

    pub fn statement(self) -> &'static str {
        match self {
            Claim::Lemma1 => "|ab| <= sqrt(2)|a||b| for complex quaternions, with equality attained",
            Claim::Lemma2 => "F_alpha[f] is continuous on the curve",
            Claim::Lemma3 => "Phi_alpha[1] = I_alpha + 1 inside and I_alpha outside",
            Claim::Lemma4 => "I_alpha is continuous in the plane",
            Claim::TheoremJump => "boundary values of Phi_alpha[f] obey the Sokhotski-Plemelj formulas",
            Claim::Theorem1Pair => "the Plemelj formulas in scalar-vector pair form agree with the quaternionic ones",
            Claim::CorollaryVector => "vector Plemelj formulas for densities whose Cauchy integral is purely vectorial",
            Claim::Hyperholomorphy => "Phi_alpha[f] is annihilated by the left perturbed Dirac operator",
            Claim::System1 => "vectorial Cauchy integrals solve div f = 0, rot f = alpha f",
            Claim::System2 => "Phi_alpha[f] solves the pair system with divergence, rotor and gradient",
            Claim::Definition1 => "the quaternionic and pair forms of the perturbed Dirac operators agree",
            Claim::Factorizations => "Helmholtz and Laplace factorizations through the Dirac-type operators",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn field(f: impl Fn(Point2) -> CQuat + Sync + 'static) -> Box<dyn Fn(Point2) -> Result<CQuat> + Sync> {
        Box::new(move |p| Ok(f(p)))
    }

    #[test]
    fn dirac_of_constant_vanishes() {
        let g = FDGrid::new(1e-3, Stencil::ThreePoint, vec![Point2::new(0.2, 0.3)]).unwrap();
        let f = field(|_| CQuat::from_real([1.0, 2.0, 3.0, 4.0]));
        let v = apply_operator(&Operator::LeftDirac, &*f, &g).unwrap();
        assert_eq!(v[0], CQuat::ZERO);
    }

    #[test]
    fn laplacian_of_paraboloid() {
        let g = FDGrid::new(1e-3, Stencil::ThreePoint, vec![Point2::new(0.4, -0.7)]).unwrap();
        let f = field(|p| CQuat::from_real([p.x * p.x + p.y * p.y, 0.0, 0.0, 0.0]));
        let v = apply_operator(&Operator::Laplacian, &*f, &g).unwrap();
        assert!((v[0].a0.re - 4.0).abs() < 1e-6);
    }

    #[test]
    fn squared_dirac_is_minus_laplacian() {
        let g = FDGrid::new(1e-3, Stencil::ThreePoint, vec![Point2::new(0.3, 0.1)]).unwrap();
        let f = field(|p| CQuat::I2 * (p.x * p.x));
        let op = Operator::compose(Operator::LeftDirac, Operator::LeftDirac);
        let lhs = apply_operator(&op, &*f, &g).unwrap()[0];
        let lap = apply_operator(&Operator::Laplacian, &*f, &g).unwrap()[0];
        assert!((lhs + lap).norm() < 1e-5);
    }

    #[test]
    fn left_and_right_perturbations_differ_on_vectors() {
        // For the scalar e^x both orders give e^x·i1 + α e^x. For x·i2 the
        // left form gives i1·i2 = i3 and the right form i2·i1 = −i3.
        let alpha = c(2.0, 0.0);
        let p = Point2::new(0.5, 0.0);
        let g = FDGrid::new(1e-4, Stencil::FivePoint, vec![p]).unwrap();
        let e = field(|p| CQuat::from_real([p.x.exp(), 0.0, 0.0, 0.0]));
        let l = apply_operator(&Operator::PerturbedLeft(alpha), &*e, &g).unwrap()[0];
        let r = apply_operator(&Operator::PerturbedRight(alpha), &*e, &g).unwrap()[0];
        let want = CQuat::from_real([2.0 * 0.5f64.exp(), 0.5f64.exp(), 0.0, 0.0]);
        assert!(l.max_abs_diff(&want) < 1e-10 && r.max_abs_diff(&want) < 1e-10);
        let v = field(|p| CQuat::I2 * p.x);
        let l = apply_operator(&Operator::PerturbedLeft(alpha), &*v, &g).unwrap()[0];
        let r = apply_operator(&Operator::PerturbedRight(alpha), &*v, &g).unwrap()[0];
        assert!(l.max_abs_diff(&CQuat::from_real([0.0, 0.0, 1.0, 1.0])) < 1e-10);
        assert!(r.max_abs_diff(&CQuat::from_real([0.0, 0.0, 1.0, -1.0])) < 1e-10);
    }

    #[test]
    fn pair_forms_match_quaternionic_operators() {
        let alpha = c(1.0, 0.5);
        let f = field(|p| {
            CQuat::new(
                c((p.x * p.y).sin(), 0.2),
                c(p.x.exp(), -p.y),
                c(p.y * p.y, p.x),
                c((p.x - p.y).cos(), 0.0),
            )
        });
        let p = Point2::new(0.3, -0.4);
        let jet = PairJet::at(&*f, p, 1e-3, Stencil::ThreePoint).unwrap();
        let l = apply_at(&Operator::PerturbedLeft(alpha), &*f, p, 1e-3, Stencil::ThreePoint).unwrap();
        let r = apply_at(&Operator::PerturbedRight(alpha), &*f, p, 1e-3, Stencil::ThreePoint).unwrap();
        assert!(l.max_abs_diff(&jet.perturbed_left(alpha).to_quat()) < 1e-12);
        assert!(r.max_abs_diff(&jet.perturbed_right(alpha).to_quat()) < 1e-12);
    }

    #[test]
    fn helmholtz_factorization_converges_at_second_order() {
        let alpha = c(2.0, 0.0);
        let f = field(|p| CQuat::I1 * p.x.exp());
        let lhs = Operator::negate(Operator::compose(Operator::PerturbedLeft(alpha), Operator::PerturbedLeft(-alpha)));
        let p = Point2::new(0.1, 0.2);
        let res: Vec<f64> = [1e-2, 5e-3]
            .iter()
            .map(|&h| {
                let a = apply_at(&lhs, &*f, p, h, Stencil::ThreePoint).unwrap();
                let b = apply_at(&Operator::Helmholtz(alpha * alpha), &*f, p, h, Stencil::ThreePoint).unwrap();
                (a - b).norm()
            })
            .collect();
        let order = order_estimate(&[1e-2, 5e-3], &res).unwrap();
        assert!((1.6..=2.4).contains(&order), "{order} {res:?}");
    }

    #[test]
    fn grid_validation() {
        assert!(FDGrid::new(0.0, Stencil::ThreePoint, vec![Point2::ORIGIN]).is_err());
        assert!(FDGrid::new(1e-3, Stencil::ThreePoint, vec![]).is_err());
        let circle = Curve::unit_circle();
        let near = vec![Point2::new(0.9985, 0.0)];
        assert!(FDGrid::with_clearance(1e-3, Stencil::ThreePoint, near, &circle, &Operator::LeftDirac).is_err());
        let ok = vec![Point2::new(0.5, 0.0)];
        assert!(FDGrid::with_clearance(1e-3, Stencil::ThreePoint, ok, &circle, &Operator::LeftDirac).is_ok());
    }

    #[test]
    fn claim_ids_round_trip() {
        for c in Claim::ALL {
            assert_eq!(Claim::from_id(c.id()), Some(c));
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.id()));
        }
        assert_eq!(Claim::from_id("lemma9"), None);
    }
}
