//! Boundary and area integral operators.
//!
//! * Φ_α[f](z) = ∮_Γ K_α(ζ − z)·σ_ζ·f(ζ) for z ∉ Γ
//! * F_α[f](t) = lim_{δ→0} ∫_{Γ∖Γ_{t,δ}} K_α(ζ − t)·σ_ζ·(f(ζ) − f(t)) for t ∈ Γ
//! * I_{α,Γ}(t) = −α ∬_{Ω⁺} K_α(ζ − t) dξ dη
//! * Ψ_α[f](t), the same limit as F_α with every factor replaced by its norm
//!
//! Boundary limits satisfy Φ⁺(t) = (I(t) + 1)·f(t) + F(t) and
//! Φ⁻(t) = I(t)·f(t) + F(t).
//!
//! Sums run over a fixed node order in fixed-size chunks with compensated
//! accumulation, so results do not depend on the thread count.

use std::borrow::Cow;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::Density;
use crate::error::{Error, Result};
use crate::geometry::{BoundaryNode, Curve, Point2, Region, BOUNDARY_TOL, PANEL_ORDER};
use crate::kernel::KernelCtx;
use crate::quat::{CQuat, CVec3, PairField};
use crate::sum::{KahanSum, QuatSum};

const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extrapolation {
    None,
    Richardson { order: usize },
}

/// Quadrature configuration shared by every integral operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadSpec {
    /// Boundary node count n.
    pub boundary_nodes: usize,
    /// Deletion radii δ_k for F_α and Ψ_α, strictly decreasing.
    pub delta_schedule: Vec<f64>,
    /// Area grid resolution m (m×m cells on the bounding box).
    pub area_resolution: usize,
    /// Radius of the polar patch around the area-integral target.
    pub exclusion_radius: f64,
    /// Radial grading exponent of the polar patch.
    pub grading_exponent: f64,
    pub extrapolation: Extrapolation,
    /// Normal distances for the one-sided boundary limits, strictly decreasing.
    pub approach_heights: Vec<f64>,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            boundary_nodes: 1024,
            delta_schedule: (0..7).map(|k| 0.2 * 0.5f64.powi(k)).collect(),
            area_resolution: 256,
            exclusion_radius: 0.1,
            grading_exponent: 2.0,
            extrapolation: Extrapolation::Richardson { order: 1 },
            approach_heights: vec![1e-2, 1e-3, 1e-4],
        }
    }
}

fn strictly_decreasing_positive(v: &[f64]) -> bool {
    !v.is_empty() && v.iter().all(|x| *x > 0.0 && x.is_finite()) && v.windows(2).all(|w| w[1] < w[0])
}

impl QuadSpec {
    pub const MAX_BOUNDARY_NODES: usize = 1 << 22;
    pub const MAX_AREA_RESOLUTION: usize = 8192;

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidQuadSpec(m));
        if self.boundary_nodes < 8 || self.boundary_nodes > Self::MAX_BOUNDARY_NODES {
            return bad(format!(
                "boundary_nodes must lie in [8, {}], got {}",
                Self::MAX_BOUNDARY_NODES,
                self.boundary_nodes
            ));
        }
        if self.area_resolution < 16 || self.area_resolution > Self::MAX_AREA_RESOLUTION {
            return bad(format!(
                "area_resolution must lie in [16, {}], got {}",
                Self::MAX_AREA_RESOLUTION,
                self.area_resolution
            ));
        }
        if !strictly_decreasing_positive(&self.delta_schedule) {
            return bad("delta_schedule must be non-empty, positive and strictly decreasing".into());
        }
        if !strictly_decreasing_positive(&self.approach_heights) {
            return bad("approach_heights must be non-empty, positive and strictly decreasing".into());
        }
        if !(self.exclusion_radius >= 0.0 && self.exclusion_radius.is_finite()) {
            return bad(format!("exclusion_radius must be non-negative, got {}", self.exclusion_radius));
        }
        if !(self.grading_exponent >= 1.0 && self.grading_exponent <= 4.0) {
            return bad(format!("grading_exponent must lie in [1, 4], got {}", self.grading_exponent));
        }
        if let Extrapolation::Richardson { order } = self.extrapolation {
            let shortest = self.delta_schedule.len().min(self.approach_heights.len());
            if order == 0 || order >= shortest {
                return bad(format!(
                    "richardson order must lie in [1, {}] for these schedules, got {order}",
                    shortest.saturating_sub(1)
                ));
            }
        }
        Ok(())
    }

    pub fn with_boundary_nodes(mut self, n: usize) -> Self {
        self.boundary_nodes = n;
        self
    }

    pub fn with_area_resolution(mut self, m: usize) -> Self {
        self.area_resolution = m;
        self
    }
}

/// Values that can be combined linearly by the extrapolator.
pub trait Linear: Copy {
    fn combine(a: f64, x: Self, b: f64, y: Self) -> Self;
    fn size(&self) -> f64;
}

impl Linear for f64 {
    fn combine(a: f64, x: f64, b: f64, y: f64) -> f64 {
        a * x + b * y
    }
    fn size(&self) -> f64 {
        self.abs()
    }
}

impl Linear for CQuat {
    fn combine(a: f64, x: CQuat, b: f64, y: CQuat) -> CQuat {
        x * a + y * b
    }
    fn size(&self) -> f64 {
        self.norm()
    }
}

/// Limit of samples v(s_k) as s → 0: extrapolated value plus the raw sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitSequence<T> {
    pub value: T,
    pub steps: Vec<f64>,
    pub samples: Vec<T>,
    /// `false` when successive differences stop shrinking.
    pub converged: bool,
}

/// Neville evaluation at s = 0 of the polynomial through the last order+1
/// samples.
pub fn extrapolate<T: Linear>(steps: &[f64], samples: &[T], ex: Extrapolation) -> T {
    let n = samples.len();
    let order = match ex {
        Extrapolation::None => 0,
        Extrapolation::Richardson { order } => order.min(n - 1),
    };
    let xs = &steps[n - order - 1..];
    let mut p: Vec<T> = samples[n - order - 1..].to_vec();
    for level in 1..=order {
        for i in 0..=order - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = T::combine(-xj / (xi - xj), p[i], xi / (xi - xj), p[i + 1]);
        }
    }
    p[0]
}

fn differences_shrink<T: Linear>(samples: &[T]) -> bool {
    let d: Vec<f64> = samples.windows(2).map(|w| T::combine(1.0, w[1], -1.0, w[0]).size()).collect();
    let scale = samples.iter().map(|s| s.size()).fold(0.0, f64::max);
    let floor = 1e-10 * (1.0 + scale);
    d.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9) + floor)
}

impl<T: Linear> LimitSequence<T> {
    pub fn from_samples(steps: Vec<f64>, samples: Vec<T>, ex: Extrapolation) -> Self {
        let value = extrapolate(&steps, &samples, ex);
        let converged = differences_shrink(&samples);
        LimitSequence { value, steps, samples, converged }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    fn indicator(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => 0.0,
        }
    }
}

fn ordered_sum<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<CQuat> + Sync) -> Result<CQuat> {
    let partial: Vec<CQuat> = items
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut s = QuatSum::new();
            for it in chunk {
                s.add(f(it)?);
            }
            Ok(s.total())
        })
        .collect::<Result<_>>()?;
    Ok(partial.into_iter().collect::<QuatSum>().total())
}

fn ordered_real_sum<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<f64> + Sync) -> Result<f64> {
    let partial: Vec<f64> = items
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut s = KahanSum::new();
            for it in chunk {
                s.add(f(it)?);
            }
            Ok(s.total())
        })
        .collect::<Result<_>>()?;
    Ok(partial.into_iter().collect::<KahanSum>().total())
}

/// Distance below which the plain rule is replaced by graded panels.
fn near_distance(curve: &Curve, n: usize) -> f64 {
    let spacing = curve.length() / n as f64;
    if curve.is_smooth() {
        4.0 * spacing
    } else {
        PANEL_ORDER as f64 * spacing
    }
}

/// Nodes adequate for a target at `z`: the plain rule when far from Γ,
/// panels graded towards the nearest boundary point otherwise.
fn nodes_for<'a>(curve: &Curve, far: &'a [BoundaryNode], n: usize, z: Point2) -> Cow<'a, [BoundaryNode]> {
    if curve.distance(z) >= near_distance(curve, n) {
        Cow::Borrowed(far)
    } else {
        Cow::Owned(graded_around(curve, z))
    }
}

fn graded_around(curve: &Curve, z: Point2) -> Vec<BoundaryNode> {
    let s = curve.nearest(z).param;
    curve.graded_nodes(z, s, s + curve.period())
}

fn check_off_curve(curve: &Curve, z: Point2) -> Result<()> {
    if curve.contains(z) == Region::Boundary {
        Err(Error::OnBoundary { x: z.x, y: z.y })
    } else {
        Ok(())
    }
}

/// Evaluates Φ_α[f] at many points, caching the regular nodes and σ·f there.
pub struct CauchyEvaluator<'a> {
    ctx: &'a KernelCtx,
    curve: &'a Curve,
    density: &'a Density,
    n: usize,
    far: Vec<BoundaryNode>,
    /// (ζ, σ·f(ζ)) at the regular nodes
    cached: Vec<(Point2, CQuat)>,
}

impl<'a> CauchyEvaluator<'a> {
    pub fn new(ctx: &'a KernelCtx, curve: &'a Curve, density: &'a Density, q: &QuadSpec) -> Result<Self> {
        q.validate()?;
        let far = curve.nodes(q.boundary_nodes)?;
        let cached = far
            .iter()
            .map(|nd| Ok((nd.point, nd.sigma_quat() * density.eval(nd.point)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CauchyEvaluator { ctx, curve, density, n: q.boundary_nodes, far, cached })
    }

    pub fn eval(&self, z: Point2) -> Result<CQuat> {
        check_off_curve(self.curve, z)?;
        if self.curve.distance(z) >= near_distance(self.curve, self.n) {
            ordered_sum(&self.cached, |(p, sf)| Ok(self.ctx.cauchy_kernel(*p - z)? * *sf))
        } else {
            ordered_sum(&graded_around(self.curve, z), |nd| {
                Ok(self.ctx.cauchy_kernel(nd.point - z)? * nd.sigma_quat() * self.density.eval(nd.point)?)
            })
        }
    }

    /// The integral in the scalar–vector form, using the pair integrand
    /// with the explicit dot and cross products.
    pub fn eval_pair(&self, z: Point2) -> Result<PairField> {
        check_off_curve(self.curve, z)?;
        let nodes = nodes_for(self.curve, &self.far, self.n, z);
        let q = ordered_sum(&nodes, |nd| {
            let k = PairField::from(self.ctx.cauchy_kernel(nd.point - z)?);
            let f = PairField::from(self.density.eval(nd.point)?);
            Ok(pair_integrand(&k, nd, &f).to_quat())
        })?;
        Ok(PairField::from(q))
    }
}

fn sigma_vec(nd: &BoundaryNode) -> CVec3 {
    CVec3::new(Complex64::new(nd.sigma[0], 0.0), Complex64::new(nd.sigma[1], 0.0), Complex64::new(0.0, 0.0))
}

/// K·σ·f written out with scalar and vector products:
/// with A = [K, σ] + K₀σ,
/// (−⟨K,σ⟩f₀ − ⟨A, f⟩, [A, f] − ⟨K,σ⟩f + f₀A).
pub fn pair_integrand(k: &PairField, nd: &BoundaryNode, f: &PairField) -> PairField {
    let s = sigma_vec(nd);
    let ks = k.fvec.dot(&s);
    let a = k.fvec.cross(&s) + s.scale(k.f0);
    PairField::new(-ks * f.f0 - a.dot(&f.fvec), a.cross(&f.fvec) - f.fvec.scale(ks) + a.scale(f.f0))
}

/// The vectorial integrand for f₀ = 0: (scalar defect ⟨A, f⟩, vector [A, f] − ⟨K,σ⟩f).
fn vector_integrand(k: &PairField, nd: &BoundaryNode, f: &CVec3) -> (Complex64, CVec3) {
    let s = sigma_vec(nd);
    let ks = k.fvec.dot(&s);
    let a = k.fvec.cross(&s) + s.scale(k.f0);
    (a.dot(f), a.cross(f) - f.scale(ks))
}

/// Φ_α[f](z).
pub fn cauchy_integral(ctx: &KernelCtx, curve: &Curve, f: &Density, z: Point2, q: &QuadSpec) -> Result<CQuat> {
    check_off_curve(curve, z)?;
    CauchyEvaluator::new(ctx, curve, f, q)?.eval(z)
}

/// Φ_α[f](z) in pair form.
pub fn pair_cauchy_integral(
    ctx: &KernelCtx,
    curve: &Curve,
    f: &Density,
    z: Point2,
    q: &QuadSpec,
) -> Result<PairField> {
    check_off_curve(curve, z)?;
    CauchyEvaluator::new(ctx, curve, f, q)?.eval_pair(z)
}

fn vectorial_value(f: &Density, p: Point2) -> Result<CVec3> {
    let v = f.eval(p)?;
    if v.a0.norm() > 1e-14 * (1.0 + v.norm()) {
        return Err(Error::NonVectorialDensity { x: p.x, y: p.y, f0: v.a0.norm() });
    }
    Ok(v.vector_part())
}

fn check_vectorial(curve: &Curve, f: &Density, q: &QuadSpec) -> Result<Vec<BoundaryNode>> {
    let nodes = curve.nodes(q.boundary_nodes)?;
    for nd in &nodes {
        vectorial_value(f, nd.point)?;
    }
    Ok(nodes)
}

/// **Φ**_α[**f**](z) from the two-term vector integrand; f must be vectorial.
pub fn vector_cauchy_integral(
    ctx: &KernelCtx,
    curve: &Curve,
    f: &Density,
    z: Point2,
    q: &QuadSpec,
) -> Result<CVec3> {
    q.validate()?;
    check_off_curve(curve, z)?;
    let far = check_vectorial(curve, f, q)?;
    let nodes = nodes_for(curve, &far, q.boundary_nodes, z);
    let v = ordered_sum(&nodes, |nd| {
        let k = PairField::from(ctx.cauchy_kernel(nd.point - z)?);
        let (_, v) = vector_integrand(&k, nd, &vectorial_value(f, nd.point)?);
        Ok(CQuat::from_parts(Complex64::new(0.0, 0.0), v))
    })?;
    Ok(v.vector_part())
}

/// max over `zs` of |∮⟨[**K**_α(ζ−z), σ] + K_{α,0}(ζ−z)σ, **f**(ζ)⟩|.
pub fn membership_defect(ctx: &KernelCtx, curve: &Curve, f: &Density, zs: &[Point2], q: &QuadSpec) -> Result<f64> {
    q.validate()?;
    let far = check_vectorial(curve, f, q)?;
    let mut worst: f64 = 0.0;
    for &z in zs {
        check_off_curve(curve, z)?;
        let nodes = nodes_for(curve, &far, q.boundary_nodes, z);
        let s = ordered_sum(&nodes, |nd| {
            let k = PairField::from(ctx.cauchy_kernel(nd.point - z)?);
            let (d, _) = vector_integrand(&k, nd, &vectorial_value(f, nd.point)?);
            Ok(CQuat::scalar(d))
        })?;
        worst = worst.max(s.a0.norm());
    }
    Ok(worst)
}

/// A boundary point snapped onto Γ.
#[derive(Debug, Clone, Copy, PartialEq)]
struct OnCurve {
    t: Point2,
    param: f64,
}

fn on_curve(curve: &Curve, t: Point2) -> Result<OnCurve> {
    if curve.distance(t) > BOUNDARY_TOL {
        return Err(Error::NotOnCurve { x: t.x, y: t.y });
    }
    let cp = curve.nearest(t);
    Ok(OnCurve { t: cp.point, param: cp.param })
}

/// Nodes on Γ ∖ Γ_{t,δ}, graded towards t.
fn deleted_nodes(curve: &Curve, at: OnCurve, delta: f64) -> Vec<BoundaryNode> {
    match curve.remaining_interval(at.param, delta) {
        None => Vec::new(),
        Some((a, b)) => {
            let mut nodes = curve.graded_nodes(at.t, a, b);
            nodes.retain(|nd| nd.point.dist(at.t) > delta);
            nodes
        }
    }
}

fn delta_sweep<T: Linear>(
    q: &QuadSpec,
    curve: &Curve,
    at: OnCurve,
    one: impl Fn(&[BoundaryNode]) -> Result<T>,
) -> Result<LimitSequence<T>> {
    q.validate()?;
    let mut samples = Vec::with_capacity(q.delta_schedule.len());
    for &delta in &q.delta_schedule {
        samples.push(one(&deleted_nodes(curve, at, delta))?);
    }
    Ok(LimitSequence::from_samples(q.delta_schedule.clone(), samples, q.extrapolation))
}

/// F_α[f](t) over the δ schedule, extrapolated to δ = 0.
pub fn singular_integral(
    ctx: &KernelCtx,
    curve: &Curve,
    f: &Density,
    t: Point2,
    q: &QuadSpec,
) -> Result<LimitSequence<CQuat>> {
    let at = on_curve(curve, t)?;
    let ft = f.eval(at.t)?;
    delta_sweep(q, curve, at, |nodes| {
        ordered_sum(nodes, |nd| Ok(ctx.cauchy_kernel(nd.point - at.t)? * nd.sigma_quat() * (f.eval(nd.point)? - ft)))
    })
}

/// F_α[f](t) in pair form, summed with the pair integrand.
pub fn pair_singular_integral(
    ctx: &KernelCtx,
    curve: &Curve,
    f: &Density,
    t: Point2,
    q: &QuadSpec,
) -> Result<LimitSequence<CQuat>> {
    let at = on_curve(curve, t)?;
    let ft = f.eval(at.t)?;
    delta_sweep(q, curve, at, |nodes| {
        ordered_sum(nodes, |nd| {
            let k = PairField::from(ctx.cauchy_kernel(nd.point - at.t)?);
            let df = PairField::from(f.eval(nd.point)? - ft);
            Ok(pair_integrand(&k, nd, &df).to_quat())
        })
    })
}

/// **F**_α[**f**](t) for vectorial f, summed with the vector integrand.
/// The returned quaternion carries the scalar defect ⟨A, f − f(t)⟩ with a
/// minus sign in its scalar slot and **F** in its vector slots.
pub fn vector_singular_integral(
    ctx: &KernelCtx,
    curve: &Curve,
    f: &Density,
    t: Point2,
    q: &QuadSpec,
) -> Result<LimitSequence<CQuat>> {
    let at = on_curve(curve, t)?;
    let ft = vectorial_value(f, at.t)?;
    delta_sweep(q, curve, at, |nodes| {
        ordered_sum(nodes, |nd| {
            let k = PairField::from(ctx.cauchy_kernel(nd.point - at.t)?);
            let (d, v) = vector_integrand(&k, nd, &(vectorial_value(f, nd.point)? - ft));
            Ok(CQuat::from_parts(-d, v))
        })
    })
}

/// Ψ_α[f](t) over the δ schedule.
pub fn davydov_integral(
    ctx: &KernelCtx,
    curve: &Curve,
    f: &Density,
    t: Point2,
    q: &QuadSpec,
) -> Result<LimitSequence<f64>> {
    let at = on_curve(curve, t)?;
    let ft = f.eval(at.t)?;
    delta_sweep(q, curve, at, |nodes| {
        ordered_real_sum(nodes, |nd| {
            Ok(ctx.cauchy_kernel(nd.point - at.t)?.norm() * nd.arc_weight() * (f.eval(nd.point)? - ft).norm())
        })
    })
}

/// I_{α,Γ}(t); zero without quadrature when α = 0.
pub fn area_integral(ctx: &KernelCtx, curve: &Curve, t: Point2, q: &QuadSpec) -> Result<CQuat> {
    q.validate()?;
    if ctx.is_degenerate() {
        return Ok(CQuat::ZERO);
    }
    let cells = curve.area_cells_graded(q.area_resolution, Some((t, q.exclusion_radius)), q.grading_exponent)?;
    let s = ordered_sum(&cells, |c| Ok(ctx.cauchy_kernel(c.point - t)? * c.weight))?;
    Ok(s * -ctx.alpha())
}

/// The ingredients of the Plemelj right-hand sides at one boundary point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlemeljParts {
    pub t: Point2,
    pub f_t: CQuat,
    pub area: CQuat,
    pub singular: LimitSequence<CQuat>,
}

impl PlemeljParts {
    /// (I + 1)·f(t) + F on the plus side, I·f(t) + F on the minus side.
    pub fn rhs(&self, side: Side) -> CQuat {
        (self.area + CQuat::ONE * side.indicator()) * self.f_t + self.singular.value
    }

    /// The same right-hand side assembled from pair components:
    /// ((I₀+𝟙)f₀ − ⟨**I**, **f**⟩ + F₀, (I₀+𝟙)**f** + f₀**I** + [**I**, **f**] + **F**).
    pub fn pair_rhs(&self, side: Side, singular: &PairField) -> PairField {
        let i = PairField::from(self.area);
        let f = PairField::from(self.f_t);
        let i0 = i.f0 + side.indicator();
        PairField::new(
            i0 * f.f0 - i.fvec.dot(&f.fvec) + singular.f0,
            f.fvec.scale(i0) + i.fvec.scale(f.f0) + i.fvec.cross(&f.fvec) + singular.fvec,
        )
    }

    /// Vector form for f₀ = 0: (I₀+𝟙)**f** + [**I**, **f**] + **F**.
    pub fn vector_rhs(&self, side: Side, singular: &CVec3) -> CVec3 {
        let i = PairField::from(self.area);
        let f = self.f_t.vector_part();
        f.scale(i.f0 + side.indicator()) + i.fvec.cross(&f) + *singular
    }
}

pub fn plemelj_parts(ctx: &KernelCtx, curve: &Curve, f: &Density, t: Point2, q: &QuadSpec) -> Result<PlemeljParts> {
    let at = on_curve(curve, t)?;
    Ok(PlemeljParts {
        t: at.t,
        f_t: f.eval(at.t)?,
        area: area_integral(ctx, curve, at.t, q)?,
        singular: singular_integral(ctx, curve, f, at.t, q)?,
    })
}

/// Right-hand side of the Plemelj formula on the given side.
pub fn plemelj_rhs(ctx: &KernelCtx, curve: &Curve, f: &Density, t: Point2, side: Side, q: &QuadSpec) -> Result<CQuat> {
    Ok(plemelj_parts(ctx, curve, f, t, q)?.rhs(side))
}

/// One-sided limit of Φ_α[f] at t along the normal, extrapolated over the
/// approach heights. `Plus` approaches from Ω⁺.
pub fn boundary_limit(
    ctx: &KernelCtx,
    curve: &Curve,
    f: &Density,
    t: Point2,
    side: Side,
    q: &QuadSpec,
) -> Result<LimitSequence<CQuat>> {
    let ev = CauchyEvaluator::new(ctx, curve, f, q)?;
    boundary_limit_with(&ev, curve, t, side, q)
}

fn approach_points(curve: &Curve, at: OnCurve, side: Side, q: &QuadSpec) -> Vec<Point2> {
    let nrm = curve.outward_normal(at.param);
    let dir = match side {
        Side::Plus => -1.0,
        Side::Minus => 1.0,
    };
    q.approach_heights.iter().map(|h| at.t + nrm * (dir * h)).collect()
}

fn boundary_limit_with(
    ev: &CauchyEvaluator<'_>,
    curve: &Curve,
    t: Point2,
    side: Side,
    q: &QuadSpec,
) -> Result<LimitSequence<CQuat>> {
    let at = on_curve(curve, t)?;
    let samples = approach_points(curve, at, side, q)
        .into_iter()
        .map(|z| ev.eval(z))
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitSequence::from_samples(q.approach_heights.clone(), samples, q.extrapolation))
}

/// Boundary limits of the vector integral for vectorial f.
pub fn vector_boundary_limit(
    ctx: &KernelCtx,
    curve: &Curve,
    f: &Density,
    t: Point2,
    side: Side,
    q: &QuadSpec,
) -> Result<LimitSequence<CQuat>> {
    let at = on_curve(curve, t)?;
    let samples = approach_points(curve, at, side, q)
        .into_iter()
        .map(|z| Ok(CQuat::from_parts(Complex64::new(0.0, 0.0), vector_cauchy_integral(ctx, curve, f, z, q)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitSequence::from_samples(q.approach_heights.clone(), samples, q.extrapolation))
}

/// Measured boundary limits against the Plemelj right-hand sides at t.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpReport {
    pub t: Point2,
    pub f_t: CQuat,
    pub lhs_plus: CQuat,
    pub lhs_minus: CQuat,
    pub rhs_plus: CQuat,
    pub rhs_minus: CQuat,
    pub residual_plus: f64,
    pub residual_minus: f64,
    /// |Φ⁺ − Φ⁻ − f(t)|
    pub jump_residual: f64,
    pub area: CQuat,
    pub singular: CQuat,
    pub singular_converged: bool,
    pub limits_converged: bool,
}

impl JumpReport {
    pub fn max_residual(&self) -> f64 {
        self.residual_plus.max(self.residual_minus).max(self.jump_residual)
    }
}

fn jump_report_with(
    ev: &CauchyEvaluator<'_>,
    ctx: &KernelCtx,
    curve: &Curve,
    f: &Density,
    t: Point2,
    q: &QuadSpec,
) -> Result<JumpReport> {
    let parts = plemelj_parts(ctx, curve, f, t, q)?;
    let plus = boundary_limit_with(ev, curve, parts.t, Side::Plus, q)?;
    let minus = boundary_limit_with(ev, curve, parts.t, Side::Minus, q)?;
    let (rhs_plus, rhs_minus) = (parts.rhs(Side::Plus), parts.rhs(Side::Minus));
    Ok(JumpReport {
        t: parts.t,
        f_t: parts.f_t,
        lhs_plus: plus.value,
        lhs_minus: minus.value,
        rhs_plus,
        rhs_minus,
        residual_plus: (plus.value - rhs_plus).norm(),
        residual_minus: (minus.value - rhs_minus).norm(),
        jump_residual: (plus.value - minus.value - parts.f_t).norm(),
        area: parts.area,
        singular: parts.singular.value,
        singular_converged: parts.singular.converged,
        limits_converged: plus.converged && minus.converged,
    })
}

pub fn jump_report(ctx: &KernelCtx, curve: &Curve, f: &Density, t: Point2, q: &QuadSpec) -> Result<JumpReport> {
    let ev = CauchyEvaluator::new(ctx, curve, f, q)?;
    jump_report_with(&ev, ctx, curve, f, t, q)
}

/// Jump reports at `count` equispaced parameters, in parameter order.
pub fn jump_sweep(ctx: &KernelCtx, curve: &Curve, f: &Density, count: usize, q: &QuadSpec) -> Result<Vec<JumpReport>> {
    let ev = CauchyEvaluator::new(ctx, curve, f, q)?;
    let p = curve.period();
    (0..count)
        .into_par_iter()
        .map(|k| jump_report_with(&ev, ctx, curve, f, curve.point(p * k as f64 / count as f64), q))
        .collect()
}

/// Φ_α[f] at many points, in input order.
pub fn cauchy_sweep(
    ctx: &KernelCtx,
    curve: &Curve,
    f: &Density,
    zs: &[Point2],
    q: &QuadSpec,
) -> Result<Vec<Result<CQuat>>> {
    let ev = CauchyEvaluator::new(ctx, curve, f, q)?;
    Ok(zs.par_iter().map(|&z| ev.eval(z)).collect())
}
