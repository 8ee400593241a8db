use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::tolerances as tol;
use super::{apply_at, order_estimate, CheckPart, CheckReport, Claim, FDGrid, Operator, PairJet, Stencil, Verdict};
use crate::density::Density;
use crate::error::{Error, Result};
use crate::geometry::{Curve, Point2, Region};
use crate::potential::{
    area_integral, jump_sweep, membership_defect, pair_singular_integral, plemelj_parts, singular_integral,
    vector_boundary_limit, vector_singular_integral, CauchyEvaluator, Side,
};
use crate::quat::{CQuat, PairField};
use crate::scenario::{Built, ScenarioSet};

fn digest(claim: Claim, set: &ScenarioSet) -> String {
    let payload = serde_json::json!({
        "claim": claim.id(),
        "tolerance_table": tol::TABLE_VERSION,
        "scenarios": set,
    });
    let hash = Sha256::digest(payload.to_string().as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

struct Draft {
    r: CheckReport,
}

impl Draft {
    fn new(claim: Claim, set: &ScenarioSet, tolerance: f64) -> Self {
        Draft {
            r: CheckReport {
                claim: claim.id().to_string(),
                statement: claim.statement().to_string(),
                verdict: Verdict::Failed,
                pass: false,
                operator: None,
                inputs_digest: digest(claim, set),
                scenarios: Vec::new(),
                resolutions: Vec::new(),
                residuals: Vec::new(),
                order_estimate: None,
                order_range: None,
                tolerance,
                parts: Vec::new(),
                diagnostics: BTreeMap::new(),
                notes: Vec::new(),
            },
        }
    }

    fn scenario(&mut self, label: &str) {
        if !self.r.scenarios.iter().any(|s| s == label) {
            self.r.scenarios.push(label.to_string());
        }
    }

    fn part(&mut self, name: &str, residual: f64, tolerance: f64) {
        self.r.parts.push(CheckPart { name: name.to_string(), residual, tolerance, pass: residual < tolerance });
    }

    fn diag(&mut self, key: &str, v: f64) {
        self.r.diagnostics.insert(key.to_string(), v);
    }

    fn note(&mut self, s: impl Into<String>) {
        self.r.notes.push(s.into());
    }

    fn finish(mut self, claim: Claim) -> CheckReport {
        if self.r.order_estimate.is_none() {
            self.r.order_estimate = order_estimate(&self.r.resolutions, &self.r.residuals);
        }
        let residual_ok = self.r.final_residual() < self.r.tolerance;
        let parts_ok = self.r.parts.iter().all(|p| p.pass);
        let order_ok = match (self.r.order_range, self.r.order_estimate) {
            (Some([lo, hi]), Some(o)) => (lo..=hi).contains(&o),
            (Some(_), None) => false,
            _ => true,
        };
        self.r.pass = residual_ok && parts_ok && order_ok;
        self.r.verdict = match (self.r.pass, claim) {
            (false, _) => Verdict::Failed,
            (true, Claim::Lemma2 | Claim::Lemma4) => Verdict::ConsistentWith,
            (true, _) => Verdict::Verified,
        };
        self.r
    }
}

fn center(curve: &Curve) -> Point2 {
    let [x0, x1, y0, y1] = curve.bounding_box();
    Point2::new(0.5 * (x0 + x1), 0.5 * (y0 + y1))
}

/// c + (γ(s) − c)·r
fn ray(curve: &Curve, s: f64, r: f64) -> Point2 {
    let c = center(curve);
    c + (curve.point(s) - c) * r
}

/// Up to five interior points at least `clearance` from Γ.
fn interior_probes(curve: &Curve, clearance: f64) -> Vec<Point2> {
    let p = curve.period();
    let mut cands = vec![center(curve)];
    for r in [0.35, 0.6] {
        for k in 0..5 {
            cands.push(ray(curve, p * (k as f64 + 0.15) / 5.0, r));
        }
    }
    cands
        .into_iter()
        .filter(|z| curve.contains(*z) == Region::Interior && curve.distance(*z) >= clearance)
        .take(5)
        .collect()
}

fn exterior_probes(curve: &Curve) -> Vec<Point2> {
    let p = curve.period();
    vec![ray(curve, 0.2 * p, 1.5), ray(curve, 0.7 * p, 1.3)]
}

fn params(curve: &Curve, count: usize, offset: f64) -> Vec<f64> {
    (0..count).map(|k| curve.period() * (k as f64 + offset) / count as f64).collect()
}

fn vnorm(v: &crate::quat::CVec3) -> f64 {
    v.norm_sqr().sqrt()
}

fn distinct_alphas(builds: &[Built]) -> Vec<(Complex64, &Built)> {
    let mut out: Vec<(Complex64, &Built)> = Vec::new();
    for b in builds {
        if !out.iter().any(|(a, _)| *a == b.ctx.alpha()) {
            out.push((b.ctx.alpha(), b));
        }
    }
    out
}

fn vector_densities() -> Vec<Density> {
    vec![Density::coordinate(), Density::constant(CQuat::from_real([0.0, 1.0, -2.0, 0.5]))]
}

fn is_vectorial(d: &Density, curve: &Curve) -> bool {
    curve
        .nodes(64)
        .map(|nodes| nodes.iter().all(|n| d.eval(n.point).is_ok_and(|v| v.a0.norm() <= 1e-14 * (1.0 + v.norm()))))
        .unwrap_or(false)
}

pub fn certify(claim: Claim, set: &ScenarioSet) -> Result<CheckReport> {
    let builds = set.build()?;
    match claim {
        Claim::Lemma1 => lemma1(set),
        Claim::Lemma2 => lemma2(set, &builds),
        Claim::Lemma3 => lemma3(set, &builds),
        Claim::Lemma4 => lemma4(set, &builds),
        Claim::TheoremJump => theorem_jump(set, &builds),
        Claim::Theorem1Pair => theorem1_pair(set, &builds),
        Claim::CorollaryVector => corollary_vector(set, &builds),
        Claim::Hyperholomorphy => hyperholomorphy(set, &builds),
        Claim::System1 => system1(set, &builds),
        Claim::System2 => system2(set, &builds),
        Claim::Definition1 => definition1(set, &builds),
        Claim::Factorizations => factorizations(set, &builds),
    }
}

/// Runs the claims in the given order.
pub fn certify_all(set: &ScenarioSet, claims: &[Claim]) -> Result<Vec<CheckReport>> {
    set.build()?;
    claims.par_iter().map(|c| certify(*c, set)).collect()
}

fn random_quat(rng: &mut ChaCha8Rng) -> CQuat {
    let mut c = [Complex64::new(0.0, 0.0); 4];
    for z in &mut c {
        *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    CQuat::from_components(c)
}

fn lemma1(set: &ScenarioSet) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::Lemma1, set, tol::LEMMA1);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let (mut excess, mut ratio) = (f64::NEG_INFINITY, 0.0f64);
    const SAMPLES: usize = 10_000;
    for _ in 0..SAMPLES {
        let (a, b) = (random_quat(&mut rng), random_quat(&mut rng));
        let bound = 2f64.sqrt() * a.norm() * b.norm();
        let ab = (a * b).norm();
        excess = excess.max(ab - bound);
        ratio = ratio.max(ab / (a.norm() * b.norm()));
    }
    let w = CQuat::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let gap = ((w * w).norm() - 2f64.sqrt() * w.norm() * w.norm()).abs();
    d.r.residuals.push(excess.max(0.0));
    d.part("witness_equality", gap, tol::LEMMA1);
    d.diag("max_ratio", ratio);
    d.diag("samples", SAMPLES as f64);
    d.note("witness a = b = 1 + i*i1, |ab| = 2*sqrt(2)");
    Ok(d.finish(Claim::Lemma1))
}

fn lemma2(set: &ScenarioSet, builds: &[Built]) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::Lemma2, set, tol::LEMMA2);
    let mut worst: f64 = 0.0;
    for b in builds {
        d.scenario(&b.label);
        for s in params(&b.curve, 8, 0.3) {
            let ds = 1e-3 / b.curve.derivative(s).norm();
            let f1 = singular_integral(&b.ctx, &b.curve, &b.density, b.curve.point(s), &b.quad)?.value;
            let f2 = singular_integral(&b.ctx, &b.curve, &b.density, b.curve.point(s + ds), &b.quad)?.value;
            worst = worst.max((f1 - f2).norm());
        }
    }
    d.r.residuals.push(worst);
    d.note("8 probe pairs per scenario, chord distance 1e-3; continuity is probed, not proved");
    Ok(d.finish(Claim::Lemma2))
}

fn lemma3(set: &ScenarioSet, builds: &[Built]) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::Lemma3, set, tol::LEMMA3);
    let one = Density::constant(CQuat::ONE);
    let (mut worst, mut exact): (f64, f64) = (0.0, 0.0);
    for (alpha, b) in distinct_alphas(builds) {
        d.scenario(&b.label);
        let ev = CauchyEvaluator::new(&b.ctx, &b.curve, &one, &b.quad)?;
        let p = b.curve.period();
        let probes = [
            center(&b.curve),
            ray(&b.curve, 0.3 * p, 0.6),
            ray(&b.curve, 0.55 * p, 0.97),
            ray(&b.curve, 0.2 * p, 1.5),
            ray(&b.curve, 0.8 * p, 1.03),
        ];
        for z in probes {
            let phi = ev.eval(z)?;
            let inside = if b.curve.contains(z) == Region::Interior { 1.0 } else { 0.0 };
            if alpha == Complex64::new(0.0, 0.0) {
                exact = exact.max((phi - CQuat::ONE * inside).norm());
            } else {
                let i = area_integral(&b.ctx, &b.curve, z, &b.quad)?;
                worst = worst.max((phi - i - CQuat::ONE * inside).norm() / (1.0 + i.norm()));
            }
        }
    }
    d.r.residuals.push(worst);
    d.part("alpha_zero_exact", exact, tol::LEMMA3_EXACT);
    d.note("density f = 1; probes: center, mid-interior, near-boundary interior, two exterior");
    Ok(d.finish(Claim::Lemma3))
}

fn lemma4(set: &ScenarioSet, builds: &[Built]) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::Lemma4, set, tol::LEMMA4);
    let mut worst: f64 = 0.0;
    for (alpha, b) in distinct_alphas(builds) {
        if alpha == Complex64::new(0.0, 0.0) {
            continue;
        }
        d.scenario(&b.label);
        let p = b.curve.period();
        let z = ray(&b.curve, 0.1 * p, 0.2);
        let s = 0.37 * p;
        let t = b.curve.point(s);
        let n = b.curve.outward_normal(s);
        let pairs = [(z, z + Point2::new(1e-4, 0.0)), (t, t - n * 1e-4), (t, t + n * 1e-4)];
        for (u, v) in pairs {
            let iu = area_integral(&b.ctx, &b.curve, u, &b.quad)?;
            let iv = area_integral(&b.ctx, &b.curve, v, &b.quad)?;
            worst = worst.max((iu - iv).norm());
        }
    }
    d.r.residuals.push(worst);
    d.note("interior pair 1e-4 apart and boundary point against both normal offsets 1e-4; I = 0 identically for alpha = 0");
    Ok(d.finish(Claim::Lemma4))
}

fn theorem_jump(set: &ScenarioSet, builds: &[Built]) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::TheoremJump, set, tol::JUMP);
    let (mut worst, mut unconverged): (f64, usize) = (0.0, 0);
    let (mut plus, mut minus, mut diff): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for b in builds {
        d.scenario(&b.label);
        for r in jump_sweep(&b.ctx, &b.curve, &b.density, 8, &b.quad)? {
            let scale = 1.0 + r.f_t.norm();
            plus = plus.max(r.residual_plus / scale);
            minus = minus.max(r.residual_minus / scale);
            diff = diff.max(r.jump_residual / scale);
            worst = worst.max(r.max_residual() / scale);
            if !(r.singular_converged && r.limits_converged) {
                unconverged += 1;
            }
        }
        if !b.curve.is_smooth() {
            d.note(format!("{}: polygon boundary, smoke-level only", b.label));
        }
    }
    d.r.residuals.push(worst);
    d.diag("residual_plus", plus);
    d.diag("residual_minus", minus);
    d.diag("jump_difference", diff);
    d.diag("unconverged_sequences", unconverged as f64);
    d.note("8 boundary points per scenario; residuals divided by 1 + |f(t)|");
    Ok(d.finish(Claim::TheoremJump))
}

fn theorem1_pair(set: &ScenarioSet, builds: &[Built]) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::Theorem1Pair, set, tol::PAIR);
    let (mut rhs_dev, mut cauchy_dev): (f64, f64) = (0.0, 0.0);
    for b in builds {
        d.scenario(&b.label);
        for s in params(&b.curve, 4, 0.3) {
            let t = b.curve.point(s);
            let parts = plemelj_parts(&b.ctx, &b.curve, &b.density, t, &b.quad)?;
            let fp = PairField::from(pair_singular_integral(&b.ctx, &b.curve, &b.density, t, &b.quad)?.value);
            for side in [Side::Plus, Side::Minus] {
                let q = parts.rhs(side);
                let p = parts.pair_rhs(side, &fp).to_quat();
                rhs_dev = rhs_dev.max((p - q).norm() / (1.0 + q.norm()));
            }
        }
        let ev = CauchyEvaluator::new(&b.ctx, &b.curve, &b.density, &b.quad)?;
        for z in [ray(&b.curve, 0.4, 0.5), ray(&b.curve, 2.0, 1.4)] {
            let q = ev.eval(z)?;
            let p = ev.eval_pair(z)?.to_quat();
            cauchy_dev = cauchy_dev.max((p - q).norm() / (1.0 + q.norm()));
        }
    }
    d.r.residuals.push(rhs_dev.max(cauchy_dev));
    d.part("plemelj_rhs", rhs_dev, tol::PAIR);
    d.part("cauchy_integral", cauchy_dev, tol::PAIR);
    Ok(d.finish(Claim::Theorem1Pair))
}

/// α = 0 curves of the set, or the first curve with α = 0 when none.
fn zero_alpha_builds(set: &ScenarioSet, builds: &[Built], d: &mut Draft) -> Result<Vec<Built>> {
    let mut out: Vec<Built> = Vec::new();
    for b in builds.iter().filter(|b| b.ctx.is_degenerate()) {
        if !out.iter().any(|o| o.curve == b.curve) {
            out.push(b.clone());
        }
    }
    if out.is_empty() {
        let mut s = set.scenarios[0].clone();
        s.alpha = Default::default();
        s.name = None;
        out.push(s.build()?);
        d.note("no alpha = 0 scenario in the set; used the first curve with alpha = 0");
    }
    Ok(out)
}

fn vector_cases(builds: &[Built]) -> Vec<(String, &Built, Density)> {
    let mut cases = Vec::new();
    for b in builds {
        let mut dens = vector_densities();
        if is_vectorial(&b.density, &b.curve) && !dens.contains(&b.density) {
            dens.push(b.density.clone());
        }
        for f in dens {
            cases.push((format!("{}/{}", curve_label(&b.curve), f.label()), b, f));
        }
    }
    cases
}

fn curve_label(c: &Curve) -> &'static str {
    match c.kind() {
        crate::geometry::CurveKind::Circle { .. } => "circle",
        crate::geometry::CurveKind::Ellipse { .. } => "ellipse",
        crate::geometry::CurveKind::Polygon { .. } => "polygon",
    }
}

fn corollary_vector(set: &ScenarioSet, builds: &[Built]) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::CorollaryVector, set, tol::JUMP);
    let zero = zero_alpha_builds(set, builds, &mut d)?;
    let (mut defect, mut jump, mut coherence): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (label, b, f) in vector_cases(&zero) {
        d.scenario(&format!("alpha=0/{label}"));
        let mut zs = interior_probes(&b.curve, 0.05);
        zs.extend(exterior_probes(&b.curve));
        defect = defect.max(membership_defect(&b.ctx, &b.curve, &f, &zs, &b.quad)?);
        for s in params(&b.curve, 8, 0.1) {
            let t = b.curve.point(s);
            let parts = plemelj_parts(&b.ctx, &b.curve, &f, t, &b.quad)?;
            let fv = vector_singular_integral(&b.ctx, &b.curve, &f, t, &b.quad)?.value.vector_part();
            let fp = PairField::from(pair_singular_integral(&b.ctx, &b.curve, &f, t, &b.quad)?.value);
            let scale = 1.0 + parts.f_t.norm();
            let mut lim = Vec::new();
            for side in [Side::Plus, Side::Minus] {
                let l = vector_boundary_limit(&b.ctx, &b.curve, &f, t, side, &b.quad)?.value.vector_part();
                let rhs = parts.vector_rhs(side, &fv);
                jump = jump.max(vnorm(&(l - rhs)) / scale);
                let pair = parts.pair_rhs(side, &fp).fvec;
                coherence = coherence.max(vnorm(&(rhs - pair)) / (1.0 + vnorm(&rhs)));
                lim.push(l);
            }
            jump = jump.max(vnorm(&(lim[0] - lim[1] - parts.f_t.vector_part())) / scale);
        }
    }
    d.r.residuals.push(jump);
    d.part("membership_defect", defect, tol::MEMBERSHIP);
    d.part("vector_vs_pair_rhs", coherence, tol::PAIR);
    d.note("vectorial densities with alpha = 0; 8 boundary points each");
    Ok(d.finish(Claim::CorollaryVector))
}

type PhiField<'a> = Box<dyn Fn(Point2) -> Result<CQuat> + Sync + 'a>;

fn phi_field<'a>(ev: &'a CauchyEvaluator<'a>) -> PhiField<'a> {
    Box::new(move |p| ev.eval(p))
}

fn fd_points(b: &Built) -> Result<Vec<Point2>> {
    let pts = interior_probes(&b.curve, b.fd.clearance);
    if pts.is_empty() {
        return Err(Error::InvalidGrid(format!("{}: no interior point with clearance {}", b.label, b.fd.clearance)));
    }
    Ok(pts)
}

fn resolutions(b: &Built) -> [f64; 2] {
    [2.0 * b.fd.h, b.fd.h]
}

fn hyperholomorphy(set: &ScenarioSet, builds: &[Built]) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::Hyperholomorphy, set, tol::HYPERHOLOMORPHY);
    let hs = resolutions(&builds[0]);
    let mut res = [0.0f64; 2];
    let (mut literal, mut literal_dev): (f64, f64) = (0.0, 0.0);
    for b in builds {
        d.scenario(&b.label);
        let ev = CauchyEvaluator::new(&b.ctx, &b.curve, &b.density, &b.quad)?;
        let field = phi_field(&ev);
        let a = b.ctx.alpha();
        let op = Operator::PerturbedLeft(-a);
        let grid_pts = fd_points(b)?;
        for (k, &h) in resolutions(b).iter().enumerate() {
            let grid = FDGrid::with_clearance(h, b.fd.stencil, grid_pts.clone(), &b.curve, &op)?;
            for &p in grid.points() {
                res[k] = res[k].max(apply_at(&op, &*field, p, h, grid.stencil())?.norm());
                if k == 1 {
                    let lit = apply_at(&Operator::PerturbedLeft(a), &*field, p, h, grid.stencil())?;
                    literal = literal.max(lit.norm());
                    literal_dev = literal_dev.max((lit - field(p)? * CQuat::scalar(2.0 * a)).norm());
                }
            }
        }
    }
    d.r.operator = Some("d_[-alpha] = st_d + M^(-alpha)".into());
    d.r.resolutions = hs.to_vec();
    d.r.residuals = res.to_vec();
    d.diag("literal_d_alpha_residual", literal);
    d.diag("literal_minus_2_alpha_phi", literal_dev);
    d.note("Phi_alpha[f] is annihilated by d_[-alpha]; d_[alpha] Phi = 2 alpha Phi, reported as diagnostics");
    Ok(d.finish(Claim::Hyperholomorphy))
}

fn system2(set: &ScenarioSet, builds: &[Built]) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::System2, set, tol::SYSTEM);
    let hs = resolutions(&builds[0]);
    let mut res = [0.0f64; 2];
    for b in builds {
        d.scenario(&b.label);
        let ev = CauchyEvaluator::new(&b.ctx, &b.curve, &b.density, &b.quad)?;
        let field = phi_field(&ev);
        let pts = fd_points(b)?;
        for (k, &h) in resolutions(b).iter().enumerate() {
            FDGrid::with_clearance(h, b.fd.stencil, pts.clone(), &b.curve, &Operator::LeftDirac)?;
            for &p in &pts {
                let jet = PairJet::at(&*field, p, h, b.fd.stencil)?;
                res[k] = res[k].max(jet.perturbed_left(-b.ctx.alpha()).norm());
            }
        }
    }
    d.r.operator = Some("(-alpha f0 - div f, rot f - alpha f + grad f0)".into());
    d.r.resolutions = hs.to_vec();
    d.r.residuals = res.to_vec();
    Ok(d.finish(Claim::System2))
}

fn system1(set: &ScenarioSet, builds: &[Built]) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::System1, set, tol::SYSTEM);
    let zero = zero_alpha_builds(set, builds, &mut d)?;
    let hs = resolutions(&zero[0]);
    let mut res = [0.0f64; 2];
    let mut scalar: f64 = 0.0;
    for (label, b, f) in vector_cases(&zero) {
        d.scenario(&format!("alpha=0/{label}"));
        let ev = CauchyEvaluator::new(&b.ctx, &b.curve, &f, &b.quad)?;
        let field = phi_field(&ev);
        let pts = fd_points(b)?;
        for (k, &h) in resolutions(b).iter().enumerate() {
            FDGrid::with_clearance(h, b.fd.stencil, pts.clone(), &b.curve, &Operator::LeftDirac)?;
            for &p in &pts {
                let jet = PairJet::at(&*field, p, h, b.fd.stencil)?;
                let a = b.ctx.alpha();
                let div = jet.div().norm();
                let rot = vnorm(&(jet.rot() - jet.f.fvec.scale(a)));
                res[k] = res[k].max(div.max(rot));
                scalar = scalar.max(jet.f.f0.norm());
            }
        }
    }
    d.r.operator = Some("(div f, rot f - alpha f)".into());
    d.r.resolutions = hs.to_vec();
    d.r.residuals = res.to_vec();
    d.part("scalar_part", scalar, tol::MEMBERSHIP);
    Ok(d.finish(Claim::System1))
}

type Trial = fn(Point2) -> CQuat;

fn trial_fields() -> [(&'static str, Trial); 4] {
    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }
    [
        ("exp(x) i1", |p| CQuat::I1 * p.x.exp()),
        ("exp(x/2 - 3y/10) (1 + 2i i2)", |p| {
            CQuat::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 2.0), c(0.0, 0.0)) * (0.5 * p.x - 0.3 * p.y).exp()
        }),
        ("sin x cos(7y/10) i3 + x^2 y", |p| {
            CQuat::from_real([p.x * p.x * p.y, 0.0, 0.0, p.x.sin() * (0.7 * p.y).cos()])
        }),
        ("cos(x + y) (i1 - i i3) + exp(y) i2", |p| {
            let k = (p.x + p.y).cos();
            CQuat::new(c(0.0, 0.0), c(k, 0.0), c(p.y.exp(), 0.0), c(0.0, -k))
        }),
    ]
}

const TRIAL_POINTS: [Point2; 3] = [Point2::new(0.3, -0.2), Point2::new(-0.5, 0.4), Point2::new(0.1, 0.7)];

fn definition1(set: &ScenarioSet, builds: &[Built]) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::Definition1, set, tol::HYPERHOLOMORPHY);
    let hs = resolutions(&builds[0]);
    let mut res = [0.0f64; 2];
    let mut equiv: f64 = 0.0;
    for (alpha, b) in distinct_alphas(builds) {
        for (_, f) in trial_fields() {
            let field = move |p: Point2| Ok(f(p));
            for p in TRIAL_POINTS {
                let jet = PairJet::at(&field, p, b.fd.h, b.fd.stencil)?;
                let l = apply_at(&Operator::PerturbedLeft(alpha), &field, p, b.fd.h, b.fd.stencil)?;
                let r = apply_at(&Operator::PerturbedRight(alpha), &field, p, b.fd.h, b.fd.stencil)?;
                equiv = equiv.max((l - jet.perturbed_left(alpha).to_quat()).norm());
                equiv = equiv.max((r - jet.perturbed_right(alpha).to_quat()).norm());
            }
        }
    }
    for b in builds {
        d.scenario(&b.label);
        let a = b.ctx.alpha();
        let ev = CauchyEvaluator::new(&b.ctx, &b.curve, &b.density, &b.quad)?;
        let field = move |p: Point2| Ok(ev.eval(p)?.conj());
        let op = Operator::PerturbedRight(a);
        let pts = fd_points(b)?;
        for (k, &h) in resolutions(b).iter().enumerate() {
            FDGrid::with_clearance(h, b.fd.stencil, pts.clone(), &b.curve, &op)?;
            for &p in &pts {
                let q = apply_at(&op, &field, p, h, b.fd.stencil)?;
                res[k] = res[k].max(q.norm());
                let jet = PairJet::at(&field, p, h, b.fd.stencil)?;
                equiv = equiv.max((q - jet.perturbed_right(a).to_quat()).norm());
            }
        }
    }
    d.r.operator = Some("[alpha]_d = d_st + ^alpha M on the quaternionic conjugate of Phi_alpha[f]".into());
    d.r.resolutions = hs.to_vec();
    d.r.residuals = res.to_vec();
    d.part("pair_equivalence", equiv, tol::EQUIVALENCE);
    d.note("pair equivalence checked on four trial fields and on every conjugated Phi-field");
    Ok(d.finish(Claim::Definition1))
}

fn factorization_identities(alpha: Complex64) -> Vec<(String, Operator, Operator)> {
    use Operator as O;
    let helm = O::Helmholtz(alpha * alpha);
    let neg_comp = |a: O, b: O| O::negate(O::compose(a, b));
    vec![
        ("-d_a o d_-a".into(), neg_comp(O::PerturbedLeft(alpha), O::PerturbedLeft(-alpha)), helm.clone()),
        ("-d_-a o d_a".into(), neg_comp(O::PerturbedLeft(-alpha), O::PerturbedLeft(alpha)), helm.clone()),
        ("-a_d o -a_d".into(), neg_comp(O::PerturbedRight(alpha), O::PerturbedRight(-alpha)), helm.clone()),
        ("-(-a)_d o a_d".into(), neg_comp(O::PerturbedRight(-alpha), O::PerturbedRight(alpha)), helm),
    ]
}

fn laplace_identities() -> Vec<(String, Operator, Operator)> {
    use Operator as O;
    let c = O::compose;
    vec![
        ("d o dbar".into(), c(O::CauchyRiemann, O::CauchyRiemannBar), O::Laplacian),
        ("dbar o d".into(), c(O::CauchyRiemannBar, O::CauchyRiemann), O::Laplacian),
        ("d_st o dbar_st".into(), c(O::RightDirac, O::RightDiracBar), O::Laplacian),
        ("dbar_st o d_st".into(), c(O::RightDiracBar, O::RightDirac), O::Laplacian),
        ("st_d o st_dbar".into(), c(O::LeftDirac, O::LeftDiracBar), O::Laplacian),
        ("st_dbar o st_d".into(), c(O::LeftDiracBar, O::LeftDirac), O::Laplacian),
        ("st_d^2".into(), c(O::LeftDirac, O::LeftDirac), O::negate(O::Laplacian)),
        ("d_st^2".into(), c(O::RightDirac, O::RightDirac), O::negate(O::Laplacian)),
    ]
}

fn factorizations(set: &ScenarioSet, builds: &[Built]) -> Result<CheckReport> {
    let mut d = Draft::new(Claim::Factorizations, set, tol::FACTORIZATION);
    let hs = [1e-2, 5e-3];
    let mut identities = laplace_identities();
    for (alpha, b) in distinct_alphas(builds) {
        d.scenario(&b.label);
        identities.extend(factorization_identities(alpha));
    }
    let stencil = Stencil::ThreePoint;
    let mut res = [0.0f64; 2];
    let mut per: BTreeMap<String, f64> = BTreeMap::new();
    for (k, &h) in hs.iter().enumerate() {
        for (name, lhs, rhs) in &identities {
            for (_, f) in trial_fields() {
                let field = move |p: Point2| Ok(f(p));
                let grid = FDGrid::new(h, stencil, TRIAL_POINTS.to_vec())?;
                for &p in grid.points() {
                    let r = (apply_at(lhs, &field, p, h, stencil)? - apply_at(rhs, &field, p, h, stencil)?).norm();
                    res[k] = res[k].max(r);
                    if k == 1 {
                        let e = per.entry(name.clone()).or_insert(0.0);
                        *e = e.max(r);
                    }
                }
            }
        }
    }
    d.r.operator = Some(format!("{} identities on {} trial fields", identities.len(), trial_fields().len()));
    d.r.resolutions = hs.to_vec();
    d.r.residuals = res.to_vec();
    d.r.order_range = Some(tol::ORDER_RANGE);
    for (name, v) in per {
        d.diag(&format!("residual[{name}]"), v);
    }
    Ok(d.finish(Claim::Factorizations))
}
