//! Closed Jordan curves, boundary quadrature nodes and area cells.
//!
//! Every curve is positively oriented: walking along increasing parameter
//! keeps the bounded interior Ω⁺ on the left. Circles and ellipses use the
//! angle parameter on [0, 2π); polygons use arc length on [0, l(Γ)).

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::CQuat;

/// Half-width of the boundary band used by [`Curve::contains`].
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Gauss–Legendre order of the boundary panels.
pub const PANEL_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn polar(r: f64, angle: f64) -> Self {
        Point2::new(r * angle.cos(), r * angle.sin())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    /// x·i1 + y·i2
    pub fn to_quat(self) -> CQuat {
        CQuat::from_plane(self.x, self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(p: [f64; 2]) -> Self {
        Point2::new(p[0], p[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = x;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        xs[n - 1 - i] = x;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CurveKind {
    Circle { center: Point2, radius: f64 },
    Ellipse { center: Point2, semi_axes: [f64; 2] },
    Polygon { vertices: Vec<Point2> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Interior,
    Exterior,
    Boundary,
}

/// Discretized boundary element: ζ = γ(s) and σ = (dη, −dξ) scaled by the
/// quadrature weight, i.e. the outward normal times the arc-length weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryNode {
    pub point: Point2,
    pub sigma: [f64; 2],
    pub param: f64,
}

impl BoundaryNode {
    /// σ as the quaternion σ₁·i1 + σ₂·i2.
    pub fn sigma_quat(&self) -> CQuat {
        CQuat::from_plane(self.sigma[0], self.sigma[1])
    }

    /// |σ|, the arc-length weight.
    pub fn arc_weight(&self) -> f64 {
        self.sigma[0].hypot(self.sigma[1])
    }
}

/// One area quadrature cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaCell {
    pub point: Point2,
    pub weight: f64,
}

/// Nearest boundary point with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub point: Point2,
    pub param: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    kind: CurveKind,
    length: f64,
    /// Polygon only: arc-length position of each vertex, plus l(Γ) at the end.
    breaks: Vec<f64>,
}

/// Chordal deletion Γ_{t,δ} = {ζ ∈ Γ : |ζ − t| ≤ δ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeletedArc {
    pub t: Point2,
    pub delta: f64,
}

impl DeletedArc {
    /// δ = 0 deletes nothing (a single point carries no weight).
    pub fn retains(&self, p: Point2) -> bool {
        self.delta == 0.0 || p.dist(self.t) > self.delta
    }

    pub fn filter(&self, nodes: &[BoundaryNode]) -> Vec<BoundaryNode> {
        nodes.iter().copied().filter(|n| self.retains(n.point)).collect()
    }
}

fn check_point(p: Point2, what: &str) -> Result<()> {
    if p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidCurve(format!("{what} is not finite")))
    }
}

fn segments_cross(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let orient = |p: Point2, q: Point2, r: Point2| (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    let on_seg = |p: Point2, q: Point2, r: Point2| {
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_seg(c, d, a))
        || (d2 == 0.0 && on_seg(c, d, b))
        || (d3 == 0.0 && on_seg(a, b, c))
        || (d4 == 0.0 && on_seg(a, b, d))
}

impl Curve {
    pub fn circle(center: Point2, radius: f64) -> Result<Self> {
        Curve::from_kind(CurveKind::Circle { center, radius })
    }

    pub fn ellipse(center: Point2, a: f64, b: f64) -> Result<Self> {
        Curve::from_kind(CurveKind::Ellipse { center, semi_axes: [a, b] })
    }

    /// Builds a simple polygon; clockwise input is reversed.
    pub fn polygon(vertices: Vec<Point2>) -> Result<Self> {
        Curve::from_kind(CurveKind::Polygon { vertices })
    }

    pub fn unit_circle() -> Self {
        Curve::circle(Point2::ORIGIN, 1.0).expect("unit circle")
    }

    pub fn from_kind(kind: CurveKind) -> Result<Self> {
        match kind {
            CurveKind::Circle { center, radius } => {
                check_point(center, "circle center")?;
                if !(radius > 0.0 && radius.is_finite()) {
                    return Err(Error::InvalidCurve(format!("circle radius must be positive, got {radius}")));
                }
                Ok(Curve { length: TAU * radius, kind, breaks: Vec::new() })
            }
            CurveKind::Ellipse { center, semi_axes: [a, b] } => {
                check_point(center, "ellipse center")?;
                if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
                    return Err(Error::InvalidCurve(format!("ellipse semi-axes must be positive, got [{a}, {b}]")));
                }
                let mut c = Curve { length: 0.0, kind, breaks: Vec::new() };
                c.length = c.ellipse_length(a, b);
                Ok(c)
            }
            CurveKind::Polygon { mut vertices } => {
                if vertices.len() < 3 {
                    return Err(Error::InvalidCurve(format!("polygon needs at least 3 vertices, got {}", vertices.len())));
                }
                for v in &vertices {
                    check_point(*v, "polygon vertex")?;
                }
                let n = vertices.len();
                for i in 0..n {
                    if vertices[i] == vertices[(i + 1) % n] {
                        return Err(Error::InvalidCurve(format!("repeated polygon vertex at index {i}")));
                    }
                }
                for i in 0..n {
                    for j in i + 1..n {
                        if j == i + 1 || (i == 0 && j == n - 1) {
                            continue;
                        }
                        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                        let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                        if segments_cross(a, b, c, d) {
                            return Err(Error::InvalidCurve(format!("polygon edges {i} and {j} intersect")));
                        }
                    }
                }
                let signed: f64 = (0..n)
                    .map(|i| {
                        let (p, q) = (vertices[i], vertices[(i + 1) % n]);
                        p.x * q.y - q.x * p.y
                    })
                    .sum();
                if signed == 0.0 {
                    return Err(Error::InvalidCurve("polygon has zero area".into()));
                }
                if signed < 0.0 {
                    vertices.reverse();
                }
                let mut breaks = Vec::with_capacity(n + 1);
                let mut acc = 0.0;
                breaks.push(0.0);
                for i in 0..n {
                    acc += vertices[i].dist(vertices[(i + 1) % n]);
                    breaks.push(acc);
                }
                Ok(Curve { length: acc, kind: CurveKind::Polygon { vertices }, breaks })
            }
        }
    }

    fn ellipse_length(&self, a: f64, b: f64) -> f64 {
        // Trapezoid in the angle is spectrally accurate for the periodic speed.
        let n = 4096;
        let h = TAU / n as f64;
        (0..n)
            .map(|k| {
                let s = k as f64 * h;
                (a * s.sin()).hypot(b * s.cos())
            })
            .sum::<f64>()
            * h
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn is_smooth(&self) -> bool {
        !matches!(self.kind, CurveKind::Polygon { .. })
    }

    /// l(Γ)
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Parameter period: 2π for smooth kinds, l(Γ) for polygons.
    pub fn period(&self) -> f64 {
        match self.kind {
            CurveKind::Polygon { .. } => self.length,
            _ => TAU,
        }
    }

    /// Polygon vertex parameters in [0, period); empty for smooth kinds.
    pub fn corners(&self) -> &[f64] {
        if self.breaks.is_empty() {
            &[]
        } else {
            &self.breaks[..self.breaks.len() - 1]
        }
    }

    /// Upper bound on |γ'(s)|.
    pub fn max_speed(&self) -> f64 {
        match self.kind {
            CurveKind::Circle { radius, .. } => radius,
            CurveKind::Ellipse { semi_axes: [a, b], .. } => a.max(b),
            CurveKind::Polygon { .. } => 1.0,
        }
    }

    fn wrap(&self, s: f64) -> f64 {
        let p = self.period();
        let w = s.rem_euclid(p);
        if w >= p {
            0.0
        } else {
            w
        }
    }

    fn edge_at(&self, s: f64) -> (usize, f64) {
        let s = self.wrap(s);
        let n = self.breaks.len() - 1;
        let e = match self.breaks.binary_search_by(|b| b.partial_cmp(&s).unwrap()) {
            Ok(i) => i.min(n - 1),
            Err(i) => i - 1,
        };
        (e, s - self.breaks[e])
    }

    /// γ(s)
    pub fn point(&self, s: f64) -> Point2 {
        match &self.kind {
            CurveKind::Circle { center, radius } => *center + Point2::polar(*radius, s),
            CurveKind::Ellipse { center, semi_axes: [a, b] } => *center + Point2::new(a * s.cos(), b * s.sin()),
            CurveKind::Polygon { vertices } => {
                let (e, off) = self.edge_at(s);
                let p = vertices[e];
                let q = vertices[(e + 1) % vertices.len()];
                let len = self.breaks[e + 1] - self.breaks[e];
                p + (q - p) * (off / len)
            }
        }
    }

    /// γ'(s); on a polygon corner, the derivative of the edge that starts there.
    pub fn derivative(&self, s: f64) -> Point2 {
        match &self.kind {
            CurveKind::Circle { radius, .. } => Point2::new(-radius * s.sin(), radius * s.cos()),
            CurveKind::Ellipse { semi_axes: [a, b], .. } => Point2::new(-a * s.sin(), b * s.cos()),
            CurveKind::Polygon { vertices } => {
                let (e, _) = self.edge_at(s);
                let p = vertices[e];
                let q = vertices[(e + 1) % vertices.len()];
                (q - p) * (1.0 / (self.breaks[e + 1] - self.breaks[e]))
            }
        }
    }

    fn second_derivative(&self, s: f64) -> Point2 {
        match &self.kind {
            CurveKind::Circle { radius, .. } => Point2::polar(-radius, s),
            CurveKind::Ellipse { semi_axes: [a, b], .. } => Point2::new(-a * s.cos(), -b * s.sin()),
            CurveKind::Polygon { .. } => Point2::ORIGIN,
        }
    }

    /// Unit outward normal at γ(s).
    pub fn outward_normal(&self, s: f64) -> Point2 {
        let d = self.derivative(s);
        Point2::new(d.y, -d.x) * (1.0 / d.norm())
    }

    fn node_at(&self, s: f64, w: f64) -> BoundaryNode {
        let d = self.derivative(s);
        BoundaryNode { point: self.point(s), sigma: [d.y * w, -d.x * w], param: s }
    }

    /// Quadrature nodes for ∮_Γ: trapezoid in the parameter for smooth
    /// kinds, Gauss–Legendre panels per edge for polygons.
    pub fn nodes(&self, n: usize) -> Result<Vec<BoundaryNode>> {
        if n < 8 {
            return Err(Error::TooFewNodes { min: 8, got: n });
        }
        match &self.kind {
            CurveKind::Polygon { .. } => {
                let mut out = Vec::with_capacity(n + PANEL_ORDER * self.corners().len());
                for e in 0..self.corners().len() {
                    let (a, b) = (self.breaks[e], self.breaks[e + 1]);
                    let share = n as f64 * (b - a) / self.length;
                    let panels = ((share / PANEL_ORDER as f64).ceil() as usize).max(1);
                    let h = (b - a) / panels as f64;
                    for k in 0..panels {
                        self.push_panel(a + k as f64 * h, a + (k + 1) as f64 * h, &mut out);
                    }
                }
                Ok(out)
            }
            _ => {
                let h = TAU / n as f64;
                Ok((0..n).map(|k| self.node_at(k as f64 * h, h)).collect())
            }
        }
    }

    fn push_panel(&self, a: f64, b: f64, out: &mut Vec<BoundaryNode>) {
        let (xs, ws) = panel_rule();
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for (x, w) in xs.iter().zip(ws) {
            out.push(self.node_at(mid + half * x, half * w));
        }
    }

    /// Gauss–Legendre panels on the parameter interval [s0, s1] (unwrapped,
    /// s1 − s0 ≤ period), refined geometrically towards `target` until each
    /// panel is no longer than its distance to the target.
    pub fn graded_nodes(&self, target: Point2, s0: f64, s1: f64) -> Vec<BoundaryNode> {
        let mut cuts = vec![s0];
        let p = self.period();
        for &c in self.corners() {
            let mut c = c;
            while c <= s0 {
                c += p;
            }
            while c < s1 {
                cuts.push(c);
                c += p;
            }
        }
        cuts.push(s1);
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let base = p / 16.0;
        let mut out = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a <= 0.0 {
                continue;
            }
            let k = ((b - a) / base).ceil().max(1.0) as usize;
            let h = (b - a) / k as f64;
            for j in 0..k {
                self.refine(target, a + j as f64 * h, a + (j + 1) as f64 * h, 0, &mut out);
            }
        }
        out
    }

    fn refine(&self, target: Point2, a: f64, b: f64, depth: u32, out: &mut Vec<BoundaryNode>) {
        let m = 0.5 * (a + b);
        let len = (b - a) * self.max_speed();
        let d = self
            .point(a)
            .dist(target)
            .min(self.point(m).dist(target))
            .min(self.point(b).dist(target));
        if len > d && depth < 60 {
            self.refine(target, a, m, depth + 1, out);
            self.refine(target, m, b, depth + 1, out);
        } else {
            self.push_panel(a, b, out);
        }
    }

    /// Nearest boundary point; for the circle center the tie is broken at
    /// parameter 0.
    pub fn nearest(&self, z: Point2) -> CurvePoint {
        match &self.kind {
            CurveKind::Circle { center, .. } => {
                let d = z - *center;
                let s = if d.x == 0.0 && d.y == 0.0 { 0.0 } else { self.wrap(d.y.atan2(d.x)) };
                CurvePoint { point: self.point(s), param: s }
            }
            CurveKind::Ellipse { .. } => {
                let samples = 64;
                let mut best = (f64::INFINITY, 0.0);
                for k in 0..samples {
                    let s = TAU * k as f64 / samples as f64;
                    let d = self.point(s).dist(z);
                    if d < best.0 {
                        best = (d, s);
                    }
                }
                let mut s = best.1;
                let step = TAU / samples as f64;
                for _ in 0..50 {
                    let r = self.point(s) - z;
                    let d1 = self.derivative(s);
                    let g = r.dot(d1);
                    let dg = d1.norm_sqr() + r.dot(self.second_derivative(s));
                    if dg <= 0.0 {
                        break;
                    }
                    let ds = (g / dg).clamp(-step, step);
                    s -= ds;
                    if ds.abs() < 1e-15 {
                        break;
                    }
                }
                let s = self.wrap(s);
                let cand = CurvePoint { point: self.point(s), param: s };
                if cand.point.dist(z) <= best.0 {
                    cand
                } else {
                    CurvePoint { point: self.point(best.1), param: best.1 }
                }
            }
            CurveKind::Polygon { vertices } => {
                let n = vertices.len();
                let mut best = (f64::INFINITY, CurvePoint { point: vertices[0], param: 0.0 });
                for e in 0..n {
                    let (p, q) = (vertices[e], vertices[(e + 1) % n]);
                    let len = self.breaks[e + 1] - self.breaks[e];
                    let u = ((z - p).dot(q - p) / (len * len)).clamp(0.0, 1.0);
                    let c = p + (q - p) * u;
                    let d = c.dist(z);
                    if d < best.0 {
                        best = (d, CurvePoint { point: c, param: self.wrap(self.breaks[e] + u * len) });
                    }
                }
                best.1
            }
        }
    }

    pub fn nearest_on_curve(&self, z: Point2) -> Point2 {
        self.nearest(z).point
    }

    /// dist(z, Γ)
    pub fn distance(&self, z: Point2) -> f64 {
        match &self.kind {
            CurveKind::Circle { center, radius } => (z.dist(*center) - radius).abs(),
            _ => self.nearest(z).point.dist(z),
        }
    }

    /// d(z) = max over ζ ∈ Γ of |ζ − z|.
    pub fn max_distance(&self, z: Point2) -> f64 {
        match &self.kind {
            CurveKind::Circle { center, radius } => z.dist(*center) + radius,
            CurveKind::Polygon { vertices } => vertices.iter().map(|v| v.dist(z)).fold(0.0, f64::max),
            CurveKind::Ellipse { .. } => {
                let n = 4096;
                let mut best = (0.0, 0.0);
                for k in 0..n {
                    let s = TAU * k as f64 / n as f64;
                    let d = self.point(s).dist(z);
                    if d > best.0 {
                        best = (d, s);
                    }
                }
                // golden-section polish around the best sample
                let (mut lo, mut hi) = (best.1 - TAU / n as f64, best.1 + TAU / n as f64);
                let g = 0.5 * (5f64.sqrt() - 1.0);
                for _ in 0..60 {
                    let m1 = hi - g * (hi - lo);
                    let m2 = lo + g * (hi - lo);
                    if self.point(m1).dist(z) > self.point(m2).dist(z) {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                best.0.max(self.point(0.5 * (lo + hi)).dist(z))
            }
        }
    }

    /// diam(Γ)
    pub fn diameter(&self) -> f64 {
        match &self.kind {
            CurveKind::Circle { radius, .. } => 2.0 * radius,
            CurveKind::Ellipse { semi_axes: [a, b], .. } => 2.0 * a.max(*b),
            CurveKind::Polygon { vertices } => {
                let mut d: f64 = 0.0;
                for (i, p) in vertices.iter().enumerate() {
                    for q in &vertices[i + 1..] {
                        d = d.max(p.dist(*q));
                    }
                }
                d
            }
        }
    }

    /// [xmin, xmax, ymin, ymax]
    pub fn bounding_box(&self) -> [f64; 4] {
        match &self.kind {
            CurveKind::Circle { center, radius } => {
                [center.x - radius, center.x + radius, center.y - radius, center.y + radius]
            }
            CurveKind::Ellipse { center, semi_axes: [a, b] } => [center.x - a, center.x + a, center.y - b, center.y + b],
            CurveKind::Polygon { vertices } => {
                let mut bb = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
                for v in vertices {
                    bb[0] = bb[0].min(v.x);
                    bb[1] = bb[1].max(v.x);
                    bb[2] = bb[2].min(v.y);
                    bb[3] = bb[3].max(v.y);
                }
                bb
            }
        }
    }

    /// Exact enclosed area.
    pub fn area(&self) -> f64 {
        match &self.kind {
            CurveKind::Circle { radius, .. } => PI * radius * radius,
            CurveKind::Ellipse { semi_axes: [a, b], .. } => PI * a * b,
            CurveKind::Polygon { vertices } => {
                let n = vertices.len();
                0.5 * (0..n)
                    .map(|i| {
                        let (p, q) = (vertices[i], vertices[(i + 1) % n]);
                        p.x * q.y - q.x * p.y
                    })
                    .sum::<f64>()
            }
        }
    }

    pub fn contains(&self, z: Point2) -> Region {
        self.contains_with_tol(z, BOUNDARY_TOL)
    }

    pub fn contains_with_tol(&self, z: Point2, tol: f64) -> Region {
        if self.distance(z) <= tol {
            return Region::Boundary;
        }
        let inside = match &self.kind {
            CurveKind::Circle { center, radius } => z.dist(*center) < *radius,
            CurveKind::Ellipse { center, semi_axes: [a, b] } => {
                let d = z - *center;
                (d.x / a).powi(2) + (d.y / b).powi(2) < 1.0
            }
            CurveKind::Polygon { vertices } => {
                let n = vertices.len();
                let mut inside = false;
                for i in 0..n {
                    let (p, q) = (vertices[i], vertices[(i + 1) % n]);
                    if (p.y > z.y) != (q.y > z.y) {
                        let xc = p.x + (z.y - p.y) * (q.x - p.x) / (q.y - p.y);
                        if z.x < xc {
                            inside = !inside;
                        }
                    }
                }
                inside
            }
        };
        if inside {
            Region::Interior
        } else {
            Region::Exterior
        }
    }

    /// Requires `t` on Γ and 0 ≤ δ ≤ diam(Γ).
    pub fn deleted_arc(&self, t: Point2, delta: f64) -> Result<DeletedArc> {
        if self.distance(t) > BOUNDARY_TOL {
            return Err(Error::NotOnCurve { x: t.x, y: t.y });
        }
        if !(delta >= 0.0 && delta <= self.diameter() * (1.0 + 1e-12)) {
            return Err(Error::InvalidDelta(delta));
        }
        Ok(DeletedArc { t, delta })
    }

    /// Parameter interval [s_t + b, s_t + P − a] of Γ ∖ Γ_{t,δ} for t = γ(s_t),
    /// where b and a are the first forward and backward chordal exits from the
    /// δ-disk. `None` when the whole curve lies in the disk.
    pub fn remaining_interval(&self, s_t: f64, delta: f64) -> Option<(f64, f64)> {
        let p = self.period();
        if delta <= 0.0 {
            return Some((s_t, s_t + p));
        }
        let t = self.point(s_t);
        let exit = |dir: f64| -> Option<f64> {
            let step = delta / (2.0 * self.max_speed());
            let mut lo = 0.0;
            let mut hi = step;
            loop {
                if hi >= p {
                    if self.point(s_t + dir * p * 0.999_999_999).dist(t) <= delta {
                        return None;
                    }
                    hi = p;
                }
                if self.point(s_t + dir * hi).dist(t) > delta {
                    break;
                }
                lo = hi;
                hi += step;
            }
            for _ in 0..200 {
                let m = 0.5 * (lo + hi);
                if m <= lo || m >= hi {
                    break;
                }
                if self.point(s_t + dir * m).dist(t) > delta {
                    hi = m;
                } else {
                    lo = m;
                }
            }
            Some(hi)
        };
        let b = exit(1.0)?;
        let a = exit(-1.0)?;
        if a + b >= p {
            return None;
        }
        Some((s_t + b, s_t + p - a))
    }

    /// Midpoint cells covering Ω⁺ on an m×m bounding grid. Cells cut by Γ or
    /// by the exclusion circle are subsampled 8×8; inside the exclusion disk a
    /// polar patch with radii ρ(j/32)², j = 0..32, and 32 angular sectors takes
    /// over.
    pub fn area_cells(&self, m: usize, exclude: Option<(Point2, f64)>) -> Result<Vec<AreaCell>> {
        self.area_cells_graded(m, exclude, 2.0)
    }

    /// As [`Curve::area_cells`] with patch radii ρ(j/32)^g.
    pub fn area_cells_graded(&self, m: usize, exclude: Option<(Point2, f64)>, g: f64) -> Result<Vec<AreaCell>> {
        if m < 16 {
            return Err(Error::ResolutionTooSmall { min: 16, got: m });
        }
        let exclude = exclude.filter(|&(_, r)| r > 0.0);
        let [x0, x1, y0, y1] = self.bounding_box();
        let (hx, hy) = ((x1 - x0) / m as f64, (y1 - y0) / m as f64);
        let half_diag = 0.5 * hx.hypot(hy);
        const SUB: usize = 8;
        let in_disk = |p: Point2| exclude.is_some_and(|(c, r)| p.dist(c) < r);
        let mut cells = Vec::new();
        for j in 0..m {
            for i in 0..m {
                let c = Point2::new(x0 + (i as f64 + 0.5) * hx, y0 + (j as f64 + 0.5) * hy);
                let mut mixed = false;
                if let Some((ct, r)) = exclude {
                    let dx = (ct.x - c.x).abs() - 0.5 * hx;
                    let dy = (ct.y - c.y).abs() - 0.5 * hy;
                    let near = dx.max(0.0).hypot(dy.max(0.0));
                    let far = (dx + hx).hypot(dy + hy);
                    if far < r {
                        continue;
                    }
                    mixed = near < r;
                }
                if !mixed && self.distance(c) > half_diag {
                    if self.contains(c) == Region::Interior {
                        cells.push(AreaCell { point: c, weight: hx * hy });
                    }
                    continue;
                }
                let w = hx * hy / (SUB * SUB) as f64;
                for b in 0..SUB {
                    for a in 0..SUB {
                        let p = Point2::new(
                            c.x - 0.5 * hx + (a as f64 + 0.5) * hx / SUB as f64,
                            c.y - 0.5 * hy + (b as f64 + 0.5) * hy / SUB as f64,
                        );
                        if !in_disk(p) && self.contains(p) == Region::Interior {
                            cells.push(AreaCell { point: p, weight: w });
                        }
                    }
                }
            }
        }
        if let Some((ct, rho)) = exclude {
            const RAD: usize = 32;
            const ANG: usize = 32;
            let offset = if self.distance(ct) < rho {
                let d = self.derivative(self.nearest(ct).param);
                d.y.atan2(d.x)
            } else {
                0.0
            };
            let dth = TAU / ANG as f64;
            for j in 0..RAD {
                let r0 = rho * (j as f64 / RAD as f64).powf(g);
                let r1 = rho * ((j + 1) as f64 / RAD as f64).powf(g);
                let rm = 0.5 * (r0 + r1);
                let w = 0.5 * (r1 * r1 - r0 * r0) * dth;
                for k in 0..ANG {
                    let p = ct + Point2::polar(rm, offset + (k as f64 + 0.5) * dth);
                    if self.contains(p) == Region::Interior {
                        cells.push(AreaCell { point: p, weight: w });
                    }
                }
            }
        }
        Ok(cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Curve {
        Curve::polygon(vec![
            Point2::new(-1.0, -1.0),
            Point2::new(1.0, -1.0),
            Point2::new(1.0, 1.0),
            Point2::new(-1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(16);
        let sum: f64 = w.iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
        let m30: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((m30 - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn circle_basics() {
        let c = Curve::unit_circle();
        assert!((c.length() - TAU).abs() < 1e-12);
        let nodes = c.nodes(256).unwrap();
        assert_eq!(nodes[0].point, Point2::new(1.0, 0.0));
        assert!(nodes[0].sigma[0] > 0.0 && nodes[0].sigma[1] == 0.0);
        let s0: f64 = nodes.iter().map(|n| n.sigma[0]).sum();
        let s1: f64 = nodes.iter().map(|n| n.sigma[1]).sum();
        assert!(s0.abs() < 1e-14 && s1.abs() < 1e-14);
        assert!(c.nodes(7).is_err());
    }

    #[test]
    fn square_nodes() {
        let sq = square();
        let nodes = sq.nodes(64).unwrap();
        let len: f64 = nodes.iter().map(|n| n.arc_weight()).sum();
        assert!((len - 8.0).abs() < 1e-12);
        for n in &nodes {
            assert!(sq.corners().iter().all(|&c| (n.param - c).abs() > 1e-6));
        }
        // signed area ½∮ ζ·ν ds is positive
        let area: f64 = nodes.iter().map(|n| 0.5 * (n.point.x * n.sigma[0] + n.point.y * n.sigma[1])).sum();
        assert!((area - 4.0).abs() < 1e-12);
    }

    #[test]
    fn clockwise_polygon_is_reoriented() {
        let cw = Curve::polygon(vec![
            Point2::new(-1.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, -1.0),
            Point2::new(-1.0, -1.0),
        ])
        .unwrap();
        assert!(cw.area() > 0.0);
        let bowtie = Curve::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ]);
        assert!(matches!(bowtie, Err(Error::InvalidCurve(_))));
    }

    #[test]
    fn containment() {
        let c = Curve::unit_circle();
        assert_eq!(c.contains(Point2::new(0.0, 0.0)), Region::Interior);
        assert_eq!(c.contains(Point2::new(2.0, 0.0)), Region::Exterior);
        assert_eq!(c.contains(Point2::new(1.0, 0.0)), Region::Boundary);
        let sq = square();
        assert_eq!(sq.contains(Point2::new(0.5, 0.9)), Region::Interior);
        assert_eq!(sq.contains(Point2::new(1.5, 0.0)), Region::Exterior);
        assert_eq!(sq.contains(Point2::new(1.0, 0.3)), Region::Boundary);
        let e = Curve::ellipse(Point2::ORIGIN, 2.0, 1.0).unwrap();
        assert_eq!(e.contains(Point2::new(1.9, 0.0)), Region::Interior);
        assert_eq!(e.contains(Point2::new(0.0, 1.1)), Region::Exterior);
    }

    #[test]
    fn deleted_arcs() {
        let c = Curve::unit_circle();
        let nodes = c.nodes(256).unwrap();
        let t = Point2::new(1.0, 0.0);
        assert_eq!(c.deleted_arc(t, 0.0).unwrap().filter(&nodes).len(), 256);
        assert!(c.deleted_arc(t, 2.0).unwrap().filter(&nodes).is_empty());
        let half = c.deleted_arc(t, 2f64.sqrt()).unwrap().filter(&nodes);
        assert!(half.iter().all(|n| n.point.x < 0.0));
        let left = nodes.iter().filter(|n| n.point.x < -1e-12).count();
        assert_eq!(half.len(), left);
        assert!(c.deleted_arc(Point2::new(0.5, 0.0), 0.1).is_err());
        assert!(c.deleted_arc(t, 2.5).is_err());
    }

    #[test]
    fn remaining_interval_matches_chord() {
        let c = Curve::unit_circle();
        let (a, b) = c.remaining_interval(0.0, 2f64.sqrt()).unwrap();
        assert!((a - PI / 2.0).abs() < 1e-12 && (b - 3.0 * PI / 2.0).abs() < 1e-12);
        assert!(c.remaining_interval(0.0, 2.0).is_none());
        let sq = square();
        let (a, b) = sq.remaining_interval(1.0, 0.5).unwrap();
        assert!((a - 1.5).abs() < 1e-12 && (b - 8.5).abs() < 1e-12);
    }

    #[test]
    fn nearest_points() {
        let c = Curve::unit_circle();
        assert_eq!(c.nearest_on_curve(Point2::new(0.5, 0.0)), Point2::new(1.0, 0.0));
        assert_eq!(c.nearest_on_curve(Point2::ORIGIN), Point2::new(1.0, 0.0));
        assert_eq!(square().nearest_on_curve(Point2::new(2.0, 0.0)), Point2::new(1.0, 0.0));
        let e = Curve::ellipse(Point2::new(0.1, -0.2), 1.5, 0.7).unwrap();
        let nodes = e.nodes(512).unwrap();
        for z in [Point2::new(0.3, 0.1), Point2::new(2.0, 1.5), Point2::new(-1.0, -0.4)] {
            let best = e.nearest_on_curve(z).dist(z);
            assert!(nodes.iter().all(|n| best <= n.point.dist(z) + 1e-14));
        }
    }

    #[test]
    fn area_cells_sum_to_area() {
        let c = Curve::unit_circle();
        let total: f64 = c.area_cells(512, None).unwrap().iter().map(|c| c.weight).sum();
        assert!((total - PI).abs() < 3e-3);
        let total: f64 = square().area_cells(128, None).unwrap().iter().map(|c| c.weight).sum();
        assert!((total - 4.0).abs() < 1e-12);
        let a = c.area_cells(64, None).unwrap();
        let b = c.area_cells(64, Some((Point2::new(0.2, 0.0), 0.0))).unwrap();
        assert_eq!(a, b);
        let with_patch: f64 = c
            .area_cells(128, Some((Point2::new(0.2, 0.1), 0.1)))
            .unwrap()
            .iter()
            .map(|c| c.weight)
            .sum();
        assert!((with_patch - PI).abs() < 3e-3);
        assert!(c.area_cells(8, None).is_err());
    }

    #[test]
    fn graded_nodes_integrate_length() {
        let c = Curve::unit_circle();
        let target = Point2::new(1.0 - 1e-4, 0.0);
        let nodes = c.graded_nodes(target, 0.0, TAU);
        let len: f64 = nodes.iter().map(|n| n.arc_weight()).sum();
        assert!((len - TAU).abs() < 1e-12);
        let sq = square();
        let nodes = sq.graded_nodes(Point2::new(1.0, 1.0 - 1e-3), 0.0, 8.0);
        let len: f64 = nodes.iter().map(|n| n.arc_weight()).sum();
        assert!((len - 8.0).abs() < 1e-12);
    }
}
