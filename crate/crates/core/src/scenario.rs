//! JSON scenario descriptions: α, curve, density, quadrature and
//! finite-difference settings, plus optional grid and output paths.
//!
//! ```json
//! {
//!   "name": "circle-fourier",
//!   "alpha": { "re": 1.0, "im": 0.0 },
//!   "curve": { "kind": "circle", "center": [0.0, 0.0], "radius": 1.0 },
//!   "density": { "kind": "fourier", "k": 1 },
//!   "quad": { "boundary_nodes": 1024 },
//!   "grid": { "x": [-2.0, 2.0], "y": [-2.0, 2.0], "resolution": 41 }
//! }
//! ```

use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::Density;
use crate::error::{Error, Result};
use crate::geometry::{Curve, CurveKind, Point2};
use crate::kernel::KernelCtx;
use crate::potential::QuadSpec;
use crate::quat::CQuat;
use crate::verify::Stencil;

/// Largest admissible |α|·(distance) for the series-based Hankel functions.
pub const SERIES_LIMIT: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaSpec {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl AlphaSpec {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl From<Complex64> for AlphaSpec {
    fn from(a: Complex64) -> Self {
        AlphaSpec { re: a.re, im: a.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensitySpec {
    Constant {
        value: CQuat,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        holder: Option<f64>,
    },
    Fourier {
        k: i32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        holder: Option<f64>,
    },
    ScalarFourier {
        k: i32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        holder: Option<f64>,
    },
    Coordinate {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        holder: Option<f64>,
    },
    Expr {
        text: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        holder: Option<f64>,
    },
}

impl DensitySpec {
    pub fn build(&self) -> Result<Density> {
        let (d, holder) = match self {
            DensitySpec::Constant { value, holder } => (Density::constant(*value), holder),
            DensitySpec::Fourier { k, holder } => (Density::fourier(*k), holder),
            DensitySpec::ScalarFourier { k, holder } => (Density::scalar_fourier(*k), holder),
            DensitySpec::Coordinate { holder } => (Density::coordinate(), holder),
            DensitySpec::Expr { text, holder } => (Density::parse(text)?, holder),
        };
        match holder {
            Some(mu) => d.with_holder_hint(*mu),
            None => Ok(d),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FdSpec {
    pub h: f64,
    pub stencil: Stencil,
    /// Minimum distance of FD sample points from Γ.
    pub clearance: f64,
}

impl Default for FdSpec {
    fn default() -> Self {
        FdSpec { h: 1e-3, stencil: Stencil::ThreePoint, clearance: 0.3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub resolution: usize,
}

impl GridSpec {
    /// Row-major points, y outer and x inner, both ascending.
    pub fn points(&self) -> Vec<Point2> {
        let n = self.resolution;
        let coord = |r: [f64; 2], k: usize| {
            if n == 1 {
                0.5 * (r[0] + r[1])
            } else {
                r[0] + (r[1] - r[0]) * k as f64 / (n - 1) as f64
            }
        };
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                out.push(Point2::new(coord(self.x, i), coord(self.y, j)));
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let ok = |r: [f64; 2]| r[0].is_finite() && r[1].is_finite() && r[0] <= r[1];
        if !ok(self.x) || !ok(self.y) {
            return Err(Error::InvalidScenario("grid ranges must be finite with lo <= hi".into()));
        }
        if self.resolution == 0 || self.resolution > 4096 {
            return Err(Error::InvalidScenario(format!(
                "grid resolution must lie in [1, 4096], got {}",
                self.resolution
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_csv: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jump_json: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub alpha: AlphaSpec,
    pub curve: CurveKind,
    pub density: DensitySpec,
    #[serde(default)]
    pub quad: QuadSpec,
    #[serde(default)]
    pub fd: FdSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

/// A validated scenario with its runtime objects.
#[derive(Debug, Clone)]
pub struct Built {
    pub label: String,
    pub ctx: KernelCtx,
    pub curve: Curve,
    pub density: Density,
    pub quad: QuadSpec,
    pub fd: FdSpec,
}

fn alpha_label(a: Complex64) -> String {
    if a.im == 0.0 {
        format!("{}", a.re)
    } else {
        format!("{}{:+}i", a.re, a.im)
    }
}

impl Scenario {
    pub fn new(alpha: Complex64, curve: CurveKind, density: DensitySpec) -> Self {
        Scenario {
            name: None,
            alpha: alpha.into(),
            curve,
            density,
            quad: QuadSpec::default(),
            fd: FdSpec::default(),
            grid: None,
            output: OutputSpec::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidScenario(e.to_string()))
    }

    /// Validates every part and builds the runtime objects.
    pub fn build(&self) -> Result<Built> {
        let alpha = self.alpha.value();
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(Error::InvalidScenario("alpha must be finite".into()));
        }
        let curve = Curve::from_kind(self.curve.clone())?;
        let reach = alpha.norm() * curve.diameter();
        if reach > SERIES_LIMIT {
            return Err(Error::InvalidScenario(format!(
                "|alpha|*diam = {reach:.3} exceeds {SERIES_LIMIT}: the Hankel series is only reliable for |t| <= {SERIES_LIMIT}; \
                 reduce |alpha| or the curve size"
            )));
        }
        if let Some(g) = &self.grid {
            g.validate()?;
            let corners = [
                Point2::new(g.x[0], g.y[0]),
                Point2::new(g.x[0], g.y[1]),
                Point2::new(g.x[1], g.y[0]),
                Point2::new(g.x[1], g.y[1]),
            ];
            let far = corners.iter().map(|c| curve.max_distance(*c)).fold(0.0, f64::max);
            if alpha.norm() * far > SERIES_LIMIT {
                return Err(Error::InvalidScenario(format!(
                    "grid reaches |alpha|*distance = {:.3} > {SERIES_LIMIT}; shrink the grid window",
                    alpha.norm() * far
                )));
            }
        }
        self.quad.validate()?;
        if !(self.fd.h > 0.0 && self.fd.h.is_finite()) {
            return Err(Error::InvalidScenario(format!("fd.h must be positive, got {}", self.fd.h)));
        }
        let density = self.density.build()?;
        Ok(Built {
            label: self.label(&density),
            ctx: KernelCtx::new(alpha),
            curve,
            density,
            quad: self.quad.clone(),
            fd: self.fd,
        })
    }

    fn label(&self, density: &Density) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        let curve = match &self.curve {
            CurveKind::Circle { .. } => "circle",
            CurveKind::Ellipse { .. } => "ellipse",
            CurveKind::Polygon { .. } => "polygon",
        };
        format!("{curve}/alpha={}/{}", alpha_label(self.alpha.value()), density.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSet {
    pub scenarios: Vec<Scenario>,
}

impl ScenarioSet {
    /// Accepts `{"scenarios": [...]}` or a single scenario object.
    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::InvalidScenario(e.to_string()))?;
        let is_set = parsed.get("scenarios").is_some();
        let set = if is_set {
            serde_json::from_value::<ScenarioSet>(parsed)
        } else {
            serde_json::from_value::<Scenario>(parsed).map(|s| ScenarioSet { scenarios: vec![s] })
        };
        let set = set.map_err(|e| Error::InvalidScenario(e.to_string()))?;
        if set.scenarios.is_empty() {
            return Err(Error::InvalidScenario("scenario set is empty".into()));
        }
        Ok(set)
    }

    /// Unit circle × α ∈ {0, 1, 1+0.5i, −2} × densities {1, fourier(1), coordinate}.
    pub fn reference() -> Self {
        let circle = CurveKind::Circle { center: Point2::ORIGIN, radius: 1.0 };
        let mut scenarios = Vec::new();
        for alpha in [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.5),
            Complex64::new(-2.0, 0.0),
        ] {
            for density in [
                DensitySpec::Constant { value: CQuat::ONE, holder: None },
                DensitySpec::Fourier { k: 1, holder: Some(1.0) },
                DensitySpec::Coordinate { holder: Some(1.0) },
            ] {
                scenarios.push(Scenario::new(alpha, circle.clone(), density));
            }
        }
        ScenarioSet { scenarios }
    }

    pub fn build(&self) -> Result<Vec<Built>> {
        self.scenarios.iter().map(Scenario::build).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let s = Scenario::from_json(
            r#"{
              "name": "circle-fourier",
              "alpha": { "re": 1.0, "im": 0.0 },
              "curve": { "kind": "circle", "center": [0.0, 0.0], "radius": 1.0 },
              "density": { "kind": "fourier", "k": 1 },
              "quad": { "boundary_nodes": 512 },
              "grid": { "x": [-2.0, 2.0], "y": [-2.0, 2.0], "resolution": 5 }
            }"#,
        )
        .unwrap();
        let b = s.build().unwrap();
        assert_eq!(b.label, "circle-fourier");
        assert_eq!(b.quad.boundary_nodes, 512);
        assert_eq!(b.quad.area_resolution, 256);
        assert_eq!(s.grid.unwrap().points().len(), 25);
    }

    #[test]
    fn rejects_large_alpha_and_unknown_fields() {
        let mut s = Scenario::new(
            Complex64::new(5.0, 0.0),
            CurveKind::Circle { center: Point2::ORIGIN, radius: 1.0 },
            DensitySpec::Coordinate { holder: None },
        );
        assert!(matches!(s.build(), Err(Error::InvalidScenario(_))));
        s.alpha = AlphaSpec { re: 4.0, im: 0.0 };
        assert!(s.build().is_ok());
        let bad = r#"{"alpha": {"re": 1}, "curve": {"kind": "circle", "center": [0,0], "radius": 1},
                      "density": {"kind": "coordinate"}, "colour": 3}"#;
        assert!(Scenario::from_json(bad).is_err());
        let expr = r#"{"curve": {"kind": "polygon", "vertices": [[-1,-1],[1,-1],[1,1],[-1,1]]},
                       "density": {"kind": "expr", "text": "x*i1 + y*i2"}}"#;
        assert!(Scenario::from_json(expr).unwrap().build().is_ok());
        let bad_expr = r#"{"curve": {"kind": "circle", "center": [0,0], "radius": 1},
                           "density": {"kind": "expr", "text": "x +* y"}}"#;
        assert!(matches!(Scenario::from_json(bad_expr).unwrap().build(), Err(Error::Parse(_))));
    }

    #[test]
    fn reference_set_round_trips() {
        let r = ScenarioSet::reference();
        assert_eq!(r.scenarios.len(), 12);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(ScenarioSet::from_json(&text).unwrap(), r);
        assert_eq!(r.build().unwrap()[5].label, "circle/alpha=1/coordinate");
    }
}
