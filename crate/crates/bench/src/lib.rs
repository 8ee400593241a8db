//! Shared fixtures for the benchmarks.

use hyperholo_core::{Complex64, Curve, Density, KernelCtx, Point2, QuadSpec};

pub fn unit_circle() -> Curve {
    Curve::unit_circle()
}

pub fn ctx(re: f64, im: f64) -> KernelCtx {
    KernelCtx::new(Complex64::new(re, im))
}

pub fn fourier() -> Density {
    Density::fourier(1)
}

pub fn quad(n: usize, m: usize) -> QuadSpec {
    QuadSpec::default().with_boundary_nodes(n).with_area_resolution(m)
}

/// Points on a ring of the given radius, at equal angles.
pub fn ring(radius: f64, count: usize) -> Vec<Point2> {
    (0..count)
        .map(|k| Point2::polar(radius, std::f64::consts::TAU * (k as f64 + 0.5) / count as f64))
        .collect()
}
