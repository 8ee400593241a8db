//! Values frozen from independent evaluations: mpmath Hankel functions at 30
//! digits and adaptive scipy quadrature of the Cauchy-type integral with a
//! separately written quaternion product.

use hyperholo_core::potential::{cauchy_integral, singular_integral};
use hyperholo_core::specfun::{hankel0, hankel1, hankel2};
use hyperholo_core::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn hankel_functions_match_mpmath() {
    // (branch, t, [H0, H1, H2])
    let cases = [
        (Branch::First, c(0.7, 0.0), [c(0.8812008886074053, -0.19066492933739512), c(0.32899574154005895, -1.1032498719076334), c(0.058786944364191705, -2.961477561827272)]),
        (Branch::First, c(2.5, 1.0), [c(0.014599594375646747, 0.17455791713138535), c(0.1902732574334468, 0.01224682452984842), c(0.12000177613841269, -0.2186010057131304)]),
        (Branch::First, c(5.0, 0.0), [c(-0.1775967713143383, -0.30851762524903376), c(-0.32757913759146523, 0.14786314339122683), c(0.046565116277752214, 0.36766288260552454)]),
        (Branch::Second, c(3.0, -2.0), [c(-0.017793270303994597, -0.05281940449715538), c(0.055067595337314715, -0.024867281224750938), c(0.050860554682678596, 0.05828607326644409)]),
        (Branch::Second, c(-1.5, 0.0), [c(1.5354830152077543, -0.38244892379775886), c(-1.673809523730299, -0.4123086269739113), c(0.6962630164326442, 0.9321937597629739)]),
    ];
    for (b, t, want) in cases {
        let got = [hankel0(b, t).unwrap(), hankel1(b, t).unwrap(), hankel2(b, t).unwrap()];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).norm() < 1e-10 * (1.0 + w.norm()), "{b:?} t={t}: {g} vs {w}");
        }
    }
}

#[test]
fn hankel_table_values() {
    let h0 = hankel0(Branch::First, c(1.0, 0.0)).unwrap();
    assert!((h0 - c(0.7651977, 0.0882570)).norm() < 1e-6);
    let h1 = hankel1(Branch::First, c(1e-3, 0.0)).unwrap();
    assert!((h1 - c(0.000499999937500003, -636.622167231139)).norm() < 1e-9);
    let leading = -2.0 / (std::f64::consts::PI * 1e-3);
    assert!((h1.im - leading).abs() < 1e-5 * leading.abs());
}

#[test]
fn theta_at_unit_point() {
    let th = KernelCtx::new(c(1.0, 0.0)).theta(Point2::new(1.0, 0.0)).unwrap();
    assert!((th - c(0.0220642, -0.1912994)).norm() < 1e-6);
}

fn fourier_value(p: Point2) -> CQuat {
    Density::fourier(1).eval(p).unwrap()
}

#[test]
fn cauchy_integral_matches_adaptive_quadrature() {
    let circle = Curve::unit_circle();
    let q = QuadSpec::default();
    let q4 = |v: [(f64, f64); 4]| CQuat::new(c(v[0].0, v[0].1), c(v[1].0, v[1].1), c(v[2].0, v[2].1), c(v[3].0, v[3].1));
    let cases = [
        (c(1.0, 0.0), Point2::new(0.3, 0.2), Density::fourier(1),
         q4([(0.020458963048787443, -0.17738148296207046), (0.13416459549808585, -1.1632219508733666), (0.0, 0.0), (0.01363930869919179, -0.11825432197471367)])),
        (c(1.0, 0.5), Point2::new(0.3, 0.2), Density::coordinate(),
         q4([(-0.2503538499506756, 0.6973425998862748), (0.09237412291299982, -0.08534831403019051), (0.061582748608666686, -0.05689887602012697), (0.0, 0.0)])),
        (c(-2.0, 0.0), Point2::new(1.4, -0.5), Density::fourier(1),
         q4([(0.21020730025610712, 0.6935044214293373), (-0.27111483123647684, 0.5292954854116907), (0.0, 0.0), (-0.0750740358057526, -0.24768015051047754)])),
        (c(1.0, 0.0), Point2::new(-0.2, 0.9), Density::coordinate(),
         q4([(-0.1107026295825864, 0.9598040993736314), (-0.012441642387437724, 0.10787042197127447), (0.05598739074346874, -0.48541689887073514), (0.0, 0.0)])),
    ];
    for (alpha, z, f, want) in cases {
        let got = cauchy_integral(&KernelCtx::new(alpha), &circle, &f, z, &q).unwrap();
        assert!((got - want).norm() < 1e-9, "alpha={alpha} z={z:?}: {got:?}");
    }
}

#[test]
fn singular_integral_matches_brute_force() {
    let circle = Curve::unit_circle();
    let ctx = KernelCtx::new(c(0.0, 0.0));
    let t = Point2::new(1.0, 0.0);
    let ft = fourier_value(t);
    let mut brute = CQuat::ZERO;
    for nd in circle.nodes(1 << 16).unwrap() {
        if nd.point.dist(t) > 1e-6 {
            brute += ctx.cauchy_kernel(nd.point - t).unwrap() * nd.sigma_quat() * (fourier_value(nd.point) - ft);
        }
    }
    let f = singular_integral(&ctx, &circle, &Density::fourier(1), t, &QuadSpec::default()).unwrap();
    assert!((f.value - brute).norm() < 1e-4, "{:?} vs {brute:?}", f.value);
}
