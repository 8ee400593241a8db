//! Compensated accumulation.
//!
//! All quadrature sums go through these accumulators in a fixed node order so
//! that results are reproducible bit for bit.

use num_complex::Complex64;

use crate::quat::CQuat;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: KahanSum,
    im: KahanSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct QuatSum {
    parts: [ComplexSum; 4],
}

impl QuatSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, q: CQuat) {
        for (acc, c) in self.parts.iter_mut().zip(q.components()) {
            acc.add(c);
        }
    }

    pub fn total(&self) -> CQuat {
        CQuat::from_components([
            self.parts[0].total(),
            self.parts[1].total(),
            self.parts[2].total(),
            self.parts[3].total(),
        ])
    }
}

impl FromIterator<CQuat> for QuatSum {
    fn from_iter<I: IntoIterator<Item = CQuat>>(iter: I) -> Self {
        let mut acc = QuatSum::new();
        for q in iter {
            acc.add(q);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = xs.iter().sum();
        let total = xs.iter().copied().collect::<KahanSum>().total();
        assert_eq!(naive, 0.0);
        assert_eq!(total, 2.0);
    }
}
