//! Directed rounding for bound evaluation.
//!
//! `libm` routines are accurate to within an ulp or two, so every composite
//! expression is widened by a relative slack proportional to the number of
//! floating-point operations that produced it, then pushed one more ulp
//! outward.

pub(crate) const EPS: f64 = f64::EPSILON;

/// Upper end of a value produced by `ops` rounded floating-point operations.
pub(crate) fn widen_up(x: f64, ops: u32) -> f64 {
    (x + x.abs() * EPS * f64::from(ops)).next_up()
}

/// Lower end of a value produced by `ops` rounded floating-point operations.
pub(crate) fn widen_down(x: f64, ops: u32) -> f64 {
    (x - x.abs() * EPS * f64::from(ops)).next_down()
}

pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}
