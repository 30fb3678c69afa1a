//! The real primitive character `chi(n) = (4 delta / n)`, its partial sums,
//! explicit Pólya–Vinogradov constants, and certified values of `L(1, chi)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::arith::{kronecker, validate_delta, QuadraticPoly};
use crate::error::Error;
use crate::float::{self, widen_down, widen_up, NeumaierSum, EPS};

/// Characters with modulus up to this size keep one period in memory.
const MAX_TABULATED_MODULUS: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// `chi(n) = (4 delta / n)`, primitive of conductor `4 |delta|`.
#[derive(Debug, Clone)]
pub struct QuadraticCharacter {
    delta: i64,
    modulus: u64,
    parity: Parity,
    period: Option<Vec<i8>>,
}

impl QuadraticCharacter {
    pub fn new(poly: &QuadraticPoly) -> Self {
        Self::build(poly.delta())
    }

    pub fn from_delta(delta: i64) -> Result<Self, Error> {
        if delta.unsigned_abs() > crate::arith::MAX_DELTA as u64 {
            return Err(Error::DeltaOutOfRange(delta));
        }
        validate_delta(delta)?;
        Ok(Self::build(delta))
    }

    fn build(delta: i64) -> Self {
        let modulus = 4 * delta.unsigned_abs();
        let parity = if delta > 0 { Parity::Even } else { Parity::Odd };
        let disc = 4 * delta;
        let period = (modulus <= MAX_TABULATED_MODULUS)
            .then(|| (0..modulus).map(|n| kronecker(disc, n as i64)).collect());
        Self {
            delta,
            modulus,
            parity,
            period,
        }
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `chi(n)`; equal to `kronecker(4 delta, n)`.
    pub fn value(&self, n: u64) -> i8 {
        match &self.period {
            Some(t) => t[(n % self.modulus) as usize],
            None => kronecker(4 * self.delta, (n % self.modulus) as i64),
        }
    }

    /// `sum_{n=l}^{p} chi(n)` for `1 <= l <= p`.
    pub fn partial_sum(&self, l: u64, p: u64) -> i64 {
        assert!(1 <= l && l <= p, "partial sums need 1 <= L <= P");
        // Whole periods contribute zero.
        let len = (p - l + 1) % self.modulus;
        let start = l % self.modulus;
        (0..len).map(|k| i64::from(self.value(start + k))).sum()
    }

    /// `max_{L <= P} |sum_{n=L}^{P} chi(n)|`, exact.
    ///
    /// Prefix sums are periodic with zero drift, so the maximum over all
    /// windows is the spread of the prefix sums over one period.
    pub fn empirical_max_partial_sum(&self) -> u64 {
        let (mut lo, mut hi, mut s) = (0i64, 0i64, 0i64);
        for n in 1..=self.modulus {
            s += i64::from(self.value(n));
            lo = lo.min(s);
            hi = hi.max(s);
        }
        (hi - lo) as u64
    }
}

/// Explicit Pólya–Vinogradov bound for primitive characters of modulus `q`,
/// rounded upward.
///
/// Even: `(2/pi^2) sqrt(q) log q + 0.9467 sqrt(q) + 1.668`.
/// Odd: `(1/(2 pi)) sqrt(q) log q + 0.8204 sqrt(q) + 1.0285`.
pub fn fs_polya_vinogradov(q: u64, parity: Parity) -> Result<f64, Error> {
    if q <= 1 {
        return Err(Error::InvalidModulus(q));
    }
    let qf = q as f64;
    let (log_coeff, sqrt_coeff, constant) = match parity {
        Parity::Even => (2.0 / (PI * PI), 0.9467, 1.668),
        Parity::Odd => (1.0 / (2.0 * PI), 0.8204, 1.0285),
    };
    let root = float::sqrt(qf);
    let value = log_coeff * root * float::ln(qf) + sqrt_coeff * root + constant;
    Ok(widen_up(value, 16))
}

/// The constant `M_delta` bounding every partial sum of `(4 delta / .)`,
/// rounded upward.
///
/// `delta > 0`: `(4/pi^2) sqrt(delta) log(4 delta) + 1.8934 sqrt(delta) + 1.668`;
/// `delta < 0`: `(1/pi) sqrt|delta| log(4|delta|) + 1.6408 sqrt|delta| + 1.0285`.
pub fn m_delta(delta: i64) -> Result<f64, Error> {
    validate_delta(delta)?;
    let a = delta.unsigned_abs() as f64;
    let root = float::sqrt(a);
    let log4 = float::ln(4.0 * a);
    let value = if delta > 0 {
        4.0 / (PI * PI) * root * log4 + 1.8934 * root + 1.668
    } else {
        1.0 / PI * root * log4 + 1.6408 * root + 1.0285
    };
    Ok(widen_up(value, 16))
}

/// A real number known to lie in `[value - error_radius, value + error_radius]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedValue {
    pub value: f64,
    pub error_radius: f64,
}

impl CertifiedValue {
    pub fn new(value: f64, error_radius: f64) -> Self {
        assert!(error_radius >= 0.0, "error radius must be non-negative");
        Self {
            value,
            error_radius,
        }
    }

    pub fn lower(&self) -> f64 {
        (self.value - self.error_radius).next_down()
    }

    pub fn upper(&self) -> f64 {
        (self.value + self.error_radius).next_up()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower() <= x && x <= self.upper()
    }

    pub fn overlaps(&self, other: &CertifiedValue) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// `k * self` for `k > 0` given as an interval `[k_lo, k_hi]`.
    pub(crate) fn scale(&self, k_lo: f64, k_hi: f64) -> CertifiedValue {
        let lo = widen_down(self.lower() * k_lo, 1).min(widen_down(self.lower() * k_hi, 1));
        let hi = widen_up(self.upper() * k_hi, 1).max(widen_up(self.upper() * k_lo, 1));
        let mid = 0.5 * (lo + hi);
        let radius = widen_up((hi - mid).max(mid - lo), 2);
        CertifiedValue::new(mid, radius)
    }
}

/// Default truncation error for [`l_one`].
pub const DEFAULT_L_EPSILON: f64 = 1e-6;

/// Certified `L(1, chi)`.
///
/// Sums `chi(n)/n` for `n <= N` with `N = ceil(2 M_delta / epsilon)`. The tail
/// beyond `N` is at most `2 M_delta / N <= epsilon` by Abel summation against
/// the partial-sum bound, and the rounding error of the compensated sum is
/// added to the radius.
pub fn l_one(chi: &QuadraticCharacter, epsilon: f64) -> Result<CertifiedValue, Error> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidEpsilon);
    }
    let m = m_delta(chi.delta())?;
    let terms = libm::ceil(2.0 * m / epsilon);
    if terms > 1e12 {
        return Err(Error::InvalidEpsilon);
    }
    let terms = terms as u64;
    let mut sum = NeumaierSum::default();
    let q = chi.modulus();
    let mut residue = 1 % q;
    for n in 1..=terms {
        let v = chi.value(residue);
        if v != 0 {
            sum.add(f64::from(v) / n as f64);
        }
        residue += 1;
        if residue == q {
            residue = 0;
        }
    }
    // Each term carries half an ulp of division error; compensated summation
    // adds at most a few ulps of the absolute sum, which is below ln N + 1.
    let abs_sum = float::ln(terms as f64) + 1.0;
    let slack = 8.0 * EPS * abs_sum;
    // The tail bound is 2M/N with N >= 2M/epsilon; recompute it rounded up.
    let tail = widen_up(2.0 * m / terms as f64, 2);
    Ok(CertifiedValue::new(
        sum.value(),
        widen_up(tail.max(epsilon) + slack, 2),
    ))
}
