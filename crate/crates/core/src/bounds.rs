//! Explicit right-hand sides for divisor sums of quadratic polynomials and
//! for the squarefree estimates they are built from.
//!
//! Every bound is evaluated with outward rounding: quantities that enter an
//! upper bound positively use their upper endpoints, and those that enter
//! negatively (or in a denominator) use their lower endpoints.

use core::f64::consts::PI;

use crate::arith::QuadraticPoly;
use crate::character::{m_delta, CertifiedValue};
use crate::error::Error;
use crate::float::{self, widen_down, widen_up};

/// `sum_{n <= x} mu^2(n)/n <= log x / zeta(2) + RAMARE_CONSTANT`.
pub const RAMARE_CONSTANT: f64 = 1.166;
/// Rounded-up value of `sqrt(3) (1 - 1/zeta(2))`.
pub const MOSER_MACLEOD_CONSTANT: f64 = 0.6793;
/// Coefficient of `L(1, chi) N` in the linear term; twice [`RAMARE_CONSTANT`].
pub const LINEAR_L_COEFFICIENT: f64 = 2.332;
pub const SQUARE_PLUS_ONE_LINEAR: f64 = 3.0475;
pub const SQUARE_PLUS_ONE_SQRT: f64 = 1.3586;

/// `zeta(2) = pi^2 / 6`, nearest double.
pub const ZETA2: f64 = PI * PI / 6.0;

/// Upper endpoint of `1 / zeta(2)`.
pub fn inv_zeta2_up() -> f64 {
    widen_up(6.0 / (PI * PI), 3)
}

/// Lower endpoint of `1 / zeta(2)`.
pub fn inv_zeta2_down() -> f64 {
    widen_down(6.0 / (PI * PI), 3)
}

/// `sqrt(3) (1 - 1/zeta(2))`, the exact squarefree-count error constant,
/// rounded upward.
pub fn squarefree_error_constant() -> f64 {
    widen_up(float::sqrt(3.0) * (1.0 - inv_zeta2_down()), 3)
}

/// Right-hand side of the explicit divisor-sum bound, term by term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundBreakdown {
    /// `(2/zeta(2)) L(1, chi) N log X`
    pub main_term: f64,
    /// `(2.332 L(1, chi) + 4 M_delta / zeta(2)) N`
    pub linear_term: f64,
    /// `(2 M_delta / zeta(2)) X`
    pub x_term: f64,
    /// `4 sqrt(3) (1 - 1/zeta(2)) M_delta N / sqrt(X)`
    pub n_over_sqrtx_term: f64,
    /// `2 sqrt(3) (1 - 1/zeta(2)) M_delta sqrt(X)`
    pub sqrtx_term: f64,
    pub total: f64,
    pub n: u64,
    /// `sqrt(f(N))`, nearest double.
    pub x: f64,
}

/// Checks the hypotheses of [`divisor_sum_bound`]: `f >= 0` on `[1, N]` and
/// `f(N) >= f(1)`. Returns `f(N)`.
pub fn check_bound_hypotheses(poly: &QuadraticPoly, n: u64) -> Result<i128, Error> {
    if n == 0 {
        return Err(Error::EmptyRange);
    }
    let n_i = i64::try_from(n).map_err(|_| Error::RangeTooLarge(n))?;
    // f is convex with vertex at -b; its minimum over [1, N] sits at the
    // clamped vertex.
    let vertex = (-poly.b()).clamp(1, n_i);
    let min = poly.eval(vertex);
    if min < 0 {
        return Err(Error::NonPositiveValue {
            n: vertex as u64,
            value: min,
        });
    }
    let f_n = poly.eval(n_i);
    let f_one = poly.eval(1);
    if f_n < f_one {
        return Err(Error::EndpointBelowStart { f_n, f_one });
    }
    Ok(f_n)
}

/// Upper bound for `sum_{n <= N} tau(f(n))` with `X = sqrt(f(N))`.
///
/// `l_value` is a certified enclosure of `L(1, chi)`; its upper endpoint is
/// used. Fails if `f` is negative somewhere on `[1, N]` or `f(N) < f(1)`.
pub fn divisor_sum_bound(
    poly: &QuadraticPoly,
    n: u64,
    l_value: &CertifiedValue,
) -> Result<BoundBreakdown, Error> {
    let f_n = check_bound_hypotheses(poly, n)?;
    // f(N) >= f(1) and f never vanishes (delta is not a square), so f(N) >= 1.
    let f_n = f_n as f64;
    let x = float::sqrt(f_n);
    // f(N) as f64 carries half an ulp; sqrt another half.
    let x_up = widen_up(x, 2);
    let x_down = widen_down(x, 2).max(1.0);
    let sqrt_x_up = widen_up(float::sqrt(x_up), 1);
    let sqrt_x_down = widen_down(float::sqrt(x_down), 1);
    let log_x_up = widen_up(float::ln(x_up), 2).max(0.0);

    let l = l_value.upper().max(0.0);
    let m = m_delta(poly.delta())?;
    let nf = n as f64;
    let inv_z = inv_zeta2_up();
    let sf = squarefree_error_constant();

    let main_term = widen_up(2.0 * inv_z * l * nf * log_x_up, 5);
    let linear_term = widen_up((LINEAR_L_COEFFICIENT * l + 4.0 * m * inv_z) * nf, 6);
    let x_term = widen_up(2.0 * m * inv_z * x_up, 4);
    let n_over_sqrtx_term = widen_up(4.0 * sf * m * nf / sqrt_x_down, 5);
    let sqrtx_term = widen_up(2.0 * sf * m * sqrt_x_up, 4);
    let total = widen_up(
        main_term + linear_term + x_term + n_over_sqrtx_term + sqrtx_term,
        5,
    );
    Ok(BoundBreakdown {
        main_term,
        linear_term,
        x_term,
        n_over_sqrtx_term,
        sqrtx_term,
        total,
        n,
        x,
    })
}

/// `(3/pi) N log N + 3.0475 N + 1.3586 sqrt(N)`, rounded upward.
pub fn square_plus_one_bound(n: u64) -> f64 {
    assert!(n >= 1, "N must be at least 1");
    let nf = n as f64;
    let three_over_pi = widen_up(3.0 / PI, 2);
    let log_n = widen_up(float::ln(nf), 2);
    let value = three_over_pi * nf * log_n
        + SQUARE_PLUS_ONE_LINEAR * nf
        + SQUARE_PLUS_ONE_SQRT * float::sqrt(nf);
    widen_up(value, 8)
}

/// Certified `2 L(1, chi) / zeta(2)`, the leading coefficient of the divisor
/// sum's `N log N` asymptotic.
pub fn asymptotic_constant(l_value: &CertifiedValue) -> CertifiedValue {
    l_value.scale(2.0 * inv_zeta2_down(), 2.0 * inv_zeta2_up())
}

/// `log x / zeta(2) + 1.166`, rounded upward.
pub fn ramare_rhs(x: f64) -> f64 {
    assert!(x >= 1.0, "x must be at least 1");
    widen_up(
        widen_up(float::ln(x), 1) * inv_zeta2_up() + RAMARE_CONSTANT,
        3,
    )
}

/// `log x / zeta(2) + 1.166`, rounded downward; for checking the estimate
/// rather than applying it.
pub fn ramare_rhs_lower(x: f64) -> f64 {
    assert!(x >= 1.0, "x must be at least 1");
    widen_down(
        widen_down(float::ln(x), 1) * inv_zeta2_down() + RAMARE_CONSTANT,
        3,
    )
}

/// `0.6793 sqrt(N)`, rounded upward.
pub fn moser_macleod_radius(n: u64) -> f64 {
    widen_up(MOSER_MACLEOD_CONSTANT * float::sqrt(n as f64), 3)
}

/// `0.6793 sqrt(N)`, rounded downward.
pub fn moser_macleod_radius_lower(n: u64) -> f64 {
    widen_down(MOSER_MACLEOD_CONSTANT * float::sqrt(n as f64), 3)
}

/// Upper endpoint of `|Q(N) - N / zeta(2)|` for an exact count `Q(N)`.
pub fn squarefree_error_upper(count: u64, n: u64) -> f64 {
    let nf = n as f64;
    let lo = widen_down(nf * inv_zeta2_down(), 1);
    let hi = widen_up(nf * inv_zeta2_up(), 1);
    let q = count as f64;
    widen_up((q - lo).abs().max((q - hi).abs()), 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::squarefree_count;

    #[test]
    fn square_plus_one_examples() {
        let one = square_plus_one_bound(1);
        assert!(one >= 4.4061 && one - 4.4061 < 1e-12);
        // 56.75933839548759238... at 30 digits.
        let ten = square_plus_one_bound(10);
        assert!(ten >= 56.759_338_395_487_59 && ten - 56.759_338_395_487_59 < 1e-11);
    }

    #[test]
    fn ramare_and_moser_macleod_examples() {
        assert!(ramare_rhs(1.0) >= 1.166 && ramare_rhs(1.0) < 1.166 + 1e-12);
        assert!(ramare_rhs_lower(1.0) <= 1.166);
        assert!(ramare_rhs(1.0) >= 1.0);
        let r = moser_macleod_radius(100);
        assert!((r - 6.793).abs() < 1e-12);
        let err = squarefree_error_upper(squarefree_count(100), 100);
        // |61 - 100/zeta(2)| = 0.2072898145973371...
        assert!((0.207_289_814_597_337..0.207_289_814_6).contains(&err));
        assert!(err <= r);
        // sqrt(3)(1 - 1/zeta(2)) = 0.67909017985960335...
        let c = squarefree_error_constant();
        assert!((0.679_090_179_859_603..0.679_090_179_86).contains(&c));
        assert!(c < MOSER_MACLEOD_CONSTANT);
    }

    #[test]
    fn composite_constants_are_consistent() {
        assert_eq!(LINEAR_L_COEFFICIENT, 2.0 * RAMARE_CONSTANT);
        let four_sf = 4.0 * float::sqrt(3.0) * (1.0 - 6.0 / (PI * PI));
        assert!((4.0 * squarefree_error_constant() - four_sf).abs() < 1e-9);
    }

    #[test]
    fn asymptotic_constant_examples() {
        let leibniz = asymptotic_constant(&CertifiedValue::new(PI / 4.0, 0.0));
        assert!(leibniz.contains(3.0 / PI));
        assert!(leibniz.error_radius < 1e-14);
        // 2 * pi / (2 sqrt 2) / zeta(2) = 1.3504744742356591...
        let minus_two = asymptotic_constant(&CertifiedValue::new(1.110_720_734_539_591_6, 1e-6));
        assert!(minus_two.contains(1.350_474_474_235_659));
        assert!((minus_two.error_radius - 2.0 / ZETA2 * 1e-6).abs() < 1e-13);
    }

    #[test]
    fn main_term_for_leibniz_character() {
        let poly = QuadraticPoly::new(0, 1).unwrap();
        let b = divisor_sum_bound(&poly, 1_000_000, &CertifiedValue::new(PI / 4.0, 0.0)).unwrap();
        // (3/pi) 1e6 log sqrt(1e12 + 1) = 13192840.77983017...
        assert!(b.main_term >= 13_192_840.779_830_17);
        assert!(b.main_term - 13_192_840.779_830_17 < 1e-6);
        let sum = b.main_term + b.linear_term + b.x_term + b.n_over_sqrtx_term + b.sqrtx_term;
        assert!(b.total >= sum && (b.total - sum) / sum < 1e-14);
        assert_eq!(b.n, 1_000_000);
        assert!((b.x - 1e6).abs() < 1e-6);
    }

    #[test]
    fn bound_at_single_term() {
        for (b, c) in [(0, 1), (5, 27), (2, 10), (5, -10), (10, 9)] {
            let poly = QuadraticPoly::new(b, c).unwrap();
            let br = divisor_sum_bound(&poly, 1, &CertifiedValue::new(1.0, 0.01)).unwrap();
            let f1 = poly.eval(1) as u64;
            assert!(br.total > 0.0);
            assert!(br.total >= crate::arith::tau(f1) as f64);
        }
    }

    #[test]
    fn bound_rejects_bad_ranges() {
        let l = CertifiedValue::new(1.0, 0.0);
        // delta = 7, f(1) = -3.
        let poly = QuadraticPoly::new(-3, 2).unwrap();
        assert!(matches!(
            divisor_sum_bound(&poly, 5, &l),
            Err(Error::NonPositiveValue { .. })
        ));
        // b = -5, c = 27: f(1) = 18, f(3) = 6 < f(1).
        let poly = QuadraticPoly::new(-5, 27).unwrap();
        assert!(matches!(
            divisor_sum_bound(&poly, 3, &l),
            Err(Error::EndpointBelowStart { .. })
        ));
        assert!(divisor_sum_bound(&poly, 9, &l).is_ok());
        assert_eq!(divisor_sum_bound(&poly, 0, &l), Err(Error::EmptyRange));
    }
}
