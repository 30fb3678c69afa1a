//! Integer primitives: the Kronecker symbol, smallest-prime-factor tables,
//! the divisor function, squarefree counting, and the root counts `rho(d)` of
//! a monic quadratic modulo `d`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Largest `|b|` accepted by [`QuadraticPoly::new`].
pub const MAX_LINEAR_COEFFICIENT: i64 = 1 << 40;
/// Largest `|delta|` accepted by [`QuadraticPoly::new`]; keeps `4 * delta` in `i64`.
pub const MAX_DELTA: i64 = 1 << 60;

/// The Kronecker symbol `(a/n)`.
///
/// Conventions for the non-positive lower argument follow the usual extension:
/// `(a/0)` is 1 for `a = ±1` and 0 otherwise, and `(a/-1)` is the sign of `a`
/// (with `(0/-1) = 1`).
pub fn kronecker(a: i64, n: i64) -> i8 {
    let mut a = i128::from(a);
    let mut n = i128::from(n);
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // (a/2) is 0 for even a, else +1 for a = ±1 mod 8 and -1 for a = ±3 mod 8.
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a & 1 == 0 {
            return 0;
        }
        n >>= twos;
        if twos & 1 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // n is now odd and positive: Jacobi symbol.
    a = a.rem_euclid(n);
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z & 1 == 1 && matches!(n & 7, 3 | 5) {
            result = -result;
        }
        if a & 3 == 3 && n & 3 == 3 {
            result = -result;
        }
        core::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Number of positive divisors of `n`, by trial division.
pub fn tau(n: u64) -> u64 {
    assert!(n >= 1, "tau is defined for n >= 1");
    trial_factorize(n)
        .iter()
        .map(|&(_, e)| u64::from(e) + 1)
        .product()
}

pub fn is_squarefree(n: u64) -> bool {
    assert!(n >= 1, "squarefreeness is defined for n >= 1");
    trial_factorize(n).iter().all(|&(_, e)| e == 1)
}

/// `mu(n)^2`, the squarefree indicator.
pub fn mu_squared(n: u64) -> u8 {
    u8::from(is_squarefree(n))
}

/// `Q(N)`: the number of squarefree integers in `[1, N]`.
///
/// Uses `Q(N) = sum_{d <= sqrt N} mu(d) floor(N / d^2)`.
pub fn squarefree_count(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let root = n.isqrt() as usize;
    let mu = mobius_table(root);
    let mut total: i128 = 0;
    for (d, &m) in mu.iter().enumerate().skip(1) {
        if m != 0 {
            let d = d as u64;
            total += i128::from(m) * i128::from(n / (d * d));
        }
    }
    total as u64
}

/// Squarefree indicator for `0..=limit` (entry 0 is `false`).
pub fn squarefree_sieve(limit: usize) -> Vec<bool> {
    let mut flags = vec![true; limit + 1];
    flags[0] = false;
    let mut p = 2usize;
    while p * p <= limit {
        let sq = p * p;
        for m in (sq..=limit).step_by(sq) {
            flags[m] = false;
        }
        p += 1;
    }
    flags
}

/// Möbius function on `0..=limit` (entry 0 is unused and set to 0).
pub fn mobius_table(limit: usize) -> Vec<i8> {
    let mut mu = vec![1i8; limit + 1];
    mu[0] = 0;
    let mut composite = vec![false; limit + 1];
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        for m in (p..=limit).step_by(p) {
            if m > p {
                composite[m] = true;
            }
            mu[m] = -mu[m];
        }
        if let Some(sq) = p.checked_mul(p) {
            for m in (sq..=limit).step_by(sq) {
                mu[m] = 0;
            }
        }
    }
    mu
}

/// Prime factorization by trial division; fine for the small arguments used
/// when validating discriminants and enumerating divisors.
pub(crate) fn trial_factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest-prime-factor table on `2..=limit`, plus the primes up to `limit`
/// for trial division of larger arguments.
#[derive(Debug, Clone)]
pub struct PrimeFactorTable {
    limit: usize,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl PrimeFactorTable {
    /// Builds the table with a linear sieve. `limit` must fit in `u32`.
    pub fn new(limit: usize) -> Self {
        assert!(limit <= u32::MAX as usize, "table limit must fit in u32");
        let limit = limit.max(2);
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Self { limit, spf, primes }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Smallest prime factor of `n`, for `2 <= n <= limit`.
    pub fn smallest_prime_factor(&self, n: usize) -> u32 {
        self.spf[n]
    }

    /// Calls `f(p, e)` for each prime power `p^e` exactly dividing `n`, in
    /// increasing order of `p`.
    pub fn for_each_prime_power(&self, n: u64, mut f: impl FnMut(u64, u32)) -> Result<(), Error> {
        if n == 0 {
            return Err(Error::OutOfRange {
                n,
                limit: self.limit as u64,
            });
        }
        let mut rest = n;
        if rest as u128 > self.limit as u128 {
            for &p in &self.primes {
                let p = u64::from(p);
                if p * p > rest {
                    break;
                }
                if rest.is_multiple_of(p) {
                    let mut e = 0;
                    while rest.is_multiple_of(p) {
                        rest /= p;
                        e += 1;
                    }
                    f(p, e);
                    if rest as u128 <= self.limit as u128 {
                        break;
                    }
                }
            }
            if rest as u128 > self.limit as u128 {
                // No prime factor <= limit remains; `rest` is prime only if
                // it is below (limit + 1)^2.
                let bound = (self.limit as u128 + 1) * (self.limit as u128 + 1);
                if u128::from(rest) >= bound {
                    return Err(Error::OutOfRange {
                        n,
                        limit: self.limit as u64,
                    });
                }
                f(rest, 1);
                return Ok(());
            }
        }
        while rest > 1 {
            let p = u64::from(self.spf[rest as usize]);
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            f(p, e);
        }
        Ok(())
    }

    /// Prime factorization of `n` as `(prime, exponent)` pairs with strictly
    /// increasing primes. `factorize(1)` is empty.
    ///
    /// Arguments above the table limit are trial-divided by the tabulated
    /// primes; this succeeds whenever `n < (limit + 1)^2`, and more generally
    /// whenever at most one prime factor exceeds the limit.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>, Error> {
        let mut out = Vec::new();
        self.for_each_prime_power(n, |p, e| out.push((p, e)))?;
        Ok(out)
    }

    /// Number of divisors of `n`, without allocating.
    pub fn tau(&self, n: u64) -> Result<u64, Error> {
        let mut t = 1u64;
        self.for_each_prime_power(n, |_, e| t *= u64::from(e) + 1)?;
        Ok(t)
    }
}

/// A monic quadratic `f(n) = n^2 + 2bn + c` whose discriminant
/// `delta = b^2 - c` is non-zero, squarefree and not `1 mod 4`.
///
/// Under those conditions `4 delta` is a fundamental discriminant and the
/// root count `rho(d)` is the convolution of `mu^2` with `(4 delta / .)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticPoly {
    b: i64,
    c: i64,
    delta: i64,
}

impl QuadraticPoly {
    pub fn new(b: i64, c: i64) -> Result<Self, Error> {
        if b.unsigned_abs() > MAX_LINEAR_COEFFICIENT as u64 {
            return Err(Error::CoefficientOutOfRange { b, c });
        }
        let delta = i128::from(b) * i128::from(b) - i128::from(c);
        if delta.unsigned_abs() > MAX_DELTA as u128 {
            return Err(Error::CoefficientOutOfRange { b, c });
        }
        let delta = delta as i64;
        validate_delta(delta)?;
        Ok(Self { b, c, delta })
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// `f(n)`; exact for every `i64` argument.
    pub fn eval(&self, n: i64) -> i128 {
        let n = i128::from(n);
        n * n + 2 * i128::from(self.b) * n + i128::from(self.c)
    }

    /// `f(m) mod d` in `[0, d)`.
    pub fn eval_mod(&self, m: u64, d: u64) -> u64 {
        let d128 = i128::from(d);
        let m = i128::from(m) % d128;
        let b = i128::from(self.b).rem_euclid(d128);
        let c = i128::from(self.c).rem_euclid(d128);
        ((m * m + 2 * b * m + c) % d128) as u64
    }
}

impl core::fmt::Display for QuadraticPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "n^2")?;
        let lin = 2 * i128::from(self.b);
        match lin {
            0 => {}
            l if l < 0 => write!(f, "-{}n", -l)?,
            l => write!(f, "+{l}n")?,
        }
        match self.c {
            0 => Ok(()),
            c if c < 0 => write!(f, "-{}", c.unsigned_abs()),
            c => write!(f, "+{c}"),
        }
    }
}

/// Checks that `delta` is non-zero, squarefree and not `1 mod 4`.
pub fn validate_delta(delta: i64) -> Result<(), Error> {
    if delta == 0 {
        return Err(Error::DeltaZero);
    }
    if delta.rem_euclid(4) == 1 {
        return Err(Error::DeltaOneModFour(delta));
    }
    if !is_squarefree(delta.unsigned_abs()) {
        return Err(Error::DeltaNotSquarefree(delta));
    }
    Ok(())
}

/// `rho(d)` by direct count of `m in [0, d)` with `f(m) = 0 mod d`.
pub fn rho_bruteforce(d: u64, poly: &QuadraticPoly) -> u64 {
    assert!(d >= 1, "rho is defined for d >= 1");
    // f(m + 1) - f(m) = 2m + 2b + 1, stepped modulo d.
    let dd = i128::from(d);
    let mut value = poly.eval_mod(0, d) as i128;
    let mut step = (2 * i128::from(poly.b()) + 1).rem_euclid(dd);
    let mut count = 0;
    for _ in 0..d {
        if value == 0 {
            count += 1;
        }
        value = (value + step) % dd;
        step = (step + 2) % dd;
    }
    count
}

/// `rho(d)` as `sum_{lm = d} mu^2(l) chi(m)` with `chi = (4 delta / .)`.
pub fn rho_convolution(d: u64, poly: &QuadraticPoly) -> i64 {
    assert!(d >= 1, "rho is defined for d >= 1");
    let disc = 4 * poly.delta();
    let factors = trial_factorize(d);
    // Walk every divisor l of d; mu^2(l) = 1 iff every exponent is <= 1.
    let mut total = 0i64;
    let mut exps = vec![0u32; factors.len()];
    loop {
        let mut l = 1u64;
        let mut squarefree = true;
        for (&(p, _), &e) in factors.iter().zip(&exps) {
            l *= p.pow(e);
            squarefree &= e <= 1;
        }
        if squarefree {
            total += i64::from(kronecker(disc, (d / l) as i64));
        }
        let mut i = 0;
        loop {
            if i == factors.len() {
                return total;
            }
            if exps[i] < factors[i].1 {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}
