//! Exact evaluation of `S(N) = sum_{n <= N} tau(f(n))`.
//!
//! Two independent routes are provided. [`sum_naive`] factors every value
//! `f(n)`. [`sum_sieve`] uses the paired-divisor identity
//! `tau(m) = 2 #{d | m : d^2 <= m} - [m is a square]`: for each modulus
//! `d <= sqrt(f(N))` it enumerates the roots of `f` modulo `d` and counts the
//! `n` in each residue class with `f(n) >= d^2`. Roots modulo `d` are built by
//! CRT from roots modulo prime powers.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;
use core::time::Duration;

use crate::arith::{trial_factorize, PrimeFactorTable, QuadraticPoly};
use crate::error::Error;

/// Largest `N` accepted by the engines.
pub const MAX_N: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Naive,
    Sieve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumResult {
    pub n: u64,
    pub value: u64,
    pub method: Method,
    /// Wall-clock time; the engines in this crate do not measure time and
    /// leave it at zero.
    pub elapsed: Duration,
    /// Number of `n <= N` with `f(n)` a perfect square.
    pub square_count: u64,
}

/// Validates `1 <= N <= MAX_N` and `f >= 1` on `[1, N]`; returns the maximum
/// of `f` on `[1, N]`.
fn check_positive_range(poly: &QuadraticPoly, n: u64) -> Result<u64, Error> {
    if n == 0 {
        return Err(Error::EmptyRange);
    }
    if n > MAX_N {
        return Err(Error::RangeTooLarge(n));
    }
    let n_i = n as i64;
    let vertex = (-poly.b()).clamp(1, n_i);
    if poly.eval(vertex) <= 0 {
        // f(m) <= 0 exactly when |m + b| <= sqrt(delta); report the first such m.
        let r = (poly.delta() as u64).isqrt() as i64;
        let first = (-poly.b() - r).max(1);
        return Err(Error::NonPositiveValue {
            n: first as u64,
            value: poly.eval(first),
        });
    }
    let (at_one, at_n) = (poly.eval(1), poly.eval(n_i));
    let (arg, max) = if at_one >= at_n {
        (1, at_one)
    } else {
        (n, at_n)
    };
    u64::try_from(max).map_err(|_| Error::ValueTooLarge { n: arg, value: max })
}

fn is_square(v: u64) -> bool {
    let r = v.isqrt();
    r * r == v
}

/// `sum tau(f(n))` and the number of square values, over `range`, by
/// factoring each value with `table`.
pub fn naive_partial(
    poly: &QuadraticPoly,
    table: &PrimeFactorTable,
    range: Range<u64>,
) -> Result<(u64, u64), Error> {
    let mut total = 0u64;
    let mut squares = 0u64;
    for n in range {
        let v = poly.eval(n as i64);
        if v <= 0 {
            return Err(Error::NonPositiveValue { n, value: v });
        }
        let v = u64::try_from(v).map_err(|_| Error::ValueTooLarge { n, value: v })?;
        total += table.tau(v)?;
        squares += u64::from(is_square(v));
    }
    Ok((total, squares))
}

/// A factor table able to factor every `f(n)` with `n <= N`.
pub fn naive_table(poly: &QuadraticPoly, n: u64) -> Result<PrimeFactorTable, Error> {
    let max = check_positive_range(poly, n)?;
    let limit = max.isqrt() + 1;
    if limit > u64::from(u32::MAX) {
        return Err(Error::RangeTooLarge(n));
    }
    Ok(PrimeFactorTable::new(limit as usize))
}

/// `S(N)` by factoring each `f(n)`. Intended as the reference route.
pub fn sum_naive(poly: &QuadraticPoly, n: u64) -> Result<SumResult, Error> {
    let table = naive_table(poly, n)?;
    let (value, square_count) = naive_partial(poly, &table, 1..n + 1)?;
    Ok(SumResult {
        n,
        value,
        method: Method::Naive,
        elapsed: Duration::ZERO,
        square_count,
    })
}

/// `#{lo <= n <= hi : f(n) is a perfect square}`.
///
/// `f(n) = m^2` iff `(s - m)(s + m) = delta` with `s = |n + b|`, so the
/// candidates come from factor pairs of `delta`.
pub fn square_values_in(poly: &QuadraticPoly, lo: u64, hi: u64) -> u64 {
    if lo > hi {
        return 0;
    }
    let delta = i128::from(poly.delta());
    let b = i128::from(poly.b());
    let mut divisors = vec![1u64];
    for (p, e) in trial_factorize(poly.delta().unsigned_abs()) {
        let len = divisors.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divisors.push(divisors[i] * pk);
            }
        }
    }
    let mut hits = Vec::new();
    for &e in &divisors {
        for u in [i128::from(e), -i128::from(e)] {
            let v = delta / u;
            if v < u || u + v < 0 || (u + v) % 2 != 0 {
                continue;
            }
            let s = (u + v) / 2;
            for n in [s - b, -s - b] {
                if n >= i128::from(lo) && n <= i128::from(hi) {
                    hits.push(n);
                }
            }
        }
    }
    hits.sort_unstable();
    hits.dedup();
    hits.len() as u64
}

/// `#{1 <= n <= N : f(n) is a perfect square}`.
pub fn square_values_count(poly: &QuadraticPoly, n: u64) -> u64 {
    square_values_in(poly, 1, n)
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (u128::from(acc) * u128::from(base) % u128::from(m)) as u64;
        }
        base = (u128::from(base) * u128::from(base) % u128::from(m)) as u64;
        exp >>= 1;
    }
    acc
}

/// A square root of `a` modulo the odd prime `p` (Tonelli–Shanks), or `None`
/// if `a` is a non-residue.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mul = |x: u64, y: u64| (u128::from(x) * u128::from(y) % u128::from(p)) as u64;
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul(t2, t2);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    Some(r)
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not invertible mod {m}");
    old_s.rem_euclid(i128::from(m)) as u64
}

/// Roots of `f` modulo the prime `p`, ascending.
fn prime_roots(poly: &QuadraticPoly, p: u64) -> Vec<u64> {
    if p == 2 {
        return (0..2).filter(|&m| poly.eval_mod(m, 2) == 0).collect();
    }
    let neg_b = (-i128::from(poly.b())).rem_euclid(i128::from(p)) as u64;
    let delta = i128::from(poly.delta()).rem_euclid(i128::from(p)) as u64;
    match sqrt_mod_prime(delta, p) {
        None => Vec::new(),
        Some(0) => vec![neg_b],
        Some(s) => {
            let mut r = vec![(neg_b + s) % p, (neg_b + p - s) % p];
            r.sort_unstable();
            r
        }
    }
}

/// Roots modulo `p^e` lifted from roots modulo `p^(e-1)`.
fn lift_roots(poly: &QuadraticPoly, p: u64, lower: &[u64], lower_modulus: u64) -> Vec<u64> {
    let modulus = lower_modulus * p;
    let mut out = Vec::new();
    for &r in lower {
        for j in 0..p {
            let cand = r + j * lower_modulus;
            if poly.eval_mod(cand, modulus) == 0 {
                out.push(cand);
            }
        }
    }
    out.sort_unstable();
    out
}

fn prime_power_roots(poly: &QuadraticPoly, p: u64, e: u32) -> Vec<u64> {
    let mut roots = prime_roots(poly, p);
    let mut modulus = p;
    for _ in 1..e {
        if roots.is_empty() {
            break;
        }
        roots = lift_roots(poly, p, &roots, modulus);
        modulus *= p;
    }
    roots
}

/// Combines `cur` (roots mod `m`) with `next` (roots mod `q`, coprime to `m`)
/// into roots mod `m q`, written to `out`.
fn crt_combine(cur: &[u64], m: u64, next: &[u64], q: u64, out: &mut Vec<u64>) {
    out.clear();
    let inv = mod_inverse(m % q, q);
    for &r1 in cur {
        let r1q = r1 % q;
        for &r2 in next {
            let diff = if r2 >= r1q { r2 - r1q } else { r2 + q - r1q };
            let t = (u128::from(diff) * u128::from(inv) % u128::from(q)) as u64;
            out.push(r1 + m * t);
        }
    }
}

/// The roots of `f` modulo `d`, ascending; its length is `rho(d)`.
pub fn root_enumeration(d: u64, poly: &QuadraticPoly) -> Vec<u64> {
    assert!(d >= 1, "modulus must be at least 1");
    let mut cur = vec![0u64];
    let mut m = 1u64;
    let mut scratch = Vec::new();
    for (p, e) in trial_factorize(d) {
        let next = prime_power_roots(poly, p, e);
        let q = p.pow(e);
        crt_combine(&cur, m, &next, q, &mut scratch);
        core::mem::swap(&mut cur, &mut scratch);
        m *= q;
        if cur.is_empty() {
            break;
        }
    }
    cur.sort_unstable();
    cur
}

const NO_ROOT: u32 = u32::MAX;

/// Precomputed state for the hyperbola sieve over `n <= N`.
///
/// The sieve covers the tail of `[1, N]` on which `f` is increasing; any
/// prefix before the vertex of `f` is summed by factorization. Moduli
/// `1..=modulus_bound()` may be processed in any partition with
/// [`SievePlan::hits`]; the totals are exact integers, so every partition
/// yields the same result.
#[derive(Debug, Clone)]
pub struct SievePlan {
    poly: QuadraticPoly,
    n: u64,
    tail_start: u64,
    modulus_bound: u64,
    table: PrimeFactorTable,
    /// `sqrt(delta) mod p` for odd primes `p <= modulus_bound`.
    prime_sqrt: Vec<u32>,
    /// Roots modulo `2^e` and modulo `p^e` with `e >= 2`.
    power_roots: BTreeMap<u64, Vec<u64>>,
}

impl SievePlan {
    pub fn new(poly: &QuadraticPoly, n: u64) -> Result<Self, Error> {
        let max = check_positive_range(poly, n)?;
        // f(k + 1) > f(k) for all k >= -b.
        let tail_start = (-poly.b()).max(1) as u64;
        let modulus_bound = if tail_start <= n {
            (poly.eval(n as i64) as u64).isqrt()
        } else {
            0
        };
        let limit = max.isqrt().max(modulus_bound).max(2);
        if limit >= u64::from(u32::MAX) {
            return Err(Error::RangeTooLarge(n));
        }
        let table = PrimeFactorTable::new(limit as usize);

        let mut prime_sqrt = vec![NO_ROOT; modulus_bound as usize + 1];
        let delta = i128::from(poly.delta());
        for &p in table.primes() {
            let p = u64::from(p);
            if p > modulus_bound {
                break;
            }
            if p == 2 {
                continue;
            }
            let a = delta.rem_euclid(i128::from(p)) as u64;
            if let Some(s) = sqrt_mod_prime(a, p) {
                prime_sqrt[p as usize] = s as u32;
            }
        }

        let mut power_roots = BTreeMap::new();
        for &p in table.primes() {
            let p = u64::from(p);
            if p != 2 && p.saturating_mul(p) > modulus_bound {
                break;
            }
            if p > modulus_bound {
                break;
            }
            let mut roots = prime_roots(poly, p);
            let mut q = p;
            if p == 2 {
                power_roots.insert(2, roots.clone());
            }
            while let Some(next_q) = q.checked_mul(p).filter(|&v| v <= modulus_bound) {
                roots = if roots.is_empty() {
                    roots
                } else {
                    lift_roots(poly, p, &roots, q)
                };
                q = next_q;
                power_roots.insert(q, roots.clone());
            }
        }

        Ok(Self {
            poly: *poly,
            n,
            tail_start,
            modulus_bound,
            table,
            prime_sqrt,
            power_roots,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Largest modulus `d` with `d^2 <= f(N)` on the increasing tail (0 when
    /// the tail is empty).
    pub fn modulus_bound(&self) -> u64 {
        self.modulus_bound
    }

    /// First `n` of the increasing tail.
    pub fn tail_start(&self) -> u64 {
        self.tail_start
    }

    /// Writes the roots of `f` modulo `d` (unsorted) into `out`.
    fn roots_mod(&self, d: u64, out: &mut Vec<u64>, scratch: &mut Vec<u64>) {
        out.clear();
        out.push(0);
        let mut m = 1u64;
        let mut rest = d;
        let neg_b = -i128::from(self.poly.b());
        let mut pair: [u64; 2];
        while rest > 1 {
            let p = u64::from(self.table.smallest_prime_factor(rest as usize));
            let mut q = 1;
            while rest.is_multiple_of(p) {
                rest /= p;
                q *= p;
            }
            let next: &[u64] = if q == p && p != 2 {
                let s = self.prime_sqrt[p as usize];
                if s == NO_ROOT {
                    out.clear();
                    return;
                }
                let s = u64::from(s);
                let nb = neg_b.rem_euclid(i128::from(p)) as u64;
                pair = [(nb + s) % p, (nb + p - s) % p];
                if s == 0 {
                    &pair[..1]
                } else {
                    &pair[..]
                }
            } else {
                &self.power_roots[&q]
            };
            if next.is_empty() {
                out.clear();
                return;
            }
            crt_combine(out, m, next, q, scratch);
            core::mem::swap(out, scratch);
            m *= q;
        }
    }

    /// Smallest `n` in the tail with `f(n) >= d^2`.
    fn lower_cut(&self, d: u64) -> u64 {
        // In the tail n + b >= 0, so f(n) >= d^2 iff n + b >= ceil(sqrt(d^2 + delta)).
        let target = i128::from(d) * i128::from(d) + i128::from(self.poly.delta());
        if target <= 0 {
            return self.tail_start;
        }
        let target = target as u128;
        let mut s = target.isqrt();
        if s * s < target {
            s += 1;
        }
        let first = s as i128 - i128::from(self.poly.b());
        (first.max(i128::from(self.tail_start))) as u64
    }

    fn count_hits(&self, d: u64, roots: &[u64]) -> u64 {
        let lo = self.lower_cut(d) as i64;
        let hi = self.n as i64;
        if lo > hi {
            return 0;
        }
        let d = d as i64;
        roots
            .iter()
            .map(|&r| {
                let r = r as i64;
                ((hi - r).div_euclid(d) - (lo - 1 - r).div_euclid(d)) as u64
            })
            .sum()
    }

    /// Number of `n` in the tail with `d | f(n)` and `d^2 <= f(n)`.
    pub fn modulus_hits(&self, d: u64) -> u64 {
        assert!(d >= 1 && d <= self.modulus_bound, "modulus out of range");
        let (mut roots, mut scratch) = (Vec::new(), Vec::new());
        self.roots_mod(d, &mut roots, &mut scratch);
        self.count_hits(d, &roots)
    }

    /// Sum of [`SievePlan::modulus_hits`] over the moduli in `range`
    /// (clipped to `1..=modulus_bound`).
    pub fn hits(&self, range: Range<u64>) -> u64 {
        let start = range.start.max(1);
        let end = range.end.min(self.modulus_bound + 1);
        let (mut roots, mut scratch) = (Vec::with_capacity(64), Vec::with_capacity(64));
        let mut total = 0;
        for d in start..end {
            self.roots_mod(d, &mut roots, &mut scratch);
            if !roots.is_empty() {
                total += self.count_hits(d, &roots);
            }
        }
        total
    }

    /// `(sum, squares)` over the decreasing prefix `[1, tail_start)`.
    pub fn head(&self) -> Result<(u64, u64), Error> {
        let end = self.tail_start.min(self.n + 1);
        naive_partial(&self.poly, &self.table, 1..end)
    }

    /// Assembles `S(N)` from the head and the total tail hits over all moduli.
    pub fn finish(&self, head: (u64, u64), tail_hits: u64) -> SumResult {
        let tail_squares = square_values_in(&self.poly, self.tail_start, self.n);
        SumResult {
            n: self.n,
            value: head.0 + 2 * tail_hits - tail_squares,
            method: Method::Sieve,
            elapsed: Duration::ZERO,
            square_count: head.1 + tail_squares,
        }
    }
}

/// `S(N)` by the hyperbola sieve, single-threaded.
pub fn sum_sieve(poly: &QuadraticPoly, n: u64) -> Result<SumResult, Error> {
    let plan = SievePlan::new(poly, n)?;
    let head = plan.head()?;
    let hits = plan.hits(1..plan.modulus_bound() + 1);
    Ok(plan.finish(head, hits))
}
