//! Timed, data-parallel front ends to the core summation engines.
//!
//! Work is split into fixed-size blocks and reduced by integer addition, so
//! results do not depend on the thread count.

use std::time::Instant;

use rayon::prelude::*;
use tausum_core::divsum::{self, naive_partial, naive_table};
use tausum_core::{Error, Method, QuadraticPoly, SievePlan, SumResult};

const MODULUS_BLOCK: u64 = 1 << 14;
const NAIVE_BLOCK: u64 = 1 << 12;

/// `S(N)` by the hyperbola sieve, with moduli processed in parallel blocks.
pub fn sum_sieve(poly: &QuadraticPoly, n: u64) -> Result<SumResult, Error> {
    let start = Instant::now();
    let plan = SievePlan::new(poly, n)?;
    let head = plan.head()?;
    let bound = plan.modulus_bound();
    let hits: u64 = (0..bound.div_ceil(MODULUS_BLOCK))
        .into_par_iter()
        .map(|i| {
            let lo = 1 + i * MODULUS_BLOCK;
            plan.hits(lo..lo + MODULUS_BLOCK)
        })
        .sum();
    let mut result = plan.finish(head, hits);
    result.elapsed = start.elapsed();
    Ok(result)
}

/// `S(N)` by factoring every value, in parallel blocks of `n`.
pub fn sum_naive(poly: &QuadraticPoly, n: u64) -> Result<SumResult, Error> {
    let start = Instant::now();
    let table = naive_table(poly, n)?;
    let partials: Vec<(u64, u64)> = (0..n.div_ceil(NAIVE_BLOCK))
        .into_par_iter()
        .map(|i| {
            let lo = 1 + i * NAIVE_BLOCK;
            naive_partial(poly, &table, lo..(lo + NAIVE_BLOCK).min(n + 1))
        })
        .collect::<Result<_, _>>()?;
    let (value, square_count) = partials
        .iter()
        .fold((0, 0), |(v, s), &(pv, ps)| (v + pv, s + ps));
    Ok(SumResult {
        n,
        value,
        method: Method::Naive,
        elapsed: start.elapsed(),
        square_count,
    })
}

/// Sequential core engine with timing, for callers that do not want rayon.
pub fn sum_sieve_sequential(poly: &QuadraticPoly, n: u64) -> Result<SumResult, Error> {
    let start = Instant::now();
    let mut r = divsum::sum_sieve(poly, n)?;
    r.elapsed = start.elapsed();
    Ok(r)
}
