//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use tausum_core::arith::{rho_bruteforce, rho_convolution, squarefree_sieve};
use tausum_core::bounds::{
    divisor_sum_bound, moser_macleod_radius_lower, ramare_rhs_lower, square_plus_one_bound,
    squarefree_error_upper,
};
use tausum_core::character::{fs_polya_vinogradov, l_one, DEFAULT_L_EPSILON};
use tausum_core::divsum::{naive_partial, naive_table, sum_naive, sum_sieve};
use tausum_core::{Parity, QuadraticCharacter, QuadraticPoly};

/// The five example polynomials `(b, c)` with their printed `L(1, chi)` values.
#[allow(clippy::approx_constant)]
const TABLE: [((i64, i64), f64); 5] = [
    ((0, 1), 0.7854),
    ((5, 27), 1.1108),
    ((2, 10), 1.2826),
    ((5, -10), 0.8377),
    ((10, 9), 1.6887),
];

const L_TABLE_TOLERANCE: f64 = 1.1e-3;
const RATIO_ENVELOPE: f64 = 4.0;

fn polys() -> impl Iterator<Item = QuadraticPoly> {
    TABLE
        .iter()
        .map(|&((b, c), _)| QuadraticPoly::new(b, c).unwrap())
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn bound_inequality() -> Outcome {
    let start = Instant::now();
    let mut worst = f64::INFINITY;
    for poly in polys() {
        let chi = QuadraticCharacter::new(&poly);
        let l = l_one(&chi, DEFAULT_L_EPSILON).map_err(|e| e.to_string())?;
        for n in [100u64, 1_000, 10_000, 100_000, 1_000_000] {
            let exact = sum_sieve(&poly, n).map_err(|e| e.to_string())?.value;
            let bound = divisor_sum_bound(&poly, n, &l).map_err(|e| e.to_string())?;
            if (exact as f64) > bound.total {
                return Err(format!("{poly} N={n}: S={exact} > bound {}", bound.total));
            }
            worst = worst.min(bound.total / exact as f64);
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "25 cases, min bound/exact = {worst:.4}, {elapsed:.2?}"
    ))
}

fn square_plus_one() -> Outcome {
    let poly = QuadraticPoly::new(0, 1).unwrap();
    let table = naive_table(&poly, 10_000).map_err(|e| e.to_string())?;
    let mut running = 0u64;
    for n in 1..=10_000u64 {
        running += naive_partial(&poly, &table, n..n + 1)
            .map_err(|e| e.to_string())?
            .0;
        if running as f64 > square_plus_one_bound(n) {
            return Err(format!("N={n}: S={running} > {}", square_plus_one_bound(n)));
        }
    }
    let mut tightest = f64::INFINITY;
    for n in [100_000u64, 1_000_000, 10_000_000] {
        let exact = sum_sieve(&poly, n).map_err(|e| e.to_string())?.value;
        let rhs = square_plus_one_bound(n);
        if exact as f64 > rhs {
            return Err(format!("N={n}: S={exact} > {rhs}"));
        }
        tightest = tightest.min(rhs - exact as f64);
    }
    Ok(format!(
        "N <= 10^4 exhaustive, sampled up to 10^7 (min margin {tightest:.0})"
    ))
}

fn l_value_table() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for &((b, c), printed) in &TABLE {
        let chi = QuadraticCharacter::new(&QuadraticPoly::new(b, c).unwrap());
        let l = l_one(&chi, DEFAULT_L_EPSILON).map_err(|e| e.to_string())?;
        let distance = (l.value - printed).abs() + l.error_radius;
        if distance > L_TABLE_TOLERANCE {
            return Err(format!(
                "delta={}: L = {} +- {}",
                chi.delta(),
                l.value,
                l.error_radius
            ));
        }
        worst = worst.max(distance);
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(5) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("max deviation {worst:.2e}, {elapsed:.2?}"))
}

fn rho_identity() -> Outcome {
    let start = Instant::now();
    for poly in polys() {
        for d in 1..=10_000u64 {
            let brute = rho_bruteforce(d, &poly) as i64;
            let conv = rho_convolution(d, &poly);
            if brute != conv {
                return Err(format!("{poly} d={d}: brute {brute} vs convolution {conv}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("d <= 10^4, five polynomials, {elapsed:.2?}"))
}

fn moser_macleod() -> Outcome {
    const LIMIT: usize = 1_000_000;
    let flags = squarefree_sieve(LIMIT);
    let mut count = 0u64;
    let mut worst = 0.0f64;
    for n in 1..=LIMIT as u64 {
        count += u64::from(flags[n as usize]);
        let err = squarefree_error_upper(count, n);
        let radius = moser_macleod_radius_lower(n);
        if err > radius {
            return Err(format!(
                "N={n}: |Q(N) - N/zeta(2)| <= {err} exceeds {radius}"
            ));
        }
        worst = worst.max(err / (n as f64).sqrt());
    }
    Ok(format!("N <= 10^6, max |E1|/sqrt(N) = {worst:.4}"))
}

fn polya_vinogradov() -> Outcome {
    let mut checked = 0;
    for delta in -100i64..=100 {
        let Ok(chi) = QuadraticCharacter::from_delta(delta) else {
            continue;
        };
        let parity = if delta > 0 { Parity::Even } else { Parity::Odd };
        let bound = fs_polya_vinogradov(chi.modulus(), parity).map_err(|e| e.to_string())?;
        let m = chi.empirical_max_partial_sum();
        if m as f64 > bound {
            return Err(format!("delta={delta}: M_chi = {m} > {bound}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} characters with |delta| <= 100"))
}

fn l_refinement_overlap() -> Outcome {
    for poly in polys() {
        let chi = QuadraticCharacter::new(&poly);
        let coarse = l_one(&chi, 1e-4).map_err(|e| e.to_string())?;
        let fine = l_one(&chi, 1e-6).map_err(|e| e.to_string())?;
        if !coarse.overlaps(&fine) {
            return Err(format!("delta={}: {coarse:?} vs {fine:?}", chi.delta()));
        }
    }
    Ok("epsilon 1e-4 and 1e-6 intervals overlap".into())
}

fn ramare() -> Outcome {
    const LIMIT: usize = 1_000_000;
    let flags = squarefree_sieve(LIMIT);
    let mut sum = 0.0f64;
    let mut min_margin = f64::INFINITY;
    for (x, &squarefree) in flags.iter().enumerate().skip(1) {
        if squarefree {
            // Upward-rounded partial sum.
            sum = (sum + (1.0 / x as f64).next_up()).next_up();
        }
        let rhs = ramare_rhs_lower(x as f64);
        if sum > rhs {
            return Err(format!("x={x}: {sum} > {rhs}"));
        }
        min_margin = min_margin.min(rhs - sum);
    }
    Ok(format!("x <= 10^6, min margin {min_margin:.4}"))
}

fn engine_cross_validation() -> Outcome {
    for poly in polys() {
        let table = naive_table(&poly, 1_000).map_err(|e| e.to_string())?;
        let mut running = 0u64;
        for n in 1..=1_000u64 {
            running += naive_partial(&poly, &table, n..n + 1)
                .map_err(|e| e.to_string())?
                .0;
            let sieve = sum_sieve(&poly, n).map_err(|e| e.to_string())?.value;
            if sieve != running {
                return Err(format!("{poly} N={n}: sieve {sieve} vs naive {running}"));
            }
        }
        for n in [10_000u64, 100_000] {
            let naive = sum_naive(&poly, n).map_err(|e| e.to_string())?.value;
            let sieve = sum_sieve(&poly, n).map_err(|e| e.to_string())?.value;
            if sieve != naive {
                return Err(format!("{poly} N={n}: sieve {sieve} vs naive {naive}"));
            }
        }
    }
    Ok("N <= 10^3 and N in {10^4, 10^5}, five polynomials".into())
}

fn asymptotic_ratio() -> Outcome {
    let poly = QuadraticPoly::new(0, 1).unwrap();
    let mut ratios = Vec::new();
    for n in [10_000u64, 100_000, 1_000_000] {
        let exact = sum_sieve(&poly, n).map_err(|e| e.to_string())?.value as f64;
        let log_n = (n as f64).ln();
        let ratio = exact / (3.0 / PI * n as f64 * log_n);
        let margin = RATIO_ENVELOPE / log_n;
        if (ratio - 1.0).abs() > margin {
            return Err(format!("N={n}: ratio {ratio} outside 1 +- {margin}"));
        }
        ratios.push(format!("{ratio:.4}"));
    }
    Ok(format!("ratios {} (envelope 4/log N)", ratios.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "divisor-sum bound holds on the example grid",
            bound_inequality,
        ),
        ("n^2+1 bound", square_plus_one),
        ("L(1, chi) table reproduction", l_value_table),
        ("rho convolution identity", rho_identity),
        ("squarefree count error", moser_macleod),
        ("explicit Polya-Vinogradov bound", polya_vinogradov),
        ("L-series truncation consistency", l_refinement_overlap),
        ("sum mu^2(n)/n bound", ramare),
        ("sieve vs naive engine", engine_cross_validation),
        ("N log N asymptotic ratio", asymptotic_ratio),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
