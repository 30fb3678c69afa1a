use tausum_core::arith::{rho_bruteforce, rho_convolution};
use tausum_core::bounds::divisor_sum_bound;
use tausum_core::character::{l_one, m_delta};
use tausum_core::divsum::{root_enumeration, sum_sieve};
use tausum_core::{QuadraticCharacter, QuadraticPoly};

const TABLE: [(i64, i64); 5] = [(0, 1), (5, 27), (2, 10), (5, -10), (10, 9)];

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn partial_sums_bounded_over_four_periods() {
    for (b, c) in TABLE {
        let poly = QuadraticPoly::new(b, c).unwrap();
        let chi = QuadraticCharacter::new(&poly);
        let q = chi.modulus();
        let empirical = chi.empirical_max_partial_sum();
        assert!(empirical as f64 <= m_delta(poly.delta()).unwrap());
        for l in 1..=4 * q {
            for p in l..=4 * q {
                assert!(chi.partial_sum(l, p).unsigned_abs() <= empirical);
            }
            // Any window of exactly one period sums to zero.
            assert_eq!(chi.partial_sum(l, l + q - 1), 0);
        }
    }
}

#[test]
fn root_counts_match_bruteforce() {
    for (b, c) in TABLE {
        let poly = QuadraticPoly::new(b, c).unwrap();
        for d in 1..=10_000u64 {
            assert_eq!(
                root_enumeration(d, &poly).len() as u64,
                rho_bruteforce(d, &poly)
            );
        }
    }
}

#[test]
fn rho_multiplicative_up_to_a_thousand() {
    let poly = QuadraticPoly::new(5, -10).unwrap();
    let rho: Vec<u64> = (0..=1_000u64)
        .map(|d| if d == 0 { 0 } else { rho_bruteforce(d, &poly) })
        .collect();
    for d1 in 1..=1_000u64 {
        for d2 in 1..=1_000u64 {
            if gcd(d1, d2) == 1 {
                let product = rho[d1 as usize] * rho[d2 as usize];
                assert_eq!(
                    rho_convolution(d1 * d2, &poly),
                    product as i64,
                    "{d1} * {d2}"
                );
            }
        }
    }
}

#[test]
fn explicit_bound_at_small_n() {
    for (b, c) in TABLE {
        let poly = QuadraticPoly::new(b, c).unwrap();
        let l = l_one(&QuadraticCharacter::new(&poly), 1e-6).unwrap();
        for n in 1..=10u64 {
            let exact = sum_sieve(&poly, n).unwrap().value;
            assert!(exact as f64 <= divisor_sum_bound(&poly, n, &l).unwrap().total);
        }
    }
}

#[test]
fn frozen_sums() {
    // Values from an independent divisor-count enumeration.
    let expected: [(i64, i64, [u64; 4]); 6] = [
        (0, 1, [32, 536, 7_508, 97_122]),
        (5, 27, [54, 742, 10_326, 133_974]),
        (2, 10, [52, 796, 11_418, 149_708]),
        (5, -10, [37, 570, 7_832, 101_256]),
        (10, 9, [72, 1_037, 14_635, 192_715]),
        (-5, 27, [34, 702, 10_250, 133_862]),
    ];
    for (b, c, values) in expected {
        let poly = QuadraticPoly::new(b, c).unwrap();
        for (n, want) in [10u64, 100, 1_000, 10_000].into_iter().zip(values) {
            assert_eq!(
                sum_sieve(&poly, n).unwrap().value,
                want,
                "b={b} c={c} N={n}"
            );
        }
    }
}
