//! Replays the acceptance checks from the command line.
//!
//! Each check reports the individual cases that failed so a red run names
//! exactly which `(k, n)` or `(k, r)` went wrong.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::graph::{build_cube, fib_table};
use crate::packing::{matching_max, max_packing, verify_packing, SolverConfig};
use crate::poly::{derive_poly_with, eval_poly, table1, RationalPoly};
use crate::sequences::{fib_asymptotic_estimate, q_from_p, SequenceTable};
use crate::subcubes::cross_check_induced;

/// Source of the published fixtures; swapped out to test fault detection.
pub type FixtureFn = fn(u32, u32) -> Result<RationalPoly>;

#[derive(Debug, Clone, Copy)]
pub struct SelftestOptions {
    /// Halve every dimension cap.
    pub quick: bool,
    pub fixtures: FixtureFn,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            quick: false,
            fixtures: table1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Caps {
    poly_n: u32,
    k1_generic: u32,
    k1_matching: u32,
    grid: [(u32, u32); 3],
    identity_n: u32,
    fib_identity_n: u32,
    matching_parity_n: u32,
    ratio_n: u32,
    induced_n: u32,
}

impl Caps {
    fn new(quick: bool) -> Self {
        let full = Caps {
            poly_n: 120,
            k1_generic: 12,
            k1_matching: 20,
            grid: [(2, 11), (3, 10), (4, 10)],
            identity_n: 120,
            fib_identity_n: 200,
            matching_parity_n: 15,
            ratio_n: 120,
            induced_n: 6,
        };
        if !quick {
            return full;
        }
        Caps {
            poly_n: full.poly_n / 2,
            k1_generic: full.k1_generic / 2,
            k1_matching: full.k1_matching / 2,
            grid: full.grid.map(|(k, n)| (k, n / 2)),
            identity_n: full.identity_n / 2,
            fib_identity_n: full.fib_identity_n / 2,
            matching_parity_n: full.matching_parity_n / 2,
            // The convergence thresholds are taken at n = 60..62.
            ratio_n: 62,
            induced_n: full.induced_n / 2,
        }
    }
}

fn timed(
    id: u32,
    name: &'static str,
    body: impl FnOnce(&mut Vec<String>, &mut Vec<String>),
) -> CheckOutcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    body(&mut failures, &mut notes);
    CheckOutcome {
        id,
        name,
        failures,
        notes,
        elapsed: start.elapsed(),
    }
}

fn as_rational(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

/// Runs every check in order.
pub fn run(options: &SelftestOptions) -> Vec<CheckOutcome> {
    let caps = Caps::new(options.quick);
    let table = SequenceTable::new(7, 2 * caps.ratio_n.max(caps.poly_n).max(caps.identity_n))
        .expect("k_max >= 1");
    let mut out = Vec::new();

    out.push(timed(1, "published polynomial table", |fail, _| {
        for k in 1..=4 {
            for r in 0..3 {
                let derived = derive_poly_with(&table, k, r);
                let fixture = (options.fixtures)(k, r);
                match (derived, fixture) {
                    (Ok(d), Ok(f)) if d == f => {}
                    (Ok(d), Ok(f)) => fail.push(format!("(k={k} r={r}) derived {d} but table has {f}")),
                    (d, f) => fail.push(format!("(k={k} r={r}) error: {:?} {:?}", d.err(), f.err())),
                }
            }
        }
    }));

    out.push(timed(2, "polynomials agree with recursion", |fail, _| {
        for k in 1..=6 {
            for r in 0..3 {
                let poly = match derive_poly_with(&table, k, r) {
                    Ok(p) => p,
                    Err(e) => {
                        fail.push(format!("(k={k} r={r}) {e}"));
                        continue;
                    }
                };
                if !poly.within_degree_bound() {
                    fail.push(format!("(k={k} r={r}) degree {:?} exceeds {}", poly.degree(), k - 1));
                }
                for n in (r..=caps.poly_n).step_by(3) {
                    let value = eval_poly(&poly, n).expect("in class");
                    let expected = as_rational(table.p(k, n).expect("in table"));
                    if value != expected {
                        fail.push(format!("(k={k} n={n}) poly gives {value}, recursion {expected}"));
                    }
                }
            }
        }
    }));

    out.push(timed(3, "packing oracle grid", |fail, notes| {
        let mut cells: Vec<(u32, u32, SolverConfig)> = (0..=caps.k1_generic)
            .map(|n| (1, n, SolverConfig::exhaustive()))
            .collect();
        cells.extend((0..=caps.k1_matching).map(|n| (1, n, SolverConfig::default())));
        for (k, n_max) in caps.grid {
            cells.extend((0..=n_max).map(|n| (k, n, SolverConfig::exhaustive())));
        }
        let mut mismatched = 0;
        for (k, n, cfg) in cells {
            let route = if cfg.matching_fast_path { "matching" } else { "search" };
            let result = match max_packing(n, k, &cfg) {
                Ok(r) => r,
                Err(e) => {
                    fail.push(format!("(k={k} n={n} {route}) {e}"));
                    continue;
                }
            };
            let cube = build_cube(n).expect("within capacity");
            if !result.optimal {
                fail.push(format!("(k={k} n={n} {route}) search did not finish"));
            }
            if !verify_packing(&cube, &result) {
                fail.push(format!("(k={k} n={n} {route}) witness failed verification"));
            }
            let q = table.q(k, n).expect("in table");
            let p = table.p(k, n).expect("in table");
            if BigUint::from(result.size()) != *q || BigUint::from(result.uncovered_count()) != *p {
                mismatched += 1;
                fail.push(format!(
                    "(k={k} n={n} {route}) found {} cubes/{} uncovered; recursion says {q}/{p}",
                    result.size(),
                    result.uncovered_count()
                ));
            }
        }
        if mismatched > 0 {
            notes.push(format!("{mismatched} cells where the exact optimum differs from q_k(n)"));
        }
    }));

    out.push(timed(4, "identities", |fail, _| {
        for k in 1..=5 {
            for n in 3..=caps.identity_n {
                let lhs = (table.p(k, n - 2).expect("in table") << 1u32)
                    + table.p(k + 1, n - 3).expect("in table");
                if lhs != *table.p(k + 1, n).expect("in table") {
                    fail.push(format!("(k={k} n={n}) 2P_k(n-2) + P_(k+1)(n-3) != P_(k+1)(n)"));
                }
            }
        }
        let fib = fib_table(caps.fib_identity_n + 2);
        for n in 1..=caps.fib_identity_n as usize {
            if fib[n + 2] != (&fib[n] << 1u32) + &fib[n - 1] {
                fail.push(format!("(n={n}) F_(n+2) != 2F_n + F_(n-1)"));
            }
        }
    }));

    out.push(timed(5, "two routes to q", |fail, _| {
        for k in 1..=6 {
            for n in 0..=caps.identity_n {
                match q_from_p(k, n) {
                    Ok(q) if q == *table.q(k, n).expect("in table") => {}
                    Ok(q) => fail.push(format!("(k={k} n={n}) q_from_p {q} != q_value")),
                    Err(e) => fail.push(format!("(k={k} n={n}) {e}")),
                }
            }
        }
    }));

    out.push(timed(6, "perfect matchings", |fail, _| {
        for n in 0..=caps.matching_parity_n {
            let r = match max_packing(n, 1, &SolverConfig::default()) {
                Ok(r) => r,
                Err(e) => {
                    fail.push(format!("(n={n}) {e}"));
                    continue;
                }
            };
            if (r.uncovered_count() == 0) != (n % 3 == 1) {
                fail.push(format!("(n={n}) {} uncovered", r.uncovered_count()));
            }
            if matching_max(n).ok() != Some(r.size() as u64) {
                fail.push(format!("(n={n}) matching size disagrees"));
            }
        }
    }));

    out.push(timed(7, "coverage converges", |fail, notes| {
        let threshold = BigRational::new(BigInt::one(), BigInt::from(100_000_000u64));
        for k in 1..=4 {
            for n in 60..=62 {
                let (uncovered, covered) = table.coverage_ratio(k, n).expect("in table");
                if uncovered >= threshold {
                    fail.push(format!("(k={k} n={n}) P/F = {uncovered} not below 1e-8"));
                }
                if BigRational::one() - covered >= threshold {
                    fail.push(format!("(k={k} n={n}) 2^k q/F not within 1e-8 of 1"));
                }
            }
            for r in 0..3 {
                let ratios: Vec<(u32, BigRational)> = (12..=caps.ratio_n)
                    .filter(|n| n % 3 == r)
                    .map(|n| (n, table.coverage_ratio(k, n).expect("in table").0))
                    .collect();
                if ratios.iter().all(|(_, v)| v.is_zero()) {
                    notes.push(format!("(k={k} r={r}) P is identically zero"));
                    continue;
                }
                for pair in ratios.windows(2) {
                    if pair[1].1 >= pair[0].1 {
                        fail.push(format!("(k={k} n={}) ratio did not decrease", pair[1].0));
                    }
                }
            }
        }
    }));

    out.push(timed(8, "subcube model", |fail, _| {
        for n in 0..=caps.induced_n {
            for k in 0..=2 {
                match cross_check_induced(n, k) {
                    Ok(c) if c.passed() => {}
                    Ok(c) => fail.push(format!(
                        "(n={n} k={k}) induced {} vs patterns {}",
                        c.induced_count, c.pattern_count
                    )),
                    Err(e) => fail.push(format!("(n={n} k={k}) {e}")),
                }
            }
        }
    }));

    out.push(timed(9, "asymptotic estimate", |fail, _| {
        let fib = fib_table(32);
        let rel = |n: u32| {
            let exact = fib[n as usize + 2].to_string().parse::<f64>().expect("decimal");
            (fib_asymptotic_estimate(n) - exact).abs() / exact
        };
        if rel(30) >= 1e-6 {
            fail.push(format!("(n=30) relative error {:e}", rel(30)));
        }
        let errors: Vec<f64> = [5, 10, 15, 20, 25, 30].iter().map(|&n| rel(n)).collect();
        if !errors.windows(2).all(|w| w[1] < w[0]) {
            fail.push(format!("errors not decreasing: {errors:?}"));
        }
    }));

    out
}
