//! Exact values of `q_k(n)` (maximum number of disjoint `Q_k` in `Γ_n`) and
//! `P_k(n)` (vertices left uncovered by such a family).
//!
//! The two sequences are computed by independent recursions:
//!
//! * `P_1(n) = 0` if `n ≡ 1 (mod 3)` and `1` otherwise; for `k ≥ 2`,
//!   `P_k(0..3) = 1, 2, 3` and `P_k(n + 3) = P_k(n) + 2·P_{k-1}(n + 1)`.
//! * `q_k(n) = q_{k-1}(n - 2) + q_k(n - 3)` for `n ≥ 3`, with `q_0(m) = F_{m+2}`
//!   used only as the inner term of the `k = 1` row.
//!
//! They are tied together by `P_k(n) = F_{n+2} − 2^k·q_k(n)`, which
//! [`SequenceTable::check_consistency`] and [`q_from_p`] exercise.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{fib_table, SequenceValue};

fn check_order(k: u32) -> Result<()> {
    if k == 0 {
        Err(Error::Domain("hypercube order k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `P_k(n)` rows for `k = 1..=k_max`, `n = 0..=n_max`. Row `i` holds `k = i + 1`.
fn p_rows(k_max: u32, n_max: u32) -> Vec<Vec<BigUint>> {
    let width = n_max as usize + 1;
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(k_max as usize);
    let first: Vec<BigUint> = (0..width)
        .map(|n| {
            if n % 3 == 1 {
                BigUint::zero()
            } else {
                BigUint::one()
            }
        })
        .collect();
    rows.push(first);
    for k in 2..=k_max as usize {
        let prev = &rows[k - 2];
        let mut row: Vec<BigUint> = Vec::with_capacity(width);
        for n in 0..width {
            let value = if n < 3 {
                BigUint::from(n as u32 + 1)
            } else {
                &row[n - 3] + (&prev[n - 2] << 1u32)
            };
            row.push(value);
        }
        rows.push(row);
    }
    rows
}

/// `q_k(n)` rows for `k = 1..=k_max`, `n = 0..=n_max`; `fib` must reach `F_{n_max}`.
fn q_rows(k_max: u32, n_max: u32, fib: &[BigUint]) -> Vec<Vec<BigUint>> {
    let width = n_max as usize + 1;
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(k_max as usize);
    let mut first: Vec<BigUint> = Vec::with_capacity(width);
    for n in 0..width {
        let value = match n {
            0 => BigUint::zero(),
            1 | 2 => BigUint::one(),
            // q_0(n - 2) = F_n
            _ => &fib[n] + &first[n - 3],
        };
        first.push(value);
    }
    rows.push(first);
    for k in 2..=k_max as usize {
        let prev = &rows[k - 2];
        let mut row: Vec<BigUint> = Vec::with_capacity(width);
        for n in 0..width {
            let value = if n < 3 {
                BigUint::zero()
            } else {
                &prev[n - 2] + &row[n - 3]
            };
            row.push(value);
        }
        rows.push(row);
    }
    rows
}

/// Dense memo of `F`, `P` and `q` over `1 ≤ k ≤ k_max`, `0 ≤ n ≤ n_max`,
/// filled bottom-up and read-only afterwards.
#[derive(Debug, Clone)]
pub struct SequenceTable {
    k_max: u32,
    n_max: u32,
    fib: Vec<BigUint>,
    p: Vec<Vec<BigUint>>,
    q: Vec<Vec<BigUint>>,
}

impl SequenceTable {
    pub fn new(k_max: u32, n_max: u32) -> Result<Self> {
        check_order(k_max)?;
        let fib = fib_table(n_max + 2);
        Ok(SequenceTable {
            k_max,
            n_max,
            p: p_rows(k_max, n_max),
            q: q_rows(k_max, n_max, &fib),
            fib,
        })
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    fn check_range(&self, k: u32, n: u32) -> Result<()> {
        check_order(k)?;
        if k > self.k_max || n > self.n_max {
            return Err(Error::Domain(format!(
                "(k, n) = ({k}, {n}) outside table bounds ({}, {})",
                self.k_max, self.n_max
            )));
        }
        Ok(())
    }

    /// `F_m` for `m ≤ n_max + 2`.
    pub fn fib(&self, m: u32) -> Result<&BigUint> {
        self.fib
            .get(m as usize)
            .ok_or_else(|| Error::Domain(format!("F_{m} outside table bounds")))
    }

    pub fn p(&self, k: u32, n: u32) -> Result<&BigUint> {
        self.check_range(k, n)?;
        Ok(&self.p[k as usize - 1][n as usize])
    }

    pub fn q(&self, k: u32, n: u32) -> Result<&BigUint> {
        self.check_range(k, n)?;
        Ok(&self.q[k as usize - 1][n as usize])
    }

    /// `|V(Γ_n)| = F_{n+2}`.
    pub fn vertex_count(&self, n: u32) -> Result<&BigUint> {
        self.fib(n + 2)
    }

    /// Exact `(P_k(n) / F_{n+2}, 2^k·q_k(n) / F_{n+2})`.
    pub fn coverage_ratio(&self, k: u32, n: u32) -> Result<(BigRational, BigRational)> {
        let total = BigInt::from(self.vertex_count(n)?.clone());
        let uncovered = BigInt::from(self.p(k, n)?.clone());
        let covered = BigInt::from(self.q(k, n)?.clone() << k);
        Ok((
            BigRational::new(uncovered, total.clone()),
            BigRational::new(covered, total),
        ))
    }

    /// Verifies `P_k(n) = F_{n+2} − 2^k·q_k(n)` over the whole table.
    pub fn check_consistency(&self) -> Result<()> {
        for k in 1..=self.k_max {
            for n in 0..=self.n_max {
                let p = &self.p[k as usize - 1][n as usize];
                let q = &self.q[k as usize - 1][n as usize];
                let f = &self.fib[n as usize + 2];
                if (q << k) + p != *f {
                    return Err(Error::Inconsistent(format!(
                        "P_{k}({n}) = {p}, q_{k}({n}) = {q}, F_{} = {f}",
                        n + 2
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Exact `P_k(n)`.
pub fn p_value(k: u32, n: u32) -> Result<SequenceValue> {
    check_order(k)?;
    let mut rows = p_rows(k, n);
    Ok(rows.swap_remove(k as usize - 1).swap_remove(n as usize))
}

/// Exact `q_k(n)` via the packing recursion.
pub fn q_value(k: u32, n: u32) -> Result<SequenceValue> {
    check_order(k)?;
    let fib = fib_table(n + 2);
    let mut rows = q_rows(k, n, &fib);
    Ok(rows.swap_remove(k as usize - 1).swap_remove(n as usize))
}

/// `q_k(n)` recovered from `P_k(n)` as `(F_{n+2} − P_k(n)) / 2^k`.
pub fn q_from_p(k: u32, n: u32) -> Result<SequenceValue> {
    let p = p_value(k, n)?;
    let f = crate::graph::fib(n + 2);
    if p > f {
        return Err(Error::Inconsistent(format!(
            "P_{k}({n}) = {p} exceeds F_{} = {f}",
            n + 2
        )));
    }
    let (quotient, remainder) = (f - p).div_rem(&(BigUint::one() << k));
    if !remainder.is_zero() {
        return Err(Error::Inconsistent(format!(
            "F_{} − P_{k}({n}) is not divisible by 2^{k}",
            n + 2
        )));
    }
    Ok(quotient)
}

/// Whether `2·P_k(n−2) + P_{k+1}(n−3) = P_{k+1}(n)`.
pub fn check_identity(k: u32, n: u32) -> Result<bool> {
    check_order(k)?;
    if n < 3 {
        return Err(Error::Domain(format!("identity needs n >= 3, got {n}")));
    }
    let rows = p_rows(k + 1, n);
    let lower = &rows[k as usize - 1];
    let upper = &rows[k as usize];
    let lhs = (&lower[n as usize - 2] << 1u32) + &upper[n as usize - 3];
    Ok(lhs == upper[n as usize])
}

/// Exact `(P_k(n) / F_{n+2}, 2^k·q_k(n) / F_{n+2})`; the two sum to one.
pub fn coverage_ratio(k: u32, n: u32) -> Result<(BigRational, BigRational)> {
    SequenceTable::new(k, n)?.coverage_ratio(k, n)
}

/// Constants of `F_{n+2} ~ c·φ^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    /// `c = (3 + √5) / (2√5)`.
    pub leading: f64,
    /// `φ = (1 + √5) / 2`.
    pub golden: f64,
}

impl AsymptoticConstants {
    /// Both constants are correct to f64 rounding (relative error below 1e-15).
    pub fn new() -> Self {
        let root5 = 5f64.sqrt();
        AsymptoticConstants {
            leading: (3.0 + root5) / (2.0 * root5),
            golden: (1.0 + root5) / 2.0,
        }
    }
}

impl Default for AsymptoticConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// `c·φ^n`, the leading-order estimate of `F_{n+2}`.
pub fn fib_asymptotic_estimate(n: u32) -> f64 {
    let c = AsymptoticConstants::new();
    c.leading * c.golden.powf(f64::from(n))
}

/// Decimal rendering of a rational with `places` digits after the point,
/// truncated toward zero. Display only.
pub fn rational_to_decimal(value: &BigRational, places: usize) -> String {
    let negative = value.numer().sign() == num_bigint::Sign::Minus;
    let numer = value.numer().magnitude();
    let denom = value.denom().magnitude();
    let scale = num_traits::pow(BigUint::from(10u32), places);
    let scaled = numer * &scale / denom;
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let mut out = String::new();
    if negative && !(int_part.is_zero() && frac_part.is_zero()) {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if places > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac_part.to_string(), width = places));
    }
    out
}

/// Nearest f64 to a rational; loses precision for huge numerators, display only.
pub fn rational_to_f64(value: &BigRational) -> f64 {
    let n = value.numer().to_f64().unwrap_or(f64::NAN);
    let d = value.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        rational_to_decimal(value, 20).parse().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fib;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn p_examples() {
        assert_eq!(p_value(1, 4).unwrap(), big(0));
        assert_eq!(p_value(2, 2).unwrap(), big(3));
        assert_eq!(p_value(2, 4).unwrap(), big(4));
        assert_eq!(p_value(3, 6).unwrap(), big(13));
    }

    #[test]
    fn p_hand_unrolled_small_values() {
        // P_2: 1, 2, 3, then P_2(n+3) = P_2(n) + 2 P_1(n+1).
        let hand = [1, 2, 3, 1, 4, 5, 1, 6, 7, 1];
        for (n, expected) in hand.iter().enumerate() {
            assert_eq!(p_value(2, n as u32).unwrap(), big(*expected), "n = {n}");
        }
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_value(1, 1).unwrap(), big(1));
        assert_eq!(q_value(2, 5).unwrap(), big(2));
        assert_eq!(q_value(3, 8).unwrap(), big(6));
    }

    #[test]
    fn q_from_p_examples() {
        assert_eq!(q_from_p(1, 4).unwrap(), big(4));
        assert_eq!(q_from_p(2, 2).unwrap(), big(0));
        assert_eq!(q_from_p(4, 3).unwrap(), big(0));
        assert_eq!(p_value(4, 3).unwrap(), big(5));
    }

    #[test]
    fn order_zero_is_rejected() {
        assert!(matches!(p_value(0, 3), Err(Error::Domain(_))));
        assert!(matches!(q_value(0, 3), Err(Error::Domain(_))));
        assert!(matches!(q_from_p(0, 3), Err(Error::Domain(_))));
        assert!(matches!(SequenceTable::new(0, 3), Err(Error::Domain(_))));
        assert!(matches!(check_identity(1, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn identity_examples() {
        assert!(check_identity(1, 3).unwrap());
        assert!(check_identity(2, 6).unwrap());
        assert!(check_identity(1, 4).unwrap());
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(coverage_ratio(1, 7).unwrap(), (ratio(0, 1), ratio(1, 1)));
        assert_eq!(coverage_ratio(1, 6).unwrap(), (ratio(1, 21), ratio(20, 21)));
        assert_eq!(coverage_ratio(2, 5).unwrap(), (ratio(5, 13), ratio(8, 13)));
    }

    #[test]
    fn table_lookups_match_free_functions() {
        let table = SequenceTable::new(6, 60).unwrap();
        table.check_consistency().unwrap();
        for k in 1..=6 {
            for n in [0, 1, 2, 3, 17, 59, 60] {
                assert_eq!(*table.p(k, n).unwrap(), p_value(k, n).unwrap());
                assert_eq!(*table.q(k, n).unwrap(), q_value(k, n).unwrap());
            }
        }
        assert_eq!(*table.fib(62).unwrap(), fib(62));
        assert!(table.p(7, 0).is_err());
        assert!(table.q(1, 61).is_err());
    }

    #[test]
    fn asymptotic_examples() {
        let c = AsymptoticConstants::new();
        assert!((c.golden * c.golden - c.golden - 1.0).abs() < 1e-12);
        let e0 = fib_asymptotic_estimate(0);
        assert!((e0 - 1.170_820_393_249_937).abs() < 1e-12);
        assert!((e0 - 1.0).abs() < 0.18);
        assert!((fib_asymptotic_estimate(10) - 144.0).abs() / 144.0 < 0.005);
        let f32_ = 2_178_309.0;
        assert!((fib_asymptotic_estimate(30) - f32_).abs() / f32_ < 1e-6);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_to_decimal(&ratio(1, 21), 12), "0.047619047619");
        assert_eq!(rational_to_decimal(&ratio(1, 1), 3), "1.000");
        assert_eq!(rational_to_decimal(&ratio(-1, 4), 2), "-0.25");
        assert_eq!(rational_to_decimal(&ratio(7, 2), 0), "3");
        assert!((rational_to_f64(&ratio(5, 13)) - 5.0 / 13.0).abs() < 1e-15);
    }
}
