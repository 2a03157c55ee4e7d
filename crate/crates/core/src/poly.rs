//! Per-residue polynomials for `P_k(n)`.
//!
//! On each class `n ≡ r (mod 3)`, `P_k(n)` agrees with a polynomial of degree
//! at most `k − 1`. [`derive_poly`] recovers it by exact Lagrange interpolation
//! through the first `k` in-class values and then checks `k` further values
//! against the recursion. [`table1`] holds the published polynomials for
//! `k ≤ 4` as fixtures.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::SequenceTable;

/// Polynomial in `n` with exact rational coefficients (lowest power first)
/// attached to the class `(k, r)` it describes. Trailing zero coefficients
/// are trimmed; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    k: u32,
    r: u32,
    coeffs: Vec<BigRational>,
}

fn check_class(k: u32, r: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("hypercube order k must be at least 1".into()));
    }
    if r > 2 {
        return Err(Error::Domain(format!("residue class must be 0, 1 or 2, got {r}")));
    }
    Ok(())
}

impl RationalPoly {
    pub fn new(k: u32, r: u32, mut coeffs: Vec<BigRational>) -> Result<Self> {
        check_class(k, r)?;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Ok(RationalPoly { k, r, coeffs })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn residue(&self) -> u32 {
        self.r
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree is at most `k − 1` (the zero polynomial always qualifies).
    pub fn within_degree_bound(&self) -> bool {
        self.degree().is_none_or(|d| d < self.k as usize)
    }

    /// Horner evaluation at any integer, ignoring the residue class.
    pub fn eval_at(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            k: self.k,
            r: self.r,
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let coeffs = json
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        RationalPoly::new(json.k, json.r, coeffs)
    }
}

/// JSON form `{"k": .., "r": .., "coeffs": ["a/b", ..]}`, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub k: u32,
    pub r: u32,
    pub coeffs: Vec<String>,
}

/// `a/b`, with `/b` omitted when `b = 1`.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((a, b)) => {
            let numer: BigInt = a.trim().parse().map_err(|_| bad())?;
            let denom: BigInt = b.trim().parse().map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(numer, denom))
        }
    }
}

impl fmt::Display for RationalPoly {
    /// `c_d*n^d + ... + c_1*n^1 + c_0`, zero terms omitted, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = format_rational(&c.abs());
            let term = if power == 0 {
                magnitude
            } else {
                format!("{magnitude}*n^{power}")
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{term}")?,
                (true, true) => write!(f, "-{term}")?,
                (false, false) => write!(f, " + {term}")?,
                (false, true) => write!(f, " - {term}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Coefficients of the Lagrange interpolant through `(xs[i], ys[i])`.
fn lagrange_coefficients(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let len = xs.len();
    let mut out = vec![BigRational::zero(); len];
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        // basis = prod_{j != i} (n - x_j), built up one linear factor at a time
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (power, c) in basis.iter().enumerate() {
                next[power + 1] += c;
                next[power] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (acc, c) in out.iter_mut().zip(&basis) {
            *acc += c * &scale;
        }
    }
    out
}

/// Interpolates `P_k` on the class `n ≡ r (mod 3)` through
/// `n = r, r+3, ..., r+3(k−1)` and confirms the result at
/// `n = r+3k, ..., r+3(2k−1)`.
pub fn derive_poly(k: u32, r: u32) -> Result<RationalPoly> {
    check_class(k, r)?;
    let last = r + 3 * (2 * k - 1);
    let table = SequenceTable::new(k, last)?;
    derive_poly_with(&table, k, r)
}

/// [`derive_poly`] reusing an existing table (which must reach `n = r + 3(2k−1)`).
pub fn derive_poly_with(table: &SequenceTable, k: u32, r: u32) -> Result<RationalPoly> {
    check_class(k, r)?;
    let sample = |n: u32| -> Result<BigRational> {
        Ok(BigRational::from_integer(BigInt::from(table.p(k, n)?.clone())))
    };
    let abscissae: Vec<u32> = (0..k).map(|i| r + 3 * i).collect();
    let xs: Vec<BigRational> = abscissae
        .iter()
        .map(|&n| BigRational::from_integer(n.into()))
        .collect();
    let ys = abscissae
        .iter()
        .map(|&n| sample(n))
        .collect::<Result<Vec<_>>>()?;
    let poly = RationalPoly::new(k, r, lagrange_coefficients(&xs, &ys))?;
    for i in k..2 * k {
        let n = r + 3 * i;
        if poly.eval_at(&BigRational::from_integer(n.into())) != sample(n)? {
            return Err(Error::PolynomialMismatch {
                k,
                r,
                bound: k - 1,
                n,
            });
        }
    }
    Ok(poly)
}

/// Evaluates `poly` at an in-class `n`; the result is an integer.
pub fn eval_poly(poly: &RationalPoly, n: u32) -> Result<BigRational> {
    if n % 3 != poly.r {
        return Err(Error::Domain(format!(
            "n = {n} is not in residue class {} mod 3",
            poly.r
        )));
    }
    Ok(poly.eval_at(&BigRational::from_integer(n.into())))
}

/// Published `P_k` polynomials for `k = 1..=4`, indexed `[k - 1][r]`,
/// as `(numerator, denominator)` pairs lowest power first.
const TABLE1: [[&[(i64, i64)]; 3]; 4] = [
    [&[(1, 1)], &[], &[(1, 1)]],
    [&[(1, 1)], &[(4, 3), (2, 3)], &[(5, 3), (2, 3)]],
    [
        &[(1, 1), (2, 3), (2, 9)],
        &[(8, 9), (8, 9), (2, 9)],
        &[(5, 3), (2, 3)],
    ],
    [
        &[(1, 1), (2, 9), (2, 9), (4, 81)],
        &[(8, 9), (8, 9), (2, 9)],
        &[(103, 81), (10, 27), (4, 27), (4, 81)],
    ],
];

/// Golden fixture for `(k, r)`, `1 ≤ k ≤ 4`.
pub fn table1(k: u32, r: u32) -> Result<RationalPoly> {
    check_class(k, r)?;
    if k > 4 {
        return Err(Error::Domain(format!("fixtures cover k = 1..=4, got {k}")));
    }
    let coeffs = TABLE1[k as usize - 1][r as usize]
        .iter()
        .map(|&(a, b)| BigRational::new(a.into(), b.into()))
        .collect();
    RationalPoly::new(k, r, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::p_value;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn int(v: i64) -> BigRational {
        q(v, 1)
    }

    #[test]
    fn derive_examples() {
        let p11 = derive_poly(1, 1).unwrap();
        assert_eq!(p11.degree(), None);
        assert_eq!(p11.to_string(), "0");

        let p21 = derive_poly(2, 1).unwrap();
        assert_eq!(p21.coeffs(), &[q(4, 3), q(2, 3)]);

        let p40 = derive_poly(4, 0).unwrap();
        assert_eq!(p40.coeffs(), &[int(1), q(2, 9), q(2, 9), q(4, 81)]);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_poly(&derive_poly(2, 1).unwrap(), 4).unwrap(), int(4));
        assert_eq!(eval_poly(&derive_poly(1, 0).unwrap(), 0).unwrap(), int(1));
        assert_eq!(eval_poly(&derive_poly(3, 0).unwrap(), 6).unwrap(), int(13));
        assert!(matches!(
            eval_poly(&derive_poly(3, 0).unwrap(), 7),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn fixture_examples() {
        assert_eq!(table1(3, 2).unwrap().coeffs(), &[q(5, 3), q(2, 3)]);
        assert_eq!(
            table1(4, 2).unwrap().coeffs(),
            &[q(103, 81), q(10, 27), q(4, 27), q(4, 81)]
        );
        assert_eq!(table1(1, 2).unwrap().coeffs(), &[int(1)]);
        assert!(table1(5, 0).is_err());
        assert!(table1(0, 0).is_err());
        assert!(table1(2, 3).is_err());
    }

    #[test]
    fn fixtures_evaluate_to_recursion_values() {
        // Independent of interpolation: each fixture must reproduce P_k on its class.
        for k in 1..=4 {
            for r in 0..3 {
                let poly = table1(k, r).unwrap();
                for n in (r..=60).step_by(3) {
                    let expected = BigRational::from_integer(p_value(k, n).unwrap().into());
                    assert_eq!(eval_poly(&poly, n).unwrap(), expected, "k={k} r={r} n={n}");
                }
            }
        }
    }

    #[test]
    fn lagrange_recovers_known_polynomial() {
        // 3n^2 - n/2 + 7 sampled at four points; the cubic term must vanish.
        let f = |x: i64| q(6 * x * x - x + 14, 2);
        let xs: Vec<_> = [0, 3, 6, 9].iter().map(|&x| int(x)).collect();
        let ys: Vec<_> = [0, 3, 6, 9].iter().map(|&x| f(x)).collect();
        let c = lagrange_coefficients(&xs, &ys);
        assert_eq!(c, vec![int(7), q(-1, 2), int(3), int(0)]);
    }

    #[test]
    fn display_format() {
        assert_eq!(derive_poly(2, 1).unwrap().to_string(), "2/3*n^1 + 4/3");
        assert_eq!(
            table1(4, 2).unwrap().to_string(),
            "4/81*n^3 + 4/27*n^2 + 10/27*n^1 + 103/81"
        );
        let neg = RationalPoly::new(3, 0, vec![int(0), q(-1, 3), int(1)]).unwrap();
        assert_eq!(neg.to_string(), "1*n^2 - 1/3*n^1");
        let lead_neg = RationalPoly::new(3, 0, vec![int(2), int(0), q(-5, 2)]).unwrap();
        assert_eq!(lead_neg.to_string(), "-5/2*n^2 + 2");
    }

    #[test]
    fn json_form() {
        let poly = table1(2, 1).unwrap();
        let json = serde_json::to_string(&poly.to_json()).unwrap();
        assert_eq!(json, r#"{"k":2,"r":1,"coeffs":["4/3","2/3"]}"#);
        let back: PolyJson = serde_json::from_str(&json).unwrap();
        assert_eq!(RationalPoly::from_json(&back).unwrap(), poly);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-4/6").unwrap(), q(-2, 3));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = RationalPoly::new(3, 0, vec![int(1), int(0), int(0)]).unwrap();
        assert_eq!(p.degree(), Some(0));
        let zero = RationalPoly::new(1, 1, vec![int(0)]).unwrap();
        assert_eq!(zero.degree(), None);
        assert!(zero.within_degree_bound());
    }

    #[test]
    fn lower_degree_classes() {
        assert_eq!(derive_poly(3, 2).unwrap().degree(), Some(1));
        assert_eq!(derive_poly(4, 1).unwrap().degree(), Some(2));
    }
}
