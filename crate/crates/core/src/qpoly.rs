//! Exact polynomials in one indeterminate `q` with arbitrary-precision integer
//! coefficients, together with the q-analogues used throughout the crate:
//! q-integers, q-factorials, Gaussian binomials and the closed-form
//! q-Narayana numbers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial `c_0 + c_1 q + ... + c_d q^d` over the integers.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::monomial(1, 0)
    }

    /// `coeff * q^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: usize) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = coeff;
        QPoly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = QPoly {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient of `q^exp` (zero beyond the degree).
    pub fn coeff(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, q: impl Into<BigInt>) -> BigInt {
        let q = q.into();
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &q + c)
    }

    /// Value at `q = 1`, the sum of the coefficients.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl Add for &QPoly {
    type Output = QPoly;

    fn add(self, rhs: &QPoly) -> QPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        let mut p = QPoly { coeffs };
        p.normalize();
        p
    }
}

impl Add for QPoly {
    type Output = QPoly;

    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

impl Neg for &QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Sub for QPoly {
    type Output = QPoly;

    fn sub(self, rhs: QPoly) -> QPoly {
        &self - &rhs
    }
}

impl Mul for &QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = QPoly { coeffs };
        p.normalize();
        p
    }
}

impl Mul for QPoly {
    type Output = QPoly;

    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |acc, p| &acc * &p)
    }
}

/// Human-readable form such as `1 + 3q^2 - q^5`; zero terms are omitted.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match exp {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if exp == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The q-integer `[n] = 1 + q + ... + q^(n-1)`; `[0] = 0`.
pub fn q_int(n: usize) -> QPoly {
    QPoly {
        coeffs: vec![BigInt::one(); n],
    }
}

/// `[n]! = [n][n-1]...[1]`; `[0]! = 1`.
pub fn q_factorial(n: usize) -> QPoly {
    (1..=n).map(q_int).product()
}

/// Gaussian binomial coefficient, zero when `k < 0` or `k > n`.
///
/// Uses the q-Pascal rule `[n,k] = [n-1,k-1] + q^k [n-1,k]` row by row, so no
/// division is ever performed.
pub fn q_binomial(n: usize, k: i64) -> QPoly {
    if k < 0 || k as u64 > n as u64 {
        return QPoly::zero();
    }
    let k = k as usize;
    // row[j] holds [m, j] for j <= min(m, k)
    let mut row: Vec<QPoly> = vec![QPoly::one()];
    for m in 1..=n {
        let top = m.min(k);
        let mut next = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let left = if j >= 1 { row.get(j - 1) } else { None };
            let right = row.get(j).map(|p| p.shift(j));
            let p = match (left, right) {
                (Some(a), Some(b)) => a + &b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b,
                (None, None) => QPoly::zero(),
            };
            next.push(p);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Exact quotient `a / b` over the integers.
///
/// Fails with [`Error::DivisionByZero`] for `b = 0` and with
/// [`Error::InexactDivision`] (carrying the remainder) when `b` does not
/// divide `a`.
pub fn exact_div(a: &QPoly, b: &QPoly) -> Result<QPoly> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let lead = &b.coeffs[db];
    let Some(da) = a.degree() else {
        return Ok(QPoly::zero());
    };
    if da < db {
        return Err(Error::InexactDivision {
            remainder: a.clone(),
        });
    }
    let mut rem = a.coeffs.clone();
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for shift in (0..=da - db).rev() {
        let top = &rem[shift + db];
        if top.is_zero() {
            continue;
        }
        if !(top % lead).is_zero() {
            return Err(Error::InexactDivision {
                remainder: QPoly::from_coeffs(rem),
            });
        }
        let factor = top / lead;
        for (j, bc) in b.coeffs.iter().enumerate() {
            rem[shift + j] -= &factor * bc;
        }
        quot[shift] = factor;
    }
    let rem = QPoly::from_coeffs(rem);
    if !rem.is_zero() {
        return Err(Error::InexactDivision { remainder: rem });
    }
    Ok(QPoly::from_coeffs(quot))
}

/// Closed form `(1/[n]) [n,k] [n,k+1] q^(k^2+k)` of the q-Narayana number.
pub fn q_narayana_closed(n: usize, k: usize) -> Result<QPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("q-Narayana numbers need n >= 1".into()));
    }
    if k >= n {
        return Ok(QPoly::zero());
    }
    let product = &q_binomial(n, k as i64) * &q_binomial(n, k as i64 + 1);
    let quotient = exact_div(&product, &q_int(n))?;
    Ok(quotient.shift(k * k + k))
}

/// Ordinary binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Narayana number `(1/n) C(n,k) C(n,k+1)`.
pub fn narayana(n: usize, k: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("Narayana numbers need n >= 1".into()));
    }
    Ok(binomial(n, k) * binomial(n, k + 1) / n)
}

/// Catalan number `C(2n,n)/(n+1)`.
pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}
