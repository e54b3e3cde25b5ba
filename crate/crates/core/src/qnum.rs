//! Symmetric q-integers, q-factorials and q-Gaussian binomials as exact
//! Laurent polynomials in `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, LaurentPoly, VarId};

/// A Laurent polynomial in `q` alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QScalar(LaurentPoly);

impl QScalar {
    pub fn zero() -> Self {
        QScalar(LaurentPoly::zero(0))
    }

    pub fn one() -> Self {
        QScalar(LaurentPoly::one(0))
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QScalar(LaurentPoly::constant(0, c))
    }

    /// `c q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        QScalar(LaurentPoly::q_power(0, c, e))
    }

    /// Accepts any polynomial that only involves `q`, re-homed to the empty z-context.
    pub fn from_poly(p: &LaurentPoly) -> Result<Self> {
        for (e, _) in p.terms() {
            if e.pairs().any(|(v, _)| v != VarId::Q) {
                return Err(Error::Argument(format!("{p} involves more than q")));
            }
        }
        Ok(QScalar(p.embed(0)?))
    }

    /// From `(exponent, coefficient)` pairs.
    pub fn from_coeffs<I: IntoIterator<Item = (i32, BigInt)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero(0);
        for (e, c) in it {
            p.add_term(q_exp(e), c);
        }
        QScalar(p)
    }

    pub fn as_poly(&self) -> &LaurentPoly {
        &self.0
    }

    /// The same scalar as a polynomial in a context with `nz` z-variables.
    pub fn to_poly(&self, nz: usize) -> LaurentPoly {
        self.0.embed(nz).expect("q-only polynomials embed anywhere")
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `(exponent, coefficient)` pairs by increasing exponent.
    pub fn coeffs(&self) -> Vec<(i32, BigInt)> {
        self.0
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| (e.get(VarId::Q), c.clone()))
            .collect()
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.0.coeff(&q_exp(e))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.0.degree_range(VarId::Q).map(|r| r.0)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.0.degree_range(VarId::Q).map(|r| r.1)
    }

    /// The substitution `q -> q^{-1}`.
    pub fn mirror(&self) -> Self {
        QScalar(self.0.invert_var(VarId::Q))
    }

    pub fn at_one(&self) -> BigInt {
        self.0.eval_at_one()
    }

    pub fn shift(&self, e: i32) -> Self {
        QScalar(self.0.shift(&q_exp(e)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QScalar(self.0.scale(c))
    }

    /// Drops every term with exponent below `-t`.
    pub fn truncate_below(&self, t: i64) -> Self {
        QScalar::from_coeffs(
            self.coeffs()
                .into_iter()
                .filter(|(e, _)| (*e as i64) >= -t),
        )
    }

    /// Exact quotient; an error if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &QScalar) -> Result<QScalar> {
        let (d_lo, d) = dense(divisor).ok_or_else(|| Error::Argument("division by zero".into()))?;
        let Some((n_lo, mut n)) = dense(self) else {
            return Ok(QScalar::zero());
        };
        if n.len() < d.len() {
            return Err(Error::Internal(format!("{divisor} does not divide {self}")));
        }
        let lead = d.last().expect("nonempty").clone();
        let mut quot = vec![BigInt::zero(); n.len() - d.len() + 1];
        for k in (0..quot.len()).rev() {
            let top = &n[k + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::Internal(format!("{divisor} does not divide {self}")));
            }
            for (j, dj) in d.iter().enumerate() {
                n[k + j] -= &qk * dj;
            }
            quot[k] = qk;
        }
        if n.iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal(format!("{divisor} does not divide {self}")));
        }
        let off = n_lo - d_lo;
        Ok(QScalar::from_coeffs(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (off + i as i32, c)),
        ))
    }
}

fn q_exp(e: i32) -> ExponentVector {
    ExponentVector::from_pairs(0, &[(VarId::Q, e)]).expect("q is always present")
}

/// Dense coefficients starting at the lowest exponent.
fn dense(x: &QScalar) -> Option<(i32, Vec<BigInt>)> {
    let (lo, hi) = x.0.degree_range(VarId::Q)?;
    let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in x.coeffs() {
        v[(e - lo) as usize] = c;
    }
    Some((lo, v))
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: Self) -> QScalar {
        QScalar(&self.0 + &rhs.0)
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: Self) -> QScalar {
        QScalar(&self.0 - &rhs.0)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: Self) -> QScalar {
        QScalar(&self.0 * &rhs.0)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar(-&self.0)
    }
}

/// `[i] = (q^i - q^{-i}) / (q - q^{-1}) = q^{i-1} + q^{i-3} + ... + q^{1-i}`; `[0] = 0`.
pub fn q_int(i: u32) -> QScalar {
    QScalar::from_coeffs((0..i).map(|k| (i as i32 - 1 - 2 * k as i32, BigInt::one())))
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn q_factorial(n: u32) -> QScalar {
    (1..=n).fold(QScalar::one(), |acc, i| &acc * &q_int(i))
}

/// `[n]! / ([r]! [n-r]!)`, zero outside `0 <= r <= n`.
pub fn q_binomial(n: u32, r: i64) -> QScalar {
    if r < 0 || r > n as i64 {
        return QScalar::zero();
    }
    let r = r as u32;
    let denom = &q_factorial(r) * &q_factorial(n - r);
    q_factorial(n)
        .exact_div(&denom)
        .unwrap_or_else(|e| panic!("q-binomial [{n} over {r}] is not a Laurent polynomial: {e}"))
}

/// `Σ_{r=0}^{n} (-1)^r [n over r]`.
pub fn alternating_sum(n: u32) -> QScalar {
    (0..=n as i64).fold(QScalar::zero(), |acc, r| {
        let b = q_binomial(n, r);
        if r % 2 == 0 {
            &acc + &b
        } else {
            &acc - &b
        }
    })
}

/// Symmetric q-binomials `[n over 0..=n]`.
pub fn q_binomial_row(n: u32) -> Vec<QScalar> {
    (0..=n as i64).map(|r| q_binomial(n, r)).collect()
}
