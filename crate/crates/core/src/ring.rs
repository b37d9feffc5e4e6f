//! Exact scalars: the localized ring `Z[q, q^-1, (q-1)^-1]` and rationals.
//!
//! A [`SkeinScalar`] is stored as a Laurent polynomial numerator over a power
//! of `(q - 1)`. Every constructor and operation returns the canonical form,
//! so structural equality is ring equality.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

/// Exact rational number with arbitrary precision.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("cannot evaluate at q = {0}: (q-1) or q is not invertible")]
    EvalAtPole(i64),
}

/// An element `q^low_exp * (c_0 + c_1 q + ...) / (q-1)^denom_pow`.
///
/// Canonical form: zero has no coefficients, `low_exp = 0`, `denom_pow = 0`.
/// Otherwise the first and last coefficient are nonzero and, when
/// `denom_pow > 0`, the numerator does not vanish at `q = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SkeinScalar {
    coeffs: Vec<BigInt>,
    low_exp: i64,
    denom_pow: u32,
}

impl SkeinScalar {
    pub fn zero() -> Self {
        SkeinScalar { coeffs: Vec::new(), low_exp: 0, denom_pow: 0 }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Self::from_parts(vec![n.into()], 0, 0)
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::from_parts(vec![BigInt::one()], e, 0)
    }

    /// `(q-1)^e` for any integer `e`.
    pub fn q_minus_one_pow(e: i64) -> Self {
        if e < 0 {
            return Self::from_parts(vec![BigInt::one()], 0, (-e) as u32);
        }
        let mut acc = Self::one();
        let base = Self::from_parts(vec![BigInt::from(-1), BigInt::one()], 0, 0);
        for _ in 0..e {
            acc = &acc * &base;
        }
        acc
    }

    /// `q^a (q-1)^b`.
    pub fn monomial(a: i64, b: i64) -> Self {
        &Self::q_pow(a) * &Self::q_minus_one_pow(b)
    }

    /// Builds and canonicalizes.
    pub fn from_parts(coeffs: Vec<BigInt>, low_exp: i64, denom_pow: u32) -> Self {
        let mut s = SkeinScalar { coeffs, low_exp, denom_pow };
        s.canonicalize();
        s
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn low_exp(&self) -> i64 {
        self.low_exp
    }

    pub fn denom_pow(&self) -> u32 {
        self.denom_pow
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn canonicalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low_exp += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low_exp = 0;
            self.denom_pow = 0;
            return;
        }
        while self.denom_pow > 0 && vanishes_at_one(&self.coeffs) {
            self.coeffs = divide_by_q_minus_one(&self.coeffs);
            self.denom_pow -= 1;
        }
    }

    /// Multiplies the numerator by `(q-1)^extra` without changing the value.
    fn numerator_over(&self, target_pow: u32) -> Vec<BigInt> {
        let mut c = self.coeffs.clone();
        for _ in self.denom_pow..target_pow {
            c = times_q_minus_one(&c);
        }
        c
    }

    /// Exact value at an integer `q0` other than `0` and `1`.
    pub fn eval(&self, q0: i64) -> Result<ExactRational, RingError> {
        if q0 == 0 || q0 == 1 {
            return Err(RingError::EvalAtPole(q0));
        }
        let q = BigRational::from_integer(BigInt::from(q0));
        let mut num = BigRational::zero();
        let mut pw = rational_pow(&q, self.low_exp);
        for c in &self.coeffs {
            num += &pw * BigRational::from_integer(c.clone());
            pw *= &q;
        }
        let den = BigInt::from(q0 - 1).pow(self.denom_pow);
        Ok(num / BigRational::from_integer(den))
    }

    /// Returns `(sign, a, b)` when `self = sign * q^a (q-1)^b`.
    pub fn as_unit_monomial(&self) -> Option<(i8, i64, i64)> {
        if self.is_zero() {
            return None;
        }
        let mut c = self.coeffs.clone();
        let mut b = -(self.denom_pow as i64);
        while c.len() > 1 && vanishes_at_one(&c) {
            c = divide_by_q_minus_one(&c);
            b += 1;
        }
        if c.len() != 1 || !c[0].abs().is_one() {
            return None;
        }
        let sign = if c[0].is_positive() { 1 } else { -1 };
        Some((sign, self.low_exp, b))
    }
}

fn vanishes_at_one(c: &[BigInt]) -> bool {
    c.iter().fold(BigInt::zero(), |acc, x| acc + x).is_zero()
}

/// Quotient of a polynomial vanishing at 1 by `(q-1)`.
fn divide_by_q_minus_one(c: &[BigInt]) -> Vec<BigInt> {
    // c_i = Q_{i-1} - Q_i, so Q_i = -(c_0 + ... + c_i).
    let mut out = Vec::with_capacity(c.len().saturating_sub(1));
    let mut run = BigInt::zero();
    for x in &c[..c.len() - 1] {
        run += x;
        out.push(-run.clone());
    }
    out
}

fn times_q_minus_one(c: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); c.len() + 1];
    for (i, x) in c.iter().enumerate() {
        out[i] -= x;
        out[i + 1] += x;
    }
    out
}

fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        Pow::pow(q, e as u64)
    } else {
        Pow::pow(q.recip(), (-e) as u64)
    }
}

/// `q0^e` as an exact rational.
pub fn q_power(q0: i64, e: i64) -> ExactRational {
    rational_pow(&BigRational::from_integer(BigInt::from(q0)), e)
}

impl Add for &SkeinScalar {
    type Output = SkeinScalar;
    fn add(self, rhs: &SkeinScalar) -> SkeinScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let k = self.denom_pow.max(rhs.denom_pow);
        let a = self.numerator_over(k);
        let b = rhs.numerator_over(k);
        let low = self.low_exp.min(rhs.low_exp);
        let oa = (self.low_exp - low) as usize;
        let ob = (rhs.low_exp - low) as usize;
        let len = (oa + a.len()).max(ob + b.len());
        let mut c = vec![BigInt::zero(); len];
        for (i, x) in a.into_iter().enumerate() {
            c[oa + i] += x;
        }
        for (i, x) in b.into_iter().enumerate() {
            c[ob + i] += x;
        }
        SkeinScalar::from_parts(c, low, k)
    }
}

impl Add for SkeinScalar {
    type Output = SkeinScalar;
    fn add(self, rhs: SkeinScalar) -> SkeinScalar {
        &self + &rhs
    }
}

impl AddAssign<&SkeinScalar> for SkeinScalar {
    fn add_assign(&mut self, rhs: &SkeinScalar) {
        *self = &*self + rhs;
    }
}

impl Neg for &SkeinScalar {
    type Output = SkeinScalar;
    fn neg(self) -> SkeinScalar {
        SkeinScalar {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            low_exp: self.low_exp,
            denom_pow: self.denom_pow,
        }
    }
}

impl Neg for SkeinScalar {
    type Output = SkeinScalar;
    fn neg(self) -> SkeinScalar {
        -&self
    }
}

impl Sub for &SkeinScalar {
    type Output = SkeinScalar;
    fn sub(self, rhs: &SkeinScalar) -> SkeinScalar {
        self + &(-rhs)
    }
}

impl Sub for SkeinScalar {
    type Output = SkeinScalar;
    fn sub(self, rhs: SkeinScalar) -> SkeinScalar {
        &self - &rhs
    }
}

impl Mul for &SkeinScalar {
    type Output = SkeinScalar;
    fn mul(self, rhs: &SkeinScalar) -> SkeinScalar {
        if self.is_zero() || rhs.is_zero() {
            return SkeinScalar::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        SkeinScalar::from_parts(c, self.low_exp + rhs.low_exp, self.denom_pow + rhs.denom_pow)
    }
}

impl Mul for SkeinScalar {
    type Output = SkeinScalar;
    fn mul(self, rhs: SkeinScalar) -> SkeinScalar {
        &self * &rhs
    }
}

impl Zero for SkeinScalar {
    fn zero() -> Self {
        SkeinScalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for SkeinScalar {
    fn one() -> Self {
        SkeinScalar::one()
    }
}

fn fmt_term(out: &mut String, c: &BigInt, e: i64, first: bool) {
    use core::fmt::Write;
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let unit = mag.is_one();
    if e == 0 {
        let _ = write!(out, "{}", mag);
        return;
    }
    if !unit {
        let _ = write!(out, "{}", mag);
    }
    if e == 1 {
        out.push('q');
    } else {
        let _ = write!(out, "q^{}", e);
    }
}

impl fmt::Display for SkeinScalar {
    /// Numerator in descending powers of `q`, then `(q-1)^-k` if needed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut num = String::new();
        let nonzero: Vec<(usize, &BigInt)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (k, (i, c)) in nonzero.iter().rev().enumerate() {
            fmt_term(&mut num, c, self.low_exp + *i as i64, k == 0);
        }
        if self.denom_pow == 0 {
            return f.write_str(&num);
        }
        if num == "1" {
            return write!(f, "(q-1)^-{}", self.denom_pow);
        }
        if nonzero.len() == 1 {
            write!(f, "{}*(q-1)^-{}", num, self.denom_pow)
        } else {
            write!(f, "({})*(q-1)^-{}", num, self.denom_pow)
        }
    }
}

/// `a / b` as a rational, with `b` nonzero.
pub fn ratio(a: &BigInt, b: &BigInt) -> ExactRational {
    BigRational::new(a.clone(), b.clone())
}

/// Integer power `base^e` for `e >= 0`.
pub fn int_pow(base: i64, e: u64) -> BigInt {
    Pow::pow(BigInt::from(base), e)
}
