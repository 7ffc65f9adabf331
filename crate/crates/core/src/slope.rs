//! Exact slopes, continued fractions and the genus-one parameterization.
//!
//! A slope is stored as a reduced fraction with nonnegative denominator.
//! The point at infinity is the fraction `1/0` and participates in all
//! Farey computations like any other value.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced fraction `num/den` with `den >= 0`; `1/0` is infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction {
    num: BigInt,
    den: BigInt,
}

impl Fraction {
    /// Builds and reduces `num/den`. `0/0` is rejected; any `k/0` becomes `1/0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(Error::ParseFraction("0/0".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: BigInt, mut den: BigInt) -> Self {
        if den.is_zero() {
            return Self::infinity();
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Fraction { num, den }
    }

    pub fn infinity() -> Self {
        Fraction {
            num: BigInt::one(),
            den: BigInt::zero(),
        }
    }

    pub fn integer(k: i64) -> Self {
        Fraction {
            num: BigInt::from(k),
            den: BigInt::one(),
        }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    /// `self + k`; infinity is fixed.
    pub fn add_integer(&self, k: i64) -> Self {
        if self.is_infinite() {
            return self.clone();
        }
        Fraction {
            num: &self.num + BigInt::from(k) * &self.den,
            den: self.den.clone(),
        }
    }

    /// Representative of `self` modulo 1 in `[0, 1)`; infinity is fixed.
    pub fn mod_one(&self) -> Self {
        if self.is_infinite() {
            return self.clone();
        }
        Fraction {
            num: self.num.mod_floor(&self.den),
            den: self.den.clone(),
        }
    }

    /// Numerator and denominator as `(q, p)` machine integers when they fit.
    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        Some((self.num.to_u64()?, self.den.to_u64()?))
    }

    /// `(q, p)` for a slope `q/p` with `0 < q < p`.
    pub fn slope_pair(&self) -> Result<(u64, u64)> {
        match self.to_u64_pair() {
            Some((q, p)) if q > 0 && q < p => Ok((q, p)),
            _ => Err(Error::InvalidSlope {
                num: self.num.to_string(),
                den: self.den.to_string(),
            }),
        }
    }

    /// Bit length of the larger of numerator and denominator.
    pub fn height_bits(&self) -> u64 {
        self.num.bits().max(self.den.bits())
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" || t == "1/0" {
            return Ok(Self::infinity());
        }
        let bad = || Error::ParseFraction(s.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Fraction::new(n, d).map_err(|_| bad())
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `[a_1, ..., a_k]` read as `1/(a_1 + 1/(a_2 + ...))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    coeffs: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyContinuedFraction);
        }
        if coeffs.contains(&0) {
            return Err(Error::ZeroCoefficient);
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

/// Exact value of a continued fraction.
pub fn cf_value(cf: &ContinuedFraction) -> Result<Fraction> {
    // tail = n/d, starting from the empty tail 0/1
    let mut n = BigInt::zero();
    let mut d = BigInt::one();
    for &a in cf.coeffs.iter().rev() {
        let denom = BigInt::from(a) * &d + &n;
        if denom.is_zero() {
            return Err(Error::DegenerateContinuedFraction(cf.coeffs.clone()));
        }
        n = d;
        d = denom;
    }
    Ok(Fraction::normalized(n, d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(Error::InvalidKnot(format!("bad sign {other:?}"))),
        }
    }
}

/// The genus-one 2-bridge knot `K([2m, ±2n])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenusOneKnot {
    m: u32,
    n: u32,
    sign: Sign,
}

impl GenusOneKnot {
    pub fn new(m: u32, n: u32, sign: Sign) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidKnot(format!(
                "m and n must be positive, got m={m}, n={n}"
            )));
        }
        let k = GenusOneKnot { m, n, sign };
        // p = 4mn ± 1 must fit and exceed q = 2n
        let mn = 4 * u64::from(m) * u64::from(n);
        if mn > u64::from(u32::MAX) {
            return Err(Error::InvalidKnot("parameters too large".into()));
        }
        debug_assert!(k.q() < k.p());
        Ok(k)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn p(&self) -> u64 {
        let base = 4 * u64::from(self.m) * u64::from(self.n);
        match self.sign {
            Sign::Plus => base + 1,
            Sign::Minus => base - 1,
        }
    }

    pub fn q(&self) -> u64 {
        2 * u64::from(self.n)
    }

    /// `(-1)^n`.
    pub fn epsilon(&self) -> i64 {
        if self.n.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// False only for the trefoil `[2, -2]`.
    pub fn is_hyperbolic(&self) -> bool {
        !(self.m == 1 && self.n == 1 && self.sign == Sign::Minus)
    }

    pub fn continued_fraction(&self) -> ContinuedFraction {
        let second = 2 * i64::from(self.n) * self.sign.as_i64();
        ContinuedFraction {
            coeffs: vec![2 * i64::from(self.m), second],
        }
    }

    /// Inverse of [`genus_one_fraction`] on slopes `2n/(4mn±1)`.
    pub fn from_fraction(f: &Fraction) -> Option<Self> {
        let (q, p) = f.slope_pair().ok()?;
        if q % 2 != 0 {
            return None;
        }
        let n = q / 2;
        for (sign, base) in [(Sign::Plus, p.checked_sub(1)?), (Sign::Minus, p + 1)] {
            if base % (4 * n) == 0 {
                let m = base / (4 * n);
                if m >= 1 {
                    return GenusOneKnot::new(u32::try_from(m).ok()?, u32::try_from(n).ok()?, sign)
                        .ok();
                }
            }
        }
        None
    }
}

impl fmt::Display for GenusOneKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}{}]", 2 * self.m, self.sign, 2 * self.n)
    }
}

/// `2n / (4mn ± 1)`.
pub fn genus_one_fraction(k: &GenusOneKnot) -> Fraction {
    Fraction::normalized(BigInt::from(k.q()), BigInt::from(k.p()))
}

/// Checks `[2m, -2n] = [2m-1, 1, 2n-1]` exactly.
pub fn cf_identity_check(m: u32, n: u32) -> bool {
    let (m, n) = (i64::from(m), i64::from(n));
    let lhs = ContinuedFraction::new(vec![2 * m, -2 * n]).and_then(|cf| cf_value(&cf));
    let rhs = ContinuedFraction::new(vec![2 * m - 1, 1, 2 * n - 1]).and_then(|cf| cf_value(&cf));
    matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
}

/// Inverse of `q` modulo `p`, in `1..p`.
pub fn mod_inverse(q: u64, p: u64) -> Option<u64> {
    if p == 1 {
        return Some(0);
    }
    let e = i128::from(q).extended_gcd(&i128::from(p));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(i128::from(p)) as u64)
}

/// `q/p ↦ q'/p` with `q q' ≡ 1 (mod p)`.
pub fn r_prime(f: &Fraction) -> Result<Fraction> {
    let (q, p) = f.slope_pair()?;
    let inv = mod_inverse(q, p).ok_or(Error::NotCoprime(q, p))?;
    Fraction::new(inv, p)
}
