//! Dense univariate polynomials with big-integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The monomial `ω`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        IntPoly(self.0.iter().map(|c| c / &g).collect())
    }

    fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        IntPoly(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Pseudo-division: `lc(d)^k · self = q · d + r` with `deg r < deg d`.
    pub fn pseudo_div_rem(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading().expect("nonzero").clone();
        let mut q = IntPoly::zero();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let t = IntPoly::constant(r.leading().expect("nonzero").clone()).shift(rd - dd);
            q = q.scale(&lc) + t.clone();
            r = r.scale(&lc) - t * d.clone();
        }
        (q, r)
    }

    /// Greatest common divisor up to sign, by the primitive remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let content = self.content().gcd(&other.content());
        while !b.is_zero() {
            let (_, r) = a.pseudo_div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.is_zero() {
            return a;
        }
        a.primitive_part().scale(&content)
    }

    /// Exact quotient by a divisor, up to a constant factor; result is primitive.
    pub fn div_primitive(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.pseudo_div_rem(d);
        r.is_zero().then(|| q.primitive_part())
    }

    /// Product of the distinct irreducible factors, primitive.
    pub fn square_free_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.div_primitive(&g).expect("gcd divides")
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Value and derivative at `z` by Horner's rule.
    pub fn eval_complex(&self, z: Complex64) -> (Complex64, Complex64) {
        eval_with_derivative(&self.to_f64(), z)
    }
}

pub(crate) fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of a polynomial with real coefficients, by Aberth iteration
/// followed by Newton polishing. Near-coincident roots are merged.
pub fn complex_roots(poly: &IntPoly) -> Vec<Complex64> {
    let Some(d) = poly.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let c = poly.to_f64();
    let lead = c[d];
    let c: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let radius = 1.0 + c[..d].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(0.5 * radius, t)
        })
        .collect();
    for _ in 0..1000 {
        let mut biggest = 0.0f64;
        for k in 0..d {
            let (p, dp) = eval_with_derivative(&c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| Complex64::one() / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                biggest = biggest.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if biggest < 1e-15 {
            break;
        }
    }
    for r in &mut z {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(&c, *r);
            if dp.norm() > 0.0 {
                let next = *r - p / dp;
                if next.is_finite() {
                    *r = next;
                }
            }
        }
    }
    let mut out: Vec<Complex64> = Vec::new();
    for r in z {
        if !out.iter().any(|s| (s - r).norm() < 1e-8 * (1.0 + r.norm())) {
            out.push(r);
        }
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    out
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        let n = self.0.len().max(rhs.0.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        IntPoly::new((0..n).map(|i| get(&self.0, i) + get(&rhs.0, i)).collect())
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        self + (-rhs)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = abs.is_one() && i > 0;
            if !unit {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "w")?,
                _ => write!(f, "w^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!((a.clone() - a.clone()), IntPoly::zero());
        assert_eq!(p(&[1, -2, 0, 3]).to_string(), "3w^3 - 2w + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-w");
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = p(&[1, 1, 1]);
        let g = &f * &p(&[2, 3]);
        let h = &f * &p(&[-5, 0, 7]);
        assert_eq!(g.gcd(&h), f);
        assert_eq!(p(&[4, 6]).gcd(&p(&[2])), p(&[2]));
        assert_eq!(p(&[3, 5]).gcd(&p(&[1, 1])), p(&[1]));
    }

    #[test]
    fn square_free_part() {
        let f = p(&[1, 1]);
        let g = &(&f * &f) * &p(&[0, 0, 2, 2]);
        assert_eq!(g.square_free_part(), p(&[0, 1, 1]));
        assert_eq!(p(&[-1, 0, 1]).square_free_part(), p(&[-1, 0, 1]));
    }

    #[test]
    fn roots_of_cyclotomic() {
        let r = complex_roots(&p(&[1, 1, 1]));
        assert_eq!(r.len(), 2);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.re + 0.5).abs() < 1e-12);
        }
        let r = complex_roots(&p(&[-6, 11, -6, 1]));
        let re: Vec<f64> = r.iter().map(|z| z.re).collect();
        for (x, e) in re.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - e).abs() < 1e-10);
        }
    }
}
