//! Parabolic SL(2, C) representations used as a nontriviality oracle.
//!
//! The generators are sent to `a ↦ [[1,1],[0,1]]` and `b ↦ [[1,0],[ω,1]]`.
//! The image of the relator minus the identity is computed exactly over
//! `Z[ω]`; the gcd of its four entries cuts out the parabolic
//! representations, whose roots are then found numerically. Results are
//! numerical evidence with reported margins, never proofs.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{complex_roots, IntPoly};
use crate::presentation::relator;
use crate::slope::Fraction;
use crate::words::{Generator, Letter, Word};

/// A 2×2 matrix with polynomial entries in `ω`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyMatrix(pub [[IntPoly; 2]; 2]);

impl PolyMatrix {
    pub fn identity() -> Self {
        let (o, z) = (IntPoly::constant(1), IntPoly::zero());
        PolyMatrix([[o.clone(), z.clone()], [z, o]])
    }

    pub fn generator(l: Letter) -> Self {
        let (o, z, w) = (IntPoly::constant(1), IntPoly::zero(), IntPoly::x());
        let m = match (l.gen, l.positive) {
            (Generator::A, true) => [[o.clone(), o.clone()], [z, o]],
            (Generator::A, false) => [[o.clone(), -o.clone()], [z, o]],
            (Generator::B, true) => [[o.clone(), z], [w, o]],
            (Generator::B, false) => [[o.clone(), z], [-w, o]],
        };
        PolyMatrix(m)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        let e = |i: usize, j: usize| {
            &self.0[i][0] * &rhs.0[0][j] + &self.0[i][1] * &rhs.0[1][j]
        };
        PolyMatrix([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn determinant(&self) -> IntPoly {
        &self.0[0][0] * &self.0[1][1] - &self.0[0][1] * &self.0[1][0]
    }

    pub fn word_image(w: &Word) -> PolyMatrix {
        w.letters().iter().fold(PolyMatrix::identity(), |acc, &l| acc.mul(&PolyMatrix::generator(l)))
    }
}

/// Exact data behind the parabolic representations of one relator.
#[derive(Debug, Clone, Serialize)]
pub struct RileyData {
    /// Entries of `ρ(u) − I` in row-major order.
    pub entries: Vec<IntPoly>,
    pub gcd: IntPoly,
    /// Square-free, primitive factor whose roots give the nonabelian representations.
    pub defining: IntPoly,
}

pub fn riley_polynomials(f: &Fraction) -> Result<RileyData> {
    let rel = relator(f)?;
    let img = PolyMatrix::word_image(&rel.u.representative().clone().into_word());
    let entries = vec![
        img.0[0][0].clone() - IntPoly::constant(1),
        img.0[0][1].clone(),
        img.0[1][0].clone(),
        img.0[1][1].clone() - IntPoly::constant(1),
    ];
    let gcd = entries.iter().fold(IntPoly::zero(), |g, e| g.gcd(e));
    if gcd.is_zero() {
        return Err(Error::Oracle(format!("ρ(u) = I identically for {f}")));
    }
    // ω = 0 is never a root: there ρ(u) = a, since u has exponent sum 1 in a.
    let defining = gcd.square_free_part();
    Ok(RileyData { entries, gcd, defining })
}

/// A complex 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        let (o, z) = (Complex64::one(), Complex64::zero());
        Mat2([[o, z], [z, o]])
    }

    pub fn mul(&self, r: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &r.0;
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_sl2(&self) -> Mat2 {
        let m = &self.0;
        Mat2([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn determinant(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Largest entry of `self − s·I`.
    pub fn deviation_from_scalar(&self, s: f64) -> f64 {
        let d = Mat2([
            [self.0[0][0] - s, self.0[0][1]],
            [self.0[1][0], self.0[1][1] - s],
        ]);
        d.max_abs()
    }

    /// Distance from `±I`, scaled by `max(1, largest entry)`.
    pub fn distance_from_pm_identity(&self) -> f64 {
        let dev = self.deviation_from_scalar(1.0).min(self.deviation_from_scalar(-1.0));
        dev / self.max_abs().max(1.0)
    }
}

impl Serialize for Mat2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> =
            self.0.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
        rows.serialize(s)
    }
}

/// One numeric parabolic representation.
#[derive(Debug, Clone, Serialize)]
pub struct NumericRep {
    #[serde(serialize_with = "ser_complex")]
    pub omega: Complex64,
    pub a: Mat2,
    pub b: Mat2,
    pub residual: f64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

impl NumericRep {
    pub fn at(omega: Complex64) -> Self {
        let (o, z) = (Complex64::one(), Complex64::zero());
        NumericRep {
            omega,
            a: Mat2([[o, o], [z, o]]),
            b: Mat2([[o, z], [omega, o]]),
            residual: f64::NAN,
        }
    }

    pub fn letter(&self, l: Letter) -> Mat2 {
        let m = match l.gen {
            Generator::A => self.a,
            Generator::B => self.b,
        };
        if l.positive {
            m
        } else {
            m.inverse_sl2()
        }
    }
}

/// Image of a word, accumulated left to right.
pub fn evaluate(w: &Word, rep: &NumericRep) -> Mat2 {
    w.letters().iter().fold(Mat2::identity(), |acc, &l| acc.mul(&rep.letter(l)))
}

/// Numeric representations together with diagnostics for discarded roots.
#[derive(Debug, Clone, Serialize)]
pub struct RepSet {
    pub reps: Vec<NumericRep>,
    pub warnings: Vec<String>,
}

pub fn numeric_reps(f: &Fraction, tol: f64) -> Result<RepSet> {
    let data = riley_polynomials(f)?;
    let u = relator(f)?.u.representative().clone().into_word();
    let mut reps = Vec::new();
    let mut warnings = Vec::new();
    for omega in complex_roots(&data.defining) {
        let mut rep = NumericRep::at(omega);
        rep.residual = evaluate(&u, &rep).deviation_from_scalar(1.0);
        if rep.residual <= tol {
            reps.push(rep);
        } else {
            warnings.push(format!("root {omega} discarded: residual {:.3e} > {tol:e}", rep.residual));
        }
    }
    if reps.is_empty() {
        warnings.push(format!("no representation of {f} within tolerance {tol:e}"));
    }
    Ok(RepSet { reps, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn generator_dets_are_one() {
        for l in [Letter::A, Letter::A_INV, Letter::B, Letter::B_INV] {
            assert_eq!(PolyMatrix::generator(l).determinant(), IntPoly::constant(1));
        }
        let img = PolyMatrix::word_image(&w("abABBa"));
        assert_eq!(img.determinant(), IntPoly::constant(1));
    }

    #[test]
    fn figure_eight_and_trefoil_polynomials() {
        let d = riley_polynomials(&frac("2/5")).unwrap();
        assert_eq!(d.defining, IntPoly::from_i64(&[1, 1, 1]));
        assert!(!d.defining.eval_i64(0).is_zero());
        let roots = complex_roots(&d.defining);
        assert!(roots.iter().any(|z| z.im.abs() > 1e-6));
        let d = riley_polynomials(&frac("2/3")).unwrap();
        assert_eq!(d.defining.degree(), Some(1));
    }

    #[test]
    fn known_defining_polynomials() {
        let cases: [(&str, &[i64]); 2] =
            [("2/9", &[1, 2, 7, 5, 1]), ("4/7", &[-1, 2, -1, 1])];
        for (f, c) in cases {
            assert_eq!(riley_polynomials(&frac(f)).unwrap().defining, IntPoly::from_i64(c), "{f}");
        }
    }

    #[test]
    fn reps_have_small_residuals() {
        for f in ["2/3", "2/5", "4/7", "4/9", "2/7", "6/25", "4/15"] {
            let set = numeric_reps(&frac(f), 1e-9).unwrap();
            assert!(!set.reps.is_empty(), "{f}");
            assert!(set.warnings.is_empty(), "{f}: {:?}", set.warnings);
            for r in &set.reps {
                assert!(r.residual < 1e-9);
                assert!((r.a.determinant() - 1.0).norm() < 1e-12);
                assert!((r.b.determinant() - 1.0).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn evaluate_basics() {
        let set = numeric_reps(&frac("2/5"), 1e-9).unwrap();
        let rep = &set.reps[0];
        assert_eq!(evaluate(&Word::empty(), rep), Mat2::identity());
        assert_eq!(evaluate(&w("a"), rep), rep.a);
        let x = w("abBAbaB");
        let m = evaluate(&x.concat(&x.inverse()), rep);
        assert!(m.deviation_from_scalar(1.0) < 1e-12);
    }

    #[test]
    fn distance_metric() {
        let mut neg = Mat2::identity();
        neg.0[0][0] = -neg.0[0][0];
        neg.0[1][1] = -neg.0[1][1];
        assert_eq!(neg.distance_from_pm_identity(), 0.0);
        assert_eq!(Mat2::identity().distance_from_pm_identity(), 0.0);
        let rep = NumericRep::at(Complex64::new(0.0, 1.0));
        assert!((rep.a.distance_from_pm_identity() - 1.0).abs() < 1e-15);
    }
}
