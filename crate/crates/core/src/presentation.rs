//! The one-relator presentation `⟨a, b | u_r⟩` of a 2-bridge knot group.

use num_integer::gcd;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::slope::{Fraction, GenusOneKnot, Sign};
use crate::words::{
    cyclic_s_sequence, is_cyclically_alternating, s_sequence, CyclicSSequence, CyclicWord,
    Generator, Letter, ReducedWord, SSequence,
};

/// `ε_i = (-1)^⌊iq/p⌋` for `i = 1..p-1`, encoded as `+1`/`-1`.
pub fn epsilon_sequence(p: u64, q: u64) -> Result<Vec<i8>> {
    if q == 0 || q >= p {
        return Err(Error::InvalidSlope { num: q.to_string(), den: p.to_string() });
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime(q, p));
    }
    Ok((1..p)
        .map(|i| {
            let fl = (u128::from(i) * u128::from(q)) / u128::from(p);
            if fl % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect())
}

/// The relator `u_r = a û b û⁻¹` together with its building blocks.
#[derive(Debug, Clone, Serialize)]
pub struct Relator {
    pub fraction: Fraction,
    pub epsilons: Vec<i8>,
    pub u_hat: ReducedWord,
    pub u: CyclicWord,
}

impl Relator {
    pub fn p(&self) -> u64 {
        self.u.len() as u64 / 2
    }

    /// `S(u_r)` of the linear representative starting with `a`.
    pub fn s_sequence(&self) -> SSequence {
        s_sequence(self.u.representative()).expect("relator is nonempty")
    }

    pub fn cyclic_s_sequence(&self) -> CyclicSSequence {
        cyclic_s_sequence(&self.u).expect("relator is nonempty")
    }
}

/// Builds `u_r` for a knot slope `q/p`: `0 < q < p` coprime, `p` odd.
pub fn relator(f: &Fraction) -> Result<Relator> {
    let (q, p) = f.slope_pair()?;
    if p % 2 == 0 {
        return Err(Error::Unsupported(format!("{f} has even denominator (a link, not a knot)")));
    }
    let epsilons = epsilon_sequence(p, q)?;
    let hat: Vec<Letter> = epsilons
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            // odd positions ε_1, ε_3, ... carry b; even positions carry a
            let gen = if i % 2 == 0 { Generator::B } else { Generator::A };
            Letter::new(gen, e > 0)
        })
        .collect();
    let u_hat = ReducedWord::try_new(hat)
        .map_err(|_| Error::Invariant("û_r is not reduced".into()))?;
    let assembled = ReducedWord::letter(Letter::A)
        .concat_exact(&u_hat)
        .and_then(|w| w.concat_exact(&ReducedWord::letter(Letter::B)))
        .and_then(|w| w.concat_exact(&u_hat.inverse()))
        .map_err(|_| Error::Invariant("u_r assembly cancelled".into()))?;
    if assembled.len() as u64 != 2 * p {
        return Err(Error::Invariant("|u_r| != 2p".into()));
    }
    let u = CyclicWord::new(assembled)
        .map_err(|_| Error::Invariant("u_r is not cyclically reduced".into()))?;
    if !is_cyclically_alternating(&u) {
        return Err(Error::Invariant("u_r is not cyclically alternating".into()));
    }
    Ok(Relator { fraction: f.clone(), epsilons, u_hat, u })
}

/// The decomposition `CS(r) = ((S1, S2, S1, S2))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalDecomposition {
    pub s1: SSequence,
    pub s2: SSequence,
}

impl CanonicalDecomposition {
    pub fn cyclic(&self) -> CyclicSSequence {
        let runs = [&self.s1, &self.s2, &self.s1, &self.s2]
            .iter()
            .flat_map(|s| s.runs().iter().copied())
            .collect();
        CyclicSSequence::new(runs).expect("closed form has positive entries")
    }
}

/// Closed forms of `S1`, `S2` for `[2m, ±2n]`.
pub fn canonical_decomposition(k: &GenusOneKnot) -> CanonicalDecomposition {
    let (m, n) = (k.m(), k.n());
    let long = SSequence::new(vec![2 * m; (2 * n - 1) as usize]).expect("positive");
    match k.sign() {
        Sign::Plus => CanonicalDecomposition {
            s1: SSequence::new(vec![2 * m + 1]).expect("positive"),
            s2: long,
        },
        Sign::Minus => CanonicalDecomposition {
            s1: long,
            s2: SSequence::new(vec![2 * m - 1]).expect("positive"),
        },
    }
}

/// Whether the computed `CS(u_r)` matches the closed form.
pub fn verify_cs_closed_form(k: &GenusOneKnot) -> bool {
    let f = crate::slope::genus_one_fraction(k);
    match relator(&f) {
        Ok(rel) => {
            rel.u.len() as u64 == 2 * k.p()
                && rel.cyclic_s_sequence() == canonical_decomposition(k).cyclic()
        }
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    fn knot(m: u32, n: u32, s: Sign) -> GenusOneKnot {
        GenusOneKnot::new(m, n, s).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_sequence(5, 2).unwrap(), vec![1, 1, -1, -1]);
        assert_eq!(epsilon_sequence(3, 2).unwrap(), vec![1, -1]);
        assert!(epsilon_sequence(11, 1).unwrap().iter().all(|&e| e == 1));
        assert_eq!(epsilon_sequence(6, 4), Err(Error::NotCoprime(4, 6)));
    }

    #[test]
    fn relator_examples() {
        let r = relator(&frac("2/5")).unwrap();
        assert_eq!(r.u_hat.to_string(), "baBA");
        assert_eq!(r.u.representative().to_string(), "abaBAbabAB");
        let r = relator(&frac("2/3")).unwrap();
        assert_eq!(r.u.representative().to_string(), "abAbaB");
        assert!(relator(&frac("4/6")).is_ok()); // reduces to 2/3
        assert!(relator(&frac("5/3")).is_err());
        assert!(matches!(relator(&frac("1/4")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn relator_length_is_twice_p() {
        for p in (3u64..80).step_by(2) {
            for q in 1..p {
                if gcd(p, q) == 1 {
                    let r = relator(&Fraction::new(q, p).unwrap()).unwrap();
                    assert_eq!(r.u.len() as u64, 2 * p);
                    assert_eq!(r.cyclic_s_sequence().total(), 2 * p);
                }
            }
        }
    }

    #[test]
    fn epsilon_antisymmetry_for_even_q() {
        for p in (3u64..120).step_by(2) {
            for q in (2..p).step_by(2) {
                if gcd(p, q) != 1 {
                    continue;
                }
                let e = epsilon_sequence(p, q).unwrap();
                for i in 1..p as usize {
                    assert_eq!(e[i - 1] * e[p as usize - i - 1], -1, "p={p} q={q} i={i}");
                }
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let d = canonical_decomposition(&knot(1, 1, Sign::Plus));
        assert_eq!((d.s1.runs(), d.s2.runs()), (&[3][..], &[2][..]));
        let d = canonical_decomposition(&knot(1, 1, Sign::Minus));
        assert_eq!((d.s1.runs(), d.s2.runs()), (&[2][..], &[1][..]));
        let d = canonical_decomposition(&knot(2, 3, Sign::Minus));
        assert_eq!((d.s1.runs(), d.s2.runs()), (&[4, 4, 4, 4, 4][..], &[3][..]));
    }

    #[test]
    fn closed_form_small_cases() {
        let cs = relator(&frac("2/5")).unwrap().cyclic_s_sequence();
        assert_eq!(cs.runs(), &[3, 2, 3, 2]);
        let cs = relator(&frac("2/3")).unwrap().cyclic_s_sequence();
        assert_eq!(cs.runs(), &[2, 1, 2, 1]);
        for m in 1..=10 {
            for n in 1..=10 {
                for s in [Sign::Plus, Sign::Minus] {
                    assert!(verify_cs_closed_form(&knot(m, n, s)), "{m} {n} {s}");
                }
            }
        }
    }

    #[test]
    fn closed_form_blocks_are_palindromes() {
        // rotation-only comparison is enough because reversal fixes S1 and S2
        for m in 1..=10 {
            for n in 1..=10 {
                for s in [Sign::Plus, Sign::Minus] {
                    let d = canonical_decomposition(&knot(m, n, s));
                    assert!(d.s1.is_palindrome() && d.s2.is_palindrome());
                    assert_eq!(d.cyclic(), d.cyclic().reversed());
                }
            }
        }
    }
}
