//! Word combinatorics behind the freeness of `⟨x_ℓ, y_ℓ⟩`.
//!
//! A putative relation `x_ℓ^{k_1} y_ℓ^{l_1} ⋯ x_ℓ^{k_t} y_ℓ^{l_t}` is
//! assembled as the cyclic word `w`; its sign skeleton `w′` (all exponents
//! `±1`) is cyclically alternating with an explicitly known cyclic
//! S-sequence. The checks here compare that sequence with the closed forms
//! and confirm the term restrictions that rule out a van Kampen diagram.
//! A numeric scan through the parabolic representations adds evidence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::meridians::{closed_form, conjugate_power, MeridianWords};
use crate::presentation::relator;
use crate::sl2_oracle::{evaluate, numeric_reps, Mat2};
use crate::slope::{genus_one_fraction, GenusOneKnot, Sign};
use crate::words::{
    cyclic_s_sequence, is_cyclically_alternating, CyclicSSequence, CyclicWord, Letter, ReducedWord,
};

/// Nonzero exponents `(k_i, l_i)` of a product of powers of `x_ℓ` and `y_ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentPattern(Vec<(i64, i64)>);

impl ExponentPattern {
    pub fn new(pairs: Vec<(i64, i64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Unsupported("empty exponent pattern".into()));
        }
        if pairs.iter().any(|&(k, l)| k == 0 || l == 0) {
            return Err(Error::ZeroCoefficient);
        }
        Ok(ExponentPattern(pairs))
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.0
    }

    pub fn signs(&self) -> SignPattern {
        SignPattern(self.0.iter().map(|&(k, l)| (k.signum() as i8, l.signum() as i8)).collect())
    }
}

/// Signs `(ε_{i,x}, ε_{i,y})` of an exponent pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignPattern(Vec<(i8, i8)>);

impl SignPattern {
    pub fn new(signs: Vec<(i8, i8)>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::Unsupported("empty sign pattern".into()));
        }
        if signs.iter().any(|&(x, y)| x.abs() != 1 || y.abs() != 1) {
            return Err(Error::Unsupported("signs must be ±1".into()));
        }
        Ok(SignPattern(signs))
    }

    pub fn signs(&self) -> &[(i8, i8)] {
        &self.0
    }

    pub fn t(&self) -> usize {
        self.0.len()
    }

    /// Signs in block order `x_1, y_1, x_2, y_2, …`.
    pub fn blocks(&self) -> impl Iterator<Item = i8> + '_ {
        self.0.iter().flat_map(|&(x, y)| [x, y])
    }

    /// All `4^t` patterns of length `t`.
    pub fn all(t: usize) -> Vec<SignPattern> {
        (0..1usize << (2 * t))
            .map(|mask| {
                let bit = |i: usize| if mask >> i & 1 == 0 { 1 } else { -1 };
                SignPattern((0..t).map(|i| (bit(2 * i), bit(2 * i + 1))).collect())
            })
            .collect()
    }

    pub fn as_exponents(&self) -> ExponentPattern {
        ExponentPattern(self.0.iter().map(|&(x, y)| (i64::from(x), i64::from(y))).collect())
    }
}

fn assemble(mw: &MeridianWords, e: &ExponentPattern) -> Result<CyclicWord> {
    let mut w = ReducedWord::empty();
    for &(k, l) in e.pairs() {
        let xk = conjugate_power(&mw.w_x, Letter::A, k)?;
        let yl = conjugate_power(&mw.w_y, Letter::B_INV, l)?;
        w = w
            .concat_exact(&xk)
            .and_then(|w| w.concat_exact(&yl))
            .map_err(|_| Error::Invariant("cancellation while assembling w".into()))?;
    }
    CyclicWord::new(w).map_err(|_| Error::Invariant("w is not cyclically reduced".into()))
}

/// `w_x a^{k_1} w̄_x w_y b̄^{l_1} w̄_y ⋯`, required to be cyclically reduced as written.
pub fn build_w(k: &GenusOneKnot, e: &ExponentPattern) -> Result<CyclicWord> {
    assemble(&closed_form(k)?, e)
}

/// `x_ℓ^{ε_{1,x}} y_ℓ^{ε_{1,y}} ⋯`, required to be cyclically alternating.
pub fn build_w_prime(k: &GenusOneKnot, s: &SignPattern) -> Result<CyclicWord> {
    let w = build_w(k, &s.as_exponents())?;
    if !is_cyclically_alternating(&w) {
        return Err(Error::Invariant(format!("w′ for {k} is not cyclically alternating")));
    }
    Ok(w)
}

/// Which branch of the closed-form analysis applies to a knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Claim2Case {
    /// Plus sign.
    Case1,
    /// Minus sign, `m ≥ 2`.
    Case2a,
    /// Minus sign, `m = 1`, `n ≥ 2`.
    Case2b,
    /// `(1, 1, −)`: only a bound on the terms is available.
    BoundOnly,
}

pub fn claim2_case(k: &GenusOneKnot) -> Claim2Case {
    match (k.sign(), k.m(), k.n()) {
        (Sign::Plus, _, _) => Claim2Case::Case1,
        (Sign::Minus, m, _) if m >= 2 => Claim2Case::Case2a,
        (Sign::Minus, _, n) if n >= 2 => Claim2Case::Case2b,
        _ => Claim2Case::BoundOnly,
    }
}

/// Closed form of `CS(w′)`: one block per meridian factor.
///
/// Each block is `(2n−1)⟨2m⟩` followed by `(m+1, m)` (plus sign) or
/// `(m, m−1)` (minus sign, `m ≥ 2`), the pair reversed when the block's
/// exponent `ε` is `−1`. Here `ε` is the factor's sign times `(−1)^{n+1}`
/// for the plus family and times `(−1)^n` for the minus family.
///
/// For `m = 1`, minus, each block holds `2n−2` twos and one 3: the interior
/// `((n−1)⟨2⟩, 3, (n−2)⟨2⟩)` of `S(x_ℓ^{(−1)^n})`, mirrored when the factor
/// has the opposite sign, followed by the 2 formed by merging the unit end
/// runs of neighbouring factors. With uniform signs every 3 is `2n−1` terms
/// from the next, which is the sequence `((2n−2)⟨2⟩, 3, …)`.
pub fn cs_w_prime_closed_form(k: &GenusOneKnot, s: &SignPattern) -> Result<CyclicSSequence> {
    let (m, n) = (k.m(), k.n());
    let parity: i8 = if n % 2 == 0 { 1 } else { -1 };
    let mut runs = Vec::new();
    for sign in s.blocks() {
        match claim2_case(k) {
            Claim2Case::Case1 | Claim2Case::Case2a => {
                let (eps, pair) = if k.sign() == Sign::Plus {
                    (-sign * parity, [m + 1, m])
                } else {
                    (sign * parity, [m, m - 1])
                };
                runs.extend(std::iter::repeat_n(2 * m, 2 * n as usize - 1));
                if eps > 0 {
                    runs.extend(pair);
                } else {
                    runs.extend(pair.iter().rev());
                }
            }
            Claim2Case::Case2b => {
                let (before, after) = if sign * parity > 0 { (n - 1, n - 2) } else { (n - 2, n - 1) };
                runs.extend(std::iter::repeat_n(2, before as usize));
                runs.push(3);
                runs.extend(std::iter::repeat_n(2, after as usize));
                runs.push(2);
            }
            Claim2Case::BoundOnly => {
                return Err(Error::Unsupported(
                    "no closed form for CS(w′) at (1,1,−); use the term bound".into(),
                ))
            }
        }
    }
    CyclicSSequence::new(runs)
}

/// Whether the terms of `CS(w′)` avoid the value that the case analysis forbids.
pub fn forbidden_terms_hold(k: &GenusOneKnot, cs: &CyclicSSequence) -> bool {
    let m = k.m();
    let runs = cs.runs();
    match claim2_case(k) {
        Claim2Case::Case1 => runs.iter().all(|&t| t < 2 * m + 1),
        Claim2Case::Case2a => runs.iter().all(|&t| t != 2 * m - 1),
        Claim2Case::Case2b => runs.iter().all(|&t| t != 1),
        Claim2Case::BoundOnly => runs.iter().all(|t| (2..=4).contains(t)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim2Report {
    pub case: Claim2Case,
    pub signs: SignPattern,
    pub computed: CyclicSSequence,
    /// `None` where no closed form exists.
    pub closed_form_matches: Option<bool>,
    pub forbidden_terms_hold: bool,
}

impl Claim2Report {
    pub fn passed(&self) -> bool {
        self.closed_form_matches != Some(false) && self.forbidden_terms_hold
    }
}

pub fn check_claim2(k: &GenusOneKnot, s: &SignPattern) -> Result<Claim2Report> {
    let w = build_w_prime(k, s)?;
    let computed = cyclic_s_sequence(&w)?;
    let closed_form_matches = match cs_w_prime_closed_form(k, s) {
        Ok(cf) => Some(cf == computed),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(Claim2Report {
        case: claim2_case(k),
        signs: s.clone(),
        forbidden_terms_hold: forbidden_terms_hold(k, &computed),
        computed,
        closed_form_matches,
    })
}

pub fn verify_claim2(k: &GenusOneKnot, s: &SignPattern) -> bool {
    check_claim2(k, s).map(|r| r.passed()).unwrap_or(false)
}

/// A word in `x_ℓ^{±1}, y_ℓ^{±1}`, each letter one syllable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Syllable {
    X,
    XInv,
    Y,
    YInv,
}

impl Syllable {
    pub const ALL: [Syllable; 4] = [Syllable::X, Syllable::XInv, Syllable::Y, Syllable::YInv];

    pub fn inverse(self) -> Self {
        match self {
            Syllable::X => Syllable::XInv,
            Syllable::XInv => Syllable::X,
            Syllable::Y => Syllable::YInv,
            Syllable::YInv => Syllable::Y,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Syllable::X => 'x',
            Syllable::XInv => 'X',
            Syllable::Y => 'y',
            Syllable::YInv => 'Y',
        }
    }
}

/// A word whose image came within tolerance of `±I`.
#[derive(Debug, Clone, Serialize)]
pub struct RelationCandidate {
    pub word: String,
    pub omega: [f64; 2],
    pub distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub representations: usize,
    pub words_checked: u64,
    pub max_relator_residual: f64,
    pub min_distance: f64,
    pub closest_word: String,
    pub candidates: Vec<RelationCandidate>,
    pub warnings: Vec<String>,
}

impl ScanReport {
    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

/// Residual bound used when collecting representations for the scan.
pub const SCAN_RESIDUAL_TOL: f64 = 1e-9;

/// Evaluates every freely reduced word of at most `max_syllables` letters in
/// `x_ℓ^{±1}, y_ℓ^{±1}` at every numeric parabolic representation.
pub fn no_relation_scan(k: &GenusOneKnot, max_syllables: u32, tol: f64) -> Result<ScanReport> {
    let f = genus_one_fraction(k);
    relator(&f)?;
    let set = numeric_reps(&f, SCAN_RESIDUAL_TOL)?;
    if set.reps.is_empty() {
        return Err(Error::Oracle(format!("no parabolic representation found for {f}")));
    }
    let mw = closed_form(k)?;
    let mut report = ScanReport {
        representations: set.reps.len(),
        words_checked: 0,
        max_relator_residual: set.reps.iter().fold(0.0, |m, r| m.max(r.residual)),
        min_distance: f64::INFINITY,
        closest_word: String::new(),
        candidates: Vec::new(),
        warnings: set.warnings.clone(),
    };
    for rep in &set.reps {
        let x = evaluate(&mw.x_l.clone().into_word(), rep);
        let y = evaluate(&mw.y_l.clone().into_word(), rep);
        let image = |s: Syllable| match s {
            Syllable::X => x,
            Syllable::XInv => x.inverse_sl2(),
            Syllable::Y => y,
            Syllable::YInv => y.inverse_sl2(),
        };
        let mut stack: Vec<(Vec<Syllable>, Mat2)> = vec![(Vec::new(), Mat2::identity())];
        while let Some((word, m)) = stack.pop() {
            if word.len() as u32 == max_syllables {
                continue;
            }
            for s in Syllable::ALL {
                if word.last() == Some(&s.inverse()) {
                    continue;
                }
                let mut next = word.clone();
                next.push(s);
                let img = m.mul(&image(s));
                let d = img.distance_from_pm_identity();
                report.words_checked += 1;
                let text: String = next.iter().map(|s| s.to_char()).collect();
                if d < report.min_distance {
                    report.min_distance = d;
                    report.closest_word = text.clone();
                }
                if d <= tol {
                    report.candidates.push(RelationCandidate {
                        word: text,
                        omega: [rep.omega.re, rep.omega.im],
                        distance: d,
                    });
                }
                stack.push((next, img));
            }
        }
    }
    Ok(report)
}
