//! Wirtinger words `c_i`, `d_0`, `d_1` and the long upper meridian pair.
//!
//! Two independent routes produce `y_ℓ`: free reduction of the conjugate
//! `⟨d_1 d̄_0⟩^n b̄ ⟨d_1 d̄_0⟩^{-n}` (or its odd-`m` variant), and direct
//! assembly `w_y b̄ w̄_y` from the alternating word with the tabulated
//! initial letter and S-sequence. [`verify_meridian_forms`] compares them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::slope::{GenusOneKnot, Sign};
use crate::words::{
    alt_power, alt_word, free_reduce, is_alternating, s_sequence, Letter, ReducedWord, SSequence,
    Word,
};

fn lw(l: Letter) -> Word {
    Word::from(l)
}

/// Wirtinger generator `c_i`, `-m ≤ i ≤ m + 1`, as a reduced word.
pub fn c_word(i: i64, m: u32) -> Result<ReducedWord> {
    let m = i64::from(m);
    if i < -m || i > m + 1 {
        return Err(Error::IndexOutOfRange { index: i, lo: -m, hi: m + 1 });
    }
    let (a, a_inv, b, b_inv) = (lw(Letter::A), lw(Letter::A_INV), lw(Letter::B), lw(Letter::B_INV));
    let raw = match i {
        0 => b_inv,
        i if i > 0 && i % 2 == 0 => alt_power(&a_inv, &b_inv, i).concat(&alt_power(&a, &b, i - 1)),
        i if i > 0 => alt_power(&a_inv, &b_inv, i - 1).concat(&alt_power(&a, &b, i)),
        i => {
            let j = -i;
            if j % 2 == 0 {
                alt_power(&b, &a, j).concat(&alt_power(&b_inv, &a_inv, j + 1))
            } else {
                alt_power(&b, &a, j + 1).concat(&alt_power(&b_inv, &a_inv, j))
            }
        }
    };
    Ok(free_reduce(&raw))
}

/// `(d_0, d_1)`: `(c_m, c_{-m})` for `[2m, 2n]`, swapped for `[2m, -2n]`.
pub fn d0_d1(k: &GenusOneKnot) -> (ReducedWord, ReducedWord) {
    let m = i64::from(k.m());
    let cm = c_word(m, k.m()).expect("in range");
    let c_neg = c_word(-m, k.m()).expect("in range");
    match k.sign() {
        Sign::Plus => (cm, c_neg),
        Sign::Minus => (c_neg, cm),
    }
}

/// The unreduced conjugate word for `y_ℓ` given by the Wirtinger calculation.
pub fn y_l_raw(k: &GenusOneKnot) -> Word {
    let (d0, d1) = d0_d1(k);
    let (x, y) = if k.m().is_multiple_of(2) {
        (Word::from(&d1), Word::from(&d0).inverse())
    } else {
        (Word::from(&d1).inverse(), Word::from(&d0))
    };
    let core = alt_power(&x, &y, i64::from(k.n()));
    core.concat(&lw(Letter::B_INV)).concat(&core.inverse())
}

/// `d_0`, `d_1`, `w_x`, `w_y` and the long meridian pair `(x_ℓ, y_ℓ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeridianWords {
    pub d0: ReducedWord,
    pub d1: ReducedWord,
    pub w_x: ReducedWord,
    pub w_y: ReducedWord,
    pub x_l: ReducedWord,
    pub y_l: ReducedWord,
}

/// `k` copies of `x`.
fn copies(k: u32, x: u32) -> impl Iterator<Item = u32> {
    std::iter::repeat_n(x, k as usize)
}

fn seq(blocks: impl IntoIterator<Item = u32>) -> SSequence {
    SSequence::from_blocks_dropping_zeros(blocks)
}

/// Tabulated `S(w_x) = S(w_y)`.
pub fn conjugator_s_sequence(k: &GenusOneKnot) -> SSequence {
    let (m, n) = (k.m(), k.n());
    match k.sign() {
        Sign::Plus if n >= 2 => seq([m].into_iter().chain(copies(n - 1, 2 * m)).chain([m])),
        Sign::Plus => seq([m, m]),
        Sign::Minus if m >= 2 && n >= 2 => {
            seq([m].into_iter().chain(copies(n - 1, 2 * m)).chain([m - 1]))
        }
        Sign::Minus if m >= 2 => seq([m, m - 1]),
        Sign::Minus if n >= 2 => seq([1].into_iter().chain(copies(n - 1, 2))),
        Sign::Minus => seq([1]),
    }
}

/// Tabulated `S(x_ℓ^ε) = S(y_ℓ^ε)` with `ε = (-1)^n`.
pub fn meridian_power_s_sequence(k: &GenusOneKnot) -> SSequence {
    let (m, n) = (k.m(), k.n());
    let tail = |mid: u32| -> SSequence {
        seq([m]
            .into_iter()
            .chain(copies(n - 1, 2 * m))
            .chain([m, mid])
            .chain(copies(n - 1, 2 * m))
            .chain([m]))
    };
    match k.sign() {
        Sign::Plus => tail(m + 1),
        Sign::Minus if m >= 2 => tail(m - 1),
        Sign::Minus => match n {
            1 => seq([1, 2]),
            2 => seq([1, 2, 3, 1]),
            _ => seq([1]
                .into_iter()
                .chain(copies(n - 1, 2))
                .chain([3])
                .chain(copies(n - 2, 2))
                .chain([1])),
        },
    }
}

/// Initial letters of `(w_x, w_y)`.
pub fn conjugator_initials(k: &GenusOneKnot) -> (Letter, Letter) {
    match k.sign() {
        Sign::Plus => (Letter::A_INV, Letter::B),
        Sign::Minus => (Letter::B, Letter::A_INV),
    }
}

/// `S` of `v^e`, reading a negative power as the inverse word.
fn s_of_power(v: &ReducedWord, e: i64) -> SSequence {
    let w = if e < 0 { v.inverse() } else { v.clone() };
    s_sequence(&w).expect("nonempty")
}

fn invariant(msg: String) -> Error {
    Error::Invariant(msg)
}

/// Builds the meridian words from the tabulated closed forms and validates them.
pub fn closed_form(k: &GenusOneKnot) -> Result<MeridianWords> {
    let (d0, d1) = d0_d1(k);
    let s = conjugator_s_sequence(k);
    let (ix, iy) = conjugator_initials(k);
    let w_x = alt_word(ix, &s);
    let w_y = alt_word(iy, &s);

    let x_l = w_x
        .concat_exact(&ReducedWord::letter(Letter::A))
        .and_then(|w| w.concat_exact(&w_x.inverse()))
        .map_err(|_| invariant(format!("{k}: w_x a w̄_x is not reduced")))?;
    let y_l = w_y
        .concat_exact(&ReducedWord::letter(Letter::B_INV))
        .and_then(|w| w.concat_exact(&w_y.inverse()))
        .map_err(|_| invariant(format!("{k}: w_y b̄ w̄_y is not reduced")))?;

    if !is_alternating(&x_l) || !is_alternating(&y_l) {
        return Err(invariant(format!("{k}: meridian words are not alternating")));
    }
    let eps = k.epsilon();
    let expected = meridian_power_s_sequence(k);
    if s_of_power(&x_l, eps) != expected || s_of_power(&y_l, eps) != expected {
        return Err(invariant(format!(
            "{k}: S(x_l^ε) = {}, S(y_l^ε) = {}, expected {expected}",
            s_of_power(&x_l, eps),
            s_of_power(&y_l, eps)
        )));
    }
    let (x_ends, y_ends) = match k.sign() {
        Sign::Plus => ((Letter::A_INV, Letter::A), (Letter::B, Letter::B_INV)),
        Sign::Minus => ((Letter::B, Letter::B_INV), (Letter::A_INV, Letter::A)),
    };
    if (x_l.first(), x_l.last()) != (Some(x_ends.0), Some(x_ends.1))
        || (y_l.first(), y_l.last()) != (Some(y_ends.0), Some(y_ends.1))
    {
        return Err(invariant(format!("{k}: meridian words have unexpected end letters")));
    }
    Ok(MeridianWords { d0, d1, w_x, w_y, x_l, y_l })
}

/// Outcome of comparing the two routes and the power identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeridianCheck {
    pub raw_matches_closed_form: bool,
    pub f_swaps_pair: bool,
    pub powers_ok: bool,
    pub failures: Vec<String>,
}

impl MeridianCheck {
    pub fn passed(&self) -> bool {
        self.raw_matches_closed_form && self.f_swaps_pair && self.powers_ok
    }
}

/// Power range exercised by [`verify_meridian_forms`].
pub const POWER_RANGE: std::ops::RangeInclusive<i64> = -4..=4;

/// `w a^k w̄`, failing if any cancellation occurs.
pub fn conjugate_power(w: &ReducedWord, letter: Letter, k: i64) -> Result<ReducedWord> {
    let power = ReducedWord::try_new(vec![letter.pow_sign(k); k.unsigned_abs() as usize])?;
    w.concat_exact(&power)?.concat_exact(&w.inverse())
}

pub fn check_meridian_forms(k: &GenusOneKnot) -> MeridianCheck {
    let mut failures = Vec::new();
    let mw = match closed_form(k) {
        Ok(mw) => mw,
        Err(e) => {
            return MeridianCheck {
                raw_matches_closed_form: false,
                f_swaps_pair: false,
                powers_ok: false,
                failures: vec![e.to_string()],
            }
        }
    };
    let reduced = free_reduce(&y_l_raw(k));
    let raw_ok = reduced == mw.y_l;
    if !raw_ok {
        failures.push(format!("reduced raw y_l {reduced} != closed form {}", mw.y_l));
    }
    let f_ok = mw.y_l.apply_f() == mw.x_l && mw.x_l.apply_f() == mw.y_l;
    if !f_ok {
        failures.push("f does not swap x_l and y_l".into());
    }
    let mut powers_ok = true;
    for e in POWER_RANGE.filter(|&e| e != 0) {
        for (name, base, w, letter) in [
            ("x_l", &mw.x_l, &mw.w_x, Letter::A),
            ("y_l", &mw.y_l, &mw.w_y, Letter::B_INV),
        ] {
            let formal = free_reduce(&Word::from(base).pow(e));
            match conjugate_power(w, letter, e) {
                Ok(closed) => {
                    if formal != closed {
                        powers_ok = false;
                        failures.push(format!("{name}^{e}: {formal} != {closed}"));
                    }
                    if is_alternating(&closed) != (e.abs() == 1) {
                        powers_ok = false;
                        failures.push(format!("{name}^{e}: alternation mismatch"));
                    }
                }
                Err(_) => {
                    powers_ok = false;
                    failures.push(format!("{name}^{e}: conjugate form cancels"));
                }
            }
        }
    }
    MeridianCheck { raw_matches_closed_form: raw_ok, f_swaps_pair: f_ok, powers_ok, failures }
}

pub fn verify_meridian_forms(k: &GenusOneKnot) -> bool {
    check_meridian_forms(k).passed()
}
