//! Free-group words over the two generators `a`, `b`.
//!
//! Text syntax: `a`, `b` for the generators and `A`, `B` for their inverses,
//! so `abAB` is the commutator `a b a^-1 b^-1`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
}

impl Generator {
    pub fn other(self) -> Self {
        match self {
            Generator::A => Generator::B,
            Generator::B => Generator::A,
        }
    }
}

/// A generator with an exponent of `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Generator,
    pub positive: bool,
}

impl Letter {
    pub const A: Letter = Letter { gen: Generator::A, positive: true };
    pub const A_INV: Letter = Letter { gen: Generator::A, positive: false };
    pub const B: Letter = Letter { gen: Generator::B, positive: true };
    pub const B_INV: Letter = Letter { gen: Generator::B, positive: false };

    pub fn new(gen: Generator, positive: bool) -> Self {
        Letter { gen, positive }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, positive: !self.positive }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.gen == other.gen && self.positive != other.positive
    }

    /// `self^e` for `e = ±1`.
    pub fn pow_sign(self, e: i64) -> Self {
        if e < 0 {
            self.inverse()
        } else {
            self
        }
    }

    pub fn to_char(self) -> char {
        match (self.gen, self.positive) {
            (Generator::A, true) => 'a',
            (Generator::A, false) => 'A',
            (Generator::B, true) => 'b',
            (Generator::B, false) => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(Letter::A),
            'A' => Some(Letter::A_INV),
            'b' => Some(Letter::B),
            'B' => Some(Letter::B_INV),
            _ => None,
        }
    }

    /// The substitution `a ↦ b⁻¹, b ↦ a⁻¹`.
    pub fn apply_f(self) -> Self {
        Letter { gen: self.gen.other(), positive: !self.positive }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.char_indices()
        .map(|(pos, c)| Letter::from_char(c).ok_or(Error::Parse { pos, found: c }))
        .collect()
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for l in letters {
        write!(f, "{}", l.to_char())?;
    }
    Ok(())
}

fn letters_string(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.to_char()).collect()
}

fn inverse_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

fn has_cancellation(letters: &[Letter]) -> bool {
    letters.windows(2).any(|w| w[0].is_inverse_of(w[1]))
}

/// An arbitrary, possibly unreduced, word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(inverse_letters(&self.0))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend_from(&mut self, other: &[Letter]) {
        self.0.extend_from_slice(other);
    }

    /// `w^k`; negative `k` uses the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl From<Letter> for Word {
    fn from(l: Letter) -> Self {
        Word(vec![l])
    }
}

impl From<ReducedWord> for Word {
    fn from(w: ReducedWord) -> Self {
        Word(w.0)
    }
}

impl From<&ReducedWord> for Word {
    fn from(w: &ReducedWord) -> Self {
        Word(w.0.clone())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_letters(s).map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    /// Accepts `letters` only if no cancellation is present.
    pub fn try_new(letters: Vec<Letter>) -> Result<Self> {
        if has_cancellation(&letters) {
            return Err(Error::NotReduced);
        }
        Ok(ReducedWord(letters))
    }

    pub fn empty() -> Self {
        ReducedWord(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        ReducedWord(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(inverse_letters(&self.0))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || !f.is_inverse_of(l),
            _ => true,
        }
    }

    /// Free reduction of `self · other`.
    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        let mut k = 0;
        let (x, y) = (&self.0, &other.0);
        while k < x.len() && k < y.len() && x[x.len() - 1 - k].is_inverse_of(y[k]) {
            k += 1;
        }
        let mut v = x[..x.len() - k].to_vec();
        v.extend_from_slice(&y[k..]);
        ReducedWord(v)
    }

    /// Concatenation, failing if any cancellation would occur at the seam.
    pub fn concat_exact(&self, other: &ReducedWord) -> Result<ReducedWord> {
        if let (Some(l), Some(f)) = (self.last(), other.first()) {
            if l.is_inverse_of(f) {
                return Err(Error::NotReduced);
            }
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Ok(ReducedWord(v))
    }

    pub fn subword(&self, start: usize, len: usize) -> ReducedWord {
        ReducedWord(self.0[start..start + len].to_vec())
    }

    pub fn apply_f(&self) -> ReducedWord {
        ReducedWord(self.0.iter().map(|l| l.apply_f()).collect())
    }

    pub fn into_word(self) -> Word {
        Word(self.0)
    }
}

impl FromStr for ReducedWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ReducedWord::try_new(parse_letters(s)?)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&letters_string(&self.0))
    }
}

/// Unique freely reduced representative of `w`.
pub fn free_reduce(w: &Word) -> ReducedWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        match out.last() {
            Some(&t) if t.is_inverse_of(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    ReducedWord(out)
}

/// A cyclically reduced word considered up to rotation.
#[derive(Debug, Clone)]
pub struct CyclicWord(ReducedWord);

impl CyclicWord {
    pub fn new(w: ReducedWord) -> Result<Self> {
        if !w.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced);
        }
        Ok(CyclicWord(w))
    }

    pub fn representative(&self) -> &ReducedWord {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0 .0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotate(&self, k: usize) -> ReducedWord {
        let n = self.len();
        if n == 0 {
            return ReducedWord::empty();
        }
        let k = k % n;
        let mut v = self.0 .0[k..].to_vec();
        v.extend_from_slice(&self.0 .0[..k]);
        ReducedWord(v)
    }

    pub fn rotations(&self) -> impl Iterator<Item = ReducedWord> + '_ {
        (0..self.len()).map(move |k| self.rotate(k))
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord(self.0.inverse())
    }

    /// Lexicographically least rotation.
    pub fn canonical(&self) -> ReducedWord {
        self.rotations().min().unwrap_or_default()
    }

    /// Letter at cyclic position `i`.
    pub fn at(&self, i: usize) -> Letter {
        self.0 .0[i % self.len()]
    }

    /// The length-`len` subword starting at cyclic position `start`.
    pub fn cyclic_subword(&self, start: usize, len: usize) -> ReducedWord {
        ReducedWord((0..len).map(|i| self.at(start + i)).collect())
    }

    pub fn apply_f(&self) -> CyclicWord {
        CyclicWord(self.0.apply_f())
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && rotation_of(self.letters(), other.letters())
    }
}

impl Eq for CyclicWord {}

impl Hash for CyclicWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_letters(f, self.letters())?;
        write!(f, ")")
    }
}

impl Serialize for CyclicWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&letters_string(self.letters()))
    }
}

fn rotation_of<T: PartialEq>(x: &[T], y: &[T]) -> bool {
    let n = x.len();
    if n != y.len() {
        return false;
    }
    if n == 0 {
        return true;
    }
    (0..n).any(|k| (0..n).all(|i| x[(i + k) % n] == y[i]))
}

/// Run lengths of maximal constant-sign blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SSequence(Vec<u32>);

impl SSequence {
    pub fn new(runs: Vec<u32>) -> Result<Self> {
        if runs.contains(&0) {
            return Err(Error::Invariant("S-sequence entries must be positive".into()));
        }
        Ok(SSequence(runs))
    }

    /// Builds a sequence from blocks, discarding zero entries.
    pub fn from_blocks_dropping_zeros(runs: impl IntoIterator<Item = u32>) -> Self {
        SSequence(runs.into_iter().filter(|&r| r > 0).collect())
    }

    pub fn runs(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&r| u64::from(r)).sum()
    }

    pub fn reversed(&self) -> SSequence {
        SSequence(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn concat(&self, other: &SSequence) -> SSequence {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SSequence(v)
    }
}

impl fmt::Display for SSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for SSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Cyclic S-sequence, compared modulo rotation (not reversal).
#[derive(Debug, Clone)]
pub struct CyclicSSequence(Vec<u32>);

impl CyclicSSequence {
    pub fn new(runs: Vec<u32>) -> Result<Self> {
        if runs.is_empty() || runs.contains(&0) {
            return Err(Error::Invariant("cyclic S-sequence entries must be positive".into()));
        }
        if runs.len() > 1 && !runs.len().is_multiple_of(2) {
            return Err(Error::Invariant("cyclic S-sequence needs an even number of runs".into()));
        }
        Ok(CyclicSSequence(runs))
    }

    pub fn runs(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&r| u64::from(r)).sum()
    }

    pub fn reversed(&self) -> CyclicSSequence {
        CyclicSSequence(self.0.iter().rev().copied().collect())
    }

    /// Lexicographically least rotation.
    pub fn canonical(&self) -> Vec<u32> {
        let n = self.0.len();
        (0..n)
            .map(|k| self.0[k..].iter().chain(&self.0[..k]).copied().collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }

    /// Number of cyclic offsets at which `pattern` matches consecutively.
    pub fn occurrences(&self, pattern: &[u32]) -> usize {
        let n = self.0.len();
        if pattern.is_empty() || pattern.len() > n {
            return 0;
        }
        (0..n)
            .filter(|&k| pattern.iter().enumerate().all(|(i, &x)| self.0[(k + i) % n] == x))
            .count()
    }

    pub fn contains_term(&self, t: u32) -> bool {
        self.0.contains(&t)
    }
}

impl PartialEq for CyclicSSequence {
    fn eq(&self, other: &Self) -> bool {
        rotation_of(&self.0, &other.0)
    }
}

impl Eq for CyclicSSequence {}

impl fmt::Display for CyclicSSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", SSequence(self.0.clone()))
    }
}

impl Serialize for CyclicSSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// The alternating product `⟨xy⟩^k`.
pub fn alt_power(x: &Word, y: &Word, k: i64) -> Word {
    if k < 0 {
        return alt_power(x, y, -k).inverse();
    }
    let mut out = Word::empty();
    for i in 0..k {
        out.extend_from(if i % 2 == 0 { x.letters() } else { y.letters() });
    }
    out
}

fn runs_of(letters: &[Letter]) -> Vec<u32> {
    let mut runs: Vec<u32> = Vec::new();
    let mut prev: Option<bool> = None;
    for l in letters {
        if prev == Some(l.positive) {
            *runs.last_mut().expect("nonempty") += 1;
        } else {
            runs.push(1);
            prev = Some(l.positive);
        }
    }
    runs
}

/// S-sequence of a nonempty reduced word.
pub fn s_sequence(v: &ReducedWord) -> Result<SSequence> {
    if v.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(SSequence(runs_of(v.letters())))
}

/// S-sequence of an arbitrary slice of letters (caller guarantees nonempty).
pub(crate) fn runs_of_slice(letters: &[Letter]) -> Vec<u32> {
    runs_of(letters)
}

/// Cyclic S-sequence of a nonempty cyclic word.
pub fn cyclic_s_sequence(v: &CyclicWord) -> Result<CyclicSSequence> {
    let letters = v.letters();
    let n = letters.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    // start at a sign change so that no block wraps around
    let start = (0..n).find(|&i| letters[i].positive != letters[(i + n - 1) % n].positive);
    match start {
        None => Ok(CyclicSSequence(vec![n as u32])),
        Some(k) => {
            let rotated: Vec<Letter> = letters[k..].iter().chain(&letters[..k]).copied().collect();
            Ok(CyclicSSequence(runs_of(&rotated)))
        }
    }
}

pub fn is_alternating(v: &ReducedWord) -> bool {
    v.letters().windows(2).all(|w| w[0].gen != w[1].gen)
}

pub fn is_cyclically_alternating(v: &CyclicWord) -> bool {
    let r = v.representative();
    is_alternating(r)
        && match (r.first(), r.last()) {
            (Some(f), Some(l)) if r.len() > 1 => f.gen != l.gen,
            _ => true,
        }
}

/// The alternating word with the given initial letter and S-sequence.
pub fn alt_word(initial: Letter, s: &SSequence) -> ReducedWord {
    let mut out = Vec::with_capacity(s.total() as usize);
    let mut gen = initial.gen;
    let mut positive = initial.positive;
    for &run in s.runs() {
        for _ in 0..run {
            out.push(Letter { gen, positive });
            gen = gen.other();
        }
        positive = !positive;
    }
    ReducedWord(out)
}

/// Letterwise substitution `a ↦ b⁻¹`, `b ↦ a⁻¹`.
pub fn apply_f(w: &Word) -> Word {
    Word(w.letters().iter().map(|l| l.apply_f()).collect())
}
