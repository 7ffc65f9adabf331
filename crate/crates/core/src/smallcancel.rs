//! Symmetrized relator sets, pieces and the C(4)/T(4) conditions.
//!
//! A piece is a common prefix of two distinct elements of the symmetrized
//! set `R` (all cyclic permutations of `u` and `u⁻¹`). Pieces are closed
//! under taking subwords, so the longest piece starting at each cyclic
//! position determines every piece of every subword; [`PieceTable`] caches
//! those lengths and answers minimal piece decompositions greedily. The
//! dynamic program in [`min_pieces`] works from prefix queries alone and is
//! kept as the reference route.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{canonical_decomposition, relator};
use crate::slope::{genus_one_fraction, GenusOneKnot, Sign};
use crate::words::{cyclic_s_sequence, runs_of_slice, CyclicWord, Letter, ReducedWord};

/// All cyclic permutations of `u` and `u⁻¹`, sorted, with a prefix index.
#[derive(Debug, Clone)]
pub struct SymmetrizedSet {
    source: CyclicWord,
    elements: Vec<ReducedWord>,
}

fn prefix_cmp(e: &[Letter], v: &[Letter]) -> Ordering {
    let k = e.len().min(v.len());
    match e[..k].cmp(&v[..k]) {
        Ordering::Equal if e.len() < v.len() => Ordering::Less,
        Ordering::Equal => Ordering::Equal,
        o => o,
    }
}

fn lcp(x: &[Letter], y: &[Letter]) -> usize {
    x.iter().zip(y).take_while(|(a, b)| a == b).count()
}

/// Symmetrized set generated by `u`.
pub fn symmetrized_set(u: &CyclicWord) -> SymmetrizedSet {
    let mut elements: Vec<ReducedWord> = u.rotations().chain(u.inverse().rotations()).collect();
    elements.sort();
    elements.dedup();
    SymmetrizedSet { source: u.clone(), elements }
}

impl SymmetrizedSet {
    /// Symmetrized set of a relator, requiring all `2|u|` permutations to be distinct.
    pub fn for_relator(u: &CyclicWord) -> Result<Self> {
        let r = symmetrized_set(u);
        if r.len() != 2 * u.len() {
            return Err(Error::Invariant(format!(
                "symmetrized set has {} elements, expected {}",
                r.len(),
                2 * u.len()
            )));
        }
        Ok(r)
    }

    pub fn source(&self) -> &CyclicWord {
        &self.source
    }

    pub fn elements(&self) -> &[ReducedWord] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of elements having `v` as a prefix.
    pub fn prefix_count(&self, v: &[Letter]) -> usize {
        let lo = self.elements.partition_point(|e| prefix_cmp(e.letters(), v) == Ordering::Less);
        let hi = self.elements.partition_point(|e| prefix_cmp(e.letters(), v) != Ordering::Greater);
        hi - lo
    }

    pub fn is_subword(&self, v: &[Letter]) -> bool {
        self.prefix_count(v) >= 1
    }

    pub fn is_piece_letters(&self, v: &[Letter]) -> bool {
        !v.is_empty() && self.prefix_count(v) >= 2
    }

    /// Longest common prefix of `e` with any other element.
    fn max_shared_prefix(&self, e: &ReducedWord) -> usize {
        let idx = self.elements.binary_search(e).expect("element of R");
        let mut best = 0;
        if idx > 0 {
            best = best.max(lcp(e.letters(), self.elements[idx - 1].letters()));
        }
        if idx + 1 < self.elements.len() {
            best = best.max(lcp(e.letters(), self.elements[idx + 1].letters()));
        }
        best
    }

    pub fn piece_table(&self) -> PieceTable {
        let forward = self.source.rotations().map(|e| self.max_shared_prefix(&e)).collect();
        let inverse = self.source.inverse();
        let backward = inverse.rotations().map(|e| self.max_shared_prefix(&e)).collect();
        PieceTable { forward, backward, n: self.source.len() }
    }
}

/// Longest piece starting at each cyclic position of `u` and of `u⁻¹`.
#[derive(Debug, Clone)]
pub struct PieceTable {
    forward: Vec<usize>,
    backward: Vec<usize>,
    n: usize,
}

impl PieceTable {
    fn table(&self, inverse: bool) -> &[usize] {
        if inverse {
            &self.backward
        } else {
            &self.forward
        }
    }

    pub fn longest_piece_at(&self, start: usize, inverse: bool) -> usize {
        self.table(inverse)[start % self.n]
    }

    /// Whether the cyclic subword of `u` (or `u⁻¹`) at `start` of length `len` is a piece.
    pub fn is_piece(&self, start: usize, len: usize, inverse: bool) -> bool {
        len >= 1 && self.longest_piece_at(start, inverse) >= len
    }

    /// Minimal number of pieces covering the cyclic subword, by greedy extension.
    pub fn min_pieces(&self, start: usize, len: usize, inverse: bool) -> Option<u32> {
        let t = self.table(inverse);
        let (mut pos, mut left, mut count) = (start, len, 0u32);
        while left > 0 {
            let step = t[pos % self.n].min(left);
            if step == 0 {
                return None;
            }
            pos += step;
            left -= step;
            count += 1;
        }
        Some(count)
    }
}

pub fn is_piece(v: &ReducedWord, r: &SymmetrizedSet) -> bool {
    r.is_piece_letters(v.letters())
}

/// Minimal `t` with `v = p_1 ⋯ p_t`, each `p_i` a piece; `None` if no such product exists.
pub fn min_pieces(v: &ReducedWord, r: &SymmetrizedSet) -> Result<Option<u32>> {
    let letters = v.letters();
    if letters.is_empty() || !r.is_subword(letters) {
        return Err(Error::NotASubword);
    }
    let len = letters.len();
    let mut best: Vec<Option<u32>> = vec![None; len + 1];
    best[0] = Some(0);
    for i in 0..len {
        let Some(here) = best[i] else { continue };
        for j in i + 1..=len {
            // prefixes of pieces are pieces, so the first failure ends the scan
            if !r.is_piece_letters(&letters[i..j]) {
                break;
            }
            if best[j].is_none_or(|b| here + 1 < b) {
                best[j] = Some(here + 1);
            }
        }
    }
    Ok(best[len])
}

/// Report for a single word against `R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceReport {
    pub word: ReducedWord,
    pub is_piece: bool,
    pub min_pieces: Option<u32>,
}

pub fn piece_report(v: &ReducedWord, r: &SymmetrizedSet) -> Result<PieceReport> {
    Ok(PieceReport { word: v.clone(), is_piece: is_piece(v, r), min_pieces: min_pieces(v, r)? })
}

/// C(p): no element of `R` is a product of fewer than `p` pieces.
pub fn check_c(r: &SymmetrizedSet, p: u32) -> bool {
    let table = r.piece_table();
    let n = r.source().len();
    [false, true].iter().all(|&inv| {
        (0..n).all(|start| table.min_pieces(start, n, inv).is_none_or(|t| t >= p))
    })
}

/// C(p) via the dynamic program on every element.
pub fn check_c_by_dp(r: &SymmetrizedSet, p: u32) -> bool {
    r.elements().iter().all(|e| {
        min_pieces(e, r).expect("element is a subword").is_none_or(|t| t >= p)
    })
}

/// A triple violating T(4), as indices into `R.elements()`.
pub fn find_t4_violation(r: &SymmetrizedSet) -> Option<(usize, usize, usize)> {
    let els = r.elements();
    let inverse_index = |i: usize| -> Option<usize> { els.binary_search(&els[i].inverse()).ok() };
    let inverses: Vec<Option<usize>> = (0..els.len()).map(inverse_index).collect();
    // elements grouped by first letter
    let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); 4];
    let slot = |l: Letter| (l.gen as usize) * 2 + usize::from(l.positive);
    for (i, e) in els.iter().enumerate() {
        if let Some(f) = e.first() {
            by_first[slot(f)].push(i);
        }
    }
    let followers = |i: usize| -> &[usize] {
        match els[i].last() {
            Some(l) => &by_first[slot(l.inverse())],
            None => &[],
        }
    };
    for i in 0..els.len() {
        for &j in followers(i) {
            if inverses[i] == Some(j) {
                continue;
            }
            for &k in followers(j) {
                if inverses[j] == Some(k) || inverses[k] == Some(i) {
                    continue;
                }
                let closes = match (els[k].last(), els[i].first()) {
                    (Some(l), Some(f)) => l.is_inverse_of(f),
                    _ => false,
                };
                if closes {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// T(q); only `q = 4` is supported.
pub fn check_t(r: &SymmetrizedSet, q: u32) -> Result<bool> {
    if q != 4 {
        return Err(Error::Unsupported(format!("T({q}) is not implemented; only T(4)")));
    }
    Ok(find_t4_violation(r).is_none())
}

fn repeat(k: i64, x: u32) -> impl Iterator<Item = u32> {
    std::iter::repeat_n(x, k.max(0) as usize)
}

/// S-sequence patterns whose subwords must be pieces.
pub fn listed_piece_patterns(k: &GenusOneKnot) -> HashSet<Vec<u32>> {
    let (m, n) = (k.m(), i64::from(k.n()));
    let mut set = HashSet::new();
    for l in 1..=m {
        set.insert(vec![1, l]);
        set.insert(vec![l, 1]);
    }
    if k.sign() == Sign::Minus {
        for l in 1..=2 * m {
            set.insert(vec![l]);
        }
        for kk in 0..=2 * n - 2 {
            set.insert(repeat(kk, 2 * m).chain([1]).collect());
            set.insert([1].into_iter().chain(repeat(kk, 2 * m)).collect());
        }
        for kk in 0..=2 * n - 3 {
            set.insert([1].into_iter().chain(repeat(kk, 2 * m)).chain([1]).collect());
        }
    }
    set
}

/// Outcome of the piece characterization checks for one knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiecePropReport {
    pub blocks_symmetric_and_twice: bool,
    pub listed_subwords_checked: usize,
    pub failures: Vec<String>,
}

impl PiecePropReport {
    pub fn passed(&self) -> bool {
        self.blocks_symmetric_and_twice && self.failures.is_empty()
    }
}

/// Cyclic subwords of `u` (and `u⁻¹` when `both`) with their S-sequence runs.
fn for_each_subword(
    u: &CyclicWord,
    both: bool,
    mut visit: impl FnMut(bool, usize, usize, &[u32]),
) {
    let n = u.len();
    let inv = u.inverse();
    let words: &[(bool, &CyclicWord)] = if both { &[(false, u), (true, &inv)] } else { &[(false, u)] };
    for &(is_inv, w) in words {
        for start in 0..n {
            let mut runs: Vec<u32> = Vec::new();
            let mut prev: Option<bool> = None;
            for len in 1..=n {
                let l = w.at(start + len - 1);
                if prev == Some(l.positive) {
                    *runs.last_mut().expect("nonempty") += 1;
                } else {
                    runs.push(1);
                    prev = Some(l.positive);
                }
                visit(is_inv, start, len, &runs);
            }
        }
    }
}

pub fn check_piece_prop(k: &GenusOneKnot) -> Result<PiecePropReport> {
    let rel = relator(&genus_one_fraction(k))?;
    let r = SymmetrizedSet::for_relator(&rel.u)?;
    let table = r.piece_table();
    let dec = canonical_decomposition(k);
    let cs = cyclic_s_sequence(&rel.u)?;
    let blocks_ok = dec.s1.is_palindrome()
        && dec.s2.is_palindrome()
        && cs.occurrences(dec.s1.runs()) == 2
        && cs.occurrences(dec.s2.runs()) == 2;

    let patterns = listed_piece_patterns(k);
    let mut checked = 0;
    let mut failures = Vec::new();
    for_each_subword(&rel.u, true, |inv, start, len, runs| {
        if patterns.contains(runs) {
            checked += 1;
            if !table.is_piece(start, len, inv) {
                let w = if inv { rel.u.inverse() } else { rel.u.clone() };
                failures.push(format!(
                    "{} with S = {:?} is not a piece",
                    w.cyclic_subword(start, len),
                    runs
                ));
            }
        }
    });
    Ok(PiecePropReport { blocks_symmetric_and_twice: blocks_ok, listed_subwords_checked: checked, failures })
}

pub fn verify_piece_prop(k: &GenusOneKnot) -> bool {
    check_piece_prop(k).map(|r| r.passed()).unwrap_or(false)
}

/// Whether some subword of a word with S-sequence `runs` has S-sequence
/// `fixed ++ (ℓ)` for some `ℓ ≥ 1`.
pub fn has_subword_pattern_then_free(runs: &[u32], fixed: &[u32]) -> bool {
    let f = fixed.len();
    if f == 0 || runs.len() < f + 1 {
        return false;
    }
    (0..runs.len() - f).any(|i| runs[i] >= fixed[0] && runs[i + 1..i + f] == fixed[1..])
}

/// Whether some subword has S-sequence `(ℓ) ++ fixed` for some `ℓ ≥ 1`.
pub fn has_subword_free_then_pattern(runs: &[u32], fixed: &[u32]) -> bool {
    let r: Vec<u32> = runs.iter().rev().copied().collect();
    let f: Vec<u32> = fixed.iter().rev().copied().collect();
    has_subword_pattern_then_free(&r, &f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreePieceReport {
    pub three_piece_subwords: usize,
    pub failures: Vec<String>,
}

impl ThreePieceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_three_piece_property(k: &GenusOneKnot) -> Result<ThreePieceReport> {
    let rel = relator(&genus_one_fraction(k))?;
    let r = SymmetrizedSet::for_relator(&rel.u)?;
    let table = r.piece_table();
    let dec = canonical_decomposition(k);
    let s1s2: Vec<u32> = dec.s1.runs().iter().chain(dec.s2.runs()).copied().collect();
    let s2s1: Vec<u32> = dec.s2.runs().iter().chain(dec.s1.runs()).copied().collect();
    let mut count = 0;
    let mut failures = Vec::new();
    for_each_subword(&rel.u, false, |_, start, len, runs| {
        if table.min_pieces(start, len, false) == Some(3) {
            count += 1;
            if !has_subword_pattern_then_free(runs, &s1s2)
                && !has_subword_free_then_pattern(runs, &s2s1)
            {
                failures.push(format!("{} (S = {:?})", rel.u.cyclic_subword(start, len), runs));
            }
        }
    });
    Ok(ThreePieceReport { three_piece_subwords: count, failures })
}

pub fn verify_three_piece_property(k: &GenusOneKnot) -> bool {
    check_three_piece_property(k).map(|r| r.passed()).unwrap_or(false)
}

/// Subwords of the cyclic word `u` (starting positions and lengths up to `|u|`).
pub fn cyclic_subwords(u: &CyclicWord) -> impl Iterator<Item = (usize, usize, ReducedWord)> + '_ {
    let n = u.len();
    (0..n).flat_map(move |s| (1..=n).map(move |l| (s, l, u.cyclic_subword(s, l))))
}

/// Relator symmetrized set for a knot.
pub fn knot_symmetrized_set(k: &GenusOneKnot) -> Result<SymmetrizedSet> {
    let rel = relator(&genus_one_fraction(k))?;
    SymmetrizedSet::for_relator(&rel.u)
}

/// `S` of a cyclic subword, for callers outside the module.
pub fn subword_runs(u: &CyclicWord, start: usize, len: usize) -> Vec<u32> {
    runs_of_slice(u.cyclic_subword(start, len).letters())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slope::Fraction;
    use crate::words::s_sequence;

    fn knot(m: u32, n: u32, s: Sign) -> GenusOneKnot {
        GenusOneKnot::new(m, n, s).unwrap()
    }

    fn set_for(f: &str) -> SymmetrizedSet {
        let rel = relator(&f.parse::<Fraction>().unwrap()).unwrap();
        SymmetrizedSet::for_relator(&rel.u).unwrap()
    }

    fn rw(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    /// Brute force: count elements of R beginning with `v`, by linear scan.
    fn brute_is_piece(v: &ReducedWord, r: &SymmetrizedSet) -> bool {
        r.elements().iter().filter(|e| e.letters().starts_with(v.letters())).count() >= 2
    }

    #[test]
    fn set_sizes() {
        assert_eq!(set_for("2/5").len(), 20);
        assert_eq!(set_for("2/3").len(), 12);
        let ab = symmetrized_set(&CyclicWord::new(rw("ab")).unwrap());
        let names: Vec<String> = ab.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(names.len(), 4);
        for w in ["ab", "ba", "AB", "BA"] {
            assert!(names.contains(&w.to_string()));
        }
        let power = symmetrized_set(&CyclicWord::new(rw("abab")).unwrap());
        assert!(SymmetrizedSet::for_relator(power.source()).is_err());
    }

    #[test]
    fn piece_examples() {
        let r = set_for("2/5");
        assert!(is_piece(&rw("ab"), &r));
        assert!(!is_piece(&rw("abaBAbabAB"), &r));
        for f in ["2/5", "2/3", "4/7", "6/25"] {
            let r = set_for(f);
            assert!(is_piece(&rw("a"), &r), "{f}");
        }
    }

    #[test]
    fn prefix_index_matches_linear_scan() {
        for f in ["2/5", "2/3", "4/9", "4/15"] {
            let r = set_for(f);
            for (_, _, v) in cyclic_subwords(r.source()) {
                assert_eq!(is_piece(&v, &r), brute_is_piece(&v, &r));
                assert_eq!(is_piece(&v, &r), is_piece(&v.inverse(), &r));
            }
        }
    }

    #[test]
    fn min_pieces_examples() {
        let r = set_for("2/5");
        assert_eq!(min_pieces(&rw("ab"), &r).unwrap(), Some(1));
        let u = r.source().representative().clone();
        assert!(min_pieces(&u, &r).unwrap().unwrap() >= 4);
        assert_eq!(min_pieces(&rw("aa"), &r), Err(Error::NotASubword));
        assert_eq!(min_pieces(&ReducedWord::empty(), &r), Err(Error::NotASubword));
        let rep = piece_report(&rw("ab"), &r).unwrap();
        assert!(rep.is_piece && rep.min_pieces == Some(1));
    }

    #[test]
    fn min_pieces_for_trefoil_block_pair() {
        // u = abAbaB; the subword "abA" has S = (2, 1) and spans S1 S2
        let r = set_for("2/3");
        let v = rw("abA");
        assert_eq!(s_sequence(&v).unwrap().runs(), &[2, 1]);
        assert_eq!(min_pieces(&v, &r).unwrap(), Some(2));
    }

    #[test]
    fn greedy_table_agrees_with_dp() {
        for f in ["2/5", "2/3", "4/7", "2/9", "4/9", "4/15", "6/13"] {
            let r = set_for(f);
            let table = r.piece_table();
            let u = r.source().clone();
            for inv in [false, true] {
                let w = if inv { u.inverse() } else { u.clone() };
                for (s, l, v) in cyclic_subwords(&w) {
                    assert_eq!(table.min_pieces(s, l, inv), min_pieces(&v, &r).unwrap(), "{f} {v}");
                }
            }
        }
    }

    #[test]
    fn min_pieces_is_monotone_under_subwords() {
        let r = set_for("4/9");
        let u = r.source().clone();
        for (s, l, v) in cyclic_subwords(&u) {
            let t = min_pieces(&v, &r).unwrap().unwrap();
            for a in 0..l {
                for b in a + 1..=l {
                    let sub = u.cyclic_subword(s + a, b - a);
                    assert!(min_pieces(&sub, &r).unwrap().unwrap() <= t);
                }
            }
        }
    }

    #[test]
    fn c4_and_sharpness() {
        assert!(check_c(&set_for("2/5"), 4));
        assert!(check_c(&set_for("2/3"), 4));
        for m in 1..=6 {
            for n in 1..=6 {
                for s in [Sign::Plus, Sign::Minus] {
                    let r = knot_symmetrized_set(&knot(m, n, s)).unwrap();
                    assert!(check_c(&r, 4));
                    assert!(!check_c(&r, 5), "C(5) unexpectedly holds for {m} {n} {s}");
                }
            }
        }
    }

    #[test]
    fn c_routes_agree() {
        for f in ["2/5", "2/3", "4/7", "6/25"] {
            let r = set_for(f);
            for p in 3..=5 {
                assert_eq!(check_c(&r, p), check_c_by_dp(&r, p));
            }
        }
    }

    #[test]
    fn t4() {
        assert_eq!(check_t(&set_for("2/5"), 4), Ok(true));
        assert_eq!(check_t(&set_for("2/3"), 4), Ok(true));
        assert!(check_t(&set_for("2/5"), 3).is_err());
        // aabaB admits the cancelling triangle AAbAB · bABAA · abaBa
        let tri = symmetrized_set(&CyclicWord::new(rw("ab")).unwrap());
        let bad = symmetrized_set(&CyclicWord::new(rw("aabaB")).unwrap());
        assert!(find_t4_violation(&tri).is_none());
        assert!(find_t4_violation(&bad).is_some());
    }

    /// Independent check of the block criterion by enumerating subwords.
    fn brute_pattern(v: &[Letter], fixed: &[u32], free_last: bool) -> bool {
        for i in 0..v.len() {
            for j in i + 1..=v.len() {
                let s = runs_of_slice(&v[i..j]);
                if s.len() == fixed.len() + 1 {
                    let ok = if free_last { &s[..fixed.len()] == fixed } else { &s[1..] == fixed };
                    if ok {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn block_criterion_matches_brute_force() {
        for f in ["2/5", "4/7", "4/9", "2/7"] {
            let r = set_for(f);
            let u = r.source().clone();
            for pat in [vec![3u32, 2], vec![2, 2, 2], vec![1, 2], vec![4, 3], vec![2]] {
                for (_, _, v) in cyclic_subwords(&u) {
                    let runs = runs_of_slice(v.letters());
                    assert_eq!(
                        has_subword_pattern_then_free(&runs, &pat),
                        brute_pattern(v.letters(), &pat, true)
                    );
                    assert_eq!(
                        has_subword_free_then_pattern(&runs, &pat),
                        brute_pattern(v.letters(), &pat, false)
                    );
                }
            }
        }
    }

    #[test]
    fn three_piece_small() {
        for (m, n, s) in [(1, 1, Sign::Plus), (1, 1, Sign::Minus), (2, 1, Sign::Plus)] {
            let rep = check_three_piece_property(&knot(m, n, s)).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
            assert!(rep.three_piece_subwords > 0);
        }
    }

    #[test]
    fn piece_prop_plus_and_n_at_least_two() {
        for (m, n, s) in [(1, 1, Sign::Plus), (2, 2, Sign::Minus), (1, 2, Sign::Minus)] {
            let rep = check_piece_prop(&knot(m, n, s)).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
            assert!(rep.listed_subwords_checked > 0);
        }
    }

    #[test]
    fn full_block_of_length_2m_is_not_a_piece_when_n_is_one() {
        // For [2m, -2} the positive 2m-block occurs once in R.
        for m in 1..=4 {
            let k = knot(m, 1, Sign::Minus);
            let rep = check_piece_prop(&k).unwrap();
            assert!(rep.blocks_symmetric_and_twice);
            assert_eq!(rep.failures.len(), 4, "{k}: {:?}", rep.failures);
            assert!(rep.failures.iter().all(|f| f.contains(&format!("[{}]", 2 * m))));
        }
    }
}
