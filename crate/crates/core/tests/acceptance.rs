//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and then
//! asserts both correctness and its time budget.

use std::time::{Duration, Instant};

use bridge_forge::farey::{gamma_generators, orbit_contains, reflection_in_edge, Verdict};
use bridge_forge::freeness::{check_claim2, no_relation_scan, Claim2Case, SignPattern};
use bridge_forge::meridians::{check_meridian_forms, closed_form};
use bridge_forge::orbifold::theorem2_verdicts;
use bridge_forge::presentation::{canonical_decomposition, relator};
use bridge_forge::slope::genus_one_fraction;
use bridge_forge::smallcancel::{
    check_c_by_dp, check_t, check_three_piece_property, knot_symmetrized_set, listed_piece_patterns,
};
use bridge_forge::words::{
    alt_word, apply_f, cyclic_s_sequence, free_reduce, is_alternating, s_sequence, Letter, SSequence, Word,
};
use bridge_forge::{Fraction, GenusOneKnot, ReducedWord, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid(max: u32) -> Vec<GenusOneKnot> {
    let mut v = Vec::new();
    for m in 1..=max {
        for n in 1..=max {
            for s in [Sign::Plus, Sign::Minus] {
                v.push(GenusOneKnot::new(m, n, s).unwrap());
            }
        }
    }
    v
}

fn report(id: u32, title: &str, start: Instant, budget: Duration, failures: &[String]) {
    let elapsed = start.elapsed();
    let on_time = elapsed <= budget;
    let ok = failures.is_empty() && on_time;
    println!(
        "criterion {id} [{title}]: {} ({:.2?}, budget {:?}){}",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        budget,
        if failures.is_empty() { String::new() } else { format!(" - {} problem(s)", failures.len()) }
    );
    for f in failures.iter().take(20) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:#?}");
    assert!(on_time, "criterion {id} exceeded its budget: {elapsed:?} > {budget:?}");
}

#[test]
fn criterion_1_relator_closed_forms() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in grid(10) {
        let rel = relator(&genus_one_fraction(&k)).unwrap();
        if rel.u.len() as u64 != 2 * k.p() {
            failures.push(format!("{k}: |u| = {} != 2p = {}", rel.u.len(), 2 * k.p()));
        }
        let dec = canonical_decomposition(&k);
        let (m, n) = (k.m(), k.n());
        let block = vec![2 * m; 2 * n as usize - 1];
        let (s1, s2) = match k.sign() {
            Sign::Plus => (vec![2 * m + 1], block),
            Sign::Minus => (block, vec![2 * m - 1]),
        };
        if dec.s1.runs() != s1.as_slice() || dec.s2.runs() != s2.as_slice() {
            failures.push(format!("{k}: decomposition ({}, {}) is off", dec.s1, dec.s2));
        }
        let cs = cyclic_s_sequence(&rel.u).unwrap();
        if cs != dec.cyclic() {
            failures.push(format!("{k}: CS(r) = {cs}, expected {}", dec.cyclic()));
        }
    }
    report(1, "relator closed forms", start, Duration::from_secs(5), &failures);
}

#[test]
fn criterion_2_meridian_word_identities() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in grid(10) {
        let c = check_meridian_forms(&k);
        if !c.passed() {
            failures.push(format!("{k}: {:?}", c.failures));
        }
    }
    let trefoil = closed_form(&GenusOneKnot::new(1, 1, Sign::Minus).unwrap()).unwrap();
    if trefoil.w_x.to_string() != "b" || trefoil.w_y.to_string() != "A" {
        failures.push(format!("(1,1,-): w_x = {}, w_y = {}", trefoil.w_x, trefoil.w_y));
    }
    report(2, "meridian word identities", start, Duration::from_secs(10), &failures);
}

/// Counts elements of the symmetrized set beginning with `v` by a linear scan.
fn brute_prefix_count(elements: &[ReducedWord], v: &[Letter]) -> usize {
    elements.iter().filter(|e| e.letters().starts_with(v)).count()
}

#[test]
fn criterion_3_small_cancellation() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in grid(4) {
        let r = knot_symmetrized_set(&k).unwrap();
        let els = r.elements().to_vec();
        let patterns = listed_piece_patterns(&k);
        let dec = canonical_decomposition(&k);
        let cs = relator(&genus_one_fraction(&k)).unwrap().cyclic_s_sequence();
        if !(dec.s1.is_palindrome()
            && dec.s2.is_palindrome()
            && cs.occurrences(dec.s1.runs()) == 2
            && cs.occurrences(dec.s2.runs()) == 2)
        {
            failures.push(format!("{k}: S1/S2 symmetry or double occurrence fails"));
        }
        let u = r.source().clone();
        for w in [u.clone(), u.inverse()] {
            for start in 0..w.len() {
                for len in 1..=w.len() {
                    let v = w.cyclic_subword(start, len);
                    let s = s_sequence(&v).unwrap();
                    if patterns.contains(s.runs()) && brute_prefix_count(&els, v.letters()) < 2 {
                        failures.push(format!("{k}: {v} with S = {s} is listed but is not a piece"));
                    }
                }
            }
        }
        if !check_c_by_dp(&r, 4) {
            failures.push(format!("{k}: C(4) fails"));
        }
        if check_t(&r, 4) != Ok(true) {
            failures.push(format!("{k}: T(4) fails"));
        }
        match check_three_piece_property(&k) {
            Ok(rep) if rep.passed() => {}
            Ok(rep) => failures.push(format!("{k}: three-piece property fails on {:?}", rep.failures)),
            Err(e) => failures.push(format!("{k}: {e}")),
        }
    }
    failures.dedup();
    report(3, "small cancellation", start, Duration::from_secs(120), &failures);
}

#[test]
fn criterion_4_claim2_closed_forms() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in grid(4) {
        for t in 1..=2 {
            for sp in SignPattern::all(t) {
                let rep = match check_claim2(&k, &sp) {
                    Ok(r) => r,
                    Err(e) => {
                        failures.push(format!("{k} {:?}: {e}", sp.signs()));
                        continue;
                    }
                };
                let bound_only = rep.case == Claim2Case::BoundOnly;
                if bound_only != rep.closed_form_matches.is_none() {
                    failures.push(format!("{k}: closed form availability mismatch"));
                }
                if rep.closed_form_matches == Some(false) {
                    failures.push(format!("{k} {:?}: CS(w′) = {} differs from the closed form", sp.signs(), rep.computed));
                }
                // the forbidden-term statements, restated independently
                let (m, runs) = (k.m(), rep.computed.runs());
                let ok = match rep.case {
                    Claim2Case::Case1 => runs.iter().all(|&x| x < 2 * m + 1),
                    Claim2Case::Case2a => !runs.contains(&(2 * m - 1)),
                    Claim2Case::Case2b => !runs.contains(&1),
                    Claim2Case::BoundOnly => runs.iter().all(|x| [2, 3, 4].contains(x)),
                };
                if !ok || !rep.forbidden_terms_hold {
                    failures.push(format!("{k} {:?}: forbidden term in {}", sp.signs(), rep.computed));
                }
            }
        }
    }
    report(4, "claim 2 closed forms", start, Duration::from_secs(60), &failures);
}

#[test]
fn criterion_5_dihedral_orders() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in 2..=20u64 {
        let (s1, s2) = theorem2_verdicts(m).unwrap();
        if s1.slope != Fraction::new(1, 2 * m - 1).unwrap() || s2.slope != Fraction::new(1, 2 * m + 1).unwrap() {
            failures.push(format!("m = {m}: unexpected arc slopes"));
        }
        if (s1.dihedral_image_order, s1.proper) != (2 * (2 * m + 1), true)
            || (s2.dihedral_image_order, s2.proper) != (2 * (2 * m - 1), true)
            || s1.order_in_homology != 2 * m + 1
            || s2.order_in_homology != 2 * m - 1
        {
            failures.push(format!("m = {m}: orders {} / {}", s1.order_in_homology, s2.order_in_homology));
        }
    }
    report(5, "dihedral image orders", start, Duration::from_secs(1), &failures);
}

#[test]
fn criterion_6_numeric_no_relation_scan() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (m, n, s) in [(1, 1, Sign::Plus), (2, 1, Sign::Plus), (1, 2, Sign::Minus), (2, 2, Sign::Minus)] {
        let k = GenusOneKnot::new(m, n, s).unwrap();
        match no_relation_scan(&k, 6, 1e-3) {
            Ok(rep) => {
                if rep.max_relator_residual >= 1e-9 {
                    failures.push(format!("{k}: relator residual {:e}", rep.max_relator_residual));
                }
                if !rep.is_empty() {
                    failures.push(format!("{k}: {} near-identity word(s), e.g. {}", rep.candidates.len(), rep.candidates[0].word));
                }
                println!(
                    "    {k}: {} reps, {} words, min distance {:.4} at {}",
                    rep.representations, rep.words_checked, rep.min_distance, rep.closest_word
                );
            }
            Err(e) => failures.push(format!("{k}: {e}")),
        }
    }
    report(6, "numeric no-relation scan", start, Duration::from_secs(120), &failures);
}

#[test]
fn criterion_7_farey_round_trip() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let bound = 3;
    for r in ["2/5", "2/7", "6/25"] {
        let r: Fraction = r.parse().unwrap();
        let gens = gamma_generators(&r, bound).unwrap();
        for g in &gens {
            let again = reflection_in_edge(&g.edge);
            let (s, t) = &g.edge.endpoints;
            if &again != g || &g.apply(s) != s || &g.apply(t) != t {
                failures.push(format!("{r}: reflection in {} does not fix its edge", g.edge));
            }
        }
        for trial in 0..100 {
            let mut x = if rng.gen_bool(0.5) { r.clone() } else { Fraction::infinity() };
            for _ in 0..rng.gen_range(1..=3) {
                let g = &gens[rng.gen_range(0..gens.len())];
                let y = g.apply(&x);
                if g.apply(&y) != x {
                    failures.push(format!("{r}: reflection in {} is not an involution at {x}", g.edge));
                }
                x = y;
            }
            let s = orbit_contains(&r, &x, 3, bound).unwrap();
            if s.verdict != Verdict::Yes {
                failures.push(format!("{r} trial {trial}: {x} not recovered"));
            }
        }
    }
    report(7, "Farey round trip", start, Duration::from_secs(30), &failures);
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let letters = [Letter::A, Letter::A_INV, Letter::B, Letter::B_INV];
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| letters[rng.gen_range(0..4)]).collect())
}

#[test]
fn criterion_8_word_calculus_properties() {
    const TRIALS: usize = 10_000;
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..TRIALS {
        let w = random_word(&mut rng, 40);
        let once = free_reduce(&w);
        if free_reduce(&once.clone().into_word()) != once {
            failures.push(format!("free_reduce not idempotent on {w}"));
        }
        if apply_f(&apply_f(&w)) != w {
            failures.push(format!("f∘f != id on {w}"));
        }
        if once.is_empty() {
            continue;
        }
        let s = s_sequence(&once).unwrap();
        if s_sequence(&once.inverse()).unwrap() != s.reversed() {
            failures.push(format!("S(v⁻¹) != reverse S(v) for {once}"));
        }
    }
    for _ in 0..TRIALS {
        let runs: Vec<u32> = (0..rng.gen_range(1..=8)).map(|_| rng.gen_range(1..=6)).collect();
        let s = SSequence::new(runs).unwrap();
        let first = [Letter::A, Letter::A_INV, Letter::B, Letter::B_INV][rng.gen_range(0..4)];
        let v = alt_word(first, &s);
        if !is_alternating(&v) || s_sequence(&v).unwrap() != s {
            failures.push(format!("alt_word({first}, {s}) = {v} does not round-trip"));
        }
        if alt_word(v.first().unwrap(), &s_sequence(&v).unwrap()) != v {
            failures.push(format!("{v} not rebuilt from its S-sequence"));
        }
    }
    report(8, "word calculus properties", start, Duration::from_secs(10), &failures);
}
