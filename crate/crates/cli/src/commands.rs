use bridge_forge::battery::{check_names, verify_all, BatteryOptions, Status};
use bridge_forge::farey::{epimorphism_exists, Verdict};
use bridge_forge::freeness::{check_claim2, no_relation_scan, SignPattern};
use bridge_forge::meridians::{check_meridian_forms, closed_form};
use bridge_forge::orbifold::{subgroup_verdict, theorem2_verdicts};
use bridge_forge::presentation::{canonical_decomposition, relator};
use bridge_forge::sl2_oracle::{numeric_reps, riley_polynomials};
use bridge_forge::slope::genus_one_fraction;
use bridge_forge::smallcancel::{
    check_c, check_piece_prop, check_t, check_three_piece_property, knot_symmetrized_set, piece_report,
};
use bridge_forge::words::s_sequence;
use bridge_forge::{Error, Fraction, GenusOneKnot, Result};
use serde_json::json;

use crate::cli::{Cli, Command, KnotArgs};
use crate::output::{mark, print_json};
use crate::Outcome;

fn knot(k: &KnotArgs) -> Result<GenusOneKnot> {
    GenusOneKnot::new(k.m, k.n, k.sign)
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

pub fn run(args: Cli) -> Result<Outcome> {
    match args.command {
        Command::Relator { p, q, json } => relator_cmd(p, q, json),
        Command::Meridians { knot: k, json } => meridians_cmd(&knot(&k)?, json),
        Command::Pieces { knot: k, word, json } => pieces_cmd(&knot(&k)?, word, json),
        Command::Freeness { knot: k, t, scan_syllables, scan_tol, json } => {
            freeness_cmd(&knot(&k)?, t, scan_syllables, scan_tol, json)
        }
        Command::Reps { p, q, tol, json } => reps_cmd(p, q, tol, json),
        Command::Orbifold { m, slope, json } => orbifold_cmd(m, slope, json),
        Command::Epi { source, target, depth, neighbors, json } => {
            epi_cmd(&source, &target, depth, neighbors, json)
        }
        Command::VerifyAll { m_max, n_max, jobs, scan_syllables, scan_tol, max_p, json } => {
            let opts = BatteryOptions {
                m_max,
                n_max,
                scan_syllables,
                scan_tol,
                jobs,
                max_p,
                ..BatteryOptions::default()
            };
            verify_all_cmd(&opts, json)
        }
    }
}

fn relator_cmd(p: u64, q: u64, json: bool) -> Result<Outcome> {
    let rel = relator(&Fraction::new(q, p)?)?;
    let s = rel.s_sequence();
    let cs = rel.cyclic_s_sequence();
    let knot = GenusOneKnot::from_fraction(&rel.fraction);
    let decomposition = knot.map(|k| canonical_decomposition(&k));
    if json {
        print_json(
            "relator",
            json!({
                "slope": rel.fraction,
                "word": rel.u,
                "length": rel.u.len(),
                "s_sequence": s,
                "cyclic_s_sequence": cs,
                "genus_one": knot,
                "decomposition": decomposition,
            }),
        );
    } else {
        println!("slope    {}", rel.fraction);
        println!("u        {}", rel.u.representative());
        println!("|u|      {}", rel.u.len());
        println!("S(u)     {s}");
        println!("CS(u)    {cs}");
        if let (Some(k), Some(d)) = (knot, &decomposition) {
            println!("knot     {k}: S1 = {}, S2 = {}", d.s1, d.s2);
        }
    }
    Ok(Outcome::Pass)
}

fn meridians_cmd(k: &GenusOneKnot, json: bool) -> Result<Outcome> {
    let mw = closed_form(k)?;
    let check = check_meridian_forms(k);
    if json {
        print_json(
            "meridians",
            json!({
                "knot": k,
                "slope": genus_one_fraction(k),
                "words": mw,
                "s_w_x": s_sequence(&mw.w_x).ok(),
                "s_x_l": s_sequence(&mw.x_l)?,
                "s_y_l": s_sequence(&mw.y_l)?,
                "check": check,
            }),
        );
    } else {
        println!("knot  {k}  slope {}", genus_one_fraction(k));
        for (name, w) in [("d0", &mw.d0), ("d1", &mw.d1), ("w_x", &mw.w_x), ("w_y", &mw.w_y)] {
            println!("{name:<4}  {w}");
        }
        println!("x_l   {}  S = {}", mw.x_l, s_sequence(&mw.x_l)?);
        println!("y_l   {}  S = {}", mw.y_l, s_sequence(&mw.y_l)?);
        println!("raw y_l reduces to closed form: {}", mark(check.raw_matches_closed_form));
        println!("f swaps x_l and y_l:            {}", mark(check.f_swaps_pair));
        println!("power identities:               {}", mark(check.powers_ok));
        for f in &check.failures {
            println!("  {f}");
        }
    }
    Ok(outcome(check.passed()))
}

fn pieces_cmd(k: &GenusOneKnot, word: Option<bridge_forge::ReducedWord>, json: bool) -> Result<Outcome> {
    let set = knot_symmetrized_set(k)?;
    if let Some(w) = word {
        let rep = piece_report(&w, &set)?;
        if json {
            print_json("pieces", json!({ "knot": k, "report": rep }));
        } else {
            let t = rep.min_pieces.map_or("none".to_string(), |t| t.to_string());
            println!("{}: piece = {}, min pieces = {t}", rep.word, rep.is_piece);
        }
        return Ok(Outcome::Pass);
    }
    let props = check_piece_prop(k)?;
    let three = check_three_piece_property(k)?;
    let c4 = check_c(&set, 4);
    let t4 = check_t(&set, 4)?;
    let ok = props.passed() && three.passed() && c4 && t4;
    if json {
        print_json(
            "pieces",
            json!({
                "knot": k,
                "relators": set.len(),
                "piece_prop": props,
                "three_piece": three,
                "c4": c4,
                "t4": t4,
                "passed": ok,
            }),
        );
    } else {
        println!("knot {k}, |R| = {}", set.len());
        println!("S1/S2 symmetric, occurring twice: {}", mark(props.blocks_symmetric_and_twice));
        println!(
            "listed patterns are pieces:       {} ({} subwords)",
            mark(props.failures.is_empty()),
            props.listed_subwords_checked
        );
        for f in &props.failures {
            println!("  {f}");
        }
        println!(
            "three-piece subwords:             {} ({} subwords)",
            mark(three.passed()),
            three.three_piece_subwords
        );
        println!("C(4):                             {}", mark(c4));
        println!("T(4):                             {}", mark(t4));
    }
    Ok(outcome(ok))
}

fn freeness_cmd(k: &GenusOneKnot, t_max: usize, scan: Option<u32>, tol: f64, json: bool) -> Result<Outcome> {
    if t_max == 0 {
        return Err(Error::Unsupported("--t must be at least 1".into()));
    }
    let mut reports = Vec::new();
    for t in 1..=t_max {
        for sp in SignPattern::all(t) {
            reports.push(check_claim2(k, &sp)?);
        }
    }
    let scan = scan.map(|l| no_relation_scan(k, l, tol)).transpose()?;
    let ok = reports.iter().all(|r| r.passed()) && scan.as_ref().is_none_or(|s| s.is_empty());
    if json {
        print_json("freeness", json!({ "knot": k, "claim2": reports, "scan": scan, "passed": ok }));
    } else {
        println!("knot {k}");
        for r in &reports {
            let cf = match r.closed_form_matches {
                Some(b) => mark(b),
                None => "n/a",
            };
            println!(
                "  signs {:<28} CS(w') = {:<40} closed form {cf:<4} terms {}",
                format!("{:?}", r.signs.signs()),
                r.computed.to_string(),
                mark(r.forbidden_terms_hold)
            );
        }
        if let Some(s) = &scan {
            println!(
                "scan: {} reps, {} words, min distance {:.4} at {}, {} candidate(s)",
                s.representations,
                s.words_checked,
                s.min_distance,
                s.closest_word,
                s.candidates.len()
            );
            for w in &s.warnings {
                println!("  warning: {w}");
            }
        }
    }
    Ok(outcome(ok))
}

fn reps_cmd(p: u64, q: u64, tol: f64, json: bool) -> Result<Outcome> {
    let f = Fraction::new(q, p)?;
    let data = riley_polynomials(&f)?;
    let set = numeric_reps(&f, tol)?;
    for w in &set.warnings {
        eprintln!("warning: {w}");
    }
    if json {
        print_json(
            "reps",
            json!({
                "slope": f,
                "defining_polynomial": data.defining,
                "defining_polynomial_text": data.defining.to_string(),
                "gcd": data.gcd,
                "representations": set.reps,
                "warnings": set.warnings,
            }),
        );
    } else {
        println!("slope {f}");
        println!("defining polynomial: {}", data.defining);
        for r in &set.reps {
            println!("  w = {:+.12} {:+.12}i   residual {:.2e}", r.omega.re, r.omega.im, r.residual);
        }
    }
    Ok(outcome(!set.reps.is_empty()))
}

fn orbifold_cmd(m: u64, slope: Option<Fraction>, json: bool) -> Result<Outcome> {
    if m < 2 {
        return Err(Error::Unsupported("--m must be at least 2".into()));
    }
    let r = Fraction::new(2 * m, 4 * m * m - 1)?;
    let verdicts = match slope {
        Some(s) => vec![subgroup_verdict(&s, &r)?],
        None => {
            let (a, b) = theorem2_verdicts(m)?;
            vec![a, b]
        }
    };
    if json {
        print_json("orbifold", json!({ "m": m, "knot_slope": r, "verdicts": verdicts }));
    } else {
        println!("r = {r}, H_1 = Z/{}", 4 * m * m - 1);
        for v in &verdicts {
            println!(
                "  slope {:<8} class {:<10} order {:<6} dihedral image {:<6} proper {}",
                v.slope.to_string(),
                v.class.to_string(),
                v.order_in_homology,
                v.dihedral_image_order,
                v.proper
            );
        }
    }
    Ok(Outcome::Pass)
}

fn epi_cmd(source: &Fraction, target: &Fraction, depth: u32, neighbors: u32, json: bool) -> Result<Outcome> {
    let e = epimorphism_exists(source, target, depth, neighbors)?;
    if json {
        print_json(
            "epi",
            json!({
                "verdict": e.verdict,
                "depth": depth,
                "neighbors": neighbors,
                "search": e,
                "complete": false,
            }),
        );
    } else {
        match e.verdict {
            Verdict::Yes => {
                println!("yes: G(K({source})) maps onto G(K({target}))");
                if let (Some(c), Some(o), Some(s)) = (&e.matched_candidate, &e.matched_orbit_of, &e.search) {
                    println!("  {c} lies in the orbit of {} under the group of {o}", s.start.as_ref().map_or("?".into(), |x| x.to_string()));
                    for step in &s.witness {
                        println!("  reflect in {}: {} -> {}", step.edge, step.from, step.to);
                    }
                }
            }
            Verdict::Unknown => {
                println!("unknown: no orbit hit within depth {depth} and neighbour bound {neighbors}");
                println!("  (bounded search; this is not a proof that no epimorphism exists)");
            }
        }
        if e.cap_hits > 0 {
            println!("  {} point(s) skipped by the denominator cap", e.cap_hits);
        }
    }
    Ok(Outcome::Pass)
}

fn verify_all_cmd(opts: &BatteryOptions, json: bool) -> Result<Outcome> {
    let out = verify_all(opts)?;
    let ok = out.all_passed();
    if json {
        print_json(
            "verify-all",
            json!({
                "options": opts,
                "checks": check_names(opts),
                "reports": out.reports,
                "truncated": out.truncated,
                "passed": ok,
            }),
        );
    } else {
        let names = check_names(opts);
        print!("{:<12}", "knot");
        for n in &names {
            print!(" {:>6}", abbreviate(n));
        }
        println!();
        for r in &out.reports {
            print!("{:<12}", format!("[{}, {}{}]", 2 * r.m, r.sign, 2 * r.n));
            for c in &r.checks {
                let s = match c.status {
                    Status::Pass => "ok",
                    Status::Fail => "FAIL",
                    Status::Unsupported => "-",
                };
                print!(" {s:>6}");
            }
            println!();
        }
        for r in &out.reports {
            for c in r.checks.iter().filter(|c| c.status == Status::Fail) {
                println!("[{}, {}{}] {}: {}", 2 * r.m, r.sign, 2 * r.n, c.name, c.detail.as_deref().unwrap_or(""));
            }
        }
        for t in &out.truncated {
            println!("truncated: {t}");
        }
    }
    Ok(if !ok {
        Outcome::Fail
    } else if !out.truncated.is_empty() {
        Outcome::Truncated
    } else {
        Outcome::Pass
    })
}

fn abbreviate(name: &str) -> &str {
    match name {
        "cs_closed_form" => "cs",
        "meridian_forms" => "merid",
        "piece_prop" => "pieces",
        "three_piece" => "3piece",
        "claim2_closed_form" => "cl2cf",
        "claim2_forbidden_terms" => "cl2ft",
        "theorem2" => "thm2",
        "relation_scan" => "scan",
        other => other,
    }
}
