//! The verification grid: every check, for every knot `(m, n, ±)` in range.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freeness::{check_claim2, no_relation_scan, SignPattern};
use crate::meridians::check_meridian_forms;
use crate::orbifold::theorem2_holds_at;
use crate::presentation::verify_cs_closed_form;
use crate::slope::{genus_one_fraction, GenusOneKnot, Sign};
use crate::smallcancel::{check_c, check_piece_prop, check_t, check_three_piece_property, knot_symmetrized_set};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    pub elapsed_ms: f64,
    /// Counterexample or explanation when the status is not `pass`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub m: u32,
    pub n: u32,
    pub sign: Sign,
    pub slope: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryOptions {
    pub m_max: u32,
    pub n_max: u32,
    /// Syllable bound for the numeric scan; `None` skips it.
    pub scan_syllables: Option<u32>,
    pub scan_tol: f64,
    /// Largest sign-pattern length for the Claim 2 checks.
    pub claim2_t: usize,
    /// Worker threads; `None` uses the default pool.
    pub jobs: Option<usize>,
    /// Knots with a larger `p` are skipped and reported as truncated.
    pub max_p: Option<u64>,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        BatteryOptions {
            m_max: 2,
            n_max: 2,
            scan_syllables: None,
            scan_tol: 1e-3,
            claim2_t: 2,
            jobs: None,
            max_p: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryOutcome {
    pub reports: Vec<VerificationReport>,
    /// Knots left out by the resource limits.
    pub truncated: Vec<String>,
}

impl BatteryOutcome {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::passed)
    }
}

/// Names of the checks run for every knot, in report order.
pub fn check_names(opts: &BatteryOptions) -> Vec<&'static str> {
    let mut v = vec![
        "cs_closed_form",
        "meridian_forms",
        "piece_prop",
        "three_piece",
        "c4",
        "t4",
        "claim2_closed_form",
        "claim2_forbidden_terms",
        "theorem2",
    ];
    if opts.scan_syllables.is_some() {
        v.push("relation_scan");
    }
    v
}

type Outcome = (Status, Option<String>);

fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        (Status::Pass, None)
    } else {
        (Status::Fail, Some(why()))
    }
}

fn from_result(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| (Status::Fail, Some(e.to_string())))
}

fn timed(name: &'static str, f: impl FnOnce() -> Outcome) -> CheckResult {
    let t = Instant::now();
    let (status, detail) = f();
    CheckResult { name, status, elapsed_ms: t.elapsed().as_secs_f64() * 1e3, detail }
}

fn first_failures(v: &[String]) -> String {
    let shown: Vec<&str> = v.iter().take(3).map(String::as_str).collect();
    format!("{} failure(s): {}", v.len(), shown.join("; "))
}

/// Runs the claim-2 checks over every sign pattern with `1 ≤ t ≤ t_max`.
fn claim2_checks(k: &GenusOneKnot, t_max: usize) -> (Outcome, Outcome) {
    let mut unsupported = false;
    let mut cf_fail = None;
    let mut ft_fail = None;
    for t in 1..=t_max {
        for sp in SignPattern::all(t) {
            match check_claim2(k, &sp) {
                Ok(rep) => {
                    match rep.closed_form_matches {
                        None => unsupported = true,
                        Some(false) if cf_fail.is_none() => {
                            cf_fail = Some(format!("signs {:?}: CS(w′) = {}", sp.signs(), rep.computed))
                        }
                        _ => {}
                    }
                    if !rep.forbidden_terms_hold && ft_fail.is_none() {
                        ft_fail = Some(format!("signs {:?}: CS(w′) = {}", sp.signs(), rep.computed));
                    }
                }
                Err(e) => {
                    let msg = format!("signs {:?}: {e}", sp.signs());
                    cf_fail.get_or_insert(msg.clone());
                    ft_fail.get_or_insert(msg);
                }
            }
        }
    }
    let cf = match (cf_fail, unsupported) {
        (Some(d), _) => (Status::Fail, Some(d)),
        (None, true) => (
            Status::Unsupported,
            Some("no closed form for (1,1,−); terms are bounded instead".to_string()),
        ),
        (None, false) => (Status::Pass, None),
    };
    let ft = match ft_fail {
        Some(d) => (Status::Fail, Some(d)),
        None => (Status::Pass, None),
    };
    (cf, ft)
}

/// Every battery check for one knot.
pub fn verify_cell(k: &GenusOneKnot, opts: &BatteryOptions) -> VerificationReport {
    let mut checks = Vec::new();
    checks.push(timed("cs_closed_form", || {
        from_bool(verify_cs_closed_form(k), || "CS(r) differs from ((S1,S2,S1,S2))".into())
    }));
    checks.push(timed("meridian_forms", || {
        let c = check_meridian_forms(k);
        from_bool(c.passed(), || first_failures(&c.failures))
    }));
    checks.push(timed("piece_prop", || {
        from_result(check_piece_prop(k).map(|r| {
            from_bool(r.passed(), || {
                if r.blocks_symmetric_and_twice {
                    first_failures(&r.failures)
                } else {
                    "S1/S2 not palindromic or not occurring exactly twice".into()
                }
            })
        }))
    }));
    checks.push(timed("three_piece", || {
        from_result(check_three_piece_property(k).map(|r| from_bool(r.passed(), || first_failures(&r.failures))))
    }));
    let set = knot_symmetrized_set(k);
    checks.push(timed("c4", || {
        from_result(set.clone().map(|r| from_bool(check_c(&r, 4), || "some relator is a product of < 4 pieces".into())))
    }));
    checks.push(timed("t4", || {
        from_result(set.clone().and_then(|r| {
            check_t(&r, 4).map(|ok| from_bool(ok, || "cancelling triple found".into()))
        }))
    }));
    let t = Instant::now();
    let (cf, ft) = claim2_checks(k, opts.claim2_t);
    let half = t.elapsed().as_secs_f64() * 1e3 / 2.0;
    checks.push(CheckResult { name: "claim2_closed_form", status: cf.0, elapsed_ms: half, detail: cf.1 });
    checks.push(CheckResult { name: "claim2_forbidden_terms", status: ft.0, elapsed_ms: half, detail: ft.1 });
    checks.push(timed("theorem2", || {
        if k.sign() == Sign::Minus && k.m() == k.n() && k.m() >= 2 {
            from_bool(theorem2_holds_at(u64::from(k.m())), || "dihedral orders differ from 2m±1".into())
        } else {
            (Status::Unsupported, Some("applies only to [2m, -2m] with m >= 2".into()))
        }
    }));
    if let Some(l) = opts.scan_syllables {
        checks.push(timed("relation_scan", || {
            from_result(no_relation_scan(k, l, opts.scan_tol).map(|r| {
                from_bool(r.is_empty(), || {
                    let c = &r.candidates[0];
                    format!("{} candidate(s), first {} at distance {:.3e}", r.candidates.len(), c.word, c.distance)
                })
            }))
        }));
    }
    VerificationReport {
        m: k.m(),
        n: k.n(),
        sign: k.sign(),
        slope: genus_one_fraction(k).to_string(),
        checks,
    }
}

/// Runs the grid `1..=m_max × 1..=n_max × {+, −}` in parallel, reporting in `(m, n, sign)` order.
pub fn verify_all(opts: &BatteryOptions) -> Result<BatteryOutcome> {
    if opts.m_max == 0 || opts.n_max == 0 {
        return Err(Error::Unsupported("empty grid: m_max and n_max must be at least 1".into()));
    }
    let mut cells = Vec::new();
    let mut truncated = Vec::new();
    for m in 1..=opts.m_max {
        for n in 1..=opts.n_max {
            for s in [Sign::Plus, Sign::Minus] {
                let k = GenusOneKnot::new(m, n, s)?;
                match opts.max_p {
                    Some(cap) if k.p() > cap => truncated.push(format!("{k} (p = {})", k.p())),
                    _ => cells.push(k),
                }
            }
        }
    }
    let run = || cells.par_iter().map(|k| verify_cell(k, opts)).collect::<Vec<_>>();
    let reports = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    Ok(BatteryOutcome { reports, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_is_an_error() {
        let opts = BatteryOptions { m_max: 0, ..Default::default() };
        assert!(verify_all(&opts).is_err());
    }

    #[test]
    fn small_grid_layout() {
        let opts = BatteryOptions { m_max: 2, n_max: 2, jobs: Some(2), ..Default::default() };
        let out = verify_all(&opts).unwrap();
        assert_eq!(out.reports.len(), 8);
        let names = check_names(&opts);
        for r in &out.reports {
            let got: Vec<&str> = r.checks.iter().map(|c| c.name).collect();
            assert_eq!(got, names);
        }
        let order: Vec<(u32, u32, Sign)> = out.reports.iter().map(|r| (r.m, r.n, r.sign)).collect();
        let mut sorted = order.clone();
        sorted.sort_by_key(|&(m, n, s)| (m, n, s == Sign::Minus));
        assert_eq!(order, sorted);
        let trefoil = &out.reports[1];
        assert_eq!((trefoil.m, trefoil.n, trefoil.sign), (1, 1, Sign::Minus));
        let cf = trefoil.checks.iter().find(|c| c.name == "claim2_closed_form").unwrap();
        assert_eq!(cf.status, Status::Unsupported);
        let ft = trefoil.checks.iter().find(|c| c.name == "claim2_forbidden_terms").unwrap();
        assert_eq!(ft.status, Status::Pass);
        let diag = &out.reports[7];
        let th = diag.checks.iter().find(|c| c.name == "theorem2").unwrap();
        assert_eq!(th.status, Status::Pass);
    }

    #[test]
    fn truncation_is_reported() {
        let opts = BatteryOptions { m_max: 2, n_max: 2, max_p: Some(9), ..Default::default() };
        let out = verify_all(&opts).unwrap();
        assert!(out.reports.iter().all(|r| r.slope.parse::<crate::Fraction>().unwrap().den() <= &9.into()));
        assert_eq!(out.reports.len() + out.truncated.len(), 8);
        assert!(!out.truncated.is_empty());
    }
}
