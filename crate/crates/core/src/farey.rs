//! Farey tessellation reflections and the orbit semi-decision procedure.
//!
//! `Γ̂_r` is generated by the reflections in Farey edges with an endpoint at
//! `∞` or at `r`. There are infinitely many such edges; the generators are
//! truncated by a neighbour bound and orbits are explored breadth-first to a
//! fixed depth. A target that is found comes with a witness path. A target
//! that is not found is reported as `Unknown`, never as a "no".

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::slope::{r_prime, Fraction, GenusOneKnot};

/// A rational number or `∞ = 1/0`.
pub type ExtRational = Fraction;

/// Default cap on denominators during orbit search. Three reflections with
/// neighbour bound 3 already reach denominators near 10^11 for `6/25`.
pub const DEFAULT_DENOMINATOR_CAP: u64 = 1_000_000_000_000;

fn det(s: &Fraction, t: &Fraction) -> BigInt {
    s.num() * t.den() - t.num() * s.den()
}

pub fn is_farey_edge(s: &ExtRational, t: &ExtRational) -> bool {
    s != t && det(s, t).abs().is_one()
}

/// An unordered pair of Farey neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FareyEdge {
    pub endpoints: (ExtRational, ExtRational),
}

impl FareyEdge {
    pub fn new(s: ExtRational, t: ExtRational) -> Result<Self> {
        if !is_farey_edge(&s, &t) {
            return Err(Error::NotFareyEdge { endpoints: format!("({s}, {t})") });
        }
        let endpoints = if s <= t { (s, t) } else { (t, s) };
        Ok(FareyEdge { endpoints })
    }
}

impl fmt::Display for FareyEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.endpoints.0, self.endpoints.1)
    }
}

/// `x ↦ (ax + b)/(cx + d)` with determinant −1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reflection {
    pub edge: FareyEdge,
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: [[BigInt; 2]; 2],
}

fn ser_matrix<S: serde::Serializer>(m: &[[BigInt; 2]; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    serde::Serialize::serialize(&rows, s)
}

impl Reflection {
    pub fn apply(&self, x: &ExtRational) -> ExtRational {
        let [[a, b], [c, d]] = &self.matrix;
        let num = a * x.num() + b * x.den();
        let den = c * x.num() + d * x.den();
        Fraction::new(num, den).expect("an invertible matrix never yields 0/0")
    }

    pub fn determinant(&self) -> BigInt {
        let [[a, b], [c, d]] = &self.matrix;
        a * d - b * c
    }
}

pub fn reflection_in_edge(e: &FareyEdge) -> Reflection {
    let (s, t) = &e.endpoints;
    let (q1, p1, q2, p2) = (s.num(), s.den(), t.num(), t.den());
    let trace_part = q1 * p2 + q2 * p1;
    let two = BigInt::from(2);
    Reflection {
        edge: e.clone(),
        matrix: [
            [trace_part.clone(), -(&two * q1 * q2)],
            [&two * p1 * p2, -trace_part],
        ],
    }
}

/// A Farey neighbour `q0/p0` of `q/p` with `q p0 − p q0 = 1`.
pub fn farey_neighbor(r: &Fraction) -> Fraction {
    let e = r.num().extended_gcd(r.den());
    // x q + y p = 1, so q0/p0 = −y/x
    Fraction::new(-e.y, e.x).expect("not both zero")
}

/// Reflections in `(∞, k)` for `|k| ≤ bound` and in `(r, s_j)` for `|j| ≤ bound`,
/// where `s_j = (q0 + j q)/(p0 + j p)` runs over the neighbours of `r`.
pub fn gamma_generators(r: &ExtRational, neighbor_bound: u32) -> Result<Vec<Reflection>> {
    if r.is_infinite() {
        return Err(Error::Unsupported("Γ̂_r needs a finite slope r".into()));
    }
    let b = i64::from(neighbor_bound);
    let mut edges: Vec<FareyEdge> = Vec::new();
    for k in -b..=b {
        edges.push(FareyEdge::new(Fraction::infinity(), Fraction::integer(k))?);
    }
    let nb = farey_neighbor(r);
    for j in -b..=b {
        let j = BigInt::from(j);
        let s = Fraction::new(nb.num() + &j * r.num(), nb.den() + &j * r.den())?;
        edges.push(FareyEdge::new(r.clone(), s)?);
    }
    let mut seen = std::collections::HashSet::new();
    edges.retain(|e| seen.insert(e.clone()));
    Ok(edges.iter().map(reflection_in_edge).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    Unknown,
}

/// One reflection applied along a witness path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessStep {
    pub edge: FareyEdge,
    pub from: ExtRational,
    pub to: ExtRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSearch {
    pub verdict: Verdict,
    /// Orbit point the witness starts from (`r` or `∞`).
    pub start: Option<ExtRational>,
    pub witness: Vec<WitnessStep>,
    pub visited: usize,
    pub cap_hits: usize,
}

/// Breadth-first search of the `Γ̂_r`-orbit of `{r, ∞}` up to `depth` reflections.
pub fn orbit_contains(
    r: &ExtRational,
    target: &ExtRational,
    depth: u32,
    neighbor_bound: u32,
) -> Result<OrbitSearch> {
    orbit_contains_capped(r, target, depth, neighbor_bound, DEFAULT_DENOMINATOR_CAP)
}

pub fn orbit_contains_capped(
    r: &ExtRational,
    target: &ExtRational,
    depth: u32,
    neighbor_bound: u32,
    cap: u64,
) -> Result<OrbitSearch> {
    let gens = gamma_generators(r, neighbor_bound)?;
    let cap = BigInt::from(cap);
    // point -> (predecessor, generator index); roots have no predecessor
    let mut parent: HashMap<Fraction, Option<(Fraction, usize)>> = HashMap::new();
    let mut queue: VecDeque<(Fraction, u32)> = VecDeque::new();
    for root in [r.clone(), Fraction::infinity()] {
        if parent.insert(root.clone(), None).is_none() {
            queue.push_back((root, 0));
        }
    }
    let mut cap_hits = 0;
    let mut found = parent.contains_key(target);
    while let Some((x, d)) = queue.pop_front() {
        if found || d == depth {
            break;
        }
        for (i, g) in gens.iter().enumerate() {
            let y = g.apply(&x);
            if parent.contains_key(&y) {
                continue;
            }
            if y.den() > &cap {
                cap_hits += 1;
                continue;
            }
            parent.insert(y.clone(), Some((x.clone(), i)));
            if &y == target {
                found = true;
                break;
            }
            queue.push_back((y, d + 1));
        }
    }
    if !found {
        return Ok(OrbitSearch {
            verdict: Verdict::Unknown,
            start: None,
            witness: Vec::new(),
            visited: parent.len(),
            cap_hits,
        });
    }
    let mut witness = Vec::new();
    let mut cur = target.clone();
    while let Some(Some((prev, i))) = parent.get(&cur) {
        witness.push(WitnessStep { edge: gens[*i].edge.clone(), from: prev.clone(), to: cur.clone() });
        cur = prev.clone();
    }
    witness.reverse();
    Ok(OrbitSearch { verdict: Verdict::Yes, start: Some(cur), witness, visited: parent.len(), cap_hits })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpimorphismSearch {
    pub verdict: Verdict,
    pub source: Fraction,
    pub target: Fraction,
    pub r_prime: Fraction,
    /// The candidate `r̃` or `r̃ + 1` (after reduction mod 1) that was found.
    pub matched_candidate: Option<Fraction>,
    /// The slope whose orbit contained it (`r` or `r′`).
    pub matched_orbit_of: Option<Fraction>,
    pub search: Option<OrbitSearch>,
    pub cap_hits: usize,
}

/// Whether `G(K(r̃))` maps onto `G(K(r))`, as far as the bounded search can tell.
pub fn epimorphism_exists(
    r_tilde: &Fraction,
    r: &Fraction,
    depth: u32,
    neighbor_bound: u32,
) -> Result<EpimorphismSearch> {
    let hyperbolic_genus_one = GenusOneKnot::from_fraction(r).is_some_and(|k| k.is_hyperbolic());
    if !hyperbolic_genus_one {
        return Err(Error::Unsupported(format!(
            "{r} is not of the form 2n/(4mn ± 1) for a hyperbolic genus-one knot"
        )));
    }
    let rp = r_prime(r)?;
    let base = r_tilde.mod_one();
    let candidates = [base.clone(), base.add_integer(1)];
    let mut cap_hits = 0;
    for orbit_of in [r.clone(), rp.clone()] {
        for c in &candidates {
            let s = orbit_contains(&orbit_of, c, depth, neighbor_bound)?;
            cap_hits += s.cap_hits;
            if s.verdict == Verdict::Yes {
                return Ok(EpimorphismSearch {
                    verdict: Verdict::Yes,
                    source: r_tilde.clone(),
                    target: r.clone(),
                    r_prime: rp,
                    matched_candidate: Some(c.clone()),
                    matched_orbit_of: Some(orbit_of),
                    search: Some(s),
                    cap_hits,
                });
            }
        }
    }
    Ok(EpimorphismSearch {
        verdict: Verdict::Unknown,
        source: r_tilde.clone(),
        target: r.clone(),
        r_prime: rp,
        matched_candidate: None,
        matched_orbit_of: None,
        search: None,
        cap_hits,
    })
}
