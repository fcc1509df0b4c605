//! Orbits of `Q^x` on `Skew(Q)` under `rho(x) y = x y iota(x)`, which model
//! the nonzero arithmetic nilpotent orbits of the anisotropic `Sp_4` form.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::laurent::{Laurent, SquareClass};
use super::quaternion::{QuatAlgebra, Quaternion};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 10_000;

/// Result of comparing two nonzero skew elements.
#[derive(Clone, Debug, PartialEq)]
pub struct PairOutcome {
    pub same_orbit: bool,
    /// `g` with `rho(g) y2 = y1`, verified to the tracked precision.
    pub witness: Option<Quaternion>,
    /// Digits of agreement between `rho(g) y2` and `y1`, relative to `y1`.
    pub verified_digits: Option<i64>,
    pub seeds_used: usize,
}

/// Solves `u^2 - a w^2 = c` from monomial seeds for `w` (plus the pure
/// seeds `w = 0` and `u = 0`), lifting `u` by a square root.
pub fn solve_norm_equation(
    h: &QuatAlgebra,
    a: &Laurent,
    c: &Laurent,
    budget: usize,
    used: &mut usize,
) -> Result<Option<(Laurent, Laurent)>> {
    let k = &h.k;
    let spend = |n: &mut usize| -> Result<()> {
        *n += 1;
        if *n > budget {
            Err(Error::WitnessBudgetExhausted(budget))
        } else {
            Ok(())
        }
    };
    spend(used)?;
    if let Some(u) = k.sqrt(c)? {
        return Ok(Some((u, k.zero())));
    }
    spend(used)?;
    let r = k.neg(&k.div(c, a)?);
    if let Some(w) = k.sqrt(&r)? {
        return Ok(Some((k.zero(), w)));
    }
    let va = a.valuation().ok_or(Error::DivisionByZero)?;
    let vc = c.valuation().ok_or(Error::DivisionByZero)?;
    let span = va.abs() + vc.abs() + 2;
    for m in -span..=span {
        for kappa in 1..k.gf().order() {
            spend(used)?;
            let w = k.monomial(kappa, m);
            let r = k.add(c, &k.mul(a, &k.mul(&w, &w)));
            if r.is_zero() {
                continue;
            }
            if let Some(u) = k.sqrt(&r)? {
                return Ok(Some((u, w)));
            }
        }
    }
    Ok(None)
}

/// The scalar `kappa` with `z = kappa y`, for `z` proportional to `y != 0`.
fn proportionality(h: &QuatAlgebra, z: &Quaternion, y: &Quaternion) -> Result<Laurent> {
    let comps = [(&z.b, &y.b), (&z.c, &y.c), (&z.d, &y.d)];
    let (zc, yc) = comps
        .iter()
        .filter(|(_, yc)| !yc.is_zero())
        .min_by_key(|(_, yc)| yc.val)
        .ok_or(Error::ZeroElement)?;
    h.k.div(zc, yc)
}

fn verified_digits(h: &QuatAlgebra, z: &Quaternion, y: &Quaternion) -> Option<i64> {
    let diff = h.sub(z, y);
    if !h.is_zero(&diff) {
        return None;
    }
    [(&diff.b, &y.b), (&diff.c, &y.c), (&diff.d, &y.d)]
        .iter()
        .filter(|(_, yc)| !yc.is_zero())
        .filter_map(|(dc, yc)| dc.abs_prec().map(|a| a - yc.val))
        .min()
}

/// Decides whether nonzero skew `y1`, `y2` lie in one `Q^x`-orbit (same
/// invariant [`QuatAlgebra::eta`]) and, if so, constructs `g` with
/// `rho(g) y2 = y1`: first `s` with `s y2 s^-1` a scalar multiple of `y1`,
/// then a correction `beta in F[y1]` from a norm equation, passing through
/// an element anticommuting with `y1` when the first norm equation has no
/// solution.
pub fn classify_skew_pair(h: &QuatAlgebra, y1: &Quaternion, y2: &Quaternion, budget: usize) -> Result<PairOutcome> {
    let e1 = h.eta(y1)?;
    let e2 = h.eta(y2)?;
    if e1 != e2 {
        return Ok(PairOutcome {
            same_orbit: false,
            witness: None,
            verified_digits: None,
            seeds_used: 0,
        });
    }
    let k = &h.k;
    let mut used = 0;
    let finish = |g: Quaternion, used: usize| {
        let z = h.rho(&g, y2);
        let digits = verified_digits(h, &z, y1);
        PairOutcome {
            same_orbit: true,
            witness: digits.is_some().then_some(g),
            verified_digits: digits,
            seeds_used: used,
        }
    };
    if h.approx_eq(y1, y2) {
        return Ok(finish(h.one(), 0));
    }
    let a1 = h.skew_square(y1);
    let a2 = h.skew_square(y2);
    let lambda = k
        .sqrt(&k.div(&a1, &a2)?)?
        .ok_or_else(|| Error::Falsified("equal invariants but y1^2 / y2^2 is not a square".into()))?;
    // s (lambda y2) = y1 s, as both square to a1
    let mut s = h.add(y1, &h.scale(&lambda, y2));
    if h.is_zero(&s) {
        s = [h.i(), h.j(), h.ij()]
            .iter()
            .map(|w| h.commutator(y2, w))
            .find(|c| !h.is_zero(c))
            .ok_or(Error::ZeroElement)?;
    }
    let gamma = [h.i(), h.j(), h.ij()]
        .iter()
        .map(|w| h.commutator(y1, w))
        .find(|c| !h.is_zero(c))
        .ok_or(Error::ZeroElement)?;
    for g0 in [s.clone(), h.mul(&gamma, &s)] {
        // rho(g0) y2 = kappa y1; need Nrd(beta) = 1 / kappa for beta in F[y1]
        let kappa = proportionality(h, &h.rho(&g0, y2), y1)?;
        let target = k.inv(&kappa)?;
        if let Some((u, w)) = solve_norm_equation(h, &a1, &target, budget, &mut used)? {
            let beta = h.add(&h.scalar(u), &h.scale(&w, y1));
            let out = finish(h.mul(&beta, &g0), used);
            if out.witness.is_some() {
                return Ok(out);
            }
        }
    }
    Ok(PairOutcome {
        same_orbit: true,
        witness: None,
        verified_digits: None,
        seeds_used: used,
    })
}

/// Summary of the orbit census over `F_q((t))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub q: u32,
    pub precision: usize,
    pub eps: u32,
    pub samples: usize,
    /// Image of the orbit invariant on the samples.
    pub eta_image: Vec<String>,
    /// Image of the literal reduced-norm class, for comparison.
    pub nrd_image: Vec<String>,
    pub eta_trivial_count: usize,
    pub hilbert_eps_t: i8,
    pub orbit_count: usize,
    pub pairs_tested: usize,
    pub witnesses_found: usize,
    pub min_verified_digits: Option<i64>,
    pub cross_class_pairs: usize,
    pub failures: Vec<String>,
    pub holds: bool,
}

/// Samples nonzero skew elements, checks that the invariant takes exactly
/// the three nontrivial square classes, and builds verified witnesses for
/// same-class pairs.
pub fn c2_orbit_census(q: u32, precision: usize, seed: u64, min_pairs: usize) -> Result<CensusReport> {
    if precision < 12 {
        return Err(Error::Config(format!("census needs precision >= 12, got {precision}")));
    }
    if q % 2 == 0 || q > 9 {
        return Err(Error::Config(format!("census supports odd q <= 9, got {q}")));
    }
    let h = QuatAlgebra::new(q, precision)?;
    let k = &h.k;
    let mut failures = Vec::new();
    let hilbert_eps_t = k.hilbert_symbol(&h.eps_scalar(), &k.t())?;
    if hilbert_eps_t != -1 {
        failures.push("(eps, t) is split".to_string());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = vec![h.i(), h.j(), h.ij(), h.add(&h.i(), &h.j()), h.add(&h.j(), &h.ij())];
    while samples.len() < 64 {
        samples.push(h.random_skew(&mut rng));
    }
    let mut by_class: BTreeMap<SquareClass, Vec<usize>> = BTreeMap::new();
    let mut nrd_image = BTreeSet::new();
    let mut eta_trivial_count = 0;
    for (n, y) in samples.iter().enumerate() {
        nrd_image.insert(h.nrd_class(y)?);
        match h.eta(y) {
            Ok(c) => by_class.entry(c).or_default().push(n),
            Err(Error::Falsified(m)) => {
                eta_trivial_count += 1;
                failures.push(m);
            }
            Err(e) => return Err(e),
        }
    }
    let nontrivial: BTreeSet<SquareClass> = SquareClass::all().into_iter().filter(|c| !c.is_trivial()).collect();
    let image: BTreeSet<SquareClass> = by_class.keys().copied().collect();
    if image != nontrivial {
        failures.push(format!("invariant image {image:?} is not the set of nontrivial classes"));
    }

    // same-class pairs: consecutive members of each fibre, then from the first
    let mut pairs = Vec::new();
    for members in by_class.values() {
        for w in members.windows(2) {
            pairs.push((w[1], w[0]));
        }
    }
    'outer: for members in by_class.values() {
        for &m in members.iter().skip(2) {
            if pairs.len() >= min_pairs {
                break 'outer;
            }
            pairs.push((members[0], m));
        }
    }
    let outcomes: Vec<Result<PairOutcome>> = pairs
        .par_iter()
        .map(|&(a, b)| classify_skew_pair(&h, &samples[a], &samples[b], DEFAULT_BUDGET))
        .collect();
    let mut witnesses_found = 0;
    let mut min_digits: Option<i64> = None;
    for ((a, b), out) in pairs.iter().zip(outcomes) {
        match out {
            Ok(PairOutcome {
                witness: Some(_),
                verified_digits,
                ..
            }) => {
                witnesses_found += 1;
                min_digits = match (min_digits, verified_digits) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
            }
            Ok(o) if !o.same_orbit => failures.push(format!("pair ({a}, {b}) has different invariants")),
            Ok(_) => failures.push(format!("pair ({a}, {b}): no witness found")),
            Err(e) => failures.push(format!("pair ({a}, {b}): {e}")),
        }
    }

    let reps: Vec<usize> = by_class.values().map(|m| m[0]).collect();
    let mut cross_class_pairs = 0;
    for (x, &a) in reps.iter().enumerate() {
        for &b in &reps[x + 1..] {
            cross_class_pairs += 1;
            if classify_skew_pair(&h, &samples[a], &samples[b], DEFAULT_BUDGET)?.same_orbit {
                failures.push(format!("pair ({a}, {b}) with different invariants reported equal"));
            }
        }
    }

    if pairs.len() < min_pairs {
        failures.push(format!("only {} same-class pairs available", pairs.len()));
    }
    Ok(CensusReport {
        q,
        precision,
        eps: h.eps,
        samples: samples.len(),
        eta_image: image.iter().map(|c| c.to_string()).collect(),
        nrd_image: nrd_image.iter().map(|c| c.to_string()).collect(),
        eta_trivial_count,
        hilbert_eps_t,
        orbit_count: image.len(),
        pairs_tested: pairs.len(),
        witnesses_found,
        min_verified_digits: min_digits,
        cross_class_pairs,
        holds: failures.is_empty(),
        failures,
    })
}
