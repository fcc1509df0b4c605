//! One function per subcommand, each returning a flat table and a verdict.

use std::sync::Arc;

use nilorb::chevalley::LieAlgebra;
use nilorb::field::{Field, PrimeField, Rationals};
use nilorb::finorbits::{centralizer_levi_check, count_rational_nilpotent_orbits, lambda_check, u_orbit_check, FiniteGroup};
use nilorb::instability::{enumerate_orbits, theorem_assoc_check, OrbitDescriptor};
use nilorb::localquat::{artin_schreier_analyze, c2_orbit_census, SeriesField};
use nilorb::rootdata::RootDatum;
use nilorb::{Error, Result};
use serde_json::json;

use crate::output::Output;
use crate::{Command, Common, Expect};

/// `GLn` for the general linear group, otherwise a simply connected type
/// such as `C2` or `A1xA2`.
pub fn datum(ty: &str) -> Result<Arc<RootDatum>> {
    let t = ty.trim();
    let d = match t.strip_prefix("GL").or_else(|| t.strip_prefix("gl")) {
        Some(n) => RootDatum::general_linear(n.parse().map_err(|_| Error::InvalidCartanType(ty.into()))?)?,
        None => RootDatum::simply_connected(t)?,
    };
    Ok(Arc::new(d))
}

fn prime_algebra(ty: &str, q: u64) -> Result<LieAlgebra<PrimeField>> {
    Ok(LieAlgebra::new(datum(ty)?, PrimeField::new(q)?))
}

fn pick<'a, E>(orbits: &'a [OrbitDescriptor<E>], index: usize) -> Result<&'a OrbitDescriptor<E>> {
    let o = orbits
        .get(index)
        .ok_or_else(|| Error::Config(format!("orbit index {index} out of range (0..{})", orbits.len())))?;
    if o.orbit_dim == 0 {
        return Err(Error::ZeroElement);
    }
    Ok(o)
}

/// Indices of the orbits to check: the requested one, or all nonzero ones.
fn selected<E>(orbits: &[OrbitDescriptor<E>], orbit: Option<usize>) -> Result<Vec<usize>> {
    match orbit {
        Some(i) => pick(orbits, i).map(|_| vec![i]),
        None => Ok((0..orbits.len()).filter(|&i| orbits[i].orbit_dim > 0).collect()),
    }
}

fn orbit_table<F: Field>(alg: &LieAlgebra<F>, seed: u64, out: &mut Output) -> Result<()> {
    for (i, o) in enumerate_orbits(alg, seed)?.iter().enumerate() {
        out.push(&[], &o.row(i, alg));
    }
    Ok(())
}

fn optimal<F: Field>(alg: &LieAlgebra<F>, seed: u64, orbit: usize, bound: Option<i64>, out: &mut Output) -> Result<()> {
    let orbits = enumerate_orbits(alg, seed)?;
    let o = pick(&orbits, orbit)?;
    let report = theorem_assoc_check(alg, &o.representative, &o.associated_cochar, &alg.datum.default_norm(), bound)?;
    out.passed = report.holds;
    out.push(&[("orbit", json!(orbit)), ("label", json!(o.label))], &report);
    Ok(())
}

fn parse_bound(s: &str) -> Result<Option<i64>> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(None);
    }
    match s.parse::<i64>() {
        Ok(b) if b > 0 => Ok(Some(b)),
        _ => Err(Error::Config(format!("--bound must be `auto` or a positive integer, got {s}"))),
    }
}

pub fn run(cmd: &Command, common: &Common) -> Result<Output> {
    let seed = common.seed;
    let mut out;
    match cmd {
        Command::Orbits { ty, p } => {
            out = Output::new("orbits", json!({"type": ty, "char": p, "seed": seed}));
            if *p == 0 {
                orbit_table(&LieAlgebra::new(datum(ty)?, Rationals), seed, &mut out)?;
            } else {
                orbit_table(&prime_algebra(ty, *p)?, seed, &mut out)?;
            }
        }
        Command::Optimal { ty, p, orbit, bound } => {
            out = Output::new("optimal", json!({"type": ty, "char": p, "orbit": orbit, "bound": bound, "seed": seed}));
            let bound = parse_bound(bound)?;
            if *p == 0 {
                optimal(&LieAlgebra::new(datum(ty)?, Rationals), seed, *orbit, bound, &mut out)?;
            } else {
                optimal(&prime_algebra(ty, *p)?, seed, *orbit, bound, &mut out)?;
            }
        }
        Command::Uorbit { ty, q, orbit } => {
            out = Output::new("uorbit", json!({"type": ty, "q": q, "orbit": orbit, "seed": seed}));
            let g = FiniteGroup::new(prime_algebra(ty, *q)?)?;
            let orbits = enumerate_orbits(&g.alg, seed)?;
            for i in selected(&orbits, *orbit)? {
                let o = &orbits[i];
                let r = u_orbit_check(&g, &o.representative, &o.associated_cochar)?;
                out.passed &= r.holds;
                out.push(&[("orbit", json!(i)), ("label", json!(o.label))], &r);
            }
        }
        Command::Centralizer { ty, q, orbit } => {
            out = Output::new("centralizer", json!({"type": ty, "q": q, "orbit": orbit, "seed": seed}));
            let g = FiniteGroup::new(prime_algebra(ty, *q)?)?;
            let orbits = enumerate_orbits(&g.alg, seed)?;
            for i in selected(&orbits, *orbit)? {
                let o = &orbits[i];
                let r = centralizer_levi_check(&g, &o.representative, &o.associated_cochar)?;
                out.passed &= r.holds;
                out.push(&[("orbit", json!(i)), ("label", json!(o.label))], &r);
            }
        }
        Command::Rational { ty, q } => {
            out = Output::new("rational", json!({"type": ty, "q": q}));
            let g = FiniteGroup::new(prime_algebra(ty, *q)?)?;
            let part = count_rational_nilpotent_orbits(&g)?;
            out.passed = part.holds;
            let summary = [
                ("group_order", json!(part.group_order)),
                ("nilpotent_count", json!(part.nilpotent_count)),
                ("orbit_count", json!(part.orbits.len())),
            ];
            for (i, o) in part.orbits.iter().enumerate() {
                let mut extra = vec![("orbit", json!(i))];
                extra.extend(summary.iter().cloned());
                out.push(&extra, o);
            }
        }
        Command::C2local { q, prec, pairs } => {
            out = Output::new("c2local", json!({"q": q, "prec": prec, "pairs": pairs, "seed": seed}));
            let r = c2_orbit_census(*q, *prec, seed, *pairs)?;
            out.passed = r.holds;
            out.push(&[], &r);
        }
        Command::Lambda {
            ty,
            q,
            samples,
            pairs,
            borel_limit,
        } => {
            out = Output::new(
                "lambda",
                json!({"type": ty, "q": q, "samples": samples, "pairs": pairs, "borel_limit": borel_limit, "seed": seed}),
            );
            let g = FiniteGroup::new(prime_algebra(ty, *q)?)?;
            let r = lambda_check(&g, *samples, *pairs, *borel_limit, seed)?;
            out.passed = r.holds;
            out.push(&[], &r);
        }
        Command::ArtinSchreier { q, g, prec, expect } => {
            out = Output::new("artin-schreier", json!({"q": q, "g": g, "prec": prec}));
            let k = SeriesField::new(*q, *prec)?;
            let r = artin_schreier_analyze(&k, &k.parse(g)?)?;
            if let Some(e) = expect {
                out.passed = r.solvable == (*e == Expect::Solvable);
            }
            out.push(&[], &r);
        }
    }
    Ok(out)
}
