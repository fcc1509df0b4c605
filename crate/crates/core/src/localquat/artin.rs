//! Solvability of `y^p - y = g` in `F_q((t))`.

use serde::{Deserialize, Serialize};

use super::laurent::{Laurent, SeriesField};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsOutcome {
    /// A solution exists in `F_q((t))`.
    Solvable,
    /// Solvable once the residue field is enlarged: only the constant
    /// term obstructs, through `y0^p - y0 = c` over `F_q`.
    ResidueExtension,
    /// A pole of order prime to `p` survives reduction.
    Unsolvable { valuation: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsReport {
    pub g: String,
    pub p: u64,
    pub precision: usize,
    pub outcome: AsOutcome,
    pub solvable: bool,
    /// Poles removed by `y0 = c^(1/p) t^(v/p)`, as `(v, c)`.
    pub reductions: Vec<(i64, String)>,
}

/// `h + c t^e` without touching the precision of `h` (no-op beyond it).
fn add_term(k: &SeriesField, h: &Laurent, c: u32, e: i64) -> Laurent {
    if h.abs_prec().is_some_and(|a| e >= a) {
        return h.clone();
    }
    let mut m = k.monomial(c, e);
    if let Some(a) = h.abs_prec() {
        m.digits.truncate((a - e) as usize);
    }
    k.add(h, &m)
}

/// Reduces the poles of `g` modulo `{y^p - y}`: a leading term `c t^v`
/// with `p | v` is traded for `c^(1/p) t^(v/p)`; a pole with `p` not
/// dividing `v` is an obstruction. The part with `v >= 0` is always
/// solvable after enlarging the residue field, and the positive part
/// without enlarging it.
pub fn artin_schreier_analyze(k: &SeriesField, g: &Laurent) -> Result<AsReport> {
    let f = k.gf();
    let p = f.prime() as i64;
    let mut h = g.clone();
    let mut reductions = Vec::new();
    let outcome = loop {
        if h.exact_zero {
            break AsOutcome::Solvable;
        }
        let v = h.val;
        if h.digits.is_empty() {
            if v >= 0 {
                break AsOutcome::Solvable;
            }
            return Err(Error::PrecisionExhausted(format!("pole part lost below O(t^{v})")));
        }
        if v >= 0 {
            let c0 = h.coeff(0).unwrap_or(0);
            let residue_ok = f.elements().any(|y| f.sub(&f.pow(&y, p as u64), &y) == c0);
            break if residue_ok {
                AsOutcome::Solvable
            } else {
                AsOutcome::ResidueExtension
            };
        }
        if v % p != 0 {
            break AsOutcome::Unsolvable { valuation: v };
        }
        let c = h.digits[0];
        reductions.push((v, f.format(&c)));
        // subtract y0^p - y0 with y0 = c^(1/p) t^(v/p)
        let r = f.pth_root(&c);
        h = add_term(k, &h, f.neg(&c), v);
        h = add_term(k, &h, r, v / p);
    };
    Ok(AsReport {
        g: k.format(g),
        p: p as u64,
        precision: k.prec(),
        solvable: !matches!(outcome, AsOutcome::Unsolvable { .. }),
        outcome,
        reductions,
    })
}

pub fn artin_schreier_solvable(k: &SeriesField, g: &Laurent) -> Result<bool> {
    Ok(artin_schreier_analyze(k, g)?.solvable)
}

/// Whether `g1` and `g2` define the same Artin-Schreier class.
pub fn artin_schreier_equivalent(k: &SeriesField, g1: &Laurent, g2: &Laurent) -> Result<bool> {
    artin_schreier_solvable(k, &k.sub(g1, g2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poles_prime_to_p() {
        let k = SeriesField::new(3, 12).unwrap();
        for n in 1..=3 {
            let g = k.monomial(1, -3 * n + 2);
            assert!(!artin_schreier_solvable(&k, &g).unwrap());
        }
        let g1 = k.monomial(1, -1);
        let g2 = k.monomial(1, -4);
        assert!(!artin_schreier_equivalent(&k, &g1, &g2).unwrap());
        assert!(artin_schreier_solvable(&k, &k.zero()).unwrap());
    }

    #[test]
    fn reducible_poles() {
        let k = SeriesField::new(3, 12).unwrap();
        // t^-3 - t^-1 = y^p - y for y = t^-1
        let g = k.parse("t^-3 - t^-1").unwrap();
        let r = artin_schreier_analyze(&k, &g).unwrap();
        assert_eq!(r.outcome, AsOutcome::Solvable);
        assert_eq!(r.reductions.len(), 1);
        // t^-3 reduces to t^-1
        assert!(!artin_schreier_solvable(&k, &k.monomial(1, -3)).unwrap());
        assert!(artin_schreier_equivalent(&k, &k.monomial(1, -3), &k.monomial(1, -1)).unwrap());
    }

    #[test]
    fn integral_g() {
        let k = SeriesField::new(3, 12).unwrap();
        assert!(artin_schreier_solvable(&k, &k.parse("t + t^2").unwrap()).unwrap());
        // y^3 - y = 1 has no root in F_3 but does in F_27
        let r = artin_schreier_analyze(&k, &k.one()).unwrap();
        assert_eq!(r.outcome, AsOutcome::ResidueExtension);
        assert!(r.solvable);
    }
}
