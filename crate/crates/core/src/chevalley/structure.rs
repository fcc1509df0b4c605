//! Integer structure constants `N_{alpha,beta}` of a Chevalley basis.
//!
//! Signs follow the extraspecial-pair convention: for every non-simple
//! positive root `xi` the special pair `(gamma, delta)` with `gamma` minimal in
//! the root order gets `N_{gamma,delta} = p + 1 > 0`; everything else is forced
//! by the standard relations between structure constants.

use num_rational::Rational64;

use crate::rootdata::RootDatum;

/// `table[a][b] = N_{a,b}` (0 when `a + b` is not a root).
pub fn structure_constants(d: &RootDatum) -> Vec<Vec<i64>> {
    let n = d.num_roots();
    let np = d.num_positive;
    let mut known: Vec<Vec<Option<i64>>> = vec![vec![None; n]; n];

    // positive roots are already sorted by height
    for xi in 0..np {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for a in 0..xi {
            for b in (a + 1)..xi {
                if d.sum_root(a, b) == Some(xi) {
                    pairs.push((a, b));
                }
            }
        }
        let Some(&(g, dl)) = pairs.first() else {
            continue;
        };
        let ext = string_p(d, g, dl) + 1;
        known[g][dl] = Some(ext);
        known[dl][g] = Some(-ext);
        for &(a, b) in &pairs[1..] {
            // alpha + beta - gamma - delta = 0
            let lx = d.root_lengths[xi];
            let mut acc = Rational64::from_integer(0);
            if let Some(bg) = d.sum_root(b, d.negative_of(g)) {
                let t = n_any(d, &known, b, d.negative_of(g)) * n_any(d, &known, a, d.negative_of(dl));
                acc += Rational64::new(t, d.root_lengths[bg]);
            }
            if let Some(ag) = d.sum_root(a, d.negative_of(g)) {
                let t = n_any(d, &known, d.negative_of(g), a) * n_any(d, &known, b, d.negative_of(dl));
                acc += Rational64::new(t, d.root_lengths[ag]);
            }
            let v = acc * Rational64::from_integer(lx) / Rational64::from_integer(ext);
            assert!(v.is_integer(), "non-integral structure constant");
            let v = v.to_integer();
            known[a][b] = Some(v);
            known[b][a] = Some(-v);
        }
    }

    (0..n)
        .map(|a| (0..n).map(|b| n_any(d, &known, a, b)).collect())
        .collect()
}

/// Largest `p` with `beta - p alpha` a root.
pub fn string_p(d: &RootDatum, alpha: usize, beta: usize) -> i64 {
    let mut p = 0;
    let mut cur = beta;
    while let Some(next) = d.sum_root(cur, d.negative_of(alpha)) {
        p += 1;
        cur = next;
    }
    p
}

/// `N_{a,b}` for arbitrary roots, given the positive-positive entries of
/// lower height.
fn n_any(d: &RootDatum, known: &[Vec<Option<i64>>], a: usize, b: usize) -> i64 {
    let Some(c) = d.sum_root(a, b) else {
        return 0;
    };
    let pa = d.is_positive(a);
    let pb = d.is_positive(b);
    let len = |r: usize| d.root_lengths[r];
    match (pa, pb) {
        (true, true) => known[a][b].expect("structure constant computed in height order"),
        (false, false) => -n_any(d, known, d.negative_of(a), d.negative_of(b)),
        (false, true) => -n_any(d, known, b, a),
        (true, false) => {
            // a + b + (-c) = 0 gives N_{a,b}/(c,c) = N_{b,-c}/(a,a) = N_{-c,a}/(b,b)
            if d.is_positive(c) {
                let v = -n_any(d, known, d.negative_of(b), c) * len(c);
                debug_assert_eq!(v % len(a), 0);
                v / len(a)
            } else {
                let v = n_any(d, known, d.negative_of(c), a) * len(c);
                debug_assert_eq!(v % len(b), 0);
                v / len(b)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn magnitudes_are_string_lengths() {
        for s in ["A3", "B3", "C3", "G2", "D4", "F4"] {
            let d = RootDatum::simply_connected(s).unwrap();
            let t = structure_constants(&d);
            for a in 0..d.num_roots() {
                for b in 0..d.num_roots() {
                    match d.sum_root(a, b) {
                        Some(_) => assert_eq!(t[a][b].abs(), string_p(&d, a, b) + 1, "{s}"),
                        None => assert_eq!(t[a][b], 0),
                    }
                    assert_eq!(t[a][b], -t[b][a]);
                    assert_eq!(t[d.negative_of(a)][d.negative_of(b)], -t[a][b]);
                }
            }
        }
    }
}
