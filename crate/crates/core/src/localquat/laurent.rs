//! Truncated Laurent series over `GF(q)` with tracked precision.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gf::Gf;

/// `t^val * (digits[0] + digits[1] t + ...) + O(t^(val + digits.len()))`.
///
/// The leading digit is nonzero. An empty digit window with `exact_zero`
/// unset is a zero known only up to `O(t^val)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    pub val: i64,
    pub digits: Vec<u32>,
    pub exact_zero: bool,
}

impl Laurent {
    /// Zero either exactly or to the tracked precision.
    pub fn is_zero(&self) -> bool {
        self.exact_zero || self.digits.is_empty()
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Exponent of the first unknown coefficient; `None` for an exact zero.
    pub fn abs_prec(&self) -> Option<i64> {
        (!self.exact_zero).then(|| self.val + self.digits.len() as i64)
    }

    pub fn rel_prec(&self) -> usize {
        self.digits.len()
    }

    pub fn leading(&self) -> Option<u32> {
        self.digits.first().copied()
    }

    /// Coefficient of `t^n`, `None` past the known window.
    pub fn coeff(&self, n: i64) -> Option<u32> {
        if self.exact_zero {
            return Some(0);
        }
        if n < self.val {
            return Some(0);
        }
        self.digits.get((n - self.val) as usize).copied()
    }
}

/// Square classes of `F_q((t))^x`: parity of the valuation and the quadratic
/// character of the leading coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SquareClass {
    pub odd_valuation: bool,
    pub nonsquare_unit: bool,
}

impl SquareClass {
    pub const ONE: SquareClass = SquareClass {
        odd_valuation: false,
        nonsquare_unit: false,
    };

    pub fn all() -> [SquareClass; 4] {
        let c = |odd_valuation, nonsquare_unit| SquareClass {
            odd_valuation,
            nonsquare_unit,
        };
        [c(false, false), c(false, true), c(true, false), c(true, true)]
    }

    pub fn is_trivial(self) -> bool {
        self == Self::ONE
    }

    pub fn mul(self, other: SquareClass) -> SquareClass {
        SquareClass {
            odd_valuation: self.odd_valuation ^ other.odd_valuation,
            nonsquare_unit: self.nonsquare_unit ^ other.nonsquare_unit,
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.nonsquare_unit, self.odd_valuation) {
            (false, false) => "1",
            (true, false) => "eps",
            (false, true) => "t",
            (true, true) => "eps*t",
        })
    }
}

/// `F_q((t))` truncated to a fixed relative precision.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesField {
    gf: Gf,
    prec: usize,
}

impl SeriesField {
    pub fn new(q: u32, prec: usize) -> Result<Self> {
        if prec == 0 {
            return Err(Error::Config("precision must be positive".into()));
        }
        Ok(SeriesField { gf: Gf::new(q)?, prec })
    }

    pub fn gf(&self) -> &Gf {
        &self.gf
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn zero(&self) -> Laurent {
        Laurent {
            val: 0,
            digits: vec![],
            exact_zero: true,
        }
    }

    fn normalize(&self, mut val: i64, mut digits: Vec<u32>) -> Laurent {
        let lead = digits.iter().position(|&d| d != 0);
        match lead {
            None => Laurent {
                val: val + digits.len() as i64,
                digits: vec![],
                exact_zero: false,
            },
            Some(k) => {
                digits.drain(..k);
                val += k as i64;
                digits.truncate(self.prec);
                Laurent {
                    val,
                    digits,
                    exact_zero: false,
                }
            }
        }
    }

    /// `c t^k`, known to the working precision.
    pub fn monomial(&self, c: u32, k: i64) -> Laurent {
        if c == 0 {
            return self.zero();
        }
        let mut digits = vec![0; self.prec];
        digits[0] = c;
        Laurent {
            val: k,
            digits,
            exact_zero: false,
        }
    }

    pub fn constant(&self, c: u32) -> Laurent {
        self.monomial(c, 0)
    }

    pub fn one(&self) -> Laurent {
        self.constant(1)
    }

    pub fn t(&self) -> Laurent {
        self.monomial(1, 1)
    }

    /// `t^val * sum digits[i] t^i`, padded with zeros to the working precision.
    pub fn from_digits(&self, val: i64, digits: &[u32]) -> Laurent {
        if digits.iter().all(|&d| d == 0) {
            return self.zero();
        }
        let mut d = digits.to_vec();
        d.resize(d.len().max(self.prec), 0);
        let mut x = self.normalize(val, d);
        x.digits.resize(self.prec, 0);
        x
    }

    pub fn neg(&self, a: &Laurent) -> Laurent {
        let mut r = a.clone();
        for d in r.digits.iter_mut() {
            *d = self.gf.neg(d);
        }
        r
    }

    pub fn add(&self, a: &Laurent, b: &Laurent) -> Laurent {
        if a.exact_zero {
            return b.clone();
        }
        if b.exact_zero {
            return a.clone();
        }
        let abs = a.abs_prec().unwrap().min(b.abs_prec().unwrap());
        let low = a.val.min(b.val);
        if abs <= low {
            return Laurent {
                val: abs,
                digits: vec![],
                exact_zero: false,
            };
        }
        let digits = (low..abs)
            .map(|n| self.gf.add(&a.coeff(n).unwrap(), &b.coeff(n).unwrap()))
            .collect();
        self.normalize(low, digits)
    }

    pub fn sub(&self, a: &Laurent, b: &Laurent) -> Laurent {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Laurent, b: &Laurent) -> Laurent {
        if a.exact_zero || b.exact_zero {
            return self.zero();
        }
        if a.digits.is_empty() || b.digits.is_empty() {
            // O(t^A) * (t^vb + ...) = O(t^(A + vb))
            return Laurent {
                val: a.val + b.val,
                digits: vec![],
                exact_zero: false,
            };
        }
        let n = a.digits.len().min(b.digits.len());
        let mut d = vec![0u32; n];
        for (i, x) in a.digits.iter().take(n).enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.digits.iter().take(n - i).enumerate() {
                d[i + j] = self.gf.add(&d[i + j], &self.gf.mul(x, y));
            }
        }
        self.normalize(a.val + b.val, d)
    }

    pub fn scale(&self, c: u32, a: &Laurent) -> Laurent {
        if c == 0 {
            return self.zero();
        }
        let mut r = a.clone();
        for d in r.digits.iter_mut() {
            *d = self.gf.mul(&c, d);
        }
        r
    }

    pub fn inv(&self, a: &Laurent) -> Result<Laurent> {
        if a.exact_zero {
            return Err(Error::DivisionByZero);
        }
        if a.digits.is_empty() {
            return Err(Error::PrecisionExhausted(format!("inverting O(t^{})", a.val)));
        }
        let f = &self.gf;
        let n = a.digits.len();
        let b0 = f.inv(&a.digits[0]).unwrap();
        let mut b = vec![0u32; n];
        b[0] = b0;
        for k in 1..n {
            let mut s = 0;
            for i in 1..=k {
                s = f.add(&s, &f.mul(&a.digits[i], &b[k - i]));
            }
            b[k] = f.neg(&f.mul(&b0, &s));
        }
        Ok(Laurent {
            val: -a.val,
            digits: b,
            exact_zero: false,
        })
    }

    pub fn div(&self, a: &Laurent, b: &Laurent) -> Result<Laurent> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Laurent, e: u64) -> Laurent {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Equality up to the precision tracked on both sides.
    pub fn approx_eq(&self, a: &Laurent, b: &Laurent) -> bool {
        self.sub(a, b).is_zero()
    }

    pub fn square_class(&self, a: &Laurent) -> Result<SquareClass> {
        if a.exact_zero {
            return Err(Error::DivisionByZero);
        }
        let lead = a
            .leading()
            .ok_or_else(|| Error::PrecisionExhausted(format!("square class of O(t^{})", a.val)))?;
        Ok(SquareClass {
            odd_valuation: a.val.rem_euclid(2) == 1,
            nonsquare_unit: self.gf.quadratic_character(lead) == -1,
        })
    }

    /// A square root when `a` is a nonzero square; `Ok(None)` otherwise.
    pub fn sqrt(&self, a: &Laurent) -> Result<Option<Laurent>> {
        if !self.square_class(a)?.is_trivial() {
            return Ok(None);
        }
        let f = &self.gf;
        let n = a.digits.len();
        let y0 = f.sqrt(a.digits[0]).unwrap();
        let two_y0_inv = f.inv(&f.add(&y0, &y0)).unwrap();
        let mut y = vec![0u32; n];
        y[0] = y0;
        for k in 1..n {
            let mut s = a.digits[k];
            for i in 1..k {
                s = f.sub(&s, &f.mul(&y[i], &y[k - i]));
            }
            y[k] = f.mul(&s, &two_y0_inv);
        }
        Ok(Some(Laurent {
            val: a.val / 2,
            digits: y,
            exact_zero: false,
        }))
    }

    /// Tame Hilbert symbol: the quadratic character of the residue of
    /// `(-1)^(v(a) v(b)) a^v(b) b^(-v(a))`.
    pub fn hilbert_symbol(&self, a: &Laurent, b: &Laurent) -> Result<i8> {
        let f = &self.gf;
        let (va, vb) = (
            a.valuation().ok_or(Error::DivisionByZero)?,
            b.valuation().ok_or(Error::DivisionByZero)?,
        );
        let (a0, b0) = (a.digits[0], b.digits[0]);
        let pow_signed = |x: u32, e: i64| {
            let base = if e < 0 { f.inv(&x).unwrap() } else { x };
            f.pow(&base, e.unsigned_abs())
        };
        let mut s = f.mul(&pow_signed(a0, vb), &pow_signed(b0, -va));
        if (va * vb).rem_euclid(2) == 1 {
            s = f.neg(&s);
        }
        Ok(f.quadratic_character(s))
    }

    /// `x -> x^p` on coefficients and exponents.
    pub fn frobenius(&self, a: &Laurent) -> Laurent {
        if a.is_zero() {
            return a.clone();
        }
        let p = self.gf.prime() as usize;
        let n = a.digits.len();
        let mut d = vec![0u32; n];
        for (i, &c) in a.digits.iter().enumerate() {
            if i * p < n {
                d[i * p] = self.gf.pow(&c, p as u64);
            }
        }
        // relative precision grows by the factor p; keep the window size
        Laurent {
            val: a.val * p as i64,
            digits: d,
            exact_zero: false,
        }
    }

    pub fn format(&self, a: &Laurent) -> String {
        if a.exact_zero {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in a.digits.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = a.val + i as i64;
            let cs = self.gf.format(&c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            terms.push(match (e, cs.as_str()) {
                (0, _) => cs.clone(),
                (1, "1") => "t".into(),
                (_, "1") => format!("t^{e}"),
                (1, _) => format!("{cs}*t"),
                _ => format!("{cs}*t^{e}"),
            });
        }
        terms.push(format!("O(t^{})", a.abs_prec().unwrap()));
        terms.join(" + ")
    }

    /// Parses sums like `2*t^-4 - t + 1`; coefficients are field elements
    /// (integers, or polynomials in `z` in parentheses).
    pub fn parse(&self, s: &str) -> Result<Laurent> {
        let bad = |m: &str| Error::Parse(format!("bad series {s:?}: {m}"));
        let mut acc = self.zero();
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut depth = 0;
        let mut prev = ' ';
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if (ch == '+' || ch == '-') && depth == 0 && prev != '^' {
                if !cur.is_empty() {
                    terms.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = ch;
        }
        if !cur.is_empty() {
            terms.push((neg, cur));
        }
        if terms.is_empty() {
            return Err(bad("empty"));
        }
        for (neg, term) in terms {
            let (coef, exp) = match term.find('t') {
                None => (term.as_str(), 0),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(|| bad("expected ^"))?
                            .parse::<i64>()
                            .map_err(|_| bad("bad exponent"))?
                    };
                    (term[..pos].trim_end_matches('*'), e)
                }
            };
            let coef = coef.trim_start_matches('(').trim_end_matches(')');
            let mut c = if coef.is_empty() { 1 } else { self.gf.parse(coef)? };
            if neg {
                c = self.gf.neg(&c);
            }
            acc = self.add(&acc, &self.monomial(c, exp));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> SeriesField {
        SeriesField::new(3, 12).unwrap()
    }

    #[test]
    fn square_classes() {
        let k = f3();
        let eps = k.constant(k.gf().least_nonsquare().unwrap());
        assert_eq!(k.square_class(&k.t()).unwrap().to_string(), "t");
        let x = k.mul(&eps, &k.pow(&k.t(), 2));
        assert_eq!(k.square_class(&x).unwrap().to_string(), "eps");
        let one_plus_t = k.add(&k.one(), &k.t());
        let sq = k.mul(&one_plus_t, &one_plus_t);
        assert_eq!(sq.digits[..3], [1, 2, 1]);
        assert!(k.square_class(&sq).unwrap().is_trivial());
        let r = k.sqrt(&sq).unwrap().unwrap();
        assert!(k.approx_eq(&k.mul(&r, &r), &sq));
    }

    #[test]
    fn inverse_and_precision() {
        let k = f3();
        let x = k.parse("t^-1 + 1 + 2*t^3").unwrap();
        let y = k.inv(&x).unwrap();
        assert!(k.approx_eq(&k.mul(&x, &y), &k.one()));
        assert_eq!(y.val, 1);
        // cancellation shrinks the window
        let z = k.sub(&k.add(&k.one(), &k.t()), &k.one());
        assert_eq!(z.val, 1);
        assert_eq!(z.rel_prec(), 11);
        assert_eq!(k.inv(&k.zero()), Err(Error::DivisionByZero));
        let approx = k.sub(&k.one(), &k.one());
        assert!(approx.is_zero() && !approx.exact_zero);
        assert!(matches!(k.inv(&approx), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn hilbert_examples() {
        let k = f3();
        let eps = k.constant(2);
        let t = k.t();
        assert_eq!(k.hilbert_symbol(&k.one(), &t).unwrap(), 1);
        assert_eq!(k.hilbert_symbol(&eps, &t).unwrap(), -1);
        assert_eq!(k.hilbert_symbol(&t, &t).unwrap(), -1);
        let m = k.neg(&t);
        assert_eq!(k.hilbert_symbol(&t, &m).unwrap(), 1);
    }

    #[test]
    fn parse_format() {
        let k = f3();
        let x = k.parse("2*t^-4 - t + 1").unwrap();
        assert_eq!(x.val, -4);
        assert_eq!(x.coeff(1), Some(2));
        assert!(k.format(&x).starts_with("2*t^-4 + 1 + 2*t"));
        let k9 = SeriesField::new(9, 4).unwrap();
        let y = k9.parse("(z+1)*t^2").unwrap();
        assert_eq!(y.val, 2);
        assert_eq!(y.digits[0], 4);
    }

    #[test]
    fn frobenius_is_pth_power() {
        let k = f3();
        let x = k.parse("t^-1 + 2 + t^2").unwrap();
        assert!(k.approx_eq(&k.frobenius(&x), &k.pow(&x, 3)));
    }
}
