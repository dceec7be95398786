//! Ordinals below ω^ω in Cantor normal form, fundamental sequences, and the
//! fast- and slow-growing hierarchies over them.
//!
//! Fundamental sequences: `(β + ω^(e+1))[n] = β + ω^e·n`, where a leading
//! coefficient above one is peeled first, so `(ω·2)[n] = ω + n`. The
//! fast-growing hierarchy starts from `F_0(n) = n + 1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::signature::Classification;

/// `ω^e1·c1 + ω^e2·c2 + ...` with `e1 > e2 > ...` and every `ci ≥ 1`.
/// The empty sum is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrdinalCnf {
    terms: Vec<(u32, u64)>,
}

impl OrdinalCnf {
    pub fn zero() -> Self {
        OrdinalCnf::default()
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            OrdinalCnf::zero()
        } else {
            OrdinalCnf {
                terms: vec![(0, n)],
            }
        }
    }

    /// `ω^e · c`.
    pub fn monomial(e: u32, c: u64) -> Self {
        if c == 0 {
            OrdinalCnf::zero()
        } else {
            OrdinalCnf {
                terms: vec![(e, c)],
            }
        }
    }

    pub fn omega() -> Self {
        OrdinalCnf::monomial(1, 1)
    }

    /// Builds from `(exponent, coefficient)` pairs, checking normal form.
    pub fn from_terms(terms: Vec<(u32, u64)>) -> Result<Self> {
        let ord = OrdinalCnf { terms };
        if let Some(reason) = ord.violation() {
            return Err(Error::OrdinalSyntax {
                text: format!("{:?}", ord.terms),
                reason,
            });
        }
        Ok(ord)
    }

    fn violation(&self) -> Option<String> {
        if self.terms.iter().any(|&(_, c)| c == 0) {
            return Some("coefficients must be positive".into());
        }
        if self.terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Some("exponents must be strictly decreasing".into());
        }
        None
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.terms.last(), Some(&(e, _)) if e >= 1)
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some(&(0, _)))
    }

    /// Trailing finite part.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some(&(0, c)) => c,
            _ => 0,
        }
    }

    /// `α - 1` for a successor `α`.
    pub fn predecessor(&self) -> Option<Self> {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((0, c)) => {
                *c -= 1;
                if *c == 0 {
                    terms.pop();
                }
                Some(OrdinalCnf { terms })
            }
            _ => None,
        }
    }

    /// `α + 1`.
    pub fn successor(&self) -> Self {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((0, c)) => *c += 1,
            _ => terms.push((0, 1)),
        }
        OrdinalCnf { terms }
    }
}

impl Ord for OrdinalCnf {
    /// Lexicographic on the term lists, each term compared by exponent then
    /// coefficient; a proper prefix is smaller.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let o = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if o.is_ne() {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for OrdinalCnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn ord_cmp(a: &OrdinalCnf, b: &OrdinalCnf) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for OrdinalCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for OrdinalCnf {
    type Err = Error;

    /// Accepts `0`, `7`, `w`, `w^2*3 + w*1 + 4`; whitespace is ignored.
    fn from_str(text: &str) -> Result<Self> {
        let err = |reason: &str| Error::OrdinalSyntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        if compact == "0" {
            return Ok(OrdinalCnf::zero());
        }
        let number = |s: &str| -> Result<u64> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(&format!("expected a number, found `{s}`")));
            }
            s.parse::<u64>().map_err(|_| err("number out of range"))
        };
        let mut terms = Vec::new();
        for part in compact.split('+') {
            let (base, coeff) = match part.split_once('*') {
                Some((b, c)) => (b, number(c)?),
                None => (part, 1),
            };
            let exp = if let Some(rest) = base.strip_prefix('w') {
                match rest.strip_prefix('^') {
                    Some(e) => {
                        u32::try_from(number(e)?).map_err(|_| err("exponent out of range"))?
                    }
                    None if rest.is_empty() => 1,
                    None => return Err(err(&format!("unexpected `{rest}`"))),
                }
            } else {
                if part.contains('*') {
                    return Err(err("a finite term takes no coefficient"));
                }
                terms.push((0, number(base)?));
                continue;
            };
            terms.push((exp, coeff));
        }
        OrdinalCnf::from_terms(terms).map_err(|e| match e {
            Error::OrdinalSyntax { reason, .. } => err(&reason),
            other => other,
        })
    }
}

/// `α[n]` for a limit `α`.
pub fn fund_seq(alpha: &OrdinalCnf, n: u64) -> Result<OrdinalCnf> {
    if !alpha.is_limit() {
        return Err(Error::NotALimit(alpha.to_string()));
    }
    let mut terms = alpha.terms.clone();
    let (e, c) = terms.pop().expect("limit is non-zero");
    if c > 1 {
        terms.push((e, c - 1));
    }
    if n > 0 {
        terms.push((e - 1, n));
    }
    Ok(OrdinalCnf { terms })
}

/// `G_n(α)`. Below ω^ω this is the normal form read as a polynomial in `n`.
pub fn slow_g(alpha: &OrdinalCnf, n: u64) -> BigUint {
    let base = BigUint::from(n);
    alpha
        .terms
        .iter()
        .map(|&(e, c)| BigUint::from(c) * base.pow(e))
        .fold(BigUint::zero(), |acc, x| acc + x)
}

/// Default evaluation budget for [`fast_f`]: 10^100.
pub fn default_budget() -> BigUint {
    BigUint::from(10u32).pow(100)
}

const MAX_NESTING: usize = 1000;

/// `F_α(n)`, aborting with [`Error::ValueBudgetExceeded`] as soon as the
/// result is known to exceed `budget`.
pub fn fast_f(alpha: &OrdinalCnf, n: &BigUint, budget: &BigUint) -> Result<BigUint> {
    FastGrowing { budget, depth: 0 }.eval(alpha, n)
}

struct FastGrowing<'a> {
    budget: &'a BigUint,
    depth: usize,
}

impl FastGrowing<'_> {
    fn check(&self, v: BigUint) -> Result<BigUint> {
        if &v > self.budget {
            Err(Error::ValueBudgetExceeded)
        } else {
            Ok(v)
        }
    }

    fn eval(&mut self, alpha: &OrdinalCnf, n: &BigUint) -> Result<BigUint> {
        if n > self.budget {
            return Err(Error::ValueBudgetExceeded);
        }
        if alpha.is_zero() {
            return self.check(n + 1u32);
        }
        if n.is_zero() {
            // every descent at 0 bottoms out in F_0(0)
            return Ok(BigUint::one());
        }
        if *alpha == OrdinalCnf::finite(1) {
            return self.check(n * 2u32 + 1u32);
        }
        let two = BigUint::from(2u32);
        if *n >= two {
            // For α ≥ 2 and n ≥ 2 the descent from α passes through 2, and
            // F is nondecreasing along it, so F_α(n) ≥ F_2(n).
            if n + 1u32 > BigUint::from(self.budget.bits()) {
                return Err(Error::ValueBudgetExceeded);
            }
            let e = n.to_u64().expect("bounded by the budget's bit length");
            self.check((n + 1u32) * (BigUint::one() << (e + 1)) - 1u32)?;
            // Likewise α > ω passes through ω+1, and F_(ω+1)(2) > F_23(23)
            // is beyond any representable budget.
            if *alpha > OrdinalCnf::omega() {
                return Err(Error::ValueBudgetExceeded);
            }
        }
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(Error::ValueBudgetExceeded);
        }
        let result = if let Some(beta) = alpha.predecessor() {
            let mut x = n.clone();
            let mut remaining = n + 1u32;
            while !remaining.is_zero() {
                x = self.eval(&beta, &x)?;
                remaining -= 1u32;
            }
            Ok(x)
        } else {
            let k = n.to_u64().ok_or(Error::ValueBudgetExceeded)?;
            self.eval(&fund_seq(alpha, k)?, n)
        };
        self.depth -= 1;
        result
    }
}

/// `ω^(1+k) · m`, the dominant part of the fast-growing index bounding the
/// derivation complexity of a system over a vocabulary of class `(k, m)`.
pub fn bound_index(c: &Classification) -> OrdinalCnf {
    OrdinalCnf::monomial(1 + c.k as u32, c.m as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> OrdinalCnf {
        s.parse().unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn compare() {
        assert_eq!(ord_cmp(&o("0"), &o("0")), Ordering::Equal);
        assert_eq!(ord_cmp(&o("w"), &o("w*2")), Ordering::Less);
        assert_eq!(ord_cmp(&o("w^2"), &o("w*9 + 5")), Ordering::Greater);
        assert!(o("w + 1") > o("w"));
        assert!(o("5") < o("w"));
    }

    #[test]
    fn fundamental_sequences() {
        assert_eq!(fund_seq(&o("w"), 3).unwrap(), o("3"));
        assert_eq!(fund_seq(&o("w^2"), 2).unwrap(), o("w*2"));
        assert_eq!(fund_seq(&o("w*2"), 4).unwrap(), o("w + 4"));
        assert_eq!(fund_seq(&o("w"), 0).unwrap(), o("0"));
        assert!(matches!(fund_seq(&o("0"), 1), Err(Error::NotALimit(_))));
        assert!(matches!(fund_seq(&o("w + 1"), 1), Err(Error::NotALimit(_))));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(o("w^2*3 + w*1 + 4").terms(), &[(2, 3), (1, 1), (0, 4)]);
        assert_eq!(o("w^2*3+w*1+4").to_string(), "w^2*3 + w + 4");
        assert_eq!(o("w").to_string(), "w");
        assert_eq!(o("0").to_string(), "0");
        assert_eq!(o("w^1*2").to_string(), "w*2");
        assert_eq!(o("w^0*3").terms(), &[(0, 3)]);
        for bad in [
            "", "w + w", "1 + w", "w*0", "x", "w^", "3*2", "w^2*", "0 + 1",
        ] {
            assert!(
                bad.parse::<OrdinalCnf>().is_err(),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn fast_small_values() {
        let b = default_budget();
        assert_eq!(fast_f(&o("0"), &big(7), &b).unwrap(), big(8));
        assert_eq!(fast_f(&o("2"), &big(3), &b).unwrap(), big(63));
        assert_eq!(fast_f(&o("w"), &big(2), &b).unwrap(), big(23));
        assert_eq!(fast_f(&o("w^3"), &big(0), &b).unwrap(), big(1));
        assert_eq!(fast_f(&o("w^2"), &big(1), &b).unwrap(), big(3));
    }

    #[test]
    fn fast_budget() {
        let b = default_budget();
        assert_eq!(
            fast_f(&o("w^2"), &big(3), &b),
            Err(Error::ValueBudgetExceeded)
        );
        assert_eq!(
            fast_f(&o("3"), &big(3), &b),
            Err(Error::ValueBudgetExceeded)
        );
        assert_eq!(
            fast_f(&o("1"), &big(10), &big(20)),
            Err(Error::ValueBudgetExceeded)
        );
        assert_eq!(
            fast_f(&o("w*1000000"), &big(1), &b),
            Err(Error::ValueBudgetExceeded)
        );
        assert_eq!(
            fast_f(&o("1000000"), &big(1), &b),
            Err(Error::ValueBudgetExceeded)
        );
    }

    #[test]
    fn slow_values() {
        assert_eq!(slow_g(&o("0"), 5), big(0));
        assert_eq!(slow_g(&o("w"), 3), big(3));
        assert_eq!(slow_g(&o("w^2"), 3), big(9));
        assert_eq!(slow_g(&o("w^2*2 + w + 4"), 10), big(214));
    }

    #[test]
    fn bound_indices() {
        let class = |k, m| Classification {
            k,
            m,
            max_arity: k + 2,
            rk: Default::default(),
            rk2: Default::default(),
        };
        assert_eq!(bound_index(&class(0, 1)).to_string(), "w");
        assert_eq!(bound_index(&class(1, 2)).to_string(), "w^2*2");
        assert_eq!(bound_index(&class(0, 3)).to_string(), "w*3");
    }
}
