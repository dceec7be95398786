//! The lexicographic path order and precedence synthesis.
//!
//! `s <lpo t` holds iff `t = f(t1..tn)` and one of
//!
//! 1. `s = ti` or `s <lpo ti` for some `i`;
//! 2. `s = g(s1..sm)`, `g < f`, and `sj <lpo t` for all `j`;
//! 3. `s = f(s1..sn)`, `(s1..sn)` is lexicographically below `(t1..tn)`, and
//!    `sj <lpo t` for all `j`.
//!
//! A variable `x` is below `t` iff it occurs properly in `t`; nothing is below
//! a variable.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::par;
use crate::rewrite::Trs;
use crate::signature::Signature;
use crate::term::{Sym, Term};

/// Symbol count above which [`synthesize_precedence`] refuses to search.
pub const MAX_SYNTHESIS_SYMBOLS: usize = 8;

/// `s <lpo t` over the precedence of `sig`.
pub fn lpo_less(s: &Term, t: &Term, sig: &Signature) -> Result<bool> {
    sig.check_term(s)?;
    sig.check_term(t)?;
    Ok(less(s, t, sig))
}

pub(crate) fn less(s: &Term, t: &Term, sig: &Signature) -> bool {
    let (f, ts) = match t {
        Term::Var(_) => return false,
        Term::App(f, ts) => (*f, ts),
    };
    if ts.iter().any(|ti| ti == s || less(s, ti, sig)) {
        return true;
    }
    match s {
        Term::Var(_) => false,
        Term::App(g, ss) => {
            let head_ok = if *g == f {
                lex(ss, ts, |a, b| less(a, b, sig))
            } else {
                sig.prec_less(*g, f)
            };
            head_ok && ss.iter().all(|sj| less(sj, t, sig))
        }
    }
}

fn lex<T: PartialEq>(a: &[T], b: &[T], base: impl Fn(&T, &T) -> bool) -> bool {
    match a.iter().zip(b).find(|(x, y)| x != y) {
        Some((x, y)) => base(x, y),
        None => false,
    }
}

/// Lexicographic extension of `base` to equal-length sequences: true iff the
/// first differing position is `base`-smaller.
pub fn lex_less<T: PartialEq>(a: &[T], b: &[T], base: impl Fn(&T, &T) -> bool) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(lex(a, b, base))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationResult {
    pub orientable: bool,
    /// Ascending total order on all symbols. Present iff `orientable`.
    pub precedence_used: Option<Vec<Sym>>,
    /// `per_rule[i]` holds iff `rhs <lpo lhs` for rule `i`.
    pub per_rule: Vec<bool>,
}

impl OrientationResult {
    /// Index of the first rule not oriented, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.per_rule.iter().position(|ok| !ok)
    }
}

/// Checks `rhs <lpo lhs` for every rule under the precedence of `sig`.
pub fn orient(trs: &Trs, sig: &Signature) -> Result<OrientationResult> {
    for rule in trs.rules() {
        sig.check_term(&rule.lhs)?;
        sig.check_term(&rule.rhs)?;
    }
    let per_rule: Vec<bool> = trs
        .rules()
        .iter()
        .map(|r| less(&r.rhs, &r.lhs, sig))
        .collect();
    let orientable = per_rule.iter().all(|&b| b);
    // lpo is monotone in the precedence, so any linear extension orients too.
    let precedence_used = orientable.then(|| sig.linear_extension());
    Ok(OrientationResult {
        orientable,
        precedence_used,
        per_rule,
    })
}

/// Searches every strict total order on the symbols of `sig` (its own
/// precedence is ignored) for one that orients `trs`.
///
/// Symbols are sorted by name and permutations are tried in lexicographic
/// order; the first orienting order wins. When none exists, `per_rule` is
/// reported for the first order that orients the longest prefix of the rule
/// list, so `first_failure` names a rule that no precedence can orient
/// together with the rules before it.
pub fn synthesize_precedence(trs: &Trs, sig: &Signature) -> Result<OrientationResult> {
    if sig.len() > MAX_SYNTHESIS_SYMBOLS {
        return Err(Error::TooManySymbols(sig.len()));
    }
    for rule in trs.rules() {
        sig.check_term(&rule.lhs)?;
        sig.check_term(&rule.rhs)?;
    }
    let names = sig.by_name();
    let orders: Vec<Vec<Sym>> = names.iter().copied().permutations(names.len()).collect();
    let total = |order: &[Sym]| {
        sig.with_ascending(order)
            .expect("a chain is a strict order")
    };

    if let Some(order) = par::find_first(&orders, |order| {
        let s = total(order);
        trs.rules().iter().all(|r| less(&r.rhs, &r.lhs, &s))
    }) {
        return Ok(OrientationResult {
            orientable: true,
            precedence_used: Some(order.clone()),
            per_rule: vec![true; trs.len()],
        });
    }

    let prefixes = par::map(&orders, |order| {
        let s = total(order);
        trs.rules()
            .iter()
            .take_while(|r| less(&r.rhs, &r.lhs, &s))
            .count()
    });
    // first order reaching the longest prefix
    let best = prefixes
        .iter()
        .enumerate()
        .fold(0, |best, (i, &p)| if p > prefixes[best] { i } else { best });
    let s = total(&orders[best]);
    let per_rule = trs
        .rules()
        .iter()
        .map(|r| less(&r.rhs, &r.lhs, &s))
        .collect();
    Ok(OrientationResult {
        orientable: false,
        precedence_used: None,
        per_rule,
    })
}
