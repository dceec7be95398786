//! Finite approximations `<p` of the lexicographic path order.
//!
//! `s <0 t` never holds. For `p ≥ 1`, `s <p t` holds iff `t = f(t1..tn)` and
//!
//! 1. `s = ti` or `s <p ti` for some `i`; or
//! 2. `s = g(s1..sm)` with `g < f` and `sj <(p-1) t` for all `j`; or
//! 3. `s = f(s1..sn)` and for some `i`: `sj = tj` for `j < i`, `si <p ti`,
//!    and `sj <(p-1) t` for all `j > i`.
//!
//! Subterm steps and the lexicographic position keep `p`; everything built
//! below `t` from scratch costs one level. This makes every predecessor set
//! `{s : s <p t}` finite, the family increasing in `p` with union `<lpo`, and
//! a rewrite step `t → s` of a system reducing under `<lpo` lands in a fixed
//! `<p` (see [`static_p_r`]). The height of `t` in the well-founded part of
//! `<p` then bounds the length of every rewrite sequence from `t`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::par;
use crate::rewrite::{successors, Trs};
use crate::signature::Signature;
use crate::term::{ground_terms_up_to_size, size_then_name, Term};

/// Default cap on candidate terms generated by one enumeration.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

/// `s <p t`.
pub fn approx_less(s: &Term, t: &Term, p: u32, sig: &Signature) -> Result<bool> {
    sig.check_term(s)?;
    sig.check_term(t)?;
    Ok(approx(s, t, p, sig))
}

pub(crate) fn approx(s: &Term, t: &Term, p: u32, sig: &Signature) -> bool {
    if p == 0 {
        return false;
    }
    let (f, ts) = match t {
        Term::Var(_) => return false,
        Term::App(f, ts) => (*f, ts),
    };
    if ts.iter().any(|ti| ti == s || approx(s, ti, p, sig)) {
        return true;
    }
    let (g, ss) = match s {
        Term::Var(_) => return false,
        Term::App(g, ss) => (*g, ss),
    };
    if g == f {
        match ss.iter().zip(ts.iter()).position(|(a, b)| a != b) {
            Some(i) => {
                approx(&ss[i], &ts[i], p, sig)
                    && ss[i + 1..].iter().all(|sj| approx(sj, t, p - 1, sig))
            }
            None => false,
        }
    } else {
        sig.prec_less(g, f) && ss.iter().all(|sj| approx(sj, t, p - 1, sig))
    }
}

/// `{s : s <p root}` over the ground terms of a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredecessorSet {
    pub root: Term,
    pub p: u32,
    pub members: BTreeSet<Term>,
}

impl PredecessorSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members ordered by size, then by symbol name.
    pub fn sorted(&self, sig: &Signature) -> Vec<Term> {
        let mut v: Vec<Term> = self.members.iter().cloned().collect();
        v.sort_by(|a, b| size_then_name(a, b, sig));
        v
    }
}

/// Builds predecessor sets clause by clause, caching `(term, p)` results for
/// the lifetime of the value.
pub struct Predecessors<'a> {
    sig: &'a Signature,
    budget: u64,
    generated: u64,
    cache: HashMap<(Term, u32), Arc<[Term]>>,
}

impl<'a> Predecessors<'a> {
    pub fn new(sig: &'a Signature, budget: u64) -> Self {
        Predecessors {
            sig,
            budget,
            generated: 0,
            cache: HashMap::new(),
        }
    }

    /// Candidate terms generated so far, duplicates included.
    pub fn generated(&self) -> u64 {
        self.generated
    }

    fn charge(&mut self, n: u64) -> Result<()> {
        self.generated += n;
        if self.generated > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                term: None,
            });
        }
        Ok(())
    }

    pub fn of(&mut self, t: &Term, p: u32) -> Result<Arc<[Term]>> {
        if p == 0 || t.is_var() {
            return Ok(Arc::from(Vec::new()));
        }
        if let Some(hit) = self.cache.get(&(t.clone(), p)) {
            return Ok(hit.clone());
        }
        let (f, ts) = match t {
            Term::App(f, ts) => (*f, ts.clone()),
            Term::Var(_) => unreachable!(),
        };
        let mut out: HashSet<Term> = HashSet::new();

        for ti in ts.iter() {
            out.insert(ti.clone());
            let below = self.of(ti, p)?;
            self.charge(below.len() as u64 + 1)?;
            out.extend(below.iter().cloned());
        }

        let lower = self.of(t, p - 1)?;
        let smaller_heads: Vec<_> = self
            .sig
            .symbols()
            .filter(|&g| self.sig.prec_less(g, f))
            .collect();
        for g in smaller_heads {
            let arity = self.sig.arity(g);
            self.charge((lower.len() as u64).saturating_pow(arity as u32))?;
            for args in (0..arity).map(|_| lower.iter()).multi_cartesian_product() {
                out.insert(Term::app(g, args.into_iter().cloned().collect()));
            }
        }

        for i in 0..ts.len() {
            let pivots = self.of(&ts[i], p)?;
            let tail = ts.len() - i - 1;
            self.charge(
                (pivots.len() as u64)
                    .saturating_mul((lower.len() as u64).saturating_pow(tail as u32)),
            )?;
            for u in pivots.iter() {
                for rest in (0..tail).map(|_| lower.iter()).multi_cartesian_product() {
                    let mut args: Vec<Term> = ts[..i].to_vec();
                    args.push(u.clone());
                    args.extend(rest.into_iter().cloned());
                    out.insert(Term::app(f, args));
                }
            }
        }

        let result: Arc<[Term]> = out.into_iter().collect::<Vec<_>>().into();
        self.cache.insert((t.clone(), p), result.clone());
        Ok(result)
    }
}

/// Exact enumeration of `{s : s <p t}`.
pub fn predecessors(t: &Term, p: u32, sig: &Signature) -> Result<PredecessorSet> {
    predecessors_with_budget(t, p, sig, DEFAULT_NODE_BUDGET)
}

pub fn predecessors_with_budget(
    t: &Term,
    p: u32,
    sig: &Signature,
    budget: u64,
) -> Result<PredecessorSet> {
    sig.check_term(t)?;
    let members = Predecessors::new(sig, budget)
        .of(t, p)?
        .iter()
        .cloned()
        .collect();
    Ok(PredecessorSet {
        root: t.clone(),
        p,
        members,
    })
}

/// Approximation level at which every rewrite step of an lpo-reducing
/// system is contained: the deepest right-hand side plus two.
pub fn static_p_r(trs: &Trs) -> u32 {
    trs.rules().iter().map(|r| r.rhs.depth()).max().unwrap_or(0) as u32 + 2
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContainmentReport {
    pub p: u32,
    pub size_bound: usize,
    pub steps_checked: usize,
    /// Steps `t → s` with `s <p t` failing, as `(t, s)`.
    pub violations: Vec<(Term, Term)>,
}

impl ContainmentReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `s <p t` for every ground step `t → s` with `size(t) ≤ size_bound`.
pub fn check_containment(
    trs: &Trs,
    sig: &Signature,
    p: u32,
    size_bound: usize,
) -> ContainmentReport {
    let terms = ground_terms_up_to_size(sig, size_bound);
    let per_term = par::map(&terms, |t| {
        let succ = successors(t, trs);
        let bad: Vec<(Term, Term)> = succ
            .iter()
            .filter(|s| !approx(s, t, p, sig))
            .map(|s| (t.clone(), s.clone()))
            .collect();
        (succ.len(), bad)
    });
    let mut report = ContainmentReport {
        p,
        size_bound,
        ..Default::default()
    };
    for (n, bad) in per_term {
        report.steps_checked += n;
        report.violations.extend(bad);
    }
    report
}

/// Heights in the well-founded part of `<p`: `h(t) = 0` without
/// predecessors, else `1 + max h(s)` over `s <p t`.
pub struct WpHeights<'a> {
    p: u32,
    preds: Predecessors<'a>,
    memo: HashMap<Term, u64>,
    lower: HashMap<Term, u64>,
    by_size: HashMap<Term, Arc<[Term]>>,
}

impl<'a> WpHeights<'a> {
    pub fn new(sig: &'a Signature, p: u32, budget: u64) -> Self {
        WpHeights {
            p,
            preds: Predecessors::new(sig, budget),
            memo: HashMap::new(),
            lower: HashMap::new(),
            by_size: HashMap::new(),
        }
    }

    /// Number of distinct terms whose height is known exactly.
    pub fn known(&self) -> usize {
        self.memo.len()
    }

    /// `min(h(t), cap)`. Stops as soon as a descending chain of length `cap`
    /// below `t` has been found, trying smaller predecessors first, so
    /// `capped(t, c) == c` decides `h(t) >= c` without computing `h(t)`.
    pub fn capped(&mut self, t: &Term, cap: u64) -> Result<u64> {
        if cap == 0 {
            return Ok(0);
        }
        if let Some(&h) = self.memo.get(t) {
            return Ok(h.min(cap));
        }
        if self.lower.get(t).is_some_and(|&lo| lo >= cap) {
            return Ok(cap);
        }
        let below = match self.by_size.get(t) {
            Some(b) => b.clone(),
            None => {
                let mut v = self.preds.of(t, self.p)?.to_vec();
                v.sort_by(|a, b| size_then_name(a, b, self.preds.sig));
                let v: Arc<[Term]> = v.into();
                self.by_size.insert(t.clone(), v.clone());
                v
            }
        };
        let mut best = 0;
        for s in below.iter() {
            let h = self.capped(s, cap - 1)?;
            best = best.max(h + 1);
            if best >= cap {
                let lo = self.lower.entry(t.clone()).or_insert(0);
                *lo = (*lo).max(cap);
                return Ok(cap);
            }
        }
        // every predecessor stayed below `cap - 1`, so each value was exact
        self.by_size.remove(t);
        self.lower.remove(t);
        self.memo.insert(t.clone(), best);
        Ok(best)
    }

    pub fn height(&mut self, t: &Term) -> Result<u64> {
        if let Some(&h) = self.memo.get(t) {
            return Ok(h);
        }
        // (term, predecessors, next index, best so far)
        let mut stack: Vec<(Term, Arc<[Term]>, usize, u64)> = Vec::new();
        let first = self.preds.of(t, self.p)?;
        stack.push((t.clone(), first, 0, 0));
        loop {
            let top = stack.last_mut().expect("stack is non-empty");
            if top.2 == top.1.len() {
                let (term, _, _, h) = stack.pop().expect("stack is non-empty");
                self.memo.insert(term, h);
                match stack.last_mut() {
                    Some(parent) => parent.3 = parent.3.max(h + 1),
                    None => return Ok(h),
                }
                continue;
            }
            let s = top.1[top.2].clone();
            top.2 += 1;
            if let Some(&h) = self.memo.get(&s) {
                top.3 = top.3.max(h + 1);
                continue;
            }
            let below = self.preds.of(&s, self.p)?;
            stack.push((s, below, 0, 0));
        }
    }
}

pub fn wp_height(t: &Term, p: u32, sig: &Signature) -> Result<u64> {
    sig.check_term(t)?;
    WpHeights::new(sig, p, DEFAULT_NODE_BUDGET).height(t)
}

/// `h(t) ≥ target` in `<p`, decided without computing `h(t)` in full.
pub fn wp_height_at_least(t: &Term, p: u32, sig: &Signature, target: u64) -> Result<bool> {
    sig.check_term(t)?;
    Ok(WpHeights::new(sig, p, DEFAULT_NODE_BUDGET).capped(t, target)? == target)
}
