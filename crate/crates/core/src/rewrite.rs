//! Rewrite engine: matching, one-step reducts, derivation heights and the
//! derivation complexity curve `dh_R(n)`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::signature::Signature;
use crate::term::{depth_then_name, ground_terms_by_size, ground_terms_up_to_size, Term};

/// Default limit on distinct terms explored by one derivation-height query.
pub const DEFAULT_STEP_CAP: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Term,
    pub rhs: Term,
}

impl Rule {
    /// Rejects variable left-hand sides and right-hand sides with extra
    /// variables.
    pub fn new(lhs: Term, rhs: Term) -> Result<Self> {
        if lhs.is_var() {
            return Err(Error::InvalidRule("left-hand side is a variable".into()));
        }
        if !rhs.vars().is_subset(&lhs.vars()) {
            return Err(Error::InvalidRule(
                "right-hand side has variables not in the left-hand side".into(),
            ));
        }
        Ok(Rule { lhs, rhs })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trs {
    rules: Vec<Rule>,
}

impl Trs {
    pub fn new(rules: Vec<Rule>) -> Self {
        Trs { rules }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

pub type Substitution = HashMap<Arc<str>, Term>;

/// Extends `subst` so that `pattern` instantiated by it equals `term`.
pub fn match_term(pattern: &Term, term: &Term, subst: &mut Substitution) -> bool {
    match pattern {
        Term::Var(x) => match subst.get(x) {
            Some(bound) => bound == term,
            None => {
                subst.insert(x.clone(), term.clone());
                true
            }
        },
        Term::App(f, pargs) => match term {
            Term::App(g, targs) if f == g && pargs.len() == targs.len() => pargs
                .iter()
                .zip(targs.iter())
                .all(|(p, t)| match_term(p, t, subst)),
            _ => false,
        },
    }
}

/// Instantiates `t`; unbound variables are left in place.
pub fn apply(t: &Term, subst: &Substitution) -> Term {
    match t {
        Term::Var(x) => subst.get(x).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, args) => Term::app(*f, args.iter().map(|a| apply(a, subst)).collect()),
    }
}

/// Root reducts of `t`.
fn root_reducts(t: &Term, trs: &Trs, out: &mut BTreeSet<Term>) {
    for rule in trs.rules() {
        let mut subst = Substitution::new();
        if match_term(&rule.lhs, t, &mut subst) {
            out.insert(apply(&rule.rhs, &subst));
        }
    }
}

/// All one-step reducts of `t`, at any position and by any rule.
pub fn successors(t: &Term, trs: &Trs) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    collect_successors(t, trs, &mut out);
    out
}

fn collect_successors(t: &Term, trs: &Trs, out: &mut BTreeSet<Term>) {
    root_reducts(t, trs, out);
    for (i, a) in t.args().iter().enumerate() {
        for u in successors(a, trs) {
            out.insert(t.with_arg(i, u));
        }
    }
}

/// Memo table for derivation heights. Reusing one table across queries on
/// the same system shares work; a cycle or cap breach poisons nothing, but
/// the failing query returns an error.
pub struct DerivationHeights<'a> {
    trs: &'a Trs,
    step_cap: u64,
    memo: HashMap<Term, u64>,
}

struct Frame {
    term: Term,
    succ: Vec<Term>,
    next: usize,
    best: u64,
}

impl<'a> DerivationHeights<'a> {
    pub fn new(trs: &'a Trs, step_cap: u64) -> Self {
        DerivationHeights {
            trs,
            step_cap,
            memo: HashMap::new(),
        }
    }

    /// Length of the longest rewrite sequence starting at `t`.
    pub fn height(&mut self, t: &Term) -> Result<u64> {
        if let Some(&h) = self.memo.get(t) {
            return Ok(h);
        }
        let mut on_stack: HashSet<Term> = HashSet::new();
        let mut stack = vec![self.frame(t)];
        on_stack.insert(t.clone());
        loop {
            let top = stack.last_mut().expect("stack is non-empty");
            if top.next == top.succ.len() {
                let done = stack.pop().expect("stack is non-empty");
                on_stack.remove(&done.term);
                self.memo.insert(done.term, done.best);
                match stack.last_mut() {
                    Some(parent) => parent.best = parent.best.max(done.best + 1),
                    None => return Ok(done.best),
                }
                continue;
            }
            let child = top.succ[top.next].clone();
            top.next += 1;
            if let Some(&h) = self.memo.get(&child) {
                top.best = top.best.max(h + 1);
                continue;
            }
            if on_stack.contains(&child) {
                return Err(Error::NonTerminating(child));
            }
            if (self.memo.len() + on_stack.len()) as u64 >= self.step_cap {
                return Err(Error::BudgetExceeded {
                    budget: self.step_cap,
                    term: Some(t.clone()),
                });
            }
            on_stack.insert(child.clone());
            let frame = self.frame(&child);
            stack.push(frame);
        }
    }

    fn frame(&self, t: &Term) -> Frame {
        Frame {
            term: t.clone(),
            succ: successors(t, self.trs).into_iter().collect(),
            next: 0,
            best: 0,
        }
    }
}

/// Derivation height of a single ground term.
pub fn dh_term(t: &Term, trs: &Trs, step_cap: u64) -> Result<u64> {
    DerivationHeights::new(trs, step_cap).height(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveEntry {
    pub n: usize,
    pub dh: u64,
    #[serde(skip)]
    pub witness: Term,
}

/// `dh_R(n)` for `n = 1..=n_max`, each with a witness of size at most `n`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ComplexityCurve {
    pub entries: Vec<CurveEntry>,
}

impl ComplexityCurve {
    pub fn values(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.dh).collect()
    }
}

/// Maximises `dh_term` over all ground terms of size at most `n`, for every
/// `n ≤ n_max`. Ties are broken towards the shallowest term, then by name.
pub fn dh_complexity(
    trs: &Trs,
    sig: &Signature,
    n_max: usize,
    step_cap: u64,
) -> Result<ComplexityCurve> {
    match dh_complexity_prefix(trs, sig, n_max, step_cap) {
        (curve, None) => Ok(curve),
        (_, Some(e)) => Err(e),
    }
}

/// Like [`dh_complexity`], but keeps the entries for every size completed
/// before the first failure and returns that failure alongside.
pub fn dh_complexity_prefix(
    trs: &Trs,
    sig: &Signature,
    n_max: usize,
    step_cap: u64,
) -> (ComplexityCurve, Option<Error>) {
    let mut entries: Vec<CurveEntry> = Vec::new();
    let mut best: Option<(Term, u64)> = None;
    for (n, mut terms) in ground_terms_by_size(sig, n_max)
        .into_iter()
        .enumerate()
        .skip(1)
    {
        terms.sort_by(|a, b| depth_then_name(a, b, sig));
        let heights = match par::try_map(&terms, |t| dh_term(t, trs, step_cap)) {
            Ok(h) => h,
            Err(e) => return (ComplexityCurve { entries }, Some(e)),
        };
        for (t, h) in terms.into_iter().zip(heights) {
            let better = match &best {
                None => true,
                Some((w, bh)) => {
                    h > *bh || (h == *bh && depth_then_name(&t, w, sig) == Ordering::Less)
                }
            };
            if better {
                best = Some((t, h));
            }
        }
        if let Some((w, h)) = &best {
            entries.push(CurveEntry {
                n,
                dh: *h,
                witness: w.clone(),
            });
        }
    }
    (ComplexityCurve { entries }, None)
}

/// Outcome of exhaustive ground rewriting from every small term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TerminationReport {
    pub terms_checked: usize,
    /// `(start, term on the cycle)`.
    pub cycles: Vec<(Term, Term)>,
    pub cap_breaches: Vec<Term>,
}

impl TerminationReport {
    pub fn all_terminate(&self) -> bool {
        self.cycles.is_empty() && self.cap_breaches.is_empty()
    }
}

pub fn check_ground_termination(trs: &Trs, sig: &Signature, n_max: usize) -> TerminationReport {
    let terms = ground_terms_up_to_size(sig, n_max);
    let results = par::map(&terms, |t| dh_term(t, trs, DEFAULT_STEP_CAP));
    let mut report = TerminationReport {
        terms_checked: terms.len(),
        ..Default::default()
    };
    for (t, r) in terms.into_iter().zip(results) {
        match r {
            Ok(_) => {}
            Err(Error::NonTerminating(on_cycle)) => report.cycles.push((t, on_cycle)),
            Err(_) => report.cap_breaches.push(t),
        }
    }
    report
}
