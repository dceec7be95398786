//! Reference implementations used only by the tests. Each one follows the
//! textbook definition as literally as possible and shares no code with the
//! library beyond the `Term` type.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use lpo_core::{Signature, Term};

/// A strict relation on a finite, subterm-closed set of ground terms,
/// computed as the least fixed point of its defining clauses.
pub struct Relation {
    index: HashMap<Term, usize>,
    holds: Vec<Vec<bool>>,
}

impl Relation {
    pub fn get(&self, s: &Term, t: &Term) -> bool {
        self.holds[self.index[s]][self.index[t]]
    }

    fn fixpoint(
        universe: &[Term],
        step: impl Fn(&Term, &Term, &dyn Fn(&Term, &Term) -> bool) -> bool,
    ) -> Self {
        let index: HashMap<Term, usize> = universe
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        for t in universe {
            for a in t.args() {
                assert!(
                    index.contains_key(a),
                    "universe must be closed under subterms"
                );
            }
        }
        let n = universe.len();
        let mut holds = vec![vec![false; n]; n];
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    if holds[i][j] {
                        continue;
                    }
                    let known = |a: &Term, b: &Term| holds[index[a]][index[b]];
                    if step(&universe[i], &universe[j], &known) {
                        holds[i][j] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Relation { index, holds };
            }
        }
    }
}

/// `<lpo` by its three clauses: a subterm is below, a smaller head with all
/// arguments below, or the same head with lexicographically smaller
/// arguments all below.
pub fn lpo_relation(universe: &[Term], sig: &Signature) -> Relation {
    Relation::fixpoint(universe, |s, t, less| {
        let (f, ts) = match t {
            Term::App(f, ts) => (*f, ts),
            Term::Var(_) => return false,
        };
        if ts.iter().any(|ti| ti == s || less(s, ti)) {
            return true;
        }
        let (g, ss) = match s {
            Term::App(g, ss) => (*g, ss),
            Term::Var(_) => return false,
        };
        let all_below = ss.iter().all(|sj| less(sj, t));
        if sig.prec_less(g, f) {
            return all_below;
        }
        if g == f {
            for (a, b) in ss.iter().zip(ts.iter()) {
                if a != b {
                    return less(a, b) && all_below;
                }
            }
        }
        false
    })
}

/// `<0, <1, ..., <max_p` over the universe.
pub fn approx_relations(universe: &[Term], sig: &Signature, max_p: u32) -> Vec<Relation> {
    let mut levels: Vec<Relation> = vec![Relation::fixpoint(universe, |_, _, _| false)];
    for _ in 1..=max_p {
        let prev = levels.last().expect("level 0 exists");
        let next = Relation::fixpoint(universe, |s, t, less| {
            let (f, ts) = match t {
                Term::App(f, ts) => (*f, ts),
                Term::Var(_) => return false,
            };
            if ts.iter().any(|ti| ti == s || less(s, ti)) {
                return true;
            }
            let (g, ss) = match s {
                Term::App(g, ss) => (*g, ss),
                Term::Var(_) => return false,
            };
            if sig.prec_less(g, f) {
                return ss.iter().all(|sj| prev.get(sj, t));
            }
            if g == f {
                for i in 0..ss.len() {
                    if ss[i] != ts[i] {
                        return less(&ss[i], &ts[i])
                            && ss[i + 1..].iter().all(|sj| prev.get(sj, t));
                    }
                }
            }
            false
        });
        levels.push(next);
    }
    levels
}

/// Ground terms of depth at most `d` (constants have depth 0), built level
/// by level from the symbol table.
pub fn terms_to_depth(sig: &Signature, d: usize) -> Vec<Term> {
    let mut all: BTreeSet<Term> = BTreeSet::new();
    for _ in 0..=d {
        let current: Vec<Term> = all.iter().cloned().collect();
        for f in sig.symbols() {
            let arity = sig.arity(f);
            let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
            for _ in 0..arity {
                tuples = tuples
                    .into_iter()
                    .flat_map(|prefix| {
                        current.iter().map(move |a| {
                            let mut v = prefix.clone();
                            v.push(a.clone());
                            v
                        })
                    })
                    .collect();
            }
            for args in tuples {
                all.insert(Term::app(f, args));
            }
        }
    }
    all.into_iter().collect()
}

pub fn depth(t: &Term) -> usize {
    t.args().iter().map(|a| depth(a) + 1).max().unwrap_or(0)
}

pub fn size(t: &Term) -> usize {
    1 + t.args().iter().map(size).sum::<usize>()
}

/// Ground terms of size at most `n`: grow every term by one symbol at a time
/// and keep the results that fit.
pub fn terms_to_size(sig: &Signature, n: usize) -> Vec<Term> {
    let mut all: BTreeSet<Term> = BTreeSet::new();
    loop {
        let current: Vec<Term> = all.iter().cloned().collect();
        let before = all.len();
        for f in sig.symbols() {
            let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
            for _ in 0..sig.arity(f) {
                tuples = tuples
                    .into_iter()
                    .flat_map(|prefix| {
                        let used: usize = prefix.iter().map(size).sum();
                        current
                            .iter()
                            .filter(move |a| used + size(a) < n)
                            .map(move |a| {
                                let mut v = prefix.clone();
                                v.push(a.clone());
                                v
                            })
                    })
                    .collect();
            }
            for args in tuples {
                all.insert(Term::app(f, args));
            }
        }
        if all.len() == before {
            return all.into_iter().collect();
        }
    }
}

fn positions(t: &Term) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for (i, a) in t.args().iter().enumerate() {
        for mut p in positions(a) {
            p.insert(0, i);
            out.push(p);
        }
    }
    out
}

fn at<'a>(t: &'a Term, pos: &[usize]) -> &'a Term {
    pos.iter().fold(t, |u, &i| &u.args()[i])
}

fn replace(t: &Term, pos: &[usize], by: &Term) -> Term {
    match pos.split_first() {
        None => by.clone(),
        Some((&i, rest)) => {
            let mut args = t.args().to_vec();
            args[i] = replace(&args[i], rest, by);
            Term::app(t.head().expect("positions stay inside applications"), args)
        }
    }
}

fn matches(pattern: &Term, t: &Term, binding: &mut BTreeMap<String, Term>) -> bool {
    match pattern {
        Term::Var(x) => match binding.get(&**x) {
            Some(b) => b == t,
            None => {
                binding.insert(x.to_string(), t.clone());
                true
            }
        },
        Term::App(f, ps) => {
            t.head() == Some(*f)
                && ps.len() == t.args().len()
                && ps.iter().zip(t.args()).all(|(p, a)| matches(p, a, binding))
        }
    }
}

fn instantiate(t: &Term, binding: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(x) => binding[&**x].clone(),
        Term::App(f, args) => Term::app(*f, args.iter().map(|a| instantiate(a, binding)).collect()),
    }
}

/// Every one-step reduct, by enumerating positions and trying each rule.
pub fn one_step(t: &Term, rules: &[(Term, Term)]) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    for pos in positions(t) {
        let u = at(t, &pos);
        for (l, r) in rules {
            let mut binding = BTreeMap::new();
            if matches(l, u, &mut binding) {
                out.insert(replace(t, &pos, &instantiate(r, &binding)));
            }
        }
    }
    out
}

/// Longest rewrite sequence by plain recursion, without memoization.
pub fn naive_dh(t: &Term, rules: &[(Term, Term)]) -> u64 {
    one_step(t, rules)
        .iter()
        .map(|s| 1 + naive_dh(s, rules))
        .max()
        .unwrap_or(0)
}

/// Ordinals below ω^ω as `(exponent, coefficient)` pairs, exponents strictly
/// decreasing, coefficients positive.
pub type Cnf = Vec<(u32, u64)>;

/// `(β + ω^(e+1)·c)[n] = β + ω^(e+1)·(c-1) + ω^e·n`.
pub fn fund(alpha: &Cnf, n: u64) -> Cnf {
    let mut out = alpha.clone();
    let (e, c) = out.pop().expect("a limit is non-zero");
    assert!(e >= 1, "not a limit");
    if c > 1 {
        out.push((e, c - 1));
    }
    if n > 0 {
        out.push((e - 1, n));
    }
    out
}

fn pred(alpha: &Cnf) -> Cnf {
    let mut out = alpha.clone();
    let (e, c) = out.pop().expect("a successor is non-zero");
    assert_eq!(e, 0, "not a successor");
    if c > 1 {
        out.push((0, c - 1));
    }
    out
}

fn is_successor(alpha: &Cnf) -> bool {
    alpha.last().is_some_and(|&(e, _)| e == 0)
}

/// F by its defining clauses; `None` once a value passes `limit`.
pub fn fast(alpha: &Cnf, n: u128, limit: u128) -> Option<u128> {
    if n > limit {
        return None;
    }
    if alpha.is_empty() {
        return Some(n + 1);
    }
    if is_successor(alpha) {
        let beta = pred(alpha);
        let mut x = n;
        for _ in 0..=n {
            x = fast(&beta, x, limit)?;
        }
        return Some(x);
    }
    fast(&fund(alpha, n as u64), n, limit)
}

/// G by its defining clauses.
pub fn slow(alpha: &Cnf, n: u64) -> u64 {
    if alpha.is_empty() {
        return 0;
    }
    if is_successor(alpha) {
        return slow(&pred(alpha), n) + 1;
    }
    slow(&fund(alpha, n), n)
}

/// All CNFs with exponents ≤ 2 and coefficients ≤ 3.
pub fn small_family() -> Vec<Cnf> {
    let mut out = Vec::new();
    for c2 in 0..=3u64 {
        for c1 in 0..=3u64 {
            for c0 in 0..=3u64 {
                out.push(
                    [(2, c2), (1, c1), (0, c0)]
                        .into_iter()
                        .filter(|&(_, c)| c > 0)
                        .collect(),
                );
            }
        }
    }
    out
}
