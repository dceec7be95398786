//! First-order terms over a fixed signature.
//!
//! Function symbols are referred to by [`Sym`], an index into the owning
//! [`Signature`]. Arguments are shared behind an `Arc` so that the large term
//! sets built by predecessor enumeration and rewriting reuse subterms instead
//! of copying them.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::signature::Signature;

/// Index of a function symbol inside its signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(pub u32);

impl Sym {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Arc<str>),
    App(Sym, Arc<[Term]>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn app(sym: Sym, args: Vec<Term>) -> Term {
        Term::App(sym, Arc::from(args))
    }

    pub fn constant(sym: Sym) -> Term {
        Term::App(sym, Arc::from(Vec::new()))
    }

    pub fn head(&self) -> Option<Sym> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(*f),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Nesting depth; constants and variables have depth 0.
    pub fn depth(&self) -> usize {
        self.args().iter().map(|a| a.depth() + 1).max().unwrap_or(0)
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    /// All subterms, including the term itself.
    pub fn subterms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        self.collect_subterms(&mut out);
        out
    }

    fn collect_subterms(&self, out: &mut BTreeSet<Term>) {
        if out.insert(self.clone()) {
            for a in self.args() {
                a.collect_subterms(out);
            }
        }
    }

    /// Subterms other than the term itself.
    pub fn proper_subterms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        for a in self.args() {
            a.collect_subterms(&mut out);
        }
        out
    }

    pub fn contains(&self, needle: &Term) -> bool {
        self == needle || self.args().iter().any(|a| a.contains(needle))
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Symbols occurring in the term.
    pub fn symbols(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Sym>) {
        if let Term::App(f, args) = self {
            out.insert(*f);
            args.iter().for_each(|a| a.collect_symbols(out));
        }
    }

    /// Copy of `self` with the argument at `index` replaced.
    pub fn with_arg(&self, index: usize, arg: Term) -> Term {
        match self {
            Term::Var(_) => panic!("variables have no arguments"),
            Term::App(f, args) => {
                let mut v = args.to_vec();
                v[index] = arg;
                Term::app(*f, v)
            }
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> TermDisplay<'a> {
        TermDisplay { term: self, sig }
    }
}

/// Renders a term with the symbol names of a signature, e.g. `f(0,s(0))`.
pub struct TermDisplay<'a> {
    term: &'a Term,
    sig: &'a Signature,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(x) => write!(f, "{x}"),
            Term::App(sym, args) => {
                write!(f, "{}", self.sig.name(*sym))?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", a.display(self.sig))?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

/// Compares terms by symbol name in pre-order. Variables sort before
/// applications.
pub fn name_cmp(a: &Term, b: &Term, sig: &Signature) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => x.cmp(y),
        (Term::Var(_), Term::App(..)) => Ordering::Less,
        (Term::App(..), Term::Var(_)) => Ordering::Greater,
        (Term::App(f, fa), Term::App(g, ga)) => sig
            .name(*f)
            .cmp(sig.name(*g))
            .then_with(|| {
                fa.iter()
                    .zip(ga.iter())
                    .map(|(x, y)| name_cmp(x, y, sig))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| fa.len().cmp(&ga.len())),
    }
}

/// Order used for reported term lists: smaller size first, then by name.
pub fn size_then_name(a: &Term, b: &Term, sig: &Signature) -> std::cmp::Ordering {
    a.size().cmp(&b.size()).then_with(|| name_cmp(a, b, sig))
}

/// Order used for witnesses: smaller depth first, then by name.
pub fn depth_then_name(a: &Term, b: &Term, sig: &Signature) -> std::cmp::Ordering {
    a.depth().cmp(&b.depth()).then_with(|| name_cmp(a, b, sig))
}

/// Ground terms grouped by exact size: entry `i` holds the terms of size `i`
/// (entry 0 is always empty).
pub fn ground_terms_by_size(sig: &Signature, max_size: usize) -> Vec<Vec<Term>> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    for n in 1..=max_size {
        let mut level = Vec::new();
        for sym in sig.symbols() {
            let arity = sig.arity(sym);
            if arity == 0 {
                if n == 1 {
                    level.push(Term::constant(sym));
                }
                continue;
            }
            if n < arity + 1 {
                continue;
            }
            for sizes in compositions(n - 1, arity) {
                let pools: Vec<&Vec<Term>> = sizes.iter().map(|&s| &by_size[s]).collect();
                if pools.iter().any(|p| p.is_empty()) {
                    continue;
                }
                for args in pools.iter().map(|p| p.iter()).multi_cartesian_product() {
                    level.push(Term::app(sym, args.into_iter().cloned().collect()));
                }
            }
        }
        by_size[n] = level;
    }
    by_size
}

/// All ground terms of size at most `max_size`, smallest first.
pub fn ground_terms_up_to_size(sig: &Signature, max_size: usize) -> Vec<Term> {
    ground_terms_by_size(sig, max_size)
        .into_iter()
        .flatten()
        .collect()
}

/// All ground terms of depth at most `max_depth`, shallowest first.
pub fn ground_terms_up_to_depth(sig: &Signature, max_depth: usize) -> Vec<Term> {
    let mut levels: Vec<Vec<Term>> = Vec::new();
    let constants: Vec<Term> = sig
        .symbols()
        .filter(|&f| sig.arity(f) == 0)
        .map(Term::constant)
        .collect();
    levels.push(constants);
    for d in 1..=max_depth {
        let below: Vec<Term> = levels.iter().flatten().cloned().collect();
        let mut level = Vec::new();
        for sym in sig.symbols() {
            let arity = sig.arity(sym);
            if arity == 0 {
                continue;
            }
            for args in (0..arity).map(|_| below.iter()).multi_cartesian_product() {
                if args.iter().any(|a| a.depth() == d - 1) {
                    level.push(Term::app(sym, args.into_iter().cloned().collect()));
                }
            }
        }
        levels.push(level);
    }
    levels.into_iter().flatten().collect()
}

/// Ordered ways of writing `total` as a sum of `parts` positive integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        if total - first < parts - 1 {
            break;
        }
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
