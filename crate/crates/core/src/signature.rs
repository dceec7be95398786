//! Signatures, precedences and the rank-based classification of a vocabulary.
//!
//! A vocabulary is classified by two numbers: `k`, where `2 + k` is the
//! maximal arity, and `m`, one more than the largest `rk2` among symbols of
//! arity above one. `rk` is the height of a symbol in the precedence and
//! `rk2` the same height counted only through symbols of arity above one.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::term::{Sym, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            arity,
        }
    }
}

/// A finite set of symbols with a strict partial order (the precedence).
///
/// The precedence is stored transitively closed as a dense matrix:
/// `below[f][g]` holds iff `g < f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<Symbol>,
    index: HashMap<String, Sym>,
    below: Vec<Vec<bool>>,
}

impl Signature {
    /// Builds a signature from symbols and generating pairs `(g, f)` meaning
    /// `g < f`. The pairs are transitively closed before irreflexivity is
    /// checked.
    pub fn new(symbols: Vec<Symbol>, pairs: impl IntoIterator<Item = (Sym, Sym)>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if s.name.is_empty() {
                return Err(Error::UnknownSymbol(String::new()));
            }
            if index.insert(s.name.clone(), Sym(i as u32)).is_some() {
                return Err(Error::DuplicateSymbol(s.name.clone()));
            }
        }
        let n = symbols.len();
        let mut below = vec![vec![false; n]; n];
        for (g, f) in pairs {
            if g.index() >= n || f.index() >= n {
                return Err(Error::UnknownSymbol(format!(
                    "#{}",
                    g.index().max(f.index())
                )));
            }
            below[f.index()][g.index()] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if below[i][k] {
                    let row = below[k].clone();
                    for (cell, &via) in below[i].iter_mut().zip(&row) {
                        *cell |= via;
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| below[i][i]) {
            return Err(Error::CyclicPrecedence(symbols[i].name.clone()));
        }
        Ok(Signature {
            symbols,
            index,
            below,
        })
    }

    /// Symbols given as `(name, arity)`; precedence pairs given by name as
    /// `(smaller, larger)`.
    pub fn from_names(symbols: &[(&str, usize)], pairs: &[(&str, &str)]) -> Result<Self> {
        let syms: Vec<Symbol> = symbols.iter().map(|&(n, a)| Symbol::new(n, a)).collect();
        let lookup = |name: &str| {
            symbols
                .iter()
                .position(|&(n, _)| n == name)
                .map(|i| Sym(i as u32))
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
        };
        let pairs = pairs
            .iter()
            .map(|&(g, f)| Ok((lookup(g)?, lookup(f)?)))
            .collect::<Result<Vec<_>>>()?;
        Signature::new(syms, pairs)
    }

    /// Symbols plus a chain `c0 < c1 < ...` given by name.
    pub fn from_chain(symbols: &[(&str, usize)], chain: &[&str]) -> Result<Self> {
        let pairs: Vec<(&str, &str)> = chain.windows(2).map(|w| (w[0], w[1])).collect();
        Signature::from_names(symbols, &pairs)
    }

    /// Same symbols, new precedence.
    pub fn with_precedence(&self, pairs: impl IntoIterator<Item = (Sym, Sym)>) -> Result<Self> {
        Signature::new(self.symbols.clone(), pairs)
    }

    /// Same symbols, precedence given by an ascending list (a total order on
    /// the listed symbols).
    pub fn with_ascending(&self, order: &[Sym]) -> Result<Self> {
        self.with_precedence(order.windows(2).map(|w| (w[0], w[1])))
    }

    /// Same symbols, empty precedence.
    pub fn unordered(&self) -> Self {
        let n = self.symbols.len();
        Signature {
            symbols: self.symbols.clone(),
            index: self.index.clone(),
            below: vec![vec![false; n]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.symbols.len() as u32).map(Sym)
    }

    pub fn symbol(&self, f: Sym) -> &Symbol {
        &self.symbols[f.index()]
    }

    pub fn name(&self, f: Sym) -> &str {
        &self.symbols[f.index()].name
    }

    pub fn arity(&self, f: Sym) -> usize {
        self.symbols[f.index()].arity
    }

    pub fn sym(&self, name: &str) -> Option<Sym> {
        self.index.get(name).copied()
    }

    /// `g < f` in the precedence.
    pub fn prec_less(&self, g: Sym, f: Sym) -> bool {
        self.below[f.index()][g.index()]
    }

    /// All pairs `(g, f)` with `g < f`, in index order.
    pub fn precedence_pairs(&self) -> Vec<(Sym, Sym)> {
        let mut out = Vec::new();
        for f in self.symbols() {
            for g in self.symbols() {
                if self.prec_less(g, f) {
                    out.push((g, f));
                }
            }
        }
        out
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    /// Symbols ordered by name.
    pub fn by_name(&self) -> Vec<Sym> {
        let mut v: Vec<Sym> = self.symbols().collect();
        v.sort_by(|a, b| self.name(*a).cmp(self.name(*b)));
        v
    }

    /// A deterministic linear extension of the precedence, ascending.
    /// Among the currently minimal symbols the one with the smallest name is
    /// taken first.
    pub fn linear_extension(&self) -> Vec<Sym> {
        let mut placed = vec![false; self.len()];
        let mut out = Vec::with_capacity(self.len());
        let names = self.by_name();
        while out.len() < self.len() {
            let next = names
                .iter()
                .copied()
                .find(|&f| {
                    !placed[f.index()]
                        && self
                            .symbols()
                            .all(|g| placed[g.index()] || !self.prec_less(g, f))
                })
                .expect("precedence is acyclic");
            placed[next.index()] = true;
            out.push(next);
        }
        out
    }

    /// Checks that every symbol occurrence in `t` exists in this signature
    /// with matching arity.
    pub fn check_term(&self, t: &Term) -> Result<()> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                if f.index() >= self.len() {
                    return Err(Error::SymbolMismatch(format!("#{}", f.index())));
                }
                if self.arity(*f) != args.len() {
                    return Err(Error::SymbolMismatch(format!(
                        "{} applied to {} arguments, arity {}",
                        self.name(*f),
                        args.len(),
                        self.arity(*f)
                    )));
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    /// Parses a term written with this signature's symbol names. Identifiers
    /// that are not symbols become variables.
    pub fn parse_term(&self, text: &str) -> std::result::Result<Term, crate::trs_file::TrsError> {
        crate::trs_file::parse_term_with(self, text)
    }
}

/// Output of [`classify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub k: usize,
    pub m: usize,
    pub max_arity: usize,
    pub rk: BTreeMap<String, usize>,
    pub rk2: BTreeMap<String, usize>,
}

/// `rk(f) = max{rk(g) + 1 : g < f}`, with the empty maximum taken as 0.
pub fn compute_rk(sig: &Signature) -> Vec<usize> {
    ranks(sig, |_| true)
}

/// `rk2(f) = max{rk2(g) + 1 : g < f, ar(g) > 1}`, empty maximum 0.
pub fn compute_rk2(sig: &Signature) -> Vec<usize> {
    ranks(sig, |g| sig.arity(g) > 1)
}

fn ranks(sig: &Signature, counts: impl Fn(Sym) -> bool) -> Vec<usize> {
    // The precedence is transitively closed, so processing in a linear
    // extension sees every predecessor first.
    let mut rank = vec![0usize; sig.len()];
    for f in sig.linear_extension() {
        rank[f.index()] = sig
            .symbols()
            .filter(|&g| sig.prec_less(g, f) && counts(g))
            .map(|g| rank[g.index()] + 1)
            .max()
            .unwrap_or(0);
    }
    rank
}

pub fn classify(sig: &Signature) -> Result<Classification> {
    let rk = compute_rk(sig);
    let rk2 = compute_rk2(sig);
    let m = sig
        .symbols()
        .filter(|&f| sig.arity(f) > 1)
        .map(|f| rk2[f.index()] + 1)
        .max()
        .ok_or(Error::DegenerateSignature)?;
    let max_arity = sig.max_arity();
    let named = |v: &[usize]| {
        sig.symbols()
            .map(|f| (sig.name(f).to_string(), v[f.index()]))
            .collect()
    };
    Ok(Classification {
        k: max_arity - 2,
        m,
        max_arity,
        rk: named(&rk),
        rk2: named(&rk2),
    })
}

/// The vocabulary `{0, S} ∪ {A_p : p < m} ∪ {f_q : q < Q}` with
/// `ar(A_p) = 2 + k`, `ar(f_q) = 1`, ordered by the chain
/// `0 < S < A_0 < ... < A_{m-1} < f_0 < ... < f_{Q-1}`.
pub fn gen_ranked_signature(m: usize, k: usize, q: usize) -> Signature {
    assert!(m >= 1, "need at least one A_p symbol");
    let mut symbols = vec![Symbol::new("0", 0), Symbol::new("S", 1)];
    symbols.extend((0..m).map(|p| Symbol::new(format!("A{p}"), 2 + k)));
    symbols.extend((0..q).map(|i| Symbol::new(format!("f{i}"), 1)));
    let n = symbols.len() as u32;
    Signature::new(symbols, (1..n).map(|i| (Sym(i - 1), Sym(i)))).expect("chain is a strict order")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain5() -> Signature {
        Signature::from_chain(
            &[("0", 0), ("S", 1), ("A0", 3), ("A1", 3), ("f0", 1)],
            &["0", "S", "A0", "A1", "f0"],
        )
        .unwrap()
    }

    fn rank_of(sig: &Signature, ranks: &[usize], name: &str) -> usize {
        ranks[sig.sym(name).unwrap().index()]
    }

    #[test]
    fn rk_along_chain() {
        let sig = chain5();
        let rk = compute_rk(&sig);
        assert_eq!(rank_of(&sig, &rk, "0"), 0);
        assert_eq!(rank_of(&sig, &rk, "f0"), 4);
    }

    #[test]
    fn rk2_counts_only_wide_symbols() {
        let sig = chain5();
        let rk2 = compute_rk2(&sig);
        assert_eq!(rank_of(&sig, &rk2, "0"), 0);
        assert_eq!(rank_of(&sig, &rk2, "A0"), 0);
        assert_eq!(rank_of(&sig, &rk2, "A1"), 1);
        assert_eq!(rank_of(&sig, &rk2, "f0"), 2);
    }

    #[test]
    fn empty_precedence_ranks_are_zero() {
        let sig = Signature::from_names(&[("a", 0), ("g", 1), ("h", 2)], &[]).unwrap();
        assert!(compute_rk(&sig).iter().all(|&r| r == 0));
        assert!(compute_rk2(&sig).iter().all(|&r| r == 0));
    }

    #[test]
    fn unary_only_rk2_is_zero() {
        let sig = Signature::from_chain(&[("0", 0), ("s", 1), ("g", 1)], &["0", "s", "g"]).unwrap();
        assert!(compute_rk2(&sig).iter().all(|&r| r == 0));
        assert_eq!(classify(&sig), Err(Error::DegenerateSignature));
    }

    #[test]
    fn classify_single_binary() {
        let sig = Signature::from_names(&[("f", 2)], &[]).unwrap();
        let c = classify(&sig).unwrap();
        assert_eq!((c.k, c.m, c.max_arity), (0, 1, 2));
    }

    #[test]
    fn degenerate_nat() {
        let sig = Signature::from_chain(&[("0", 0), ("s", 1)], &["0", "s"]).unwrap();
        assert_eq!(classify(&sig), Err(Error::DegenerateSignature));
    }

    #[test]
    fn ranked_signature_shapes() {
        let sig = gen_ranked_signature(1, 0, 0);
        let got: Vec<(String, usize)> = sig
            .symbols()
            .map(|f| (sig.name(f).to_string(), sig.arity(f)))
            .collect();
        assert_eq!(
            got,
            vec![("0".into(), 0), ("S".into(), 1), ("A0".into(), 2)]
        );

        let sig = gen_ranked_signature(2, 1, 1);
        assert_eq!(sig.len(), 5);
        assert_eq!(sig.max_arity(), 3);
        let c = classify(&sig).unwrap();
        assert_eq!((c.k, c.m), (1, 2));
        // transitive closure of the chain
        assert!(sig.prec_less(sig.sym("0").unwrap(), sig.sym("f0").unwrap()));
    }

    #[test]
    fn cyclic_precedence_rejected() {
        let err = Signature::from_names(
            &[("f", 1), ("g", 1), ("h", 1)],
            &[("f", "g"), ("g", "h"), ("h", "f")],
        );
        assert!(matches!(err, Err(Error::CyclicPrecedence(_))));
        let err = Signature::from_names(&[("f", 1)], &[("f", "f")]);
        assert!(matches!(err, Err(Error::CyclicPrecedence(_))));
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = Signature::from_names(&[("f", 1), ("f", 2)], &[]);
        assert_eq!(err, Err(Error::DuplicateSymbol("f".into())));
    }

    #[test]
    fn linear_extension_respects_order() {
        let sig = Signature::from_names(&[("c", 0), ("b", 1), ("a", 2)], &[("c", "a")]).unwrap();
        let names: Vec<&str> = sig
            .linear_extension()
            .iter()
            .map(|&f| sig.name(f))
            .collect();
        assert_eq!(names, vec!["b", "c", "a"]);
    }
}
