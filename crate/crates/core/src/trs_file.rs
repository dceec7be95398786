//! Reader and printer for `.trs` files:
//!
//! ```text
//! (VAR x y)
//! (SIG 0 0 d 2)
//! (RULES
//!   A(0,y) -> s(y)
//!   A(s(x),0) -> A(x,s(0))
//! )
//! ```
//!
//! `VAR` declares variables, the optional `SIG` section declares extra
//! symbols as `name arity` pairs, and every other identifier in `RULES` is a
//! function symbol whose arity is inferred from its uses.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::rewrite::{Rule, Trs};
use crate::signature::{Signature, Symbol};
use crate::term::{Sym, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrsError {
    #[error("{line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("symbol `{symbol}` used with arity {first} and {second}")]
    ArityClash {
        symbol: String,
        first: usize,
        second: usize,
    },

    #[error("rule {rule}: right-hand side has variables not in the left-hand side")]
    VariableRight { rule: usize },

    #[error("rule {rule}: left-hand side is a variable")]
    VariableLeft { rule: usize },
}

type Result<T> = std::result::Result<T, TrsError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrsFile {
    pub vars: Vec<String>,
    pub trs: Trs,
    /// Inferred symbols; the precedence is empty.
    pub signature: Signature,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Arrow,
    Ident(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        let push = |out: &mut Vec<Spanned>, tok| {
            out.push(Spanned {
                tok,
                line: l,
                col: k,
            })
        };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                push(&mut out, Tok::Open);
            }
            ')' => {
                chars.next();
                push(&mut out, Tok::Close);
            }
            ',' => {
                chars.next();
                push(&mut out, Tok::Comma);
            }
            '-' => {
                chars.next();
                if chars.peek() != Some(&'>') {
                    return Err(TrsError::Parse {
                        line: l,
                        col: k,
                        message: "expected `->`".into(),
                    });
                }
                chars.next();
                col += 1;
                push(&mut out, Tok::Arrow);
            }
            c if is_ident_char(c) => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if !is_ident_char(d) {
                        break;
                    }
                    name.push(d);
                    chars.next();
                }
                col += name.chars().count() - 1;
                push(&mut out, Tok::Ident(name));
            }
            other => {
                return Err(TrsError::Parse {
                    line: l,
                    col: k,
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
        col += 1;
    }
    Ok(out)
}

/// Raw term before symbols are resolved.
#[derive(Debug, Clone)]
struct Raw {
    name: String,
    args: Option<Vec<Raw>>,
    line: usize,
    col: usize,
}

struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(TrsError::Parse {
            line,
            col,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize)> {
        let (line, col) = self.here();
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok((name, line, col))
            }
            _ => self.error("expected an identifier"),
        }
    }

    fn term(&mut self) -> Result<Raw> {
        let (name, line, col) = self.ident()?;
        if self.peek() != Some(&Tok::Open) {
            return Ok(Raw {
                name,
                args: None,
                line,
                col,
            });
        }
        self.pos += 1;
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::Close) {
            self.pos += 1;
            return Ok(Raw {
                name,
                args: Some(args),
                line,
                col,
            });
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::Close) => {
                    self.pos += 1;
                    break;
                }
                _ => return self.error("expected `,` or `)`"),
            }
        }
        Ok(Raw {
            name,
            args: Some(args),
            line,
            col,
        })
    }
}

/// Collects symbols and their arities, in order of first appearance.
#[derive(Default)]
struct SymbolTable {
    order: Vec<Symbol>,
    index: HashMap<String, usize>,
}

impl SymbolTable {
    fn declare(&mut self, name: &str, arity: usize) -> Result<Sym> {
        match self.index.get(name) {
            Some(&i) if self.order[i].arity != arity => Err(TrsError::ArityClash {
                symbol: name.to_string(),
                first: self.order[i].arity,
                second: arity,
            }),
            Some(&i) => Ok(Sym(i as u32)),
            None => {
                self.index.insert(name.to_string(), self.order.len());
                self.order.push(Symbol::new(name, arity));
                Ok(Sym(self.order.len() as u32 - 1))
            }
        }
    }

    fn resolve(&mut self, raw: &Raw, vars: &BTreeSet<String>) -> Result<Term> {
        if vars.contains(&raw.name) {
            if raw.args.is_some() {
                return Err(TrsError::Parse {
                    line: raw.line,
                    col: raw.col,
                    message: format!("variable `{}` applied to arguments", raw.name),
                });
            }
            return Ok(Term::var(&raw.name));
        }
        let args = raw.args.as_deref().unwrap_or(&[]);
        let sym = self.declare(&raw.name, args.len())?;
        let args = args
            .iter()
            .map(|a| self.resolve(a, vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(Term::app(sym, args))
    }
}

pub fn parse_trs(text: &str) -> Result<TrsFile> {
    let toks = lex(text)?;
    let last_line = text.lines().count().max(1);
    let last_col = text
        .lines()
        .last()
        .map(|l| l.chars().count() + 1)
        .unwrap_or(1);
    let mut cur = Cursor {
        toks,
        pos: 0,
        end: (last_line, last_col),
    };

    let mut vars: Vec<String> = Vec::new();
    let mut sig_decls: Vec<(String, usize, usize, usize)> = Vec::new();
    let mut raw_rules: Vec<(Raw, Raw)> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();

    while cur.peek().is_some() {
        cur.expect(Tok::Open, "`(`")?;
        let (section, line, col) = cur.ident()?;
        if !seen.insert(section.clone()) {
            return Err(TrsError::Parse {
                line,
                col,
                message: format!("duplicate section `{section}`"),
            });
        }
        match section.as_str() {
            "VAR" => {
                while let Some(Tok::Ident(_)) = cur.peek() {
                    vars.push(cur.ident()?.0);
                }
            }
            "SIG" => {
                while let Some(Tok::Ident(_)) = cur.peek() {
                    let (name, l, c) = cur.ident()?;
                    let (arity, al, ac) = cur.ident()?;
                    let arity = arity.parse::<usize>().map_err(|_| TrsError::Parse {
                        line: al,
                        col: ac,
                        message: format!("expected an arity for `{name}`"),
                    })?;
                    sig_decls.push((name, arity, l, c));
                }
            }
            "RULES" => {
                while let Some(Tok::Ident(_)) = cur.peek() {
                    let lhs = cur.term()?;
                    cur.expect(Tok::Arrow, "`->`")?;
                    let rhs = cur.term()?;
                    raw_rules.push((lhs, rhs));
                }
            }
            other => {
                return Err(TrsError::Parse {
                    line,
                    col,
                    message: format!("unsupported section `{other}`"),
                });
            }
        }
        cur.expect(Tok::Close, "`)`")?;
    }

    let var_set: BTreeSet<String> = vars.iter().cloned().collect();
    let mut table = SymbolTable::default();
    for (name, arity, line, col) in &sig_decls {
        if var_set.contains(name) {
            return Err(TrsError::Parse {
                line: *line,
                col: *col,
                message: format!("`{name}` declared both as variable and symbol"),
            });
        }
        table.declare(name, *arity)?;
    }
    let mut rules = Vec::new();
    for (i, (lhs, rhs)) in raw_rules.iter().enumerate() {
        let lhs = table.resolve(lhs, &var_set)?;
        let rhs = table.resolve(rhs, &var_set)?;
        if lhs.is_var() {
            return Err(TrsError::VariableLeft { rule: i + 1 });
        }
        if !rhs.vars().is_subset(&lhs.vars()) {
            return Err(TrsError::VariableRight { rule: i + 1 });
        }
        rules.push(Rule { lhs, rhs });
    }
    let signature =
        Signature::new(table.order, []).expect("names are unique and the precedence is empty");
    Ok(TrsFile {
        vars,
        trs: Trs::new(rules),
        signature,
    })
}

/// Parses a single term against a known signature. Identifiers that are not
/// symbols of `sig` and carry no arguments are read as variables.
pub fn parse_term_with(sig: &Signature, text: &str) -> Result<Term> {
    let toks = lex(text)?;
    let mut cur = Cursor {
        toks,
        pos: 0,
        end: (1, text.chars().count() + 1),
    };
    let raw = cur.term()?;
    if cur.peek().is_some() {
        return cur.error("trailing input after term");
    }
    resolve_known(sig, &raw)
}

fn resolve_known(sig: &Signature, raw: &Raw) -> Result<Term> {
    match (sig.sym(&raw.name), &raw.args) {
        (None, None) => Ok(Term::var(&raw.name)),
        (None, Some(_)) => Err(TrsError::Parse {
            line: raw.line,
            col: raw.col,
            message: format!("unknown symbol `{}`", raw.name),
        }),
        (Some(f), args) => {
            let args = args.as_deref().unwrap_or(&[]);
            if args.len() != sig.arity(f) {
                return Err(TrsError::ArityClash {
                    symbol: raw.name.clone(),
                    first: sig.arity(f),
                    second: args.len(),
                });
            }
            let args = args
                .iter()
                .map(|a| resolve_known(sig, a))
                .collect::<Result<Vec<_>>>()?;
            Ok(Term::app(f, args))
        }
    }
}

/// Prints a file in the format accepted by [`parse_trs`]. Symbols that do
/// not occur in any rule go to a `SIG` section.
pub fn print_trs(file: &TrsFile) -> String {
    let sig = &file.signature;
    let mut out = String::new();
    if !file.vars.is_empty() {
        let _ = writeln!(out, "(VAR {})", file.vars.join(" "));
    }
    let used: BTreeSet<Sym> = file
        .trs
        .rules()
        .iter()
        .flat_map(|r| r.lhs.symbols().into_iter().chain(r.rhs.symbols()))
        .collect();
    let unused: Vec<String> = sig
        .symbols()
        .filter(|f| !used.contains(f))
        .map(|f| format!("{} {}", sig.name(f), sig.arity(f)))
        .collect();
    if !unused.is_empty() {
        let _ = writeln!(out, "(SIG {})", unused.join(" "));
    }
    out.push_str("(RULES\n");
    for r in file.trs.rules() {
        let _ = writeln!(out, "  {} -> {}", r.lhs.display(sig), r.rhs.display(sig));
    }
    out.push_str(")\n");
    out
}
