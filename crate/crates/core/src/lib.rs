//! Termination analysis with the lexicographic path order.
//!
//! * [`term`], [`signature`]: terms, precedences, and the `(k, m)` rank
//!   classification of a vocabulary.
//! * [`lpo`]: deciding `<lpo`, orienting rules, synthesizing precedences.
//! * [`approx`]: the finite approximations `<p`, predecessor sets and
//!   well-founded heights.
//! * [`rewrite`]: one-step rewriting, derivation heights and `dh_R(n)`.
//! * [`ordinal`]: ordinals below ω^ω and the fast/slow-growing hierarchies.
//! * [`trs_file`], [`certificate`]: file format and certificates.
//!
//! Batch operations run on rayon when the `parallel` feature is enabled
//! (the default) and sequentially otherwise; results are identical.

pub mod approx;
pub mod certificate;
pub mod error;
pub mod lpo;
pub mod ordinal;
mod par;
pub mod rewrite;
pub mod signature;
pub mod term;
pub mod trs_file;

pub use approx::{
    approx_less, check_containment, predecessors, static_p_r, wp_height, wp_height_at_least,
    ContainmentReport, PredecessorSet, Predecessors, WpHeights,
};
pub use certificate::{certify, Certificate, CertifyOptions};
pub use error::{Error, Result};
pub use lpo::{lex_less, lpo_less, orient, synthesize_precedence, OrientationResult};
pub use ordinal::{bound_index, fast_f, fund_seq, ord_cmp, slow_g, OrdinalCnf};
pub use par::is_parallel;
pub use rewrite::{
    check_ground_termination, dh_complexity, dh_complexity_prefix, dh_term, successors,
    ComplexityCurve, DerivationHeights, Rule, TerminationReport, Trs,
};
pub use signature::{
    classify, compute_rk, compute_rk2, gen_ranked_signature, Classification, Signature, Symbol,
};
pub use term::{Sym, Term};
pub use trs_file::{parse_trs, print_trs, TrsError, TrsFile};
