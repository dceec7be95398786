//! Machine-readable termination and complexity certificates.
//!
//! A certificate records whether a system reduces under an lpo, the
//! precedence that shows it, the `(k, m)` class of the vocabulary, and the
//! index `ω^(1+k)·m` such that the derivation complexity is elementary in
//! `F_(ω^(1+k)·m + q)` for some finite `q`. It also carries the empirical
//! evidence computed here: the approximation level that contains every
//! checked rewrite step and a short prefix of the `dh_R` curve.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::approx::{check_containment, static_p_r};
use crate::error::{Error, Result};
use crate::lpo::{orient, synthesize_precedence};
use crate::ordinal::bound_index;
use crate::rewrite::{dh_complexity_prefix, DEFAULT_STEP_CAP};
use crate::signature::{classify, Signature};
use crate::trs_file::TrsFile;

/// Extra levels tried above `static_p_r` before giving up on containment.
const P_SEARCH_SLACK: u32 = 6;

pub const CONVENTIONS: &str =
    "F_0(n) = n+1, F_(a+1)(n) = (n+1)-fold iterate of F_a at n, F_l(n) = F_(l[n])(n); \
fundamental sequences (b + w^(e+1))[n] = b + w^e*n; \
bound_index is the dominant part of F_(bound_index + q), q finite and not computed; \
dh_R(n) maximises derivation height over ground terms of size <= n; \
p_R starts at max rhs depth + 2 and is confirmed on all ground steps up to containment_checked_to";

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub containment_bound: usize,
    pub curve_max_size: usize,
    pub step_cap: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            containment_bound: 8,
            curve_max_size: 6,
            step_cap: DEFAULT_STEP_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvePoint {
    pub n: usize,
    pub dh: u64,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveSummary {
    pub max_size: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<CurvePoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub system_name: String,
    pub orientable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precedence: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_arity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rk: Option<BTreeMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rk2: Option<BTreeMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_index: Option<String>,
    #[serde(rename = "p_R", skip_serializing_if = "Option::is_none")]
    pub p_r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub containment_checked_to: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSummary>,
    pub conventions: String,
}

impl Certificate {
    fn unoriented(name: &str) -> Self {
        Certificate {
            system_name: name.to_string(),
            orientable: false,
            precedence: None,
            classification_error: None,
            k: None,
            m: None,
            max_arity: None,
            rk: None,
            rk2: None,
            bound_index: None,
            p_r: None,
            containment_checked_to: None,
            curve: None,
            conventions: CONVENTIONS.to_string(),
        }
    }
}

/// Builds the certificate for `file`. With `precedence` the given order is
/// checked; without it one is synthesized.
pub fn certify(
    name: &str,
    file: &TrsFile,
    precedence: Option<&Signature>,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    let (orientation, sig) = match precedence {
        Some(sig) => (orient(&file.trs, sig)?, sig.clone()),
        None => {
            let r = synthesize_precedence(&file.trs, &file.signature)?;
            let sig = match &r.precedence_used {
                Some(order) => file.signature.with_ascending(order)?,
                None => file.signature.clone(),
            };
            (r, sig)
        }
    };
    let mut cert = Certificate::unoriented(name);
    if !orientation.orientable {
        return Ok(cert);
    }
    cert.orientable = true;
    cert.precedence = orientation
        .precedence_used
        .map(|order| order.iter().map(|&f| sig.name(f).to_string()).collect());

    match classify(&sig) {
        Ok(c) => {
            cert.bound_index = Some(bound_index(&c).to_string());
            cert.k = Some(c.k);
            cert.m = Some(c.m);
            cert.max_arity = Some(c.max_arity);
            cert.rk = Some(c.rk);
            cert.rk2 = Some(c.rk2);
        }
        Err(Error::DegenerateSignature) => {
            cert.classification_error = Some(Error::DegenerateSignature.to_string());
        }
        Err(e) => return Err(e),
    }

    let base = static_p_r(&file.trs);
    let confirmed = (base..=base + P_SEARCH_SLACK)
        .find(|&p| check_containment(&file.trs, &sig, p, opts.containment_bound).holds());
    cert.p_r = Some(confirmed.unwrap_or(base));
    cert.containment_checked_to = confirmed.map(|_| opts.containment_bound);

    let (curve, failure) =
        dh_complexity_prefix(&file.trs, &sig, opts.curve_max_size, opts.step_cap);
    cert.curve = Some(CurveSummary {
        max_size: opts.curve_max_size,
        points: curve
            .entries
            .iter()
            .map(|e| CurvePoint {
                n: e.n,
                dh: e.dh,
                witness: e.witness.display(&sig).to_string(),
            })
            .collect(),
        error: failure.map(|e| match e {
            Error::BudgetExceeded {
                budget,
                term: Some(t),
            } => {
                format!("step cap of {budget} exceeded from {}", t.display(&sig))
            }
            Error::NonTerminating(t) => format!(
                "rewriting does not terminate: cycle through {}",
                t.display(&sig)
            ),
            e => e.to_string(),
        }),
    });
    Ok(cert)
}
