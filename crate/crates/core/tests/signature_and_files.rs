use std::path::PathBuf;

use lpo_core::{
    certify, classify, compute_rk, compute_rk2, gen_ranked_signature, parse_trs, print_trs,
    CertifyOptions, Error, Signature, Sym, Symbol, TrsError,
};
use proptest::prelude::*;

#[test]
fn classification_examples() {
    let sig = Signature::from_chain(&[("0", 0), ("s", 1), ("A", 2)], &["0", "s", "A"]).unwrap();
    let c = classify(&sig).unwrap();
    assert_eq!((c.k, c.m, c.max_arity), (0, 1, 2));
    assert_eq!(c.rk["A"], 2);

    let nat = Signature::from_chain(&[("0", 0), ("s", 1)], &["0", "s"]).unwrap();
    assert_eq!(classify(&nat), Err(Error::DegenerateSignature));

    let cyclic = Signature::from_names(&[("f", 1), ("g", 1)], &[("f", "g"), ("g", "f")]);
    assert!(matches!(cyclic, Err(Error::CyclicPrecedence(_))));
}

#[test]
fn generated_signatures_round_trip() {
    for m in 1..=3 {
        for k in 0..=2 {
            for q in 0..=2 {
                let c = classify(&gen_ranked_signature(m, k, q)).unwrap();
                assert_eq!((c.k, c.m), (k, m), "m={m} k={k} q={q}");
            }
        }
    }
}

fn arb_signature() -> impl Strategy<Value = Signature> {
    (2usize..7)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(0usize..4, n),
                proptest::collection::vec((0..n, 0..n), 0..12),
            )
        })
        .prop_map(|(arities, pairs)| {
            let symbols = arities
                .iter()
                .enumerate()
                .map(|(i, &a)| Symbol::new(format!("f{i}"), a))
                .collect();
            // orient every pair upwards by index so the closure stays acyclic
            let pairs = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (Sym(a.min(b) as u32), Sym(a.max(b) as u32)));
            Signature::new(symbols, pairs).unwrap()
        })
}

proptest! {
    #[test]
    fn ranks_follow_the_precedence(sig in arb_signature()) {
        let rk = compute_rk(&sig);
        let rk2 = compute_rk2(&sig);
        for f in sig.symbols() {
            prop_assert!(rk2[f.index()] <= rk[f.index()]);
            for g in sig.symbols() {
                if sig.prec_less(g, f) {
                    prop_assert!(rk[g.index()] < rk[f.index()]);
                    if sig.arity(g) > 1 {
                        prop_assert!(rk2[g.index()] < rk2[f.index()]);
                    }
                }
            }
        }
    }
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/fixtures")
}

#[test]
fn bundled_fixtures_round_trip() {
    let mut seen = 0;
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let Ok(file) = parse_trs(&text) else { continue };
        let again = parse_trs(&print_trs(&file)).unwrap();
        assert_eq!(again.trs, file.trs, "{}", path.display());
        assert_eq!(
            again.signature.symbols().count(),
            file.signature.symbols().count()
        );
        seen += 1;
    }
    assert!(seen >= 6);
}

#[test]
fn file_errors() {
    assert!(matches!(
        parse_trs("(VAR x)(RULES f(x) -> f(x,x))"),
        Err(TrsError::ArityClash { ref symbol, first: 1, second: 2 }) if symbol == "f"
    ));
    assert_eq!(
        parse_trs("(VAR x y)(RULES f(x) -> y)"),
        Err(TrsError::VariableRight { rule: 1 })
    );
    assert_eq!(
        parse_trs("(VAR x)(RULES x -> f(x))"),
        Err(TrsError::VariableLeft { rule: 1 })
    );
    assert!(matches!(
        parse_trs("(VAR x)(STRATEGY INNERMOST)(RULES f(x) -> x)"),
        Err(TrsError::Parse { .. })
    ));
    let crlf = parse_trs("(VAR x)\r\n(RULES\r\n  s(x) -> x\r\n)\r\n").unwrap();
    assert_eq!(crlf.trs.len(), 1);
}

#[test]
fn ackermann_file_signature() {
    let text = std::fs::read_to_string(fixtures().join("ackermann.trs")).unwrap();
    let file = parse_trs(&text).unwrap();
    assert_eq!(file.trs.len(), 3);
    let mut sig: Vec<(String, usize)> = file
        .signature
        .symbols()
        .map(|f| (file.signature.name(f).to_string(), file.signature.arity(f)))
        .collect();
    sig.sort();
    assert_eq!(
        sig,
        [
            ("0".to_string(), 0),
            ("A".to_string(), 2),
            ("s".to_string(), 1)
        ]
    );
}

#[test]
fn certificate_bound_matches_classification() {
    let text = std::fs::read_to_string(fixtures().join("ackermann.trs")).unwrap();
    let file = parse_trs(&text).unwrap();
    let opts = CertifyOptions {
        curve_max_size: 4,
        ..Default::default()
    };
    let cert = certify("ackermann", &file, None, &opts).unwrap();
    assert!(cert.orientable);
    let order: Vec<Sym> = cert
        .precedence
        .as_ref()
        .unwrap()
        .iter()
        .map(|n| file.signature.sym(n).unwrap())
        .collect();
    let c = classify(&file.signature.with_ascending(&order).unwrap()).unwrap();
    assert_eq!(
        cert.bound_index.as_deref(),
        Some(lpo_core::bound_index(&c).to_string().as_str())
    );
    assert_eq!(cert.p_r, Some(5));
    assert_eq!(cert, certify("ackermann", &file, None, &opts).unwrap());
}
