mod common;

use common::*;
use trsiso::deciders::{decide_any, verify_witness, Relation};

#[test]
fn strictness_rows() {
    for (row, yes, no) in STRICTNESS {
        let (a, b) = strictness_pair(row);
        let yes: Relation = yes.parse().unwrap();
        let no: Relation = no.parse().unwrap();
        let d = decide_any(&a, &b, yes).unwrap_or_else(|e| panic!("row {row} {yes}: {e}"));
        assert!(d.is_iso(), "row {row}: expected {yes}, trail {:?}", d.trail);
        assert!(verify_witness(&a, &b, yes, d.witness.as_ref().unwrap()).unwrap());
        let d = decide_any(&a, &b, no).unwrap_or_else(|e| panic!("row {row} {no}: {e}"));
        assert!(!d.is_iso(), "row {row}: expected not {no}");
    }
}

#[test]
fn worked_example_claims() {
    for (x, y, r, holds) in EXAMPLE_CLAIMS {
        let (a, b) = (example(x), example(y));
        let r: Relation = r.parse().unwrap();
        let d = decide_any(&a, &b, r).unwrap_or_else(|e| panic!("{x} {r} {y}: {e}"));
        assert_eq!(d.is_iso(), holds, "{x} {r} {y}: {:?}", d.trail);
        if let Some(w) = &d.witness {
            assert!(verify_witness(&a, &b, r, w).unwrap());
        }
    }
}

#[test]
fn claims_that_cannot_hold() {
    // Unary g against binary g: no renaming exists.
    let d = decide_any(&example("trs07"), &example("trs11"), Relation::Lve).unwrap();
    assert!(!d.is_iso());
    let d = decide_any(&example("trs07"), &example("trs12"), Relation::Lfe).unwrap();
    assert!(!d.is_iso());
    // The second rule of trs11 swaps the arguments of h relative to its lhs.
    let d = decide_any(&example("trs09"), &example("trs11"), Relation::Lve).unwrap();
    assert!(!d.is_iso());
}

#[test]
fn mirrored_constants_never_equivalent() {
    let (a, b) = (example("trs20"), example("trs21"));
    for r in [Relation::Ge, Relation::Gve, Relation::Gfe] {
        assert!(!decide_any(&a, &b, r).unwrap().is_iso(), "{r}");
    }
}

#[test]
fn generalised_examples() {
    let d = decide_any(&example("trs18"), &example("trs19"), Relation::LfeG).unwrap();
    assert!(d.is_iso());
    let d = decide_any(&example("trs13"), &example("trs14"), Relation::LfeG).unwrap();
    assert!(d.is_iso(), "{:?}", d.trail);
    // Without generalisation the symbol counts differ.
    assert!(!decide_any(&example("trs18"), &example("trs19"), Relation::Lfe).unwrap().is_iso());
}
