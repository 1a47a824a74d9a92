mod common;

use zx_core::rules::{verify_derivation_with, RuleName};
use zx_core::semantics::semantically_equal;
use zx_core::twins::{find_antiphase_twins, merge_all_twins, merge_case, merge_twins, twin_pair, MergeCase};
use zx_core::ZxError;

#[test]
fn planted_twins_merge_soundly() {
    let mut r = common::rng(0x7715);
    let cases = [MergeCase::Fusion, MergeCase::Bialgebra, MergeCase::Hadamard];
    let mut seen = [0usize; 3];
    for i in 0..300 {
        let want = cases[i % 3];
        let (d, u, v) = common::plant(&mut r, want);
        let t = twin_pair(&d, u, v).unwrap_or_else(|| panic!("planted pair missing in {d:?}"));
        assert_eq!(merge_case(&d, &t), want, "{d:?}");
        seen[i % 3] += 1;

        let (out, cert) = merge_twins(&d, &t, true).unwrap_or_else(|e| panic!("{e} on {d:?}"));
        let rep = verify_derivation_with(&cert, true).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.result, out);
        assert!(semantically_equal(&d, &out).unwrap());
        assert!(twin_pair(&out, u, v).is_none());

        let uses_sup = cert.steps.iter().any(|s| s.rule.name == RuleName::SUP);
        match want {
            MergeCase::Fusion => {
                assert!(!uses_sup);
                let (plain, c2) = merge_twins(&d, &t, false).unwrap();
                assert!(verify_derivation_with(&c2, false).unwrap().verdict);
                assert!(semantically_equal(&d, &plain).unwrap());
            }
            _ => {
                assert!(uses_sup);
                assert!(matches!(merge_twins(&d, &t, false), Err(ZxError::FragmentViolation)));
            }
        }
    }
    assert_eq!(seen, [100, 100, 100]);
}

#[test]
fn merging_everything_leaves_no_twins() {
    let mut r = common::rng(0xa11);
    for i in 0..60 {
        let (d, _, _) = common::plant(&mut r, [MergeCase::Fusion, MergeCase::Bialgebra, MergeCase::Hadamard][i % 3]);
        let (out, cert) = merge_all_twins(&d, true).unwrap();
        assert!(find_antiphase_twins(&out).is_empty(), "{out:?}");
        assert!(verify_derivation_with(&cert, true).unwrap().verdict);
        assert!(semantically_equal(&d, &out).unwrap());
    }
}
