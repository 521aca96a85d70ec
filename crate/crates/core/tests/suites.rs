//! Every verification suite passes on a small corpus; reports and errors
//! behave as documented.

use hopf_tutte::error::Error;
use hopf_tutte::harness::{
    nine_case_witnesses, run_suite, run_suite_on, Corpus, SuiteReport, SUITES,
};
use hopf_tutte::poly::{c, v};

#[test]
fn each_suite_passes_on_four_elements() {
    let corpus = Corpus::build(4).unwrap();
    for name in SUITES {
        let report = run_suite_on(name, &corpus).unwrap();
        assert!(report.cases > 0, "{name} ran no cases");
        assert!(report.passed(), "{}", report.to_text());
    }
}

#[test]
fn unknown_suite_and_cap() {
    assert!(matches!(run_suite("nope", 3), Err(Error::UnknownSuite(_))));
    assert!(matches!(
        run_suite("anchors", 7),
        Err(Error::CapExceeded { size: 7, cap: 6 })
    ));
}

#[test]
fn reports_are_deterministic() {
    let a = run_suite("duality", 3).unwrap();
    let b = run_suite("duality", 3).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn mismatches_are_recorded_with_both_sides() {
    let mut r = SuiteReport::new("demo");
    r.check("obj", "x = x", Ok(v("x")), Ok(v("x")));
    r.check("obj", "x = y", Ok(v("x")), Ok(v("y")));
    r.check(
        "obj",
        "error side",
        Err(Error::UnboundVariable("q".into())),
        Ok(c(1)),
    );
    assert_eq!(r.cases, 3);
    assert_eq!(r.failures.len(), 2);
    assert_eq!(
        (r.failures[0].lhs.as_str(), r.failures[0].rhs.as_str()),
        ("x", "y")
    );
    assert!(r.failures[1].lhs.starts_with("error"));
    assert!(!r.passed());
}

#[test]
fn nine_cases_have_small_witnesses() {
    let corpus = Corpus::build(2).unwrap();
    let w = nine_case_witnesses(&corpus.delta_matroids);
    assert_eq!(w.len(), 9);
    assert!(w.iter().all(|(_, id)| id.is_some()), "{w:?}");
}
