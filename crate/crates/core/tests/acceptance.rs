//! Acceptance criteria: one PASS/FAIL line per criterion, nonzero exit on
//! any failure.

use std::process::ExitCode;

use hopf_tutte::harness::{
    nine_case_witnesses, proper_edge_colourings, run_suite_on, Corpus, SuiteReport,
};
use hopf_tutte::ribbon::named;

fn suites(corpus: &Corpus, names: &[&str]) -> SuiteReport {
    let mut report = SuiteReport::new(&names.join("+"));
    for name in names {
        report.merge(run_suite_on(name, corpus).expect("known suite"));
    }
    report
}

fn main() -> ExitCode {
    let corpus = Corpus::build(6).expect("corpus builds");
    let mut extra: Vec<(usize, bool, String)> = Vec::new();

    let colourings = proper_edge_colourings(&named::theta().underlying_graph(), 3);
    extra.push((
        8,
        colourings == 6,
        format!("theta has {colourings} edge 3-colourings"),
    ));
    let witnesses = nine_case_witnesses(&corpus.delta_matroids);
    let missing = witnesses.iter().filter(|(_, w)| w.is_none()).count();
    extra.push((
        11,
        witnesses.len() == 9 && missing == 0,
        format!("{missing} of 9 cases lack a witness"),
    ));

    let criteria: [(usize, &str, &[&str]); 11] = [
        (1, "engine agreement", &["engines"]),
        (2, "classical anchors", &["anchors"]),
        (3, "perspective specialization chain", &["specialization"]),
        (4, "duality", &["duality"]),
        (5, "convolutions", &["convolution"]),
        (6, "functor squares", &["ribbon-square", "morphisms"]),
        (7, "uniformity detector", &["uniformity"]),
        (8, "Penrose", &["penrose"]),
        (9, "Krushkal", &["krushkal"]),
        (10, "universality", &["universality"]),
        (11, "nine-case coverage", &["nine-case"]),
    ];

    let mut all_ok = true;
    for (n, title, names) in criteria {
        let report = suites(&corpus, names);
        let extras: Vec<&(usize, bool, String)> =
            extra.iter().filter(|(k, _, _)| *k == n).collect();
        let ok = report.passed() && report.cases > 0 && extras.iter().all(|(_, ok, _)| *ok);
        all_ok &= ok;
        println!(
            "{} criterion {n}: {title} ({} cases, {} failures)",
            if ok { "PASS" } else { "FAIL" },
            report.cases,
            report.failures.len()
        );
        for f in report.failures.iter().take(5) {
            println!("    {} [{}]: {} ≠ {}", f.object, f.identity, f.lhs, f.rhs);
        }
        for (_, ok, note) in extras {
            if !ok {
                println!("    {note}");
            }
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
