//! One PASS/FAIL line per acceptance criterion.
//!
//! Run with `cargo test -p tangle --test acceptance -- --nocapture` to see the lines.

use tangle::corpus;
use tangle::suites::{self, SuiteConfig, SuiteResult};

struct Criterion {
    number: usize,
    title: &'static str,
    run: fn(&SuiteConfig) -> SuiteResult,
    /// Extra size requirement on top of the suite passing.
    enough: fn(&SuiteResult) -> Result<(), String>,
}

fn at_least(r: &SuiteResult, n: usize) -> Result<(), String> {
    if r.passed + r.failed >= n {
        Ok(())
    } else {
        Err(format!("only {} cases, need {n}", r.passed + r.failed))
    }
}

fn classical_corpus_size(_: &SuiteResult) -> Result<(), String> {
    let c: Vec<_> = corpus::classical().into_iter().filter(|e| e.crossings() <= 6).collect();
    if c.len() < 50 {
        return Err(format!("classical corpus has {} diagrams", c.len()));
    }
    if c.iter().all(|e| e.file.is_single_colored()) {
        return Err("classical corpus has no multi-colored diagram".into());
    }
    Ok(())
}

fn singular_corpus_size(_: &SuiteResult) -> Result<(), String> {
    let n = corpus::singular()
        .iter()
        .filter(|e| (1..=3).contains(&e.vertices()) && e.crossings() <= 5)
        .count();
    if n >= 30 {
        Ok(())
    } else {
        Err(format!("singular corpus has {n} diagrams"))
    }
}

const CRITERIA: [Criterion; 8] = [
    Criterion { number: 1, title: "axiom values", run: suites::axioms, enough: |_| Ok(()) },
    Criterion { number: 2, title: "relation identities", run: suites::relations, enough: |r| at_least(r, 200) },
    Criterion { number: 3, title: "extended Reidemeister invariance", run: suites::moves, enough: |r| at_least(r, 501) },
    Criterion { number: 4, title: "engine agreement", run: suites::engine_agreement, enough: classical_corpus_size },
    Criterion { number: 5, title: "graph calculus confluence", run: suites::confluence, enough: |_| Ok(()) },
    Criterion { number: 6, title: "HOMFLY-PT specialization", run: suites::homfly, enough: |_| Ok(()) },
    Criterion { number: 7, title: "singular path independence", run: suites::singular_paths, enough: singular_corpus_size },
    Criterion { number: 8, title: "range in Q(x, t, w)", run: suites::t_range, enough: |_| Ok(()) },
];

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let results: Vec<(usize, &str, SuiteResult, Result<(), String>)> = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|c| {
                let cfg = &cfg;
                s.spawn(move || {
                    let r = (c.run)(cfg);
                    let size = (c.enough)(&r);
                    (c.number, c.title, r, size)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    let mut failed = Vec::new();
    for (n, title, r, size) in &results {
        let pass = r.ok() && size.is_ok();
        println!(
            "criterion {n}: {} ({title}: {} passed, {} failed)",
            if pass { "PASS" } else { "FAIL" },
            r.passed,
            r.failed
        );
        if let Err(e) = size {
            println!("  {e}");
        }
        for f in &r.failures {
            println!("  {}: {}", f.case, f.detail);
        }
        if !pass {
            failed.push(*n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
