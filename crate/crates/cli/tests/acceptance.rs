//! The fifteen acceptance criteria, each run through its `verify-paper`
//! check(s) at full size. Prints one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::io::Write;

use nslen_cli::verify::{checks, find, run_check, Ctx};
use nslen_core::Exec;

const CRITERIA: [(u32, &[&str]); 15] = [
    (1, &["cf-moments"]),
    (2, &["support-bounds"]),
    (3, &["small-support-order-bound"]),
    (4, &["moment-tail-bounds"]),
    (5, &["subdirect-rank"]),
    (6, &["coset-exponent", "coset-exponent-slow"]),
    (7, &["power-coset-identity"]),
    (8, &["constant-coset-values"]),
    (9, &["nonsolvable-length"]),
    (10, &["lambda-exponent-bound"]),
    (11, &["power-transfer"]),
    (12, &["coordinate-decomposition"]),
    (13, &["word-calculus"]),
    (14, &["fiber-exactness"]),
    (15, &["parallel-determinism"]),
];

#[test]
fn every_check_belongs_to_one_criterion() {
    let mapped: Vec<&str> = CRITERIA
        .iter()
        .flat_map(|(_, ids)| ids.iter().copied())
        .collect();
    let unique: BTreeSet<&str> = mapped.iter().copied().collect();
    assert_eq!(unique.len(), mapped.len());
    let all: BTreeSet<&str> = checks().iter().map(|c| c.id).collect();
    assert_eq!(unique, all);
}

#[test]
fn acceptance_criteria() {
    let ctx = Ctx {
        exec: Exec::all_cores(),
        seed: 1,
    };
    let mut log = std::io::stderr().lock();
    let mut failed = Vec::new();
    for (n, ids) in CRITERIA {
        let results: Vec<_> = ids
            .iter()
            .map(|id| run_check(&find(id).expect("known check"), &ctx))
            .collect();
        let pass = results.iter().all(|r| r.passed());
        let detail: Vec<String> = results
            .iter()
            .map(|r| {
                format!(
                    "{} {:.2}s/{}s",
                    r.id,
                    r.runtime_s.unwrap_or(0.0),
                    r.budget_s
                )
            })
            .collect();
        writeln!(
            log,
            "{} criterion {n:>2}: {}",
            if pass { "PASS" } else { "FAIL" },
            detail.join(", ")
        )
        .unwrap();
        if !pass {
            for r in results.iter().filter(|r| !r.passed()) {
                writeln!(
                    log,
                    "    {}: measured {} expected {} {}",
                    r.id,
                    r.measured,
                    r.expected,
                    r.error.as_deref().unwrap_or("")
                )
                .unwrap();
            }
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
