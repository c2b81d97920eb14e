//! The acceptance criteria, one line per criterion.

use nsp_cli::suite::{default_corpus, run, SuiteOptions};
use nsp_cli::with_big_stack;

#[test]
fn acceptance() {
    let results = with_big_stack(|| run(&SuiteOptions { corpus: default_corpus(), seed: 0, only: None }));
    assert_eq!(results.len(), 10);
    for r in &results {
        println!("{r}  [{:.2?}]", r.elapsed);
    }
    let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.to_string()).collect();
    assert!(failed.is_empty(), "failing criteria:\n{}", failed.join("\n"));
}
