//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use eightvertex::report::{Report, Suite};
use eightvertex::suites::{self, Config};
use std::process::ExitCode;
use std::time::{Duration, Instant};

struct Criterion {
    label: &'static str,
    suite: &'static str,
    limit: Option<Duration>,
}

const CRITERIA: [Criterion; 7] = [
    Criterion { label: "polynomial tables", suite: "tables", limit: Some(Duration::from_secs(60)) },
    Criterion { label: "exact divisibility", suite: "divisibility", limit: None },
    Criterion { label: "ground state", suite: "groundstate", limit: Some(Duration::from_secs(120)) },
    Criterion { label: "partition function", suite: "partition", limit: None },
    Criterion { label: "closed-form web", suite: "closedforms", limit: None },
    Criterion { label: "analytic equations", suite: "analytics", limit: None },
    Criterion { label: "limits", suite: "limits", limit: None },
];

fn summary(s: &Suite) -> String {
    let failed: Vec<String> = s.failures().take(3).map(|c| c.name.clone()).collect();
    if failed.is_empty() {
        format!("{} checks", s.checks.len())
    } else {
        format!("{} of {} checks failed, e.g. {}", s.failures().count(), s.checks.len(), failed.join("; "))
    }
}

fn main() -> ExitCode {
    let cfg = Config::default();
    let start = Instant::now();
    let mut all_ok = true;
    let mut first = Vec::new();
    for (k, c) in CRITERIA.iter().enumerate() {
        let t = Instant::now();
        let s = suites::run_named(c.suite, &cfg).expect("known suite");
        let took = t.elapsed();
        let in_time = c.limit.is_none_or(|l| took < l);
        let ok = s.passed && in_time;
        all_ok &= ok;
        let limit = c.limit.map(|l| format!(", limit {}s", l.as_secs())).unwrap_or_default();
        println!("{} criterion {}: {} ({}; {:.1}s{limit})", if ok { "PASS" } else { "FAIL" }, k + 1, c.label, summary(&s), took.as_secs_f64());
        for n in &s.notes {
            println!("    {n}");
        }
        first.push(s);
    }
    let a = Report::new(cfg.seed, first).to_json();
    let b = suites::all(&cfg).to_json();
    let total = start.elapsed();
    let ok = a == b && total < Duration::from_secs(600);
    all_ok &= ok;
    println!(
        "{} criterion 8: reproducibility (two runs {}, {} bytes; total {:.1}s, limit 600s)",
        if ok { "PASS" } else { "FAIL" },
        if a == b { "byte-identical" } else { "differ" },
        a.len(),
        total.as_secs_f64()
    );
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
