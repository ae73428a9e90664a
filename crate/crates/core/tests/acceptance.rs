//! End-to-end acceptance run over the default configuration: primes 2, 3, 5,
//! precision 16, degrees -6..=6. Prints one PASS/FAIL line per criterion.

use std::collections::BTreeMap;

use kleinring::linalg::Zpn;
use kleinring::report::{Check, Status};
use kleinring::verify::{run_suite, Settings, DOCUMENTED_DISCREPANCIES};

const PRIMES: [u64; 3] = [2, 3, 5];

/// Criteria that do not hold as stated; see the notes printed next to them.
const KNOWN_FAILING: [(u32, &str); 1] =
    [(6, "negative-degree classes with values in the eigen slot are coboundaries")];

struct Outcome {
    total: usize,
    failed: Vec<String>,
}

fn collect(checks: impl IntoIterator<Item = Check>, ok: impl Fn(&Check) -> bool) -> Outcome {
    let mut total = 0;
    let mut failed = Vec::new();
    for c in checks {
        total += 1;
        if !ok(&c) {
            failed.push(format!("{} [{}] expected {} computed {} {}", c.name, c.status, c.expected, c.computed, c.note));
        }
    }
    Outcome { total, failed }
}

fn suite(name: &str, p: u64) -> Vec<Check> {
    let s = Settings { ring: Zpn::new(p, 16).unwrap(), window: (-6, 6) };
    run_suite(name, &s).unwrap_or_else(|e| panic!("{name} at p={p}: {e}"))
}

fn over_primes(names: &[&str], filter: impl Fn(&Check) -> bool) -> Vec<Check> {
    PRIMES
        .iter()
        .flat_map(|&p| {
            names.iter().flat_map(move |n| suite(n, p)).map(move |mut c| {
                c.note = format!("p={p} {}", c.note).trim_end().to_string();
                c
            })
        })
        .filter(|c| filter(c))
        .collect()
}

fn passes(c: &Check) -> bool {
    c.status == Status::Pass
}

/// `p^2` summands off degree `0` are allowed only where the closed form
/// itself puts `R/xyR`, i.e. at `n = k` on the orbit of `R_pp`.
fn kill_ok(c: &Check) -> bool {
    match c.status {
        Status::Pass => true,
        Status::Fail => false,
        Status::Discrepancy => {
            let Some(rest) = c.name.strip_prefix("kill H^") else { return false };
            let Some((n, lat)) = rest.split_once('(') else { return false };
            lat == format!("R[pp]^{n})") && c.computed == "R/p^2"
        }
    }
}

fn ranks_ok(c: &Check) -> bool {
    if c.name.starts_with("discrepancy series") {
        return c.status == Status::Pass && c.computed == DOCUMENTED_DISCREPANCIES.join(", ");
    }
    c.status == Status::Pass || (c.status == Status::Discrepancy && c.name.starts_with("vector rank"))
}

fn main() {
    let mut results: BTreeMap<u32, Outcome> = BTreeMap::new();
    results.insert(1, collect(over_primes(&["thm2.5"], |c| c.name.starts_with("H^")), passes));
    results.insert(2, collect(over_primes(&["thm2.6"], |_| true), passes));
    results.insert(3, collect(over_primes(&["thm2.5"], |c| c.name.starts_with("H_")), passes));
    let mut c4 = collect(over_primes(&["prop2.2"], |_| true), kill_ok);
    let c4b = collect(over_primes(&["prop2.3"], |_| true), passes);
    c4.total += c4b.total;
    c4.failed.extend(c4b.failed);
    results.insert(4, c4);
    results.insert(5, collect(over_primes(&["shift", "dualities"], |_| true), passes));
    results.insert(6, collect(over_primes(&["thm3.3", "thm3.4"], |_| true), passes));
    results.insert(7, collect(over_primes(&["tubes-les"], |_| true), passes));
    results.insert(8, collect(over_primes(&["structure"], |_| true), passes));
    let c9 = collect(over_primes(&["ranks"], |_| true), ranks_ok);
    let disc = over_primes(&["ranks"], |c| c.status == Status::Discrepancy).len();
    results.insert(9, c9);

    let mut unexpected = Vec::new();
    for (n, o) in &results {
        let pass = o.failed.is_empty();
        let known = KNOWN_FAILING.iter().find(|(k, _)| k == n);
        let mut line = format!("criterion {n}: {} ({} checks, {} failing)", if pass { "PASS" } else { "FAIL" }, o.total, o.failed.len());
        if *n == 9 {
            line += &format!(", {disc} documented discrepancies in series {}", DOCUMENTED_DISCREPANCIES.join(", "));
        }
        if let (false, Some((_, why))) = (pass, known) {
            line += &format!("; known: {why}");
        }
        println!("{line}");
        if !pass && known.is_none() {
            unexpected.push((*n, o.failed.iter().take(5).cloned().collect::<Vec<_>>()));
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:#?}");
        std::process::exit(1);
    }
}
