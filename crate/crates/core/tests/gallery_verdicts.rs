use std::time::Instant;

use roundsleek::checkers::{check_round, check_sleek, replay_witness, CheckVerdict, Verdict};
use roundsleek::gallery::{gallery, Expected, GalleryEntry};
use roundsleek::ToleranceConfig;

fn judge(entry: &GalleryEntry, expected: Expected, run: fn(&dyn roundsleek::Metric, &ToleranceConfig) -> CheckVerdict, what: &str) -> Vec<String> {
    let mut problems = Vec::new();
    // the acceptance suite sweeps seeds 0..5 for stated verdicts; this adds fresh ones
    let seeds: &[u64] = if expected == Expected::Unverified { &[0, 1] } else { &[11] };
    for &seed in seeds {
        let cfg = ToleranceConfig::default().with_seed(seed).with_budget(500);
        let v = run(&*entry.space, &cfg);
        match expected {
            Expected::False => {
                if v.verdict != Verdict::Violated {
                    problems.push(format!("{} {what} seed {seed}: expected violation, got {:?}", entry.name, v.verdict));
                } else if !replay_witness(&*entry.space, v.witness.as_ref().unwrap(), &cfg) {
                    problems.push(format!("{} {what} seed {seed}: witness does not replay", entry.name));
                }
            }
            Expected::True => {
                if !v.holds() {
                    problems.push(format!("{} {what} seed {seed}: expected to hold, got {:?} {:?}", entry.name, v.verdict, v.witness));
                }
            }
            Expected::Unverified => {
                if v.verdict == Verdict::Violated && !replay_witness(&*entry.space, v.witness.as_ref().unwrap(), &cfg) {
                    problems.push(format!("{} {what} seed {seed}: unreplayable witness", entry.name));
                }
            }
        }
    }
    problems
}

#[test]
fn gallery_expectations_hold_on_fresh_seeds() {
    let mut problems = Vec::new();
    let mut stated = 0;
    for entry in gallery().unwrap() {
        let t = Instant::now();
        if entry.expected_round != Expected::Unverified || entry.expected_sleek != Expected::Unverified {
            stated += 1;
        }
        problems.extend(judge(&entry, entry.expected_round, check_round, "round"));
        problems.extend(judge(&entry, entry.expected_sleek, check_sleek, "sleek"));
        eprintln!("{:<20} {:?}", entry.name, t.elapsed());
    }
    assert!(stated >= 12);
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}
