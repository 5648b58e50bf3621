//! Runs both verification pipelines on the small cases and prints a
//! condensed summary of their reports.

use braidmono::theorems::{verify_pipeline_bp, verify_pipeline_plane};
use braidmono::RunConfig;

fn main() {
    let run = RunConfig::default();
    for (n, k) in [(1usize, 2usize), (2, 2), (2, 3), (3, 2)] {
        let t0 = std::time::Instant::now();
        match verify_pipeline_bp(n, k, &run) {
            Ok(rep) => {
                println!("bp({n},{k}): passed={} in {:.2?}", rep.passed(), t0.elapsed());
                println!("  verdicts: {:?}", rep.verdicts);
                println!("  convention: {}", rep.matched_convention);
                for line in &rep.congruence {
                    println!("  {line}");
                }
                for t in &rep.tracked {
                    println!(
                        "  {:<10} word [{}] exp {} (expected {}) perm {} stabilizes={}",
                        t.label,
                        t.word.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "),
                        t.expsum,
                        t.expected_expsum,
                        t.perm,
                        t.stabilizes
                    );
                }
            }
            Err(e) => println!("bp({n},{k}): error: {e}"),
        }
    }
    for d in [2usize, 3] {
        let t0 = std::time::Instant::now();
        match verify_pipeline_plane(d, &run) {
            Ok(rep) => {
                println!("plane(d={d}): passed={} in {:.2?}", rep.passed(), t0.elapsed());
                println!("  verdicts: {:?}", rep.verdicts);
                for t in &rep.tracked {
                    println!(
                        "  {:<8} exp {} -> normalized {} (target {}), clause-iv match {:?}",
                        t.label,
                        t.expsum,
                        t.normalized_expsum,
                        rep.item_iv_expsum,
                        t.matches_item_iv
                    );
                }
            }
            Err(e) => println!("plane(d={d}): error: {e}"),
        }
    }
}
