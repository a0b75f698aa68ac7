use std::time::Instant;
use svoa::gkm::*;
fn main() {
    let t0 = Instant::now();
    let report = denominator_check(&default_r(), 6).unwrap();
    println!("roots={} lhs_terms={} rhs_terms={} mismatches={} elapsed={:?}",
        report.num_roots, report.lhs_terms, report.rhs_terms,
        report.mismatches.len(), t0.elapsed());
    for (v, a, b) in report.mismatches.iter().take(5) {
        println!("  {:?}: lhs {} rhs {}", v.0, a, b);
    }
}
