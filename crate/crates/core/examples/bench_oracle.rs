use mhg_core::generators;
use mhg_core::hypergraph::Triple;
use mhg_core::oracle::{decide_metric, OracleBudget, MetricityVerdict};
use std::time::Instant;

fn report(name: &str, v: &MetricityVerdict, t: std::time::Duration) {
    match v {
        MetricityVerdict::Nonmetric { branches_explored, reasons, stats } => {
            println!("{name}: Nonmetric branches={branches_explored} in {t:?}");
            println!("  reasons: {reasons:?}");
            println!("  nodes={} float={} exact={}", stats.nodes, stats.float_lp_calls, stats.exact_lp_calls);
        }
        MetricityVerdict::Metric { stats, .. } => {
            println!("{name}: Metric in {t:?} nodes={} float={} exact={}", stats.nodes, stats.float_lp_calls, stats.exact_lp_calls);
        }
        MetricityVerdict::BudgetExceeded { stats } => {
            println!("{name}: BUDGET EXCEEDED nodes={} covered={}", stats.nodes, stats.leaves_covered);
        }
    }
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    let budget = OracleBudget::default();
    if which == "sts9" || which.is_empty() {
        let h = generators::steiner_triple_system(9).unwrap();
        let t = Instant::now();
        let v = decide_metric(&h, &budget).unwrap();
        report("STS9", &v, t.elapsed());
    }
    if which == "n6" || which.is_empty() {
        let h = generators::complete_minus(6, &[Triple::new(0, 1, 2).unwrap()]).unwrap();
        let t = Instant::now();
        let v = decide_metric(&h, &budget).unwrap();
        report("K6-minus-one", &v, t.elapsed());
    }
    if which == "metric" || which.is_empty() {
        for n in [4, 5] {
            let h = generators::complete(n);
            let t = Instant::now();
            let v = decide_metric(&h, &budget).unwrap();
            report(&format!("complete({n})"), &v, t.elapsed());
        }
    }
}
