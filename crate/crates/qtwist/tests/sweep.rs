use std::path::Path;

use qtwist::sweep::{run_sweep, Mode, SweepConfig};
use qtwist::{ingest_corpus, parse_corpus, CurveRecord};

fn shipped() -> Vec<CurveRecord> {
    ingest_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/curves.csv")).unwrap()
}

fn without_timing(mut v: serde_json::Value) -> serde_json::Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn shipped_corpus_loads() {
    let corpus = shipped();
    assert_eq!(corpus.len(), 62);
    assert!(corpus.iter().any(|r| r.label == "11a1"));
}

#[test]
fn report_independent_of_thread_count() {
    let corpus = shipped();
    let cfg = SweepConfig::new(60, Mode::All);
    let one = in_pool(1, || run_sweep(&corpus, &cfg));
    let four = in_pool(4, || run_sweep(&corpus, &cfg));
    assert!(one.passed());
    let a = without_timing(serde_json::to_value(&one).unwrap());
    let b = without_timing(serde_json::to_value(&four).unwrap());
    assert_eq!(a, b);
}

#[test]
fn dmax_one_is_empty() {
    let corpus = shipped();
    let r = run_sweep(&corpus, &SweepConfig::new(1, Mode::All));
    assert_eq!(r.summary.single_instances, 0);
    assert_eq!(r.summary.pair_instances, 0);
    assert!(r.single.is_empty() && r.pairs.is_empty() && r.failures.is_empty());
}

#[test]
fn small_sweep_on_11a1() {
    let corpus = parse_corpus(
        "# label,a1,a2,a3,a4,a6,conductor,rank\n11a1,0,-1,1,-10,-20,11,0\n",
        "inline",
    )
    .unwrap();
    let r = run_sweep(&corpus, &SweepConfig::new(20, Mode::Thm13));
    let ds: Vec<&str> = r.single.iter().map(|s| s.d.as_str()).collect();
    assert_eq!(ds, ["5", "8", "12", "13", "17"]);
    assert!(r.passed());
    assert_eq!(r.summary.pair_instances, 0);
}
