//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs as a plain binary (`harness = false`) so the summary lines are always
//! printed: `cargo test -p propb-core --test acceptance`.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use propb::alteration::{
    balanced_probability, expected_proper_upper_bound, mono_probability, rational_to_f64,
    run_alteration, AlterationParams,
};
use propb::analysis::{is_edge_critical, verify_paper_example};
use propb::colouring::{enumerate_proper, is_proper, is_two_colourable, monochromatic_edges};
use propb::{constructions, io, DyadicValue, Hypergraph};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn dyadic(n: u32, e: u32) -> DyadicValue {
    DyadicValue::new(n.into(), e)
}

/// Brute-force proper-colouring count over all masks, with no pruning or
/// symmetry, kept apart from the library's enumerator.
fn independent_count(h: &Hypergraph) -> u64 {
    let masks: Vec<u64> = h
        .edges()
        .iter()
        .map(|e| e.mask().expect("v < 64"))
        .collect();
    (0..1u64 << h.vertex_count())
        .filter(|&c| masks.iter().all(|&e| c & e != 0 && c & e != e))
        .count() as u64
}

fn random_hypergraph(rng: &mut ChaCha8Rng, max_v: usize) -> Hypergraph {
    let v = rng.gen_range(2..=max_v);
    let m = rng.gen_range(0..=3 * v);
    let edges: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            let size = rng.gen_range(2..=v.min(6));
            rand::seq::index::sample(rng, v, size).into_vec()
        })
        .collect();
    Hypergraph::new(v, edges).expect("sampled edges are valid")
}

fn c1_verify_paper() -> Outcome {
    let report = verify_paper_example();
    ensure!(
        report.checks().len() == 10,
        "expected 10 checks, got {}",
        report.checks().len()
    );
    for c in report.checks() {
        ensure!(
            c.pass,
            "{} failed: expected {}, got {}",
            c.name,
            c.expected,
            c.actual
        );
    }
    ensure!(
        report.get("q") == Some("95/2^6"),
        "q = {:?}",
        report.get("q")
    );
    Ok("10/10 checks, q = 95/2^6".into())
}

fn c2_named_constructions() -> Outcome {
    let cases = [
        ("triangle", constructions::triangle(), dyadic(3, 2), 3),
        ("fano", constructions::fano(), dyadic(7, 3), 7),
        (
            "seymour-toft",
            constructions::seymour_toft(),
            dyadic(23, 4),
            23,
        ),
    ];
    for (name, h, q, edges) in &cases {
        ensure!(h.q_value() == *q, "{name}: q = {}", h.q_value());
        ensure!(h.edge_count() == *edges, "{name}: {} edges", h.edge_count());
        let count = enumerate_proper(h, false)
            .map_err(|e| e.to_string())?
            .total_proper;
        ensure!(
            count == BigUint::from(0u32),
            "{name}: {count} proper colourings"
        );
    }
    for (name, h) in [
        ("triangle", constructions::triangle()),
        ("fano", constructions::fano()),
    ] {
        let c = is_edge_critical(&h).map_err(|e| e.to_string())?;
        ensure!(c.critical, "{name}: removable edge {:?}", c.removable);
        for i in 0..h.edge_count() {
            let count = enumerate_proper(&h.without_edge(i), false)
                .unwrap()
                .total_proper;
            ensure!(
                count > BigUint::from(0u32),
                "{name}: deleting edge {i} stays uncolourable"
            );
        }
    }
    Ok("q = 3/4, 7/8, 23/16; all uncolourable; triangle and Fano edge-critical".into())
}

fn c3_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let (mut colourable, mut uncolourable) = (0, 0);
    for i in 0..500 {
        let h = random_hypergraph(&mut rng, 14);
        let count = enumerate_proper(&h, false)
            .map_err(|e| e.to_string())?
            .total_proper;
        let oracle = independent_count(&h);
        ensure!(
            count == BigUint::from(oracle),
            "instance {i}: engine {count} vs brute force {oracle}"
        );
        let d = is_two_colourable(&h);
        ensure!(
            d.colourable() == (oracle > 0),
            "instance {i}: decision {} vs count {oracle}",
            d.colourable()
        );
        if let Some(w) = &d.witness {
            ensure!(
                is_proper(&h, w).unwrap(),
                "instance {i}: witness {w} not proper"
            );
            colourable += 1;
        } else {
            uncolourable += 1;
        }
    }
    ensure!(
        uncolourable > 0 && colourable > 0,
        "degenerate sample: {colourable}/{uncolourable}"
    );
    Ok(format!(
        "500 instances agree ({colourable} colourable, {uncolourable} not)"
    ))
}

fn c4_convexity() -> Outcome {
    let mut comparisons = 0u64;
    for v in (2..=40u64).step_by(2) {
        for n in 1..=v {
            let q = balanced_probability(v, n).map_err(|e| e.to_string())?;
            for v1 in 0..=v {
                let p = mono_probability(v1, v - v1, n).map_err(|e| e.to_string())?;
                ensure!(p >= q, "v={v} n={n} v1={v1}: p = {p} < q = {q}");
                comparisons += 1;
            }
        }
    }
    Ok(format!("{comparisons} exact comparisons"))
}

fn c5_alteration() -> Outcome {
    let seeds: Vec<u64> = (0..20).map(|i| 1000 + 7 * i).collect();
    let mut runs = 0;
    for n in 2..=6u64 {
        for &seed in &seeds {
            let params = AlterationParams::new(n, seed, 0, false).map_err(|e| e.to_string())?;
            let out = run_alteration(&params).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            ensure!(
                independent_count(&out.hypergraph) == 0,
                "n={n} seed={seed}: output is 2-colourable"
            );
            ensure!(
                out.report.verified_uncolourable,
                "n={n} seed={seed}: report disagrees"
            );
            for (c, e) in &out.killed {
                let mono = monochromatic_edges(&out.hypergraph, c).unwrap();
                ensure!(
                    mono.contains(e),
                    "n={n} seed={seed}: {e} not monochromatic under {c}"
                );
            }
            ensure!(
                out.report.q_h1 == out.h1.q_value(),
                "n={n} seed={seed}: q_h1 mismatch"
            );
            ensure!(
                out.report.q_h2 == out.h2.q_value(),
                "n={n} seed={seed}: q_h2 mismatch"
            );
            ensure!(
                out.report.q_total == out.hypergraph.q_value(),
                "n={n} seed={seed}: q_total mismatch"
            );
            runs += 1;
        }
    }
    let mut max_retries_used = 0;
    for &seed in &seeds {
        let params = AlterationParams::new(4, seed, 50, true).map_err(|e| e.to_string())?;
        let out = run_alteration(&params).map_err(|e| format!("strict n=4 seed={seed}: {e}"))?;
        ensure!(
            out.report.survivor_count <= BigUint::from(16u32),
            "strict n=4 seed={seed}: {} survivors",
            out.report.survivor_count
        );
        ensure!(
            out.report.q_h2 <= dyadic(1, 0),
            "strict n=4 seed={seed}: q_h2 = {}",
            out.report.q_h2
        );
        ensure!(
            out.report.q_h1 <= dyadic(61, 4),
            "strict n=4 seed={seed}: q_h1 = {}",
            out.report.q_h1
        );
        ensure!(
            independent_count(&out.hypergraph) == 0,
            "strict n=4 seed={seed}: colourable"
        );
        max_retries_used = max_retries_used.max(out.report.retries_used);
    }
    Ok(format!(
        "{runs} runs uncolourable; strict n=4 within threshold 16 for 20 seeds (max retries used {max_retries_used})"
    ))
}

fn c6_exact_vs_asymptotic() -> Outcome {
    let deviation = |n: u64| -> Result<f64, String> {
        let q = balanced_probability(n * n / 2, n).map_err(|e| e.to_string())?;
        Ok((rational_to_f64(&q) * std::f64::consts::E * 2f64.powi(n as i32) / 2.0 - 1.0).abs())
    };
    for n in (10..=40u64).step_by(2) {
        let d = deviation(n)?;
        ensure!(d <= 0.2, "n={n}: deviation {d}");
    }
    let (d10, d40) = (deviation(10)?, deviation(40)?);
    ensure!(
        d40 < d10,
        "deviation at 40 ({d40}) not below deviation at 10 ({d10})"
    );
    Ok(format!(
        "max over even n in [10,40] ≤ 0.2; n=10: {d10:.4}, n=40: {d40:.4}"
    ))
}

fn c7_expectation_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for i in 0..1000 {
        let v = 2 * rng.gen_range(2..=100u64);
        let n = rng.gen_range(2..=v / 2);
        let m = rng.gen_range(1..=1_000_000u64);
        let b = expected_proper_upper_bound(v, n, m).map_err(|e| e.to_string())?;
        ensure!(b.q > 0.0, "triple {i} ({v},{n},{m}): q = 0");
        ensure!(
            b.log2_gap > 0.0 && b.log2_first <= b.log2_second,
            "triple {i} ({v},{n},{m}): first {} vs second {} (gap {})",
            b.log2_first,
            b.log2_second,
            b.log2_gap
        );
    }
    Ok("1000 triples: 2^v(1-q)^m < e^(v ln2 - qm)".into())
}

fn c8_determinism_round_trip() -> Outcome {
    for n in 2..=6u64 {
        for seed in [1u64, 77, 4242] {
            let p = AlterationParams::new(n, seed, 50, true).map_err(|e| e.to_string())?;
            let a = run_alteration(&p).map_err(|e| e.to_string())?;
            let b = run_alteration(&p).map_err(|e| e.to_string())?;
            ensure!(
                io::serialize(&a.hypergraph) == io::serialize(&b.hypergraph),
                "n={n} seed={seed}: different hypergraphs"
            );
            ensure!(a.report == b.report, "n={n} seed={seed}: different reports");
        }
    }
    for name in constructions::CONSTRUCTION_NAMES {
        let h = constructions::by_name(name).map_err(|e| e.to_string())?;
        let text = io::serialize(&h);
        ensure!(
            io::parse(&text).map_err(|e| e.to_string())? == h,
            "{name} does not round-trip"
        );
        ensure!(
            text == io::serialize(&constructions::by_name(name).unwrap()),
            "{name} not stable"
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for i in 0..500 {
        let h = random_hypergraph(&mut rng, 30);
        ensure!(
            io::parse(&io::serialize(&h)).unwrap() == h,
            "random hypergraph {i} does not round-trip"
        );
    }
    Ok("alteration reproducible; 6 constructions + 500 random hypergraphs round-trip".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "verify-paper: all 10 checks",
            budget: Duration::from_secs(2),
            run: c1_verify_paper,
        },
        Criterion {
            id: 2,
            name: "named constructions",
            budget: Duration::from_secs(1),
            run: c2_named_constructions,
        },
        Criterion {
            id: 3,
            name: "decision vs enumeration oracle",
            budget: Duration::from_secs(30),
            run: c3_oracle_equivalence,
        },
        Criterion {
            id: 4,
            name: "convexity p >= q",
            budget: Duration::from_secs(10),
            run: c4_convexity,
        },
        Criterion {
            id: 5,
            name: "alteration correctness",
            budget: Duration::from_secs(60),
            run: c5_alteration,
        },
        Criterion {
            id: 6,
            name: "exact vs asymptotic q",
            budget: Duration::from_secs(5),
            run: c6_exact_vs_asymptotic,
        },
        Criterion {
            id: 7,
            name: "expectation bound sanity",
            budget: Duration::from_secs(1),
            run: c7_expectation_bound,
        },
        Criterion {
            id: 8,
            name: "determinism and round-trip",
            budget: Duration::from_secs(5),
            run: c8_determinism_round_trip,
        },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.budget => {
                Err(format!("{detail}; took {elapsed:?}, budget {:?}", c.budget))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS [{}] {} ({:.2?}): {}", c.id, c.name, elapsed, detail),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {} ({:.2?}): {}", c.id, c.name, elapsed, why);
            }
        }
    }
    println!(
        "acceptance: {} passed, {} failed",
        criteria.len() - failed,
        failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
