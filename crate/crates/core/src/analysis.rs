//! Design checking, edge-criticality probes, and the full verification of the
//! 16-vertex example.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::colouring::{is_two_colourable, pair_opposites, Enumerator};
use crate::constructions::{affine_plane_gf4, derive_h8};
use crate::dyadic::{binomial, BigCount, DyadicValue};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};
use crate::report::RunReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignCheckResult {
    pub t: usize,
    pub point_count: usize,
    pub block_count: usize,
    pub block_size: usize,
    /// Common number of blocks through every t-subset, if it is constant.
    pub lambda: Option<BigCount>,
    /// First t-subset (lexicographic) whose count differs from the first one's.
    pub counterexample: Option<Vec<usize>>,
}

impl DesignCheckResult {
    /// `b·C(k,t) = C(v,t)·λ` when λ exists.
    pub fn identity_holds(&self) -> bool {
        match &self.lambda {
            Some(lambda) => {
                BigUint::from(self.block_count) * binomial(self.block_size as u64, self.t as u64)
                    == binomial(self.point_count as u64, self.t as u64) * lambda
            }
            None => true,
        }
    }
}

/// Counts the blocks through every t-subset of `0..point_count`.
pub fn design_check(
    blocks: &[Vec<usize>],
    point_count: usize,
    t: usize,
) -> Result<DesignCheckResult> {
    let Some(first) = blocks.first() else {
        return Err(Error::Design("no blocks".into()));
    };
    let block_size = first.len();
    if let Some(b) = blocks.iter().find(|b| b.len() != block_size) {
        return Err(Error::Design(format!(
            "mixed block sizes: {} and {}",
            block_size,
            b.len()
        )));
    }
    if t > block_size {
        return Err(Error::Design(format!(
            "t = {t} exceeds block size {block_size}"
        )));
    }
    let mut sets = Vec::with_capacity(blocks.len());
    let mut seen = HashSet::with_capacity(blocks.len());
    for b in blocks {
        let mut set = FixedBitSet::with_capacity(point_count);
        for &x in b {
            if x >= point_count {
                return Err(Error::Design(format!(
                    "point {x} out of range for {point_count} points"
                )));
            }
            if set.put(x) {
                return Err(Error::Design(format!("block {b:?} repeats point {x}")));
            }
        }
        if !seen.insert(set.clone()) {
            return Err(Error::Design(format!("duplicate block {b:?}")));
        }
        sets.push(set);
    }

    let subsets: Vec<Vec<usize>> = (0..point_count).combinations(t).collect();
    let counts: Vec<u64> = subsets
        .par_iter()
        .map(|s| {
            sets.iter()
                .filter(|b| s.iter().all(|&x| b.contains(x)))
                .count() as u64
        })
        .collect();
    let reference = counts[0];
    let counterexample = counts
        .iter()
        .position(|&c| c != reference)
        .map(|i| subsets[i].clone());
    let result = DesignCheckResult {
        t,
        point_count,
        block_count: blocks.len(),
        block_size,
        lambda: counterexample.is_none().then(|| BigUint::from(reference)),
        counterexample,
    };
    debug_assert!(result.identity_holds());
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Criticality {
    pub critical: bool,
    /// An edge whose deletion leaves the hypergraph non-2-colourable.
    pub removable: Option<Edge>,
}

/// Whether every single-edge deletion makes `h` 2-colourable. Edges are tried
/// in canonical order and the first removable one is reported.
pub fn is_edge_critical(h: &Hypergraph) -> Result<Criticality> {
    if is_two_colourable(h).colourable() {
        return Err(Error::AlreadyColourable);
    }
    for (i, e) in h.edges().iter().enumerate() {
        if !is_two_colourable(&h.without_edge(i)).colourable() {
            return Ok(Criticality {
                critical: false,
                removable: Some(e.clone()),
            });
        }
    }
    Ok(Criticality {
        critical: true,
        removable: None,
    })
}

/// Runs the ten checks on the default construction.
pub fn verify_paper_example() -> RunReport {
    let h4 = affine_plane_gf4();
    let h8 = derive_h8(&h4).unwrap_or_else(|_| Hypergraph::empty(h4.vertex_count()));
    verify_example(&h4, &h8)
}

/// The ten checks on a given 4-uniform part and 8-uniform part. Every check
/// runs even if an earlier one fails; a failing check records what was measured.
pub fn verify_example(h4: &Hypergraph, h8: &Hypergraph) -> RunReport {
    let mut report = RunReport::new("verify-paper");
    let enumerator = Enumerator::default();

    report.check(
        "h4_shape",
        "16 vertices, 20 edges of size 4",
        format!(
            "{} vertices, {} edges of size {}",
            h4.vertex_count(),
            h4.edge_count(),
            size_summary(h4)
        ),
        h4.vertex_count() == 16 && h4.edge_count() == 20 && h4.edges().iter().all(|e| e.len() == 4),
    );

    let enumeration = enumerator.enumerate(h4, true);
    match &enumeration {
        Ok(r) => {
            report.check(
                "h4_proper_colourings",
                120,
                &r.total_proper,
                r.total_proper == BigUint::from(120u32),
            );
            report.check(
                "h4_colourings_balanced",
                "every proper colouring has 8 red and 8 blue",
                format!("{} of {} balanced", r.balanced_count, r.total_proper),
                r.balanced_count == r.total_proper && h4.vertex_count() == 16,
            );
            let colourings = r.colourings.as_deref().unwrap_or_default();
            match pair_opposites(colourings) {
                Ok(pairs) => report.check("opposite_pairs", 60, pairs.len(), pairs.len() == 60),
                Err(e) => report.check("opposite_pairs", 60, e, false),
            };
        }
        Err(e) => {
            for name in [
                "h4_proper_colourings",
                "h4_colourings_balanced",
                "opposite_pairs",
            ] {
                report.check(name, "enumeration", e, false);
            }
        }
    }

    report.check(
        "h8_shape",
        "60 edges of size 8",
        format!("{} edges of size {}", h8.edge_count(), size_summary(h8)),
        h8.edge_count() == 60 && h8.edges().iter().all(|e| e.len() == 8),
    );

    let h = h4.union(h8);
    match &h {
        Ok(h) => report.check(
            "union_shape",
            "16 vertices, 80 edges",
            format!("{} vertices, {} edges", h.vertex_count(), h.edge_count()),
            h.vertex_count() == 16 && h.edge_count() == 80,
        ),
        Err(e) => report.check("union_shape", "16 vertices, 80 edges", e, false),
    };

    let h = h.unwrap_or_else(|_| h4.clone());
    let decision = is_two_colourable(&h);
    match &decision.witness {
        None => report.check("union_not_colourable", "UNCOLOURABLE", "UNCOLOURABLE", true),
        Some(w) => report.check(
            "union_not_colourable",
            "UNCOLOURABLE",
            format!("proper colouring {w}"),
            false,
        ),
    };

    let q = h.q_value();
    let target = DyadicValue::new(95u32.into(), 6);
    report.check("q_exact", &target, &q, q == target);
    let (lo, hi) = (
        DyadicValue::new(23u32.into(), 4),
        DyadicValue::new(24u32.into(), 4),
    );
    report.check(
        "q_between_23_and_24_sixteenths",
        "23/2^4 < q < 24/2^4",
        &q,
        lo < q && q < hi,
    );

    match &enumeration {
        Ok(r) => {
            let blue_sets: Vec<Vec<usize>> = r
                .colourings
                .iter()
                .flatten()
                .map(|c| c.blue_vertices().collect())
                .collect();
            let expected = "3-(16,8,12): 120 blocks of size 8, lambda 12 over all 560 triples";
            match design_check(&blue_sets, h4.vertex_count(), 3) {
                Ok(d) => {
                    let actual = match (&d.lambda, &d.counterexample) {
                        (Some(l), _) => format!(
                            "3-({},{},{}): {} blocks, lambda {}",
                            d.point_count, d.block_size, l, d.block_count, l
                        ),
                        (None, Some(s)) => {
                            format!("not a 3-design; triple {s:?} has a different count")
                        }
                        (None, None) => "no lambda".to_string(),
                    };
                    let pass = d.lambda == Some(BigUint::from(12u32))
                        && d.point_count == 16
                        && d.block_size == 8
                        && d.block_count == 120;
                    report.check("blue_sets_design", expected, actual, pass)
                }
                Err(e) => report.check("blue_sets_design", expected, e, false),
            };
        }
        Err(e) => {
            report.check("blue_sets_design", "3-(16,8,12)", e, false);
        }
    }

    report.entry("h.vertices", h.vertex_count());
    report.entry("h.edges", h.edge_count());
    report.exact("q", &q);
    report
}

fn size_summary(h: &Hypergraph) -> String {
    let sizes: Vec<String> = h
        .edges()
        .iter()
        .map(Edge::len)
        .dedup()
        .map(|s| s.to_string())
        .collect();
    if sizes.is_empty() {
        "-".into()
    } else {
        sizes.join("/")
    }
}
