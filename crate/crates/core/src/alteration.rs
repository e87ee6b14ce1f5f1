//! Random n-uniform sampling followed by repair with large monochromatic
//! edges, yielding a non-2-colourable hypergraph with two edge sizes.
//!
//! The exact pieces (`mono_probability`, `balanced_probability`, binomials,
//! q values) use big integers throughout. The floating-point helpers
//! (`asymptotic_q`, `erdos_edge_count`, `expected_proper_upper_bound`) are
//! reference quantities only; none of them feeds a correctness decision.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colouring::{is_proper, Colouring, Enumerator};
use crate::dyadic::{binomial, BigCount, DyadicValue};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};
use crate::report::RunReport;

/// Exact nonnegative rational.
pub type Rational = Ratio<BigUint>;

/// Odd multiplier for deriving retry seeds: retry `r` uses `seed ^ (RETRY_SEED_STRIDE * r)`.
pub const RETRY_SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// Largest `n` accepted by the edge-count formulas (keeps `n²·2^n` exact in an f64).
pub const MAX_FORMULA_N: u64 = 44;

/// Probability that a uniform random `n`-subset is monochromatic when the
/// colour classes have `v1` and `v2` vertices: `(C(v1,n) + C(v2,n)) / C(v,n)`.
pub fn mono_probability(v1: u64, v2: u64, n: u64) -> Result<Rational> {
    let v = v1 + v2;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "edge size n must be at least 1".into(),
        ));
    }
    if v < n {
        return Err(Error::InvalidArgument(format!(
            "v = {v} is smaller than n = {n}"
        )));
    }
    Ok(Ratio::new(
        binomial(v1, n) + binomial(v2, n),
        binomial(v, n),
    ))
}

/// The balanced case of [`mono_probability`]: `2·C(v/2, n) / C(v, n)`.
pub fn balanced_probability(v: u64, n: u64) -> Result<Rational> {
    if !v.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("v = {v} must be even")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument(
            "edge size n must be at least 1".into(),
        ));
    }
    if v < n {
        return Err(Error::InvalidArgument(format!(
            "v = {v} is smaller than n = {n}"
        )));
    }
    Ok(Ratio::new(binomial(v / 2, n) * 2u32, binomial(v, n)))
}

/// Leading-order value `2 / (e·2^n)` of `balanced_probability(n²/2, n)`.
/// Reference only.
pub fn asymptotic_q(n: u32) -> f64 {
    2.0 / (std::f64::consts::E * 2f64.powi(n as i32))
}

/// Closest f64 to an exact rational, without overflowing on huge terms.
pub fn rational_to_f64(r: &Rational) -> f64 {
    let (num, den) = (r.numer(), r.denom());
    if num.is_zero() {
        return 0.0;
    }
    let bits = num.bits().max(den.bits());
    let shift = bits.saturating_sub(1000);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    if d == 0.0 {
        // denominator vanished after the shift: the ratio is astronomically large
        return f64::INFINITY;
    }
    n / d
}

fn check_formula_n(n: u64) -> Result<()> {
    if !(2..=MAX_FORMULA_N).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "n = {n} outside the supported range 2..={MAX_FORMULA_N}"
        )));
    }
    Ok(())
}

/// `⌈(e·ln2/4)·n²·2^n⌉`, the leading-order edge count that makes a uniform
/// random n-uniform hypergraph on `n²/2` vertices non-2-colourable in expectation.
pub fn erdos_edge_count(n: u64) -> Result<u64> {
    check_formula_n(n)?;
    let c = std::f64::consts::E * std::f64::consts::LN_2 / 4.0;
    Ok((c * (n * n) as f64 * 2f64.powi(n as i32)).ceil() as u64)
}

/// `⌈erdos_edge_count(n) / 2⌉`.
pub fn halved_edge_count(n: u64) -> Result<u64> {
    Ok(erdos_edge_count(n)?.div_ceil(2))
}

/// Two upper bounds on the expected number of proper colourings of a random
/// hypergraph with `m` uniform `n`-edges on `v` vertices, kept as base-2 logs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectationBound {
    /// `balanced_probability(v, n)` as an f64.
    pub q: f64,
    /// `log2(2^v · (1 - q)^m)`.
    pub log2_first: f64,
    /// `log2(e^{ln2·v - q·m})`.
    pub log2_second: f64,
    /// `log2_second - log2_first = m·(-q - ln(1 - q)) / ln2`, evaluated without cancellation.
    pub log2_gap: f64,
}

impl ExpectationBound {
    pub fn first(&self) -> f64 {
        self.log2_first.exp2()
    }

    pub fn second(&self) -> f64 {
        self.log2_second.exp2()
    }
}

/// `-t - ln(1 - t)` for `0 ≤ t ≤ 1`.
fn log_gap_per_edge(t: f64) -> f64 {
    if t >= 1.0 {
        return f64::INFINITY;
    }
    if t < 1e-2 {
        // Σ_{k≥2} t^k / k; the tail after k = 15 is below t^16
        let mut term = t;
        let mut sum = 0.0;
        for k in 2..16 {
            term *= t;
            sum += term / k as f64;
        }
        return sum;
    }
    -t - (-t).ln_1p()
}

pub fn expected_proper_upper_bound(v: u64, n: u64, m: u64) -> Result<ExpectationBound> {
    use std::f64::consts::LN_2;
    let q = rational_to_f64(&balanced_probability(v, n)?);
    let base = v as f64;
    let mf = m as f64;
    let log2_first = if m == 0 {
        base
    } else if q >= 1.0 {
        f64::NEG_INFINITY
    } else {
        base + mf * (-q).ln_1p() / LN_2
    };
    let log2_second = base - q * mf / LN_2;
    let log2_gap = if m == 0 {
        0.0
    } else {
        mf * log_gap_per_edge(q) / LN_2
    };
    Ok(ExpectationBound {
        q,
        log2_first,
        log2_second,
        log2_gap,
    })
}

/// Uniform random `n`-subsets of `0..v` from a seeded generator, via a partial
/// Fisher–Yates shuffle of a persistent pool.
pub struct SubsetSampler {
    rng: ChaCha8Rng,
    pool: Vec<usize>,
    n: usize,
}

impl SubsetSampler {
    pub fn new(v: usize, n: usize, seed: u64) -> Result<Self> {
        if n < 2 || v < n {
            return Err(Error::InvalidArgument(format!(
                "need v >= n >= 2, got v = {v}, n = {n}"
            )));
        }
        Ok(SubsetSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: (0..v).collect(),
            n,
        })
    }

    pub fn draw(&mut self) -> Edge {
        let v = self.pool.len();
        for i in 0..self.n {
            let j = self.rng.gen_range(i..v);
            self.pool.swap(i, j);
        }
        Edge::new(self.pool[..self.n].iter().copied()).expect("distinct pool entries")
    }
}

/// `m_prime` independent uniform draws of `n`-subsets; repeated draws collapse.
pub fn sample_uniform_edges(v: usize, n: usize, m_prime: u64, seed: u64) -> Result<Hypergraph> {
    let mut sampler = SubsetSampler::new(v, n, seed)?;
    Hypergraph::from_edges(v, (0..m_prime).map(|_| sampler.draw()))
}

/// Parameters of one alteration run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlterationParams {
    pub n: u64,
    pub v: usize,
    pub m_prime: u64,
    pub big_edge_size: usize,
    /// `2^big_edge_size`.
    pub survivor_threshold: BigCount,
    pub max_retries: u32,
    pub seed: u64,
    pub strict: bool,
}

impl AlterationParams {
    /// `big_edge_size = max(⌈n²/4⌉, 2)` and `v = 2·big_edge_size`, which is
    /// `v = n²/2`, `big = n²/4` for even `n ≥ 4`. The floor of 2 only matters
    /// at `n = 2`, where `n²/4 = 1` is not a valid edge size.
    pub fn new(n: u64, seed: u64, max_retries: u32, strict: bool) -> Result<Self> {
        check_formula_n(n)?;
        let big = (n * n).div_ceil(4).max(2) as usize;
        Ok(AlterationParams {
            n,
            v: 2 * big,
            m_prime: halved_edge_count(n)?,
            big_edge_size: big,
            survivor_threshold: BigUint::one() << big,
            max_retries,
            seed,
            strict,
        })
    }

    /// Seed used by attempt `r` (0 is the first attempt).
    pub fn attempt_seed(&self, r: u32) -> u64 {
        self.seed ^ RETRY_SEED_STRIDE.wrapping_mul(u64::from(r))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlterationReport {
    pub params: AlterationParams,
    /// Attempt index that was accepted (0 when the first sample was used).
    pub retries_used: u32,
    pub seed_used: u64,
    pub raw_draws: u64,
    pub h1_edges: usize,
    pub survivor_count: BigCount,
    pub h2_edges: usize,
    pub q_h1: DyadicValue,
    pub q_h2: DyadicValue,
    pub q_total: DyadicValue,
    pub verified_uncolourable: bool,
}

/// Everything a run produces; the report plus the pieces it summarizes.
#[derive(Debug, Clone)]
pub struct AlterationOutcome {
    pub hypergraph: Hypergraph,
    pub h1: Hypergraph,
    pub h2: Hypergraph,
    /// Each proper colouring of `h1` with the edge that kills it.
    pub killed: Vec<(Colouring, Edge)>,
    pub report: AlterationReport,
}

/// `big` lowest-indexed vertices of the larger colour class (red on ties).
pub fn killing_edge(c: &Colouring, big: usize) -> Result<Edge> {
    let members: Vec<usize> = if c.red_count() >= c.blue_count() {
        c.red_vertices().take(big).collect()
    } else {
        c.blue_vertices().take(big).collect()
    };
    if members.len() < big {
        return Err(Error::InvalidArgument(format!(
            "majority class of {c} has fewer than {big} vertices"
        )));
    }
    Edge::new(members)
}

pub fn run_alteration(params: &AlterationParams) -> Result<AlterationOutcome> {
    run_alteration_with(params, &Enumerator::default())
}

pub fn run_alteration_with(
    params: &AlterationParams,
    enumerator: &Enumerator,
) -> Result<AlterationOutcome> {
    if params.v > enumerator.limit {
        return Err(Error::EnumerationLimit {
            v: params.v,
            limit: enumerator.limit,
        });
    }
    let n = params.n as usize;
    let mut best: Option<BigCount> = None;
    let mut accepted = None;
    for r in 0..=params.max_retries {
        let seed = params.attempt_seed(r);
        let h1 = sample_uniform_edges(params.v, n, params.m_prime, seed)?;
        let survivors = enumerator.enumerate(&h1, true)?;
        if !params.strict || survivors.total_proper <= params.survivor_threshold {
            accepted = Some((r, seed, h1, survivors));
            break;
        }
        if best.as_ref().is_none_or(|b| &survivors.total_proper < b) {
            best = Some(survivors.total_proper);
        }
    }
    let Some((retries_used, seed_used, h1, survivors)) = accepted else {
        return Err(Error::RetriesExhausted {
            retries: params.max_retries,
            best: best.map(|b| b.to_string()).unwrap_or_default(),
            threshold: params.survivor_threshold.to_string(),
        });
    };

    let colourings = survivors.colourings.expect("materialized");
    let killed = colourings
        .into_iter()
        .map(|c| {
            let e = killing_edge(&c, params.big_edge_size)?;
            Ok((c, e))
        })
        .collect::<Result<Vec<_>>>()?;
    let h2 = Hypergraph::from_edges(params.v, killed.iter().map(|(_, e)| e.clone()))?;
    let hypergraph = h1.union(&h2)?;
    let verified_uncolourable = enumerator
        .enumerate(&hypergraph, false)?
        .total_proper
        .is_zero();

    let report = AlterationReport {
        params: params.clone(),
        retries_used,
        seed_used,
        raw_draws: params.m_prime,
        h1_edges: h1.edge_count(),
        survivor_count: survivors.total_proper,
        h2_edges: h2.edge_count(),
        q_h1: h1.q_value(),
        q_h2: h2.q_value(),
        q_total: hypergraph.q_value(),
        verified_uncolourable,
    };
    Ok(AlterationOutcome {
        hypergraph,
        h1,
        h2,
        killed,
        report,
    })
}

/// Checks that every recorded killing edge is monochromatic under its colouring.
pub fn killing_edges_valid(outcome: &AlterationOutcome) -> bool {
    outcome.killed.iter().all(|(c, e)| {
        let single = Hypergraph::from_edges(c.vertex_count(), [e.clone()]).expect("edge in range");
        !is_proper(&single, c).expect("same vertex count")
    })
}

impl AlterationOutcome {
    /// Text report with parameters, exact q values and the verification checks.
    pub fn run_report(&self) -> RunReport {
        let r = &self.report;
        let params = &r.params;
        let mut report = RunReport::new("alteration");
        report
            .entry("n", params.n)
            .entry("v", params.v)
            .entry("m_prime", params.m_prime)
            .entry("big_edge_size", params.big_edge_size)
            .entry("survivor_threshold", &params.survivor_threshold)
            .entry("seed", params.seed)
            .entry("strict", params.strict)
            .entry("max_retries", params.max_retries)
            .entry("retries_used", r.retries_used)
            .entry("seed_used", r.seed_used)
            .entry("raw_draws", r.raw_draws)
            .entry("h1_edges", r.h1_edges)
            .entry("survivor_count", &r.survivor_count)
            .entry("h2_edges", r.h2_edges)
            .entry("h_edges", self.hypergraph.edge_count());
        report
            .exact("q_h1", &r.q_h1)
            .exact("q_h2", &r.q_h2)
            .exact("q_total", &r.q_total);
        report.check(
            "uncolourable",
            true,
            r.verified_uncolourable,
            r.verified_uncolourable,
        );
        let valid = killing_edges_valid(self);
        report.check("killing_edges_monochromatic", true, valid, valid);
        if params.strict {
            let ok = r.survivor_count <= params.survivor_threshold;
            report.check(
                "survivors_within_threshold",
                format!("<= {}", params.survivor_threshold),
                &r.survivor_count,
                ok,
            );
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: u32, b: u32) -> Rational {
        Ratio::new(a.into(), b.into())
    }

    #[test]
    fn probabilities_match_hand_values() {
        assert_eq!(mono_probability(4, 4, 4).unwrap(), rat(1, 35));
        assert_eq!(mono_probability(9, 0, 4).unwrap(), rat(1, 1));
        assert_eq!(
            mono_probability(6, 6, 3).unwrap(),
            balanced_probability(12, 3).unwrap()
        );
        assert_eq!(balanced_probability(8, 4).unwrap(), rat(1, 35));
        assert_eq!(balanced_probability(2, 2).unwrap(), rat(0, 1));
        assert_eq!(balanced_probability(4, 2).unwrap(), rat(1, 3));
        assert!(mono_probability(1, 1, 3).is_err());
        assert!(balanced_probability(7, 2).is_err());
        assert!(balanced_probability(2, 4).is_err());
    }

    #[test]
    fn asymptotic_q_halves() {
        for n in 2..30 {
            assert_eq!(asymptotic_q(n + 1) / asymptotic_q(n), 0.5);
        }
    }

    #[test]
    fn edge_counts() {
        assert_eq!(erdos_edge_count(4).unwrap(), 121);
        assert_eq!(halved_edge_count(4).unwrap(), 61);
        for n in 2..=MAX_FORMULA_N {
            let (m, h) = (erdos_edge_count(n).unwrap(), halved_edge_count(n).unwrap());
            assert!(2 * h - m <= 1);
        }
        let ratio = erdos_edge_count(40).unwrap() as f64 / erdos_edge_count(39).unwrap() as f64;
        assert!((ratio - 2.0 * (40.0f64 / 39.0).powi(2)).abs() < 1e-9);
        assert!(erdos_edge_count(1).is_err());
    }

    #[test]
    fn expectation_bound_values() {
        let b = expected_proper_upper_bound(8, 4, 61).unwrap();
        // 256 · (34/35)^61 ≈ 43.68
        let direct = 256.0 * (34.0f64 / 35.0).powi(61);
        assert!((b.first() - 43.682).abs() < 1e-3);
        assert!((b.first() - direct).abs() < 1e-9 * direct);
        assert!(b.first() < b.second());
        assert!(b.log2_gap > 0.0);

        let zero = expected_proper_upper_bound(8, 4, 0).unwrap();
        assert_eq!(zero.first(), 256.0);
        assert_eq!(zero.log2_gap, 0.0);
    }

    #[test]
    fn params_shapes() {
        let p = AlterationParams::new(4, 1, 0, true).unwrap();
        assert_eq!((p.v, p.big_edge_size, p.m_prime), (8, 4, 61));
        assert_eq!(p.survivor_threshold, BigUint::from(16u32));
        let p = AlterationParams::new(5, 1, 0, true).unwrap();
        assert_eq!((p.v, p.big_edge_size), (14, 7));
        let p = AlterationParams::new(2, 1, 0, true).unwrap();
        assert_eq!((p.v, p.big_edge_size), (4, 2));
        assert_eq!(p.attempt_seed(0), 1);
        assert_ne!(p.attempt_seed(1), p.attempt_seed(2));
    }

    #[test]
    fn sampling_is_deterministic_and_shaped() {
        let a = sample_uniform_edges(8, 4, 61, 7).unwrap();
        let b = sample_uniform_edges(8, 4, 61, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.edge_count() <= 61);
        assert!(a.edges().iter().all(|e| e.len() == 4));
        assert_ne!(a, sample_uniform_edges(8, 4, 61, 8).unwrap());
    }

    #[test]
    fn sampling_saturates_all_subsets() {
        let h = sample_uniform_edges(8, 4, 10_000, 3).unwrap();
        assert_eq!(h.edge_count(), 70);
    }

    #[test]
    fn killing_edge_prefers_red_on_ties() {
        let c = Colouring::new(4, [1, 3]).unwrap();
        assert_eq!(killing_edge(&c, 2).unwrap().members(), &[1, 3]);
        let c = Colouring::new(6, [5]).unwrap();
        assert_eq!(killing_edge(&c, 3).unwrap().members(), &[0, 1, 2]);
        assert!(killing_edge(&Colouring::new(4, [0]).unwrap(), 4).is_err());
    }

    #[test]
    fn run_small_pipeline() {
        let p = AlterationParams::new(4, 11, 50, true).unwrap();
        let out = run_alteration(&p).unwrap();
        let r = &out.report;
        assert!(r.verified_uncolourable);
        assert!(r.survivor_count <= p.survivor_threshold);
        assert!(killing_edges_valid(&out));
        assert_eq!(r.q_total, out.hypergraph.q_value());
        assert!(r.q_total <= &r.q_h1 + &r.q_h2);
        assert!(r.q_h1 <= DyadicValue::new(61u32.into(), 4));
    }

    #[test]
    fn strict_mode_reports_exhaustion() {
        // one 4-edge on 8 vertices leaves 256 - 2·2^4 = 224 proper colourings, far above 16
        let mut p = AlterationParams::new(4, 5, 3, true).unwrap();
        p.m_prime = 1;
        let err = run_alteration(&p).unwrap_err();
        assert_eq!(
            err,
            Error::RetriesExhausted {
                retries: 3,
                best: "224".into(),
                threshold: "16".into()
            }
        );
        p.strict = false;
        let out = run_alteration(&p).unwrap();
        assert_eq!(out.report.survivor_count, BigUint::from(224u32));
        assert!(out.report.verified_uncolourable);
    }

    #[test]
    fn refuses_above_enumeration_limit() {
        let p = AlterationParams::new(6, 0, 0, false).unwrap();
        let err = run_alteration_with(&p, &Enumerator::with_limit(10)).unwrap_err();
        assert!(matches!(err, Error::EnumerationLimit { v: 18, limit: 10 }));
    }
}
