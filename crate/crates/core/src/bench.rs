//! Timing comparison of the exact TEQ recursion against the heuristic on
//! seeded random tournaments.

use crate::error::{Error, Result};
use crate::teq::{teq_exact, teq_heuristic, TeqResult};
use crate::tournament::{derive_seed, random_tournament};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub method: &'static str,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub mean_calls: f64,
    pub median_calls: f64,
    /// Samples where the method returned the exact TEQ.
    pub agree: usize,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub sizes: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        (values[k / 2 - 1] + values[k / 2]) / 2.0
    }
}

fn summarize(n: usize, method: &'static str, runs: &[(Duration, TeqResult)], exact: &[TeqResult]) -> BenchRow {
    let k = runs.len() as f64;
    let mut ms: Vec<f64> = runs.iter().map(|(d, _)| d.as_secs_f64() * 1e3).collect();
    let mut calls: Vec<f64> = runs.iter().map(|(_, r)| r.stats.calls as f64).collect();
    BenchRow {
        n,
        method,
        mean_ms: ms.iter().sum::<f64>() / k,
        median_ms: median(&mut ms),
        mean_calls: calls.iter().sum::<f64>() / k,
        median_calls: median(&mut calls),
        agree: runs
            .iter()
            .zip(exact)
            .filter(|((_, r), e)| r.teq_set == e.teq_set)
            .count(),
    }
}

/// Runs both methods on `samples` random tournaments of every size.
pub fn bench(sizes: &[usize], samples: usize, seed: u64) -> Result<BenchReport> {
    if samples == 0 || sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidArgument("need at least one sample and non-zero sizes".into()));
    }
    let mut rows = Vec::new();
    for &n in sizes {
        let mut exact = Vec::with_capacity(samples);
        let mut heuristic = Vec::with_capacity(samples);
        for i in 0..samples {
            let t = random_tournament(n, derive_seed(seed, n, i as u64));
            let all = t.all();
            let start = Instant::now();
            let e = teq_exact(&t, &all)?;
            exact.push((start.elapsed(), e));
            let start = Instant::now();
            let h = teq_heuristic(&t, &all)?;
            heuristic.push((start.elapsed(), h));
        }
        let exact_results: Vec<TeqResult> = exact.iter().map(|(_, r)| r.clone()).collect();
        rows.push(summarize(n, "teq-exact", &exact, &exact_results));
        rows.push(summarize(n, "teq-heuristic", &heuristic, &exact_results));
    }
    Ok(BenchReport {
        sizes: sizes.to_vec(),
        samples,
        seed,
        rows,
    })
}

impl BenchReport {
    /// Aligned table, one row per size and method.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# samples={} seed={}", self.samples, self.seed);
        let _ = writeln!(
            out,
            "{:>4}  {:<14} {:>12} {:>12} {:>12} {:>12} {:>7}",
            "n", "method", "mean_ms", "median_ms", "mean_calls", "median_calls", "agree"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>4}  {:<14} {:>12.3} {:>12.3} {:>12.1} {:>12.1} {:>3}/{:<3}",
                r.n, r.method, r.mean_ms, r.median_ms, r.mean_calls, r.median_calls, r.agree, self.samples
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_has_both_methods() {
        let r = bench(&[5, 6], 3, 7).unwrap();
        assert_eq!(r.rows.len(), 4);
        let table = r.render();
        assert_eq!(table.lines().count(), 6);
        assert!(table.contains("teq-exact") && table.contains("teq-heuristic"));
        assert!(r.rows.iter().all(|row| row.mean_calls >= 1.0 && row.agree == 3));
        assert!(bench(&[], 3, 7).is_err());
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
