//! Property sweeps over all (or randomly sampled) labeled tournaments.
//!
//! Instances are numbered globally across the size range and split into
//! contiguous index ranges, one per worker; partial reports are merged in
//! range order, so the result does not depend on the worker count.

use crate::banks::banks_set;
use crate::error::{Error, Result};
use crate::teq::{teq_exact, teq_heuristic, TeqResult};
use crate::tournament::{derive_seed, random_tournament, tournament_count, Tournament};
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

/// Largest tournament size for exhaustive sweeps.
pub const EXHAUSTIVE_CAP: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// TEQ is contained in the Banks set.
    TeqInBanks,
    /// TEQ, the heuristic, and the Banks set are all non-empty.
    Nonempty,
    /// A Condorcet winner is returned alone by TEQ and the Banks set.
    Condorcet,
    /// The heuristic returns the exact TEQ.
    HeuristicEqExact,
    /// The TEQ relation restricted to TEQ is strongly connected.
    SingleScc,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::TeqInBanks,
        Check::Nonempty,
        Check::Condorcet,
        Check::HeuristicEqExact,
        Check::SingleScc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::TeqInBanks => "teq-in-banks",
            Check::Nonempty => "nonempty",
            Check::Condorcet => "condorcet",
            Check::HeuristicEqExact => "heuristic-eq",
            Check::SingleScc => "single-scc",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Random { samples: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub checks: Vec<Check>,
    pub mode: SweepMode,
    pub seed: u64,
    pub workers: usize,
}

impl SweepConfig {
    pub fn exhaustive(n_min: usize, n_max: usize) -> Self {
        SweepConfig {
            n_min,
            n_max,
            checks: Check::ALL.to_vec(),
            mode: SweepMode::Exhaustive,
            seed: 0,
            workers: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::InvalidArgument(format!(
                "bad size range {}..{}",
                self.n_min, self.n_max
            )));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("need at least one worker".into()));
        }
        if self.mode == SweepMode::Exhaustive {
            tournament_count(self.n_max, EXHAUSTIVE_CAP)?;
        }
        Ok(())
    }

    fn count(&self, n: usize) -> u64 {
        match self.mode {
            SweepMode::Exhaustive => 1u64 << (n * (n - 1) / 2),
            SweepMode::Random { samples } => samples,
        }
    }

    fn instance(&self, n: usize, index: u64) -> Tournament {
        match self.mode {
            SweepMode::Exhaustive => Tournament::from_index(n, index),
            SweepMode::Random { .. } => random_tournament(n, derive_seed(self.seed, n, index)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub check: Check,
    pub n: usize,
    /// Upper-triangle orientation bits, see [`Tournament::upper_string`].
    pub bits: String,
}

impl Counterexample {
    pub fn encoding(&self) -> String {
        format!("{}:{}", self.n, self.bits)
    }

    pub fn tournament(&self) -> Result<Tournament> {
        Tournament::from_upper_string(self.n, &self.bits)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckCount {
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub instances: u64,
    /// One entry per configured check, in configuration order.
    pub counts: Vec<(Check, CheckCount)>,
    pub counterexamples: Vec<Counterexample>,
    pub duration: Duration,
}

/// Outcome of every check in `checks` on one tournament.
pub fn evaluate(t: &Tournament, checks: &[Check]) -> Result<Vec<(Check, bool)>> {
    let all = t.all();
    let exact: TeqResult = teq_exact(t, &all)?;
    let needs_banks = checks
        .iter()
        .any(|c| matches!(c, Check::TeqInBanks | Check::Nonempty | Check::Condorcet));
    let banks = if needs_banks { Some(banks_set(t, &all)?) } else { None };
    let needs_heuristic = checks
        .iter()
        .any(|c| matches!(c, Check::HeuristicEqExact | Check::Nonempty));
    let heuristic = if needs_heuristic { Some(teq_heuristic(t, &all)?) } else { None };

    checks
        .iter()
        .map(|&check| {
            let ok = match check {
                Check::TeqInBanks => exact.teq_set.is_subset(banks.as_ref().unwrap()),
                Check::Nonempty => {
                    !exact.teq_set.is_empty()
                        && !banks.as_ref().unwrap().is_empty()
                        && !heuristic.as_ref().unwrap().teq_set.is_empty()
                }
                Check::Condorcet => match t.condorcet_winner(&all)? {
                    Some(w) => {
                        exact.teq_set.to_vec() == [w] && banks.as_ref().unwrap().to_vec() == [w]
                    }
                    None => true,
                },
                Check::HeuristicEqExact => heuristic.as_ref().unwrap().teq_set == exact.teq_set,
                Check::SingleScc => exact.top_cycle_is_single_scc(),
            };
            Ok((check, ok))
        })
        .collect()
}

struct Partial {
    instances: u64,
    counts: Vec<CheckCount>,
    counterexamples: Vec<Counterexample>,
}

fn run_range(config: &SweepConfig, sizes: &[(usize, u64, u64)], lo: u64, hi: u64) -> Result<Partial> {
    let mut partial = Partial {
        instances: 0,
        counts: vec![CheckCount::default(); config.checks.len()],
        counterexamples: Vec::new(),
    };
    for &(n, start, count) in sizes {
        let from = lo.max(start);
        let to = hi.min(start + count);
        for global in from..to {
            let t = config.instance(n, global - start);
            partial.instances += 1;
            for (slot, (check, ok)) in evaluate(&t, &config.checks)?.into_iter().enumerate() {
                if ok {
                    partial.counts[slot].passed += 1;
                } else {
                    partial.counts[slot].failed += 1;
                    partial.counterexamples.push(Counterexample {
                        check,
                        n,
                        bits: t.upper_string(),
                    });
                }
            }
        }
    }
    Ok(partial)
}

/// Runs the configured checks on every instance.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let start = Instant::now();
    let mut sizes = Vec::new();
    let mut total = 0u64;
    for n in config.n_min..=config.n_max {
        let count = config.count(n);
        sizes.push((n, total, count));
        total += count;
    }
    let workers = config.workers as u64;
    let chunk = total.div_ceil(workers).max(1);
    let ranges: Vec<(u64, u64)> = (0..workers)
        .map(|w| ((w * chunk).min(total), ((w + 1) * chunk).min(total)))
        .collect();

    let partials: Vec<Result<Partial>> = if config.workers == 1 {
        vec![run_range(config, &sizes, 0, total)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|&(lo, hi)| {
                    let sizes = &sizes;
                    scope.spawn(move || run_range(config, sizes, lo, hi))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };

    let mut counts = vec![CheckCount::default(); config.checks.len()];
    let mut counterexamples = Vec::new();
    let mut instances = 0;
    for partial in partials {
        let partial = partial?;
        instances += partial.instances;
        for (acc, c) in counts.iter_mut().zip(&partial.counts) {
            acc.passed += c.passed;
            acc.failed += c.failed;
        }
        counterexamples.extend(partial.counterexamples);
    }
    Ok(SweepReport {
        instances,
        counts: config.checks.iter().copied().zip(counts).collect(),
        counterexamples,
        duration: start.elapsed(),
        config: config.clone(),
    })
}

impl SweepReport {
    pub fn failures(&self) -> u64 {
        self.counts.iter().map(|(_, c)| c.failed).sum()
    }

    /// `8 instances, 0 failures`
    pub fn summary(&self) -> String {
        let plural = if self.instances == 1 { "" } else { "s" };
        format!("{} instance{plural}, {} failures", self.instances, self.failures())
    }

    /// Line-oriented serialization. The `workers` and `duration_ms` lines are
    /// the only ones that vary between runs with the same parameters.
    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = String::from("sweep-report v1\n");
        match c.mode {
            SweepMode::Exhaustive => out.push_str("mode exhaustive\n"),
            SweepMode::Random { samples } => {
                let _ = writeln!(out, "mode random {samples}");
            }
        }
        let _ = writeln!(out, "sizes {} {}", c.n_min, c.n_max);
        let _ = writeln!(out, "seed {}", c.seed);
        let _ = writeln!(out, "workers {}", c.workers);
        let names: Vec<&str> = c.checks.iter().map(|c| c.name()).collect();
        let _ = writeln!(out, "checks {}", names.join(" "));
        for ce in &self.counterexamples {
            let _ = writeln!(out, "FAIL {} {}", ce.check, ce.encoding());
        }
        for (check, count) in &self.counts {
            let _ = writeln!(out, "count {check} {} {}", count.passed, count.failed);
        }
        let _ = writeln!(out, "summary {} {}", self.instances, self.failures());
        let _ = writeln!(out, "duration_ms {}", self.duration.as_millis());
        out
    }

    /// [`SweepReport::to_text`] without the run-dependent lines.
    pub fn canonical_text(&self) -> String {
        self.to_text()
            .lines()
            .filter(|l| !l.starts_with("workers ") && !l.starts_with("duration_ms "))
            .map(|l| format!("{l}\n"))
            .collect()
    }

    pub fn parse(text: &str) -> Result<SweepReport> {
        let mut config = SweepConfig::exhaustive(1, 1);
        let mut report = SweepReport {
            config: config.clone(),
            instances: 0,
            counts: Vec::new(),
            counterexamples: Vec::new(),
            duration: Duration::ZERO,
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, "sweep-report v1")) => {}
            _ => return Err(Error::Parse { line: 1, msg: "not a sweep report".into() }),
        }
        for (ln, line) in lines {
            let err = |msg: &str| Error::Parse { line: ln, msg: msg.to_string() };
            let num = |s: &str| s.parse::<u64>().map_err(|_| err("bad number"));
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["mode", "exhaustive"] => config.mode = SweepMode::Exhaustive,
                ["mode", "random", s] => config.mode = SweepMode::Random { samples: num(s)? },
                ["sizes", a, b] => {
                    config.n_min = num(a)? as usize;
                    config.n_max = num(b)? as usize;
                }
                ["seed", s] => config.seed = num(s)?,
                ["workers", w] => config.workers = num(w)? as usize,
                ["checks", names @ ..] => {
                    config.checks = names.iter().map(|n| n.parse()).collect::<Result<_>>()?
                }
                ["FAIL", check, enc] => {
                    let (n, bits) = enc.split_once(':').ok_or_else(|| err("bad encoding"))?;
                    report.counterexamples.push(Counterexample {
                        check: check.parse()?,
                        n: num(n)? as usize,
                        bits: bits.to_string(),
                    });
                }
                ["count", check, p, f] => report.counts.push((
                    check.parse()?,
                    CheckCount {
                        passed: num(p)?,
                        failed: num(f)?,
                    },
                )),
                ["summary", inst, _] => report.instances = num(inst)?,
                ["duration_ms", ms] => report.duration = Duration::from_millis(num(ms)?),
                _ => return Err(err("unrecognized line")),
            }
        }
        report.config = config;
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exhaustive_sweeps() {
        let r = sweep(&SweepConfig::exhaustive(3, 3)).unwrap();
        assert_eq!(r.instances, 8);
        assert_eq!(r.failures(), 0);
        assert_eq!(r.summary(), "8 instances, 0 failures");
        let one = sweep(&SweepConfig::exhaustive(1, 1)).unwrap();
        assert_eq!(one.summary(), "1 instance, 0 failures");
    }

    #[test]
    fn worker_count_does_not_change_report() {
        let base = sweep(&SweepConfig::exhaustive(1, 4)).unwrap();
        assert_eq!(base.instances, 1 + 2 + 8 + 64);
        for workers in [2, 3, 7] {
            let r = sweep(&SweepConfig {
                workers,
                ..SweepConfig::exhaustive(1, 4)
            })
            .unwrap();
            assert_eq!(r.canonical_text(), base.canonical_text());
        }
    }

    #[test]
    fn random_mode_is_reproducible() {
        let cfg = SweepConfig {
            mode: SweepMode::Random { samples: 10 },
            seed: 11,
            workers: 3,
            ..SweepConfig::exhaustive(6, 8)
        };
        let a = sweep(&cfg).unwrap();
        let b = sweep(&SweepConfig { workers: 1, ..cfg.clone() }).unwrap();
        assert_eq!(a.instances, 30);
        assert_eq!(a.canonical_text(), b.canonical_text());
    }

    #[test]
    fn caps_and_ranges() {
        assert!(matches!(
            sweep(&SweepConfig::exhaustive(3, 8)),
            Err(Error::CapExceeded { .. })
        ));
        assert!(sweep(&SweepConfig::exhaustive(4, 3)).is_err());
        assert!(sweep(&SweepConfig { workers: 0, ..SweepConfig::exhaustive(3, 3) }).is_err());
    }

    #[test]
    fn report_round_trips() {
        let mut r = sweep(&SweepConfig::exhaustive(3, 4)).unwrap();
        r.counterexamples.push(Counterexample {
            check: Check::SingleScc,
            n: 3,
            bits: "101".into(),
        });
        let text = r.to_text();
        let back = SweepReport::parse(&text).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(back.counterexamples[0].tournament().unwrap().upper_string(), "101");
    }

    #[test]
    fn check_names_parse() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("bogus".parse::<Check>().is_err());
    }
}
