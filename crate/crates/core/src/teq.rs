//! Tournament equilibrium set.
//!
//! `b ⇒_X a` holds iff `b` is in the TEQ of the dominators of `a` within `X`,
//! and `TEQ(X)` is the top cycle of `⇒_X`. Dominator sets are proper subsets,
//! so the recursion depth is bounded by `|X|`.
//!
//! [`teq_exact`] follows the definition with a memo table keyed by subset.
//! [`teq_heuristic`] grows a set `B` from the alternatives with the fewest
//! dominators, adding TEQ-dominators until `B` is closed, and returns the top
//! cycle of the relation restricted to `B`. It agrees with the exact value
//! whenever the top cycle of every TEQ relation met on the way is a single
//! strongly connected component.

use crate::altset::AltSet;
use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::tournament::Tournament;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

/// How the heuristic evaluates `TEQ(D̄(a))` for the alternatives it visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InnerMode {
    /// Recurse through the heuristic itself.
    #[default]
    Heuristic,
    /// Use the exact recursion for inner dominator sets.
    Exact,
}

#[derive(Debug, Clone)]
pub struct TeqOptions {
    pub memoize: bool,
    pub inner: InnerMode,
    /// Incremented on every recursive call, for callers that watch progress
    /// from another thread.
    pub progress: Option<Arc<AtomicU64>>,
}

impl Default for TeqOptions {
    fn default() -> Self {
        TeqOptions {
            memoize: true,
            inner: InnerMode::Heuristic,
            progress: None,
        }
    }
}

impl TeqOptions {
    pub fn without_cache() -> Self {
        TeqOptions {
            memoize: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TeqStats {
    /// Invocations of the recursive procedure, memo hits included.
    pub calls: u64,
    /// Distinct subsets stored in the memo tables.
    pub memo_entries: usize,
    /// Loop iterations of the outermost heuristic run (0 for exact).
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct TeqResult {
    pub teq_set: AltSet,
    /// `⇒` over the queried set (exact), or over the closed set `B` (heuristic).
    pub teq_relation: Relation,
    pub stats: TeqStats,
}

impl TeqResult {
    /// Compares set and relation, ignoring statistics.
    pub fn same_solution(&self, other: &TeqResult) -> bool {
        self.teq_set == other.teq_set && self.teq_relation == other.teq_relation
    }

    /// Whether `⇒` restricted to the TEQ set is strongly connected.
    pub fn top_cycle_is_single_scc(&self) -> bool {
        self.teq_relation.restrict(&self.teq_set).is_strongly_connected()
    }
}

struct Solver<'t> {
    t: &'t Tournament,
    opts: TeqOptions,
    exact_memo: HashMap<AltSet, AltSet>,
    heuristic_memo: HashMap<AltSet, AltSet>,
    calls: u64,
}

impl<'t> Solver<'t> {
    fn new(t: &'t Tournament, opts: TeqOptions) -> Self {
        Solver {
            t,
            opts,
            exact_memo: HashMap::new(),
            heuristic_memo: HashMap::new(),
            calls: 0,
        }
    }

    fn tick(&mut self) {
        self.calls += 1;
        if let Some(p) = &self.opts.progress {
            p.fetch_add(1, Ordering::Relaxed);
        }
    }

    fn stats(&self, iterations: usize) -> TeqStats {
        TeqStats {
            calls: self.calls,
            memo_entries: self.exact_memo.len() + self.heuristic_memo.len(),
            iterations,
        }
    }

    /// Trivial cases shared by both procedures.
    fn base_case(x: &AltSet) -> Option<AltSet> {
        (x.len() <= 1).then(|| x.clone())
    }

    fn exact_relation(&mut self, x: &AltSet) -> Relation {
        let mut rel = Relation::new(x.clone());
        for a in x {
            let dom = self.t.dominators_of(a).intersection(x);
            if dom.is_empty() {
                continue;
            }
            let inner = self.exact_set(&dom);
            for b in &inner {
                rel.insert(b, a);
            }
        }
        rel
    }

    fn exact_set(&mut self, x: &AltSet) -> AltSet {
        self.tick();
        if let Some(s) = Self::base_case(x) {
            return s;
        }
        if self.opts.memoize {
            if let Some(s) = self.exact_memo.get(x) {
                return s.clone();
            }
        }
        let set = self
            .exact_relation(x)
            .top_cycle()
            .expect("non-empty carrier");
        if self.opts.memoize {
            self.exact_memo.insert(x.clone(), set.clone());
        }
        set
    }

    fn inner_set(&mut self, x: &AltSet) -> AltSet {
        match self.opts.inner {
            InnerMode::Heuristic => self.heuristic_set(x),
            InnerMode::Exact => self.exact_set(x),
        }
    }

    /// One run of the heuristic loop: returns the relation on the closed set
    /// `B` and the number of iterations.
    fn heuristic_run(&mut self, x: &AltSet) -> (Relation, usize) {
        let t = self.t;
        let min = x
            .iter()
            .map(|a| t.dominators_of(a).intersection_len(x))
            .min()
            .expect("non-empty set");
        let mut b = AltSet::from_indices(
            x.universe(),
            x.iter().filter(|&a| t.dominators_of(a).intersection_len(x) == min),
        );
        let mut c = b.clone();
        let mut rel = Relation::new(x.clone());
        let mut iterations = 0;
        loop {
            iterations += 1;
            let mut d = AltSet::empty(x.universe());
            for a in &c {
                let dom = t.dominators_of(a).intersection(x);
                if dom.is_empty() {
                    continue;
                }
                let inner = self.inner_set(&dom);
                for p in &inner {
                    rel.insert(p, a);
                }
                d.union_with(&inner);
            }
            if d.is_subset(&b) {
                return (rel.restrict(&b), iterations);
            }
            b.union_with(&d);
            c = d;
        }
    }

    fn heuristic_set(&mut self, x: &AltSet) -> AltSet {
        self.tick();
        if let Some(s) = Self::base_case(x) {
            return s;
        }
        if self.opts.memoize {
            if let Some(s) = self.heuristic_memo.get(x) {
                return s.clone();
            }
        }
        let (rel, _) = self.heuristic_run(x);
        let set = rel.top_cycle().expect("non-empty carrier");
        if self.opts.memoize {
            self.heuristic_memo.insert(x.clone(), set.clone());
        }
        set
    }
}

fn check_query(t: &Tournament, x: &AltSet) -> Result<()> {
    t.check_set(x)?;
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// Exact TEQ of `x` with the memo table enabled.
pub fn teq_exact(t: &Tournament, x: &AltSet) -> Result<TeqResult> {
    teq_exact_with(t, x, TeqOptions::default())
}

pub fn teq_exact_with(t: &Tournament, x: &AltSet, opts: TeqOptions) -> Result<TeqResult> {
    check_query(t, x)?;
    let mut solver = Solver::new(t, opts);
    solver.tick();
    let teq_relation = solver.exact_relation(x);
    let teq_set = teq_relation.top_cycle()?;
    Ok(TeqResult {
        teq_set,
        teq_relation,
        stats: solver.stats(0),
    })
}

/// Whether `a` belongs to the exact TEQ of `x`.
pub fn teq_member(t: &Tournament, x: &AltSet, a: usize) -> Result<bool> {
    t.check_member(x, a)?;
    Ok(teq_exact(t, x)?.teq_set.contains(a))
}

/// Heuristic TEQ of `x` with self-recursive inner calls and memoization.
pub fn teq_heuristic(t: &Tournament, x: &AltSet) -> Result<TeqResult> {
    teq_heuristic_with(t, x, TeqOptions::default())
}

pub fn teq_heuristic_with(t: &Tournament, x: &AltSet, opts: TeqOptions) -> Result<TeqResult> {
    check_query(t, x)?;
    let mut solver = Solver::new(t, opts);
    solver.tick();
    let (teq_relation, iterations) = solver.heuristic_run(x);
    let teq_set = teq_relation.top_cycle()?;
    Ok(TeqResult {
        teq_set,
        teq_relation,
        stats: solver.stats(iterations),
    })
}

/// Indented trace of the exact recursion down to `depth_limit` levels: one
/// root line for `x`, then per alternative one line for its dominator set.
pub fn teq_trace(t: &Tournament, x: &AltSet, depth_limit: usize) -> Result<String> {
    check_query(t, x)?;
    let mut solver = Solver::new(t, TeqOptions::default());
    let mut out = String::new();
    let root = solver.exact_set(x);
    let _ = writeln!(out, "TEQ{} = {}", t.format_set(x), t.format_set(&root));
    trace_children(&mut solver, x, depth_limit, 1, &mut out);
    Ok(out)
}

fn trace_children(solver: &mut Solver<'_>, x: &AltSet, remaining: usize, depth: usize, out: &mut String) {
    if remaining == 0 {
        return;
    }
    let t = solver.t;
    for a in x {
        let dom = t.dominators_of(a).intersection(x);
        let value = solver.exact_set(&dom);
        let _ = writeln!(
            out,
            "{:indent$}D({}) = {}: TEQ = {}",
            "",
            t.name(a),
            t.format_set(&dom),
            t.format_set(&value),
            indent = 2 * depth
        );
        if dom.len() > 1 {
            trace_children(solver, &dom, remaining - 1, depth + 1, out);
        }
    }
}
