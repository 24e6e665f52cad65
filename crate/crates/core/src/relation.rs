//! Directed relations over a carrier set of alternatives.

use crate::altset::AltSet;
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// A set of ordered pairs `(from, to)` whose endpoints lie in `carrier`.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    carrier: AltSet,
    succ: Vec<AltSet>,
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Relation")
            .field("carrier", &self.carrier)
            .field("pairs", &self.pairs().collect::<Vec<_>>())
            .finish()
    }
}

impl Relation {
    /// The empty relation on `carrier`.
    pub fn new(carrier: AltSet) -> Self {
        let n = carrier.universe();
        Relation {
            succ: vec![AltSet::empty(n); n],
            carrier,
        }
    }

    pub fn from_pairs<I>(carrier: AltSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rel = Relation::new(carrier);
        for (a, b) in pairs {
            for x in [a, b] {
                if !rel.carrier.contains(x) {
                    return Err(Error::NotInSet(x));
                }
            }
            rel.insert(a, b);
        }
        Ok(rel)
    }

    pub fn carrier(&self) -> &AltSet {
        &self.carrier
    }

    pub fn universe(&self) -> usize {
        self.carrier.universe()
    }

    /// Adds `(from, to)`. Panics if either endpoint is outside the carrier.
    pub fn insert(&mut self, from: usize, to: usize) {
        assert!(
            self.carrier.contains(from) && self.carrier.contains(to),
            "pair ({from}, {to}) leaves the carrier"
        );
        self.succ[from].insert(to);
    }

    /// Adds `(from, t)` for every `t` in `targets`.
    pub(crate) fn insert_all(&mut self, from: usize, targets: &AltSet) {
        debug_assert!(self.carrier.contains(from) && targets.is_subset(&self.carrier));
        self.succ[from].union_with(targets);
    }

    pub fn contains(&self, from: usize, to: usize) -> bool {
        from < self.succ.len() && self.succ[from].contains(to)
    }

    pub fn successors(&self, from: usize) -> &AltSet {
        &self.succ[from]
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.carrier
            .iter()
            .flat_map(move |a| self.succ[a].iter().map(move |b| (a, b)))
    }

    pub fn len(&self) -> usize {
        self.carrier.iter().map(|a| self.succ[a].len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.iter().all(|a| self.succ[a].is_empty())
    }

    /// The relation restricted to `x ∩ carrier`.
    pub fn restrict(&self, x: &AltSet) -> Relation {
        let carrier = self.carrier.intersection(x);
        let mut rel = Relation::new(carrier.clone());
        for a in &carrier {
            rel.succ[a] = self.succ[a].intersection(&carrier);
        }
        rel
    }

    /// Whether every pair of `self` is also a pair of `other`.
    pub fn is_subrelation_of(&self, other: &Relation) -> bool {
        self.carrier
            .iter()
            .all(|a| self.succ[a].is_subset(&other.succ[a]))
    }

    /// Everything reachable from `a` in zero or more steps.
    pub fn reachable_from(&self, a: usize) -> AltSet {
        let mut seen = AltSet::singleton(self.universe(), a);
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = AltSet::empty(self.universe());
            for x in &frontier {
                next.union_with(&self.succ[x]);
            }
            next.subtract(&seen);
            seen.union_with(&next);
            frontier = next;
        }
        seen
    }

    /// The reflexive-transitive closure over the carrier.
    pub fn transitive_closure(&self) -> Relation {
        let mut rel = Relation::new(self.carrier.clone());
        for a in &self.carrier {
            rel.succ[a] = self.reachable_from(a);
        }
        rel
    }

    /// A shortest path `from = p0, p1, ..., pk = to` with every step in the
    /// relation. A path from `a` to itself has at least one step.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.universe();
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        let mut seen = AltSet::empty(n);
        for s in &self.succ[from] {
            if seen.insert(s) {
                parent[s] = from;
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut cur = to;
                loop {
                    cur = parent[cur];
                    path.push(cur);
                    if cur == from {
                        break;
                    }
                }
                path.reverse();
                return Some(path);
            }
            for s in &self.succ[x] {
                if seen.insert(s) {
                    parent[s] = x;
                    queue.push_back(s);
                }
            }
        }
        None
    }

    /// Strongly connected components in reverse topological order of the
    /// condensation (Tarjan). Every carrier element lies in exactly one.
    pub fn strongly_connected_components(&self) -> Vec<AltSet> {
        let n = self.universe();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comps = Vec::new();
        let mut counter = 0;
        // (node, remaining successors)
        let mut call: Vec<(usize, Vec<usize>)> = Vec::new();

        for root in &self.carrier {
            if index[root] != usize::MAX {
                continue;
            }
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            call.push((root, self.succ[root].to_vec()));

            while let Some((v, pending)) = call.last_mut() {
                let v = *v;
                if let Some(w) = pending.pop() {
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, self.succ[w].to_vec()));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some((parent, _)) = call.last() {
                    low[*parent] = low[*parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = AltSet::empty(n);
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.insert(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
        comps
    }

    /// Components of the condensation with no incoming pair from outside.
    pub fn source_components(&self) -> Vec<AltSet> {
        self.strongly_connected_components()
            .into_iter()
            .filter(|comp| {
                self.carrier
                    .difference(comp)
                    .iter()
                    .all(|x| !self.succ[x].intersects(comp))
            })
            .collect()
    }

    /// Maximal elements of the asymmetric part of the reflexive-transitive
    /// closure, i.e. the union of all source components.
    pub fn top_cycle(&self) -> Result<AltSet> {
        if self.carrier.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut top = AltSet::empty(self.universe());
        for comp in self.source_components() {
            top.union_with(&comp);
        }
        Ok(top)
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.strongly_connected_components().len() <= 1
    }
}
