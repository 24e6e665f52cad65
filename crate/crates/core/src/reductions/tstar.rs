//! Layered gadget tournaments: a chain `d = c0, c1, ..., cn` and levels
//! `U1..Un`, odd levels holding a 3-cycle and even levels a single
//! separating node.
//!
//! Dominance rules, for `ci, cj` in the chain and `ui ∈ Ui`, `uj ∈ Uj`:
//!
//! 1. `ci ≻ cj` if `i > j`
//! 2. `ui ≻ ci`
//! 3. `cj ≻ ui` if `i ≠ j`
//! 4. `ui ≻ uj` if `i < j` and `i` or `j` is even
//! 5. `ui^k ≻ ui^(k+1 mod 3)` within an odd level
//!
//! Pairs of distinct odd levels are left to the concrete construction.

use super::cnf::Literal;
use crate::altset::AltSet;
use crate::error::{Error, Result};
use crate::tournament::Tournament;
use std::fmt::{self, Write as _};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// `c0`, written `d`.
    Decision,
    /// `ci` for `i ≥ 1`.
    Chain(usize),
    /// `yk`, the separating node of level `2k`.
    Separator(usize),
    /// `x_i^k`: literal `pos` (1-based) of clause `clause` (1-based).
    Literal {
        clause: usize,
        pos: usize,
        literal: Literal,
    },
    /// `z_i^k`, paired with `x_i^k` in the TEQ construction.
    Shadow { clause: usize, pos: usize },
}

impl Role {
    pub fn name(&self) -> String {
        match *self {
            Role::Decision => "d".into(),
            Role::Chain(i) => format!("c{i}"),
            Role::Separator(k) => format!("y{k}"),
            Role::Literal { clause, pos, .. } => format!("x{clause}_{pos}"),
            Role::Shadow { clause, pos } => format!("z{clause}_{pos}"),
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::Decision => write!(f, "decision"),
            Role::Chain(i) => write!(f, "chain index={i}"),
            Role::Separator(k) => write!(f, "separator k={k}"),
            Role::Literal { clause, pos, literal } => {
                write!(f, "literal clause={clause} pos={pos} lit={literal}")
            }
            Role::Shadow { clause, pos } => write!(f, "shadow clause={clause} pos={pos}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TStarRule {
    /// Level count, parity, or membership bookkeeping.
    Structure,
    ChainOrder,
    LevelBeatsOwnChain,
    ChainBeatsOtherLevel,
    Separator,
    TripleCycle,
}

impl fmt::Display for TStarRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TStarRule::Structure => "structure",
            TStarRule::ChainOrder => "(i) chain order",
            TStarRule::LevelBeatsOwnChain => "(ii) level beats its chain node",
            TStarRule::ChainBeatsOtherLevel => "(iii) chain node beats other levels",
            TStarRule::Separator => "(iv) separating node order",
            TStarRule::TripleCycle => "(v) triple cycle",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The pair whose orientation is wrong, as `(expected winner, expected loser)`.
    pub pair: Option<(usize, usize)>,
    pub rule: TStarRule,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct TStarLayout {
    size: usize,
    chain: Vec<usize>,
    levels: Vec<Vec<usize>>,
    roles: Vec<Role>,
    tournament: Tournament,
}

impl TStarLayout {
    /// Lays out `d, c1..cn` followed by the levels in order and orients every
    /// pair by the rules above; `cross(u, v)` decides `u ≻ v` for alternatives
    /// on distinct odd levels.
    pub fn build<F>(levels: Vec<Vec<Role>>, mut cross: F) -> Result<Self>
    where
        F: FnMut(&Role, &Role) -> bool,
    {
        let size = levels.len();
        if size.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("layout size {size} is not odd")));
        }
        for (i, level) in levels.iter().enumerate() {
            let want = if (i + 1) % 2 == 1 { 3 } else { 1 };
            if level.len() != want {
                return Err(Error::InvalidArgument(format!(
                    "level {} has {} members, expected {want}",
                    i + 1,
                    level.len()
                )));
            }
        }

        let mut roles = vec![Role::Decision];
        roles.extend((1..=size).map(Role::Chain));
        let chain: Vec<usize> = (0..=size).collect();
        let mut level_idx = Vec::with_capacity(size);
        let mut level_of = vec![0usize; size + 1];
        for (i, level) in levels.iter().enumerate() {
            let mut members = Vec::with_capacity(level.len());
            for role in level {
                members.push(roles.len());
                roles.push(*role);
                level_of.push(i + 1);
            }
            level_idx.push(members);
        }
        let n = roles.len();
        let mut m: Vec<Vec<Option<bool>>> = vec![vec![None; n]; n];
        let set = |m: &mut Vec<Vec<Option<bool>>>, w: usize, l: usize| {
            debug_assert!(m[w][l].is_none(), "pair oriented twice");
            m[w][l] = Some(true);
            m[l][w] = Some(false);
        };

        for i in 0..=size {
            for j in 0..i {
                set(&mut m, chain[i], chain[j]);
            }
        }
        for (li, members) in level_idx.iter().enumerate() {
            let level = li + 1;
            for &u in members {
                for (ci, &c) in chain.iter().enumerate() {
                    if ci == level {
                        set(&mut m, u, c);
                    } else {
                        set(&mut m, c, u);
                    }
                }
            }
            if level % 2 == 1 {
                for k in 0..3 {
                    set(&mut m, members[k], members[(k + 1) % 3]);
                }
            }
        }
        for (li, upper) in level_idx.iter().enumerate() {
            for (lj, lower) in level_idx.iter().enumerate().skip(li + 1) {
                let separated = (li + 1) % 2 == 0 || (lj + 1) % 2 == 0;
                for &u in upper {
                    for &v in lower {
                        if separated || cross(&roles[u], &roles[v]) {
                            set(&mut m, u, v);
                        } else {
                            set(&mut m, v, u);
                        }
                    }
                }
            }
        }

        let names: Vec<String> = roles.iter().map(Role::name).collect();
        let matrix: Vec<Vec<bool>> = m
            .into_iter()
            .map(|row| row.into_iter().map(|c| c == Some(true)).collect())
            .collect();
        let tournament = Tournament::from_matrix(names, &matrix)?;
        Ok(TStarLayout {
            size,
            chain,
            levels: level_idx,
            roles,
            tournament,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn tournament(&self) -> &Tournament {
        &self.tournament
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role(&self, a: usize) -> Role {
        self.roles[a]
    }

    /// `chain()[i]` is the index of `ci`; `chain()[0]` is `d`.
    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    /// Members of level `i` (1-based).
    pub fn level(&self, i: usize) -> &[usize] {
        &self.levels[i - 1]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// Level of `a`, or `None` for chain nodes.
    pub fn level_of(&self, a: usize) -> Option<usize> {
        self.levels.iter().position(|l| l.contains(&a)).map(|i| i + 1)
    }

    pub fn chain_set(&self) -> AltSet {
        AltSet::from_indices(self.tournament.len(), self.chain.iter().copied())
    }

    /// All level members.
    pub fn level_set(&self) -> AltSet {
        AltSet::from_indices(self.tournament.len(), self.levels.iter().flatten().copied())
    }

    pub fn find(&self, role: &Role) -> Option<usize> {
        self.roles.iter().position(|r| r == role)
    }

    /// Copy whose tournament has the pair `{a, b}` reversed.
    pub fn with_flipped(&self, a: usize, b: usize) -> TStarLayout {
        TStarLayout {
            tournament: self.tournament.flipped(a, b),
            ..self.clone()
        }
    }

    /// `name<TAB>role` per alternative, in index order.
    pub fn label_map(&self) -> String {
        let mut out = String::new();
        for (a, role) in self.roles.iter().enumerate() {
            let level = self
                .level_of(a)
                .map(|l| format!(" level={l}"))
                .unwrap_or_default();
            let _ = writeln!(out, "{}\t{role}{level}", self.tournament.name(a));
        }
        out
    }

    /// Graphviz rendering with the chain and each level as a ranked cluster.
    pub fn to_dot(&self) -> String {
        let t = &self.tournament;
        let mut out = String::from("digraph tstar {\n  rankdir=TB;\n");
        let cluster = |out: &mut String, id: &str, label: &str, members: &[usize]| {
            let _ = writeln!(out, "  subgraph cluster_{id} {{\n    label=\"{label}\";\n    rank=same;");
            for &a in members {
                let _ = writeln!(out, "    \"{0}\" [label=\"{0}\"];", t.name(a));
            }
            out.push_str("  }\n");
        };
        cluster(&mut out, "C", "C", &self.chain);
        for (i, members) in self.levels.iter().enumerate() {
            let label = format!("U{}", i + 1);
            cluster(&mut out, &label, &label, members);
        }
        for a in 0..t.len() {
            for b in t.dominion(a) {
                let _ = writeln!(out, "  \"{}\" -> \"{}\";", t.name(a), t.name(b));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The alternative named `d`.
pub fn decision_node(layout: &TStarLayout) -> usize {
    layout
        .tournament()
        .index_of("d")
        .expect("every layout has a decision node")
}

/// Checks the level structure and every pair governed by the five rules.
/// Returns one entry per violated pair.
pub fn validate_tstar(layout: &TStarLayout) -> Vec<Violation> {
    let t = layout.tournament();
    let n = t.len();
    let mut out = Vec::new();
    let structure = |detail: String| Violation {
        pair: None,
        rule: TStarRule::Structure,
        detail,
    };

    if layout.size.is_multiple_of(2) {
        out.push(structure(format!("size {} is even", layout.size)));
    }
    if layout.levels.len() != layout.size || layout.chain.len() != layout.size + 1 {
        out.push(structure("level or chain count does not match the size".into()));
        return out;
    }
    let mut position: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut claim = |a: usize, level: usize, k: usize, out: &mut Vec<Violation>| {
        if a >= n || position[a].replace((level, k)).is_some() {
            out.push(structure(format!("alternative {a} placed twice or out of range")));
        }
    };
    for (i, &c) in layout.chain.iter().enumerate() {
        claim(c, 0, i, &mut out);
    }
    for (i, members) in layout.levels.iter().enumerate() {
        let level = i + 1;
        let want = if level % 2 == 1 { 3 } else { 1 };
        if members.len() != want {
            out.push(structure(format!("level {level} has {} members", members.len())));
        }
        for (k, &u) in members.iter().enumerate() {
            claim(u, level, k, &mut out);
        }
    }
    if position.iter().any(Option::is_none) {
        out.push(structure("some alternative belongs to no level or chain".into()));
    }
    if t.name(layout.chain[0]) != "d" {
        out.push(structure("c0 is not named d".into()));
    }
    if !out.is_empty() {
        return out;
    }

    for a in 0..n {
        for b in a + 1..n {
            let (pa, pb) = (position[a].unwrap(), position[b].unwrap());
            // (rule, true if a should beat b)
            let expect = match (pa, pb) {
                ((0, i), (0, j)) => Some((TStarRule::ChainOrder, i > j)),
                ((0, j), (level, _)) => Some(if level == j {
                    (TStarRule::LevelBeatsOwnChain, false)
                } else {
                    (TStarRule::ChainBeatsOtherLevel, true)
                }),
                ((level, _), (0, j)) => Some(if level == j {
                    (TStarRule::LevelBeatsOwnChain, true)
                } else {
                    (TStarRule::ChainBeatsOtherLevel, false)
                }),
                ((i, k), (j, l)) if i == j => Some((TStarRule::TripleCycle, l == (k + 1) % 3)),
                ((i, _), (j, _)) if i % 2 == 0 || j % 2 == 0 => {
                    Some((TStarRule::Separator, i < j))
                }
                _ => None,
            };
            if let Some((rule, a_wins)) = expect {
                if t.beats(a, b) != a_wins {
                    let (w, l) = if a_wins { (a, b) } else { (b, a) };
                    out.push(Violation {
                        pair: Some((w, l)),
                        rule,
                        detail: format!("expected {} ≻ {}", t.name(w), t.name(l)),
                    });
                }
            }
        }
    }
    out
}
