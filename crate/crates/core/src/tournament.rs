//! Tournaments, their restrictions, and the plain-text and DOT formats.

use crate::altset::AltSet;
use crate::error::{Error, Result};
use crate::relation::Relation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::fmt::Write as _;

/// Largest `n` that [`enumerate_tournaments`] accepts unless a cap is given.
pub const DEFAULT_ENUMERATION_CAP: usize = 7;

/// A complete, irreflexive, antisymmetric dominance relation over named
/// alternatives. Index order is the canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// `beats[i]` holds every `j` with `i ≻ j`.
    beats: Vec<AltSet>,
    /// `beaten_by[i]` holds every `j` with `j ≻ i`.
    beaten_by: Vec<AltSet>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Default name of alternative `i`: `a`..`z`, then `v26`, `v27`, ...
pub fn default_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("v{i}")
    }
}

fn validate_names(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::InvalidTournament(format!("alternative {i} has an empty name")));
        }
        if name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidTournament(format!("name `{name}` contains whitespace")));
        }
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::InvalidTournament(format!("duplicate name `{name}`")));
        }
    }
    Ok(index)
}

impl Tournament {
    /// Builds a tournament from the orientation of every pair `i < j`:
    /// `upper(i, j)` is true iff `i ≻ j`.
    pub fn from_upper<F>(names: Vec<String>, mut upper: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> bool,
    {
        let index = validate_names(&names)?;
        let n = names.len();
        let mut beats = vec![AltSet::empty(n); n];
        let mut beaten_by = vec![AltSet::empty(n); n];
        for i in 0..n {
            for j in i + 1..n {
                let (w, l) = if upper(i, j) { (i, j) } else { (j, i) };
                beats[w].insert(l);
                beaten_by[l].insert(w);
            }
        }
        Ok(Tournament {
            names,
            index,
            beats,
            beaten_by,
        })
    }

    /// Builds a tournament from a full boolean matrix, checking every invariant.
    pub fn from_matrix(names: Vec<String>, matrix: &[Vec<bool>]) -> Result<Self> {
        let n = names.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTournament(format!("matrix is not {n}x{n}")));
        }
        for i in 0..n {
            if matrix[i][i] {
                return Err(Error::InvalidTournament(format!("alternative {i} dominates itself")));
            }
            for j in i + 1..n {
                if matrix[i][j] == matrix[j][i] {
                    return Err(Error::InvalidTournament(format!(
                        "pair ({i}, {j}) is not oriented exactly once"
                    )));
                }
            }
        }
        Self::from_upper(names, |i, j| matrix[i][j])
    }

    /// Same as [`Tournament::from_upper`] with [`default_name`]s.
    pub fn unnamed<F>(n: usize, upper: F) -> Self
    where
        F: FnMut(usize, usize) -> bool,
    {
        Self::from_upper((0..n).map(default_name).collect(), upper)
            .expect("default names are valid")
    }

    /// The transitive tournament where lower indices dominate higher ones.
    pub fn transitive(n: usize) -> Self {
        Self::unnamed(n, |_, _| true)
    }

    /// Tournament number `index` among the `2^(n(n-1)/2)` labeled tournaments
    /// on `n` alternatives. Bit `k` of `index` orients the `k`-th upper-triangle
    /// pair `(i, j)`, `i < j`, in row-major order; a set bit means `i ≻ j`.
    pub fn from_index(n: usize, index: u64) -> Self {
        let mut bit = 0;
        Self::unnamed(n, |_, _| {
            let b = index >> bit & 1 == 1;
            bit += 1;
            b
        })
    }

    /// Inverse of [`Tournament::from_index`]; requires at most 64 pairs.
    pub fn upper_bits(&self) -> u64 {
        let mut bits = 0u64;
        let mut bit = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.beats(i, j) {
                    bits |= 1 << bit;
                }
                bit += 1;
            }
        }
        bits
    }

    /// The upper triangle as a string of `0`/`1` in row-major order.
    pub fn upper_string(&self) -> String {
        let mut s = String::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                s.push(if self.beats(i, j) { '1' } else { '0' });
            }
        }
        s
    }

    pub fn from_upper_string(n: usize, bits: &str) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if bits.len() != expected || bits.chars().any(|c| c != '0' && c != '1') {
            return Err(Error::InvalidArgument(format!(
                "expected {expected} binary digits for n = {n}, got `{bits}`"
            )));
        }
        let mut chars = bits.bytes();
        Ok(Self::unnamed(n, |_, _| chars.next() == Some(b'1')))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn set_of_names(&self, names: &[&str]) -> Result<AltSet> {
        let mut set = AltSet::empty(self.len());
        for name in names {
            set.insert(self.index_of(name)?);
        }
        Ok(set)
    }

    /// Whether `i ≻ j`.
    #[inline]
    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.beats[i].contains(j)
    }

    /// All alternatives `i` dominates.
    #[inline]
    pub fn dominion(&self, i: usize) -> &AltSet {
        &self.beats[i]
    }

    /// All alternatives dominating `i`.
    #[inline]
    pub fn dominators_of(&self, i: usize) -> &AltSet {
        &self.beaten_by[i]
    }

    pub fn all(&self) -> AltSet {
        AltSet::full(self.len())
    }

    pub(crate) fn check_set(&self, x: &AltSet) -> Result<()> {
        if x.universe() != self.len() {
            return Err(Error::UniverseMismatch {
                expected: self.len(),
                found: x.universe(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_member(&self, x: &AltSet, a: usize) -> Result<()> {
        self.check_set(x)?;
        if a >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: a,
                size: self.len(),
            });
        }
        if !x.contains(a) {
            return Err(Error::NotInSet(a));
        }
        Ok(())
    }

    /// The subtournament induced by `x`, keeping names and their order.
    pub fn restrict(&self, x: &AltSet) -> Result<Tournament> {
        self.check_set(x)?;
        if x.is_empty() {
            return Err(Error::EmptySet);
        }
        let keep = x.to_vec();
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        Tournament::from_upper(names, |i, j| self.beats(keep[i], keep[j]))
    }

    /// Alternatives of `x` that dominate `a`.
    pub fn dominators(&self, x: &AltSet, a: usize) -> Result<AltSet> {
        self.check_member(x, a)?;
        Ok(self.beaten_by[a].intersection(x))
    }

    /// The alternative of `x` dominating every other member of `x`, if any.
    pub fn condorcet_winner(&self, x: &AltSet) -> Result<Option<usize>> {
        self.check_set(x)?;
        if x.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(self.condorcet_winner_unchecked(x))
    }

    #[inline]
    pub(crate) fn condorcet_winner_unchecked(&self, x: &AltSet) -> Option<usize> {
        x.iter().find(|&a| !self.beaten_by[a].intersects(x))
    }

    /// Whether dominance restricted to `x` is a total order. A subtournament
    /// is transitive iff its scores within `x` are pairwise distinct.
    pub fn is_transitive(&self, x: &AltSet) -> bool {
        let k = x.len();
        let mut seen = vec![false; k];
        for a in x {
            let score = self.beats[a].intersection_len(x);
            if std::mem::replace(&mut seen[score], true) {
                return false;
            }
        }
        true
    }

    /// The dominance relation restricted to `x`.
    pub fn dominance_relation(&self, x: &AltSet) -> Result<Relation> {
        self.check_set(x)?;
        let mut rel = Relation::new(x.clone());
        for a in x {
            rel.insert_all(a, &self.beats[a].intersection(x));
        }
        Ok(rel)
    }

    /// Relabels alternatives: alternative `i` of `self` becomes alternative
    /// `perm[i]` of the result, keeping its name.
    pub fn permuted(&self, perm: &[usize]) -> Result<Tournament> {
        let n = self.len();
        let mut inverse = vec![usize::MAX; n];
        if perm.len() != n {
            return Err(Error::InvalidArgument("permutation has the wrong length".into()));
        }
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inverse[p] != usize::MAX {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            inverse[p] = i;
        }
        let names = inverse.iter().map(|&i| self.names[i].clone()).collect();
        Tournament::from_upper(names, |i, j| self.beats(inverse[i], inverse[j]))
    }

    /// Copy with the orientation of the pair `{a, b}` reversed.
    pub fn flipped(&self, a: usize, b: usize) -> Tournament {
        assert_ne!(a, b);
        let mut t = self.clone();
        let (w, l) = if t.beats(a, b) { (a, b) } else { (b, a) };
        t.beats[w].remove(l);
        t.beaten_by[l].remove(w);
        t.beats[l].insert(w);
        t.beaten_by[w].insert(l);
        t
    }

    /// Formats a set as `{a,b,c}` in index order.
    pub fn format_set(&self, x: &AltSet) -> String {
        let names: Vec<&str> = x.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Names of the members of `x`, sorted by name.
    pub fn sorted_names(&self, x: &AltSet) -> Vec<&str> {
        let mut names: Vec<&str> = x.iter().map(|i| self.name(i)).collect();
        names.sort_unstable();
        names
    }

    /// Serializes to the line-oriented text format:
    ///
    /// ```text
    /// tournament 3
    /// a b c
    /// -10
    /// 0-1
    /// 10-
    /// ```
    pub fn to_text(&self) -> String {
        let n = self.len();
        let mut out = String::with_capacity((n + 1) * (n + 2) + 16);
        let _ = writeln!(out, "tournament {n}");
        out.push_str(&self.names.join(" "));
        out.push('\n');
        for i in 0..n {
            for j in 0..n {
                out.push(match (i == j, self.beats(i, j)) {
                    (true, _) => '-',
                    (false, true) => '1',
                    (false, false) => '0',
                });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format written by [`Tournament::to_text`]. Errors carry
    /// the 1-based line number.
    pub fn parse(text: &str) -> Result<Tournament> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
        let parse_err = |line: usize, msg: String| Error::Parse { line, msg };

        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty input".into()))?;
        let n: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["tournament", n] => n
                .parse()
                .map_err(|_| parse_err(ln, format!("bad alternative count `{n}`")))?,
            _ => return Err(parse_err(ln, "expected header `tournament <n>`".into())),
        };

        let (ln, name_line) = lines
            .next()
            .ok_or_else(|| parse_err(2, "missing names line".into()))?;
        let names: Vec<String> = name_line.split_whitespace().map(str::to_string).collect();
        if names.len() != n {
            return Err(parse_err(ln, format!("expected {n} names, found {}", names.len())));
        }
        validate_names(&names).map_err(|e| parse_err(ln, e.to_string()))?;

        let mut matrix = vec![vec![false; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(i + 3, format!("missing matrix row {}", i + 1)))?;
            let cells = line.as_bytes();
            if cells.len() != n {
                return Err(parse_err(ln, format!("expected {n} characters, found {}", cells.len())));
            }
            for (j, &c) in cells.iter().enumerate() {
                match (i == j, c) {
                    (true, b'-') => {}
                    (false, b'1') => row[j] = true,
                    (false, b'0') => {}
                    _ => {
                        return Err(parse_err(
                            ln,
                            format!("unexpected character `{}` in column {}", c as char, j + 1),
                        ))
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if matrix[i][j] == matrix[j][i] {
                    return Err(parse_err(
                        j + 3,
                        format!("column {} disagrees with row {}", i + 1, i + 1),
                    ));
                }
            }
        }
        if let Some((ln, extra)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(parse_err(ln, format!("trailing content `{extra}`")));
        }
        Tournament::from_matrix(names, &matrix)
    }

    /// Graphviz rendering with one edge per dominant pair.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tournament {\n");
        for name in &self.names {
            let _ = writeln!(out, "  \"{name}\" [label=\"{name}\"];");
        }
        for i in 0..self.len() {
            for j in &self.beats[i] {
                let _ = writeln!(out, "  \"{}\" -> \"{}\";", self.names[i], self.names[j]);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// All labeled tournaments on `n` alternatives, in [`Tournament::from_index`]
/// order. `n` must lie in `1..=DEFAULT_ENUMERATION_CAP`.
pub fn enumerate_tournaments(n: usize) -> Result<impl Iterator<Item = Tournament>> {
    enumerate_tournaments_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_tournaments_capped(
    n: usize,
    cap: usize,
) -> Result<impl Iterator<Item = Tournament>> {
    let count = tournament_count(n, cap)?;
    Ok((0..count).map(move |i| Tournament::from_index(n, i)))
}

/// Number of labeled tournaments on `n` alternatives, checked against `cap`.
pub fn tournament_count(n: usize, cap: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::EmptySet);
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "tournament size",
            value: n,
            cap,
        });
    }
    let pairs = n * (n - 1) / 2;
    if pairs >= 64 {
        return Err(Error::CapExceeded {
            what: "tournament size",
            value: n,
            cap: 11,
        });
    }
    Ok(1u64 << pairs)
}

/// Seed for instance `index` of size `n` in a run seeded with `seed`
/// (SplitMix64 finalizer over the three inputs).
pub fn derive_seed(seed: u64, n: usize, index: u64) -> u64 {
    let mut z = seed
        ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A uniformly random tournament: each pair `i < j` is oriented by a fair coin
/// drawn from ChaCha8 seeded with `seed`, in row-major order.
pub fn random_tournament(n: usize, seed: u64) -> Tournament {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Tournament::unnamed(n, |_, _| rng.random_bool(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn running_example() -> Tournament {
        Tournament::parse("tournament 5\na b c d e\n-1011\n0-110\n10-01\n001-1\n0100-\n").unwrap()
    }

    #[test]
    fn running_example_dominators() {
        let t = running_example();
        let all = t.all();
        let d = |name| t.dominators(&all, t.index_of(name).unwrap()).unwrap();
        assert_eq!(t.sorted_names(&d("a")), ["c"]);
        assert_eq!(t.sorted_names(&d("e")), ["a", "c", "d"]);
        assert_eq!(t.sorted_names(&d("b")), ["a", "e"]);
        let single = t.set_of_names(&["a"]).unwrap();
        assert!(t.dominators(&single, 0).unwrap().is_empty());
        assert_eq!(t.dominators(&single, 1), Err(Error::NotInSet(1)));
    }

    #[test]
    fn running_example_restrictions() {
        let t = running_example();
        let ae = t.restrict(&t.set_of_names(&["a", "e"]).unwrap()).unwrap();
        assert_eq!(ae.names(), ["a", "e"]);
        assert!(ae.beats(0, 1));
        assert_eq!(t.restrict(&t.all()).unwrap(), t);
        let acd = t.set_of_names(&["a", "c", "d"]).unwrap();
        let r = t.restrict(&acd).unwrap();
        // a ≻ d ≻ c ≻ a
        assert!(r.beats(0, 2) && r.beats(2, 1) && r.beats(1, 0));
        assert_eq!(t.restrict(&AltSet::empty(5)), Err(Error::EmptySet));
        assert!(matches!(
            t.restrict(&AltSet::empty(4)),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn condorcet_winners() {
        let t = running_example();
        let ae = t.set_of_names(&["a", "e"]).unwrap();
        assert_eq!(t.condorcet_winner(&ae).unwrap(), Some(0));
        assert_eq!(t.condorcet_winner(&AltSet::singleton(5, 3)).unwrap(), Some(3));
        let acd = t.set_of_names(&["a", "c", "d"]).unwrap();
        assert_eq!(t.condorcet_winner(&acd).unwrap(), None);
        assert_eq!(t.condorcet_winner(&AltSet::empty(5)), Err(Error::EmptySet));
    }

    #[test]
    fn transitivity() {
        let t = running_example();
        for set in [&["a", "b", "d"][..], &["b", "c"], &["c", "a", "e"], &["d", "c", "e"]] {
            assert!(t.is_transitive(&t.set_of_names(set).unwrap()), "{set:?}");
        }
        assert!(!t.is_transitive(&t.set_of_names(&["a", "c", "d"]).unwrap()));
        assert!(t.is_transitive(&AltSet::empty(5)));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_tournaments(1).unwrap().count(), 1);
        let three: Vec<_> = enumerate_tournaments(3).unwrap().collect();
        assert_eq!(three.len(), 8);
        assert_eq!(three.iter().filter(|t| !t.is_transitive(&t.all())).count(), 2);
        assert_eq!(enumerate_tournaments(5).unwrap().count(), 1024);
        assert!(matches!(
            enumerate_tournaments(8).map(|_| ()),
            Err(Error::CapExceeded { .. })
        ));
        for (i, t) in enumerate_tournaments(4).unwrap().enumerate() {
            assert_eq!(t.upper_bits(), i as u64);
        }
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_tournament(1, 99).len(), 1);
        assert_eq!(random_tournament(9, 5), random_tournament(9, 5));
        assert_ne!(random_tournament(9, 5), random_tournament(9, 6));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let cases = [
            ("tourney 2\na b\n-1\n0-\n", 1),
            ("tournament 2\na\n-1\n0-\n", 2),
            ("tournament 2\na a\n-1\n0-\n", 2),
            ("tournament 2\na b\n-1\n1-\n", 4),
            ("tournament 2\na b\n11\n0-\n", 3),
            ("tournament 2\na b\n-1\n", 4),
            ("tournament 2\na b\n-1\n0-\nxx\n", 5),
        ];
        for (text, line) in cases {
            match Tournament::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn from_matrix_rejects_bad_relations() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(Tournament::from_matrix(names.clone(), &[vec![true, true], vec![false, false]]).is_err());
        assert!(Tournament::from_matrix(names.clone(), &[vec![false, true], vec![true, false]]).is_err());
        assert!(Tournament::from_matrix(names, &[vec![false, true], vec![false, false]]).is_ok());
        assert!(Tournament::from_upper(vec!["a b".into()], |_, _| true).is_err());
        assert!(Tournament::from_upper(vec![String::new()], |_, _| true).is_err());
    }

    #[test]
    fn dot_lists_every_edge() {
        let t = running_example();
        let dot = t.to_dot();
        assert_eq!(dot.matches(" -> ").count(), 10);
        assert!(dot.contains("\"c\" -> \"a\";"));
    }

    #[test]
    fn flip_and_permute() {
        let t = running_example();
        let f = t.flipped(0, 2);
        assert!(f.beats(0, 2) && !t.beats(0, 2));
        let p = t.permuted(&[4, 3, 2, 1, 0]).unwrap();
        assert_eq!(p.names(), ["e", "d", "c", "b", "a"]);
        assert!(p.beats(2, 4)); // c ≻ a
    }
}
