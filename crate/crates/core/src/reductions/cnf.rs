//! 3CNF formulas and DIMACS input.

use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Not;

/// A propositional variable (1-based, as in DIMACS) or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub variable: u32,
    pub negated: bool,
}

impl Literal {
    pub fn pos(variable: u32) -> Self {
        Literal { variable, negated: false }
    }

    pub fn neg(variable: u32) -> Self {
        Literal { variable, negated: true }
    }

    /// From a non-zero DIMACS integer.
    pub fn from_dimacs(value: i32) -> Option<Self> {
        (value != 0).then(|| Literal {
            variable: value.unsigned_abs(),
            negated: value < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.variable as i64)
        } else {
            self.variable as i64
        }
    }

    pub fn complement(self) -> Self {
        !self
    }

    pub fn is_complement_of(self, other: Literal) -> bool {
        self == !other
    }

    /// Truth value under `assignment[variable - 1]`.
    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.variable as usize - 1] != self.negated
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal {
            variable: self.variable,
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

pub type Clause = [Literal; 3];

/// A conjunction of clauses with exactly three distinct, pairwise
/// non-complementary literals each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Clause>,
}

fn check_clause(index: usize, clause: &Clause) -> Result<()> {
    let err = |msg: String| Error::InvalidClause { clause: index + 1, msg };
    for (i, a) in clause.iter().enumerate() {
        if a.variable == 0 {
            return Err(err("variable 0 is not allowed".into()));
        }
        for b in &clause[i + 1..] {
            if a == b {
                return Err(err(format!("duplicate literal {a}")));
            }
            if a.is_complement_of(*b) {
                return Err(err(format!("complementary literals {a} and {b}")));
            }
        }
    }
    Ok(())
}

impl Cnf {
    /// Validates every clause; `num_vars` must cover every variable used.
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::InvalidArgument("a formula needs at least one clause".into()));
        }
        for (i, c) in clauses.iter().enumerate() {
            check_clause(i, c)?;
            if let Some(l) = c.iter().find(|l| l.variable as usize > num_vars) {
                return Err(Error::InvalidClause {
                    clause: i + 1,
                    msg: format!("variable {} exceeds the declared {num_vars}", l.variable),
                });
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    /// From DIMACS-style integer triples; the variable count is the largest
    /// variable used.
    pub fn from_ints(clauses: &[[i32; 3]]) -> Result<Self> {
        let clauses: Vec<Clause> = clauses
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let lit = |v: i32| {
                    Literal::from_dimacs(v).ok_or(Error::InvalidClause {
                        clause: i + 1,
                        msg: "literal 0 inside a clause".into(),
                    })
                };
                Ok([lit(c[0])?, lit(c[1])?, lit(c[2])?])
            })
            .collect::<Result<_>>()?;
        let num_vars = clauses
            .iter()
            .flatten()
            .map(|l| l.variable as usize)
            .max()
            .unwrap_or(0);
        Cnf::new(num_vars, clauses)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Number of clauses.
    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Variables occurring in some clause.
    pub fn variables(&self) -> BTreeSet<u32> {
        self.clauses.iter().flatten().map(|l| l.variable).collect()
    }

    pub fn literal(&self, clause: usize, pos: usize) -> Literal {
        self.clauses[clause][pos]
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }

    /// Parses DIMACS CNF. Comment lines start with `c`; a line starting with
    /// `%` ends the input. Clauses may span lines and must end with `0`.
    pub fn parse_dimacs(text: &str) -> Result<Cnf> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses: Vec<Vec<Literal>> = Vec::new();
        let mut current: Vec<Literal> = Vec::new();

        for (ln, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(Error::Parse { line: ln, msg: "second header".into() });
                }
                let parts: Vec<&str> = line.split_whitespace().collect();
                let parsed = match parts.as_slice() {
                    ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or_else(|| Error::Parse {
                    line: ln,
                    msg: "malformed header, expected `p cnf <vars> <clauses>`".into(),
                })?);
                continue;
            }
            let Some((num_vars, _)) = header else {
                return Err(Error::Parse { line: ln, msg: "clause before header".into() });
            };
            for tok in line.split_whitespace() {
                let value: i32 = tok.parse().map_err(|_| Error::Parse {
                    line: ln,
                    msg: format!("bad literal `{tok}`"),
                })?;
                match Literal::from_dimacs(value) {
                    None => clauses.push(std::mem::take(&mut current)),
                    Some(l) => {
                        if l.variable as usize > num_vars {
                            return Err(Error::InvalidClause {
                                clause: clauses.len() + 1,
                                msg: format!("variable {} exceeds the declared {num_vars}", l.variable),
                            });
                        }
                        current.push(l);
                    }
                }
            }
        }

        let (num_vars, declared) = header.ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        if !current.is_empty() {
            return Err(Error::InvalidClause {
                clause: clauses.len() + 1,
                msg: "clause not terminated by 0".into(),
            });
        }
        if clauses.len() != declared {
            return Err(Error::InvalidArgument(format!(
                "header declares {declared} clauses, found {}",
                clauses.len()
            )));
        }
        let mut fixed = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.into_iter().enumerate() {
            let arr: Clause = c.as_slice().try_into().map_err(|_| Error::InvalidClause {
                clause: i + 1,
                msg: format!("expected 3 literals, found {}", c.len()),
            })?;
            fixed.push(arr);
        }
        Cnf::new(num_vars, fixed)
    }
}

/// One literal position (0, 1 or 2) per clause.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChoiceSet {
    picks: Vec<usize>,
}

impl ChoiceSet {
    pub fn new(cnf: &Cnf, picks: Vec<usize>) -> Result<Self> {
        if picks.len() != cnf.m() {
            return Err(Error::InvalidChoiceSet(format!(
                "{} picks for {} clauses",
                picks.len(),
                cnf.m()
            )));
        }
        if let Some(p) = picks.iter().find(|&&p| p > 2) {
            return Err(Error::InvalidChoiceSet(format!("position {p} is not in 0..3")));
        }
        Ok(ChoiceSet { picks })
    }

    pub fn picks(&self) -> &[usize] {
        &self.picks
    }

    pub fn literals<'a>(&'a self, cnf: &'a Cnf) -> impl Iterator<Item = Literal> + 'a {
        self.picks.iter().enumerate().map(|(i, &k)| cnf.literal(i, k))
    }

    /// True iff no two picked literals are complementary.
    pub fn is_consistent(&self, cnf: &Cnf) -> bool {
        let lits: Vec<Literal> = self.literals(cnf).collect();
        lits.iter()
            .enumerate()
            .all(|(i, a)| lits[i + 1..].iter().all(|b| !a.is_complement_of(*b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG: &str = "c (-p v s v q)(p v s v r)(p v q v -r), p=1 q=2 r=3 s=4\np cnf 4 3\n-1 4 2 0\n1 4 3 0\n1 2 -3 0\n";

    #[test]
    fn parses_three_clause_formula() {
        let f = Cnf::parse_dimacs(FIG).unwrap();
        assert_eq!(f.m(), 3);
        assert_eq!(f.num_vars(), 4);
        assert_eq!(f.variables().len(), 4);
        assert_eq!(f.literal(0, 0), Literal::neg(1));
        assert_eq!(Cnf::parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn rejects_bad_clauses() {
        let bad = |text: &str| Cnf::parse_dimacs(text).unwrap_err();
        assert_eq!(
            bad("p cnf 2 1\n1 -1 2 0\n"),
            Error::InvalidClause { clause: 1, msg: "complementary literals 1 and -1".into() }
        );
        assert!(matches!(bad("p cnf 2 1\n1 2 0\n"), Error::InvalidClause { clause: 1, .. }));
        assert!(matches!(bad("p cnf 3 2\n1 2 3 0\n1 1 2 0\n"), Error::InvalidClause { clause: 2, .. }));
        assert!(matches!(bad("p dnf 2 1\n1 2 3 0\n"), Error::Parse { line: 1, .. }));
        assert!(matches!(bad("1 2 3 0\n"), Error::Parse { line: 1, .. }));
        assert!(matches!(bad("p cnf 2 1\n1 2 3 0\n"), Error::InvalidClause { clause: 1, .. }));
        assert!(matches!(bad("p cnf 3 1\n1 2 3\n"), Error::InvalidClause { clause: 1, .. }));
        assert!(matches!(bad("p cnf 3 2\n1 2 3 0\n"), Error::InvalidArgument(_)));
        assert!(matches!(bad("p cnf 3 1\n1 x 3 0\n"), Error::Parse { line: 2, .. }));
    }

    #[test]
    fn multiline_clauses_and_end_marker() {
        let f = Cnf::parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n-2 -3 0\n%\n0\n").unwrap();
        assert_eq!(f.m(), 2);
        assert_eq!(f.literal(1, 0), Literal::neg(1));
    }

    #[test]
    fn literal_algebra() {
        let p = Literal::pos(3);
        assert_eq!(!!p, p);
        assert!(p.is_complement_of(!p));
        assert!(!p.is_complement_of(p));
        assert!(p.eval(&[false, false, true]));
        assert!((!p).eval(&[true, true, false]));
    }

    #[test]
    fn choice_sets() {
        let f = Cnf::parse_dimacs(FIG).unwrap();
        // s, s, p
        assert!(ChoiceSet::new(&f, vec![1, 1, 0]).unwrap().is_consistent(&f));
        // -p, p, p
        assert!(!ChoiceSet::new(&f, vec![0, 0, 0]).unwrap().is_consistent(&f));
        assert!(ChoiceSet::new(&f, vec![0, 0]).is_err());
        assert!(ChoiceSet::new(&f, vec![0, 0, 3]).is_err());
    }
}
