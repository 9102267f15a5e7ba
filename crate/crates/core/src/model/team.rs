use std::collections::btree_map::{self, BTreeMap};

use super::Signature;
use crate::error::{Error, Result};

/// A total assignment, stored as value indices in signature order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(Vec<u32>);

impl Assignment {
    pub fn new(values: Vec<u32>) -> Self {
        Assignment(values)
    }

    /// Builds an assignment from `(variable, value)` tokens. Every variable of
    /// the signature must be given exactly once.
    pub fn from_tokens<'a, I>(sig: &Signature, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut values: Vec<Option<u32>> = vec![None; sig.len()];
        for (name, token) in pairs {
            let (var, value) = sig.pair(name, token)?;
            if values[var].replace(value).is_some() {
                return Err(Error::Format(format!("variable `{name}` assigned twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(var, v)| {
                v.ok_or_else(|| Error::PartialAssignment {
                    assignment: String::new(),
                    variable: sig.name(var).to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Assignment(values))
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn into_values(self) -> Vec<u32> {
        self.0
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> AssignmentDisplay<'a> {
        AssignmentDisplay { sig, assignment: self }
    }
}

pub struct AssignmentDisplay<'a> {
    sig: &'a Signature,
    assignment: &'a Assignment,
}

impl std::fmt::Display for AssignmentDisplay<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (var, &value) in self.assignment.0.iter().enumerate() {
            if var > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}={}", self.sig.name(var), self.sig.value(var, value))?;
        }
        f.write_str(")")
    }
}

/// A multiset of assignments. Only multiplicities matter, so rows carry a
/// count instead of a key column.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiteam {
    counts: BTreeMap<Assignment, u64>,
    size: u64,
}

impl Multiteam {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rows<I: IntoIterator<Item = (Assignment, u64)>>(rows: I) -> Self {
        let mut team = Multiteam::new();
        for (a, c) in rows {
            team.insert(a, c);
        }
        team
    }

    /// Adds `count` copies; a zero count is a no-op.
    pub fn insert(&mut self, assignment: Assignment, count: u64) {
        if count == 0 {
            return;
        }
        *self.counts.entry(assignment).or_insert(0) += count;
        self.size += count;
    }

    /// Cardinality, counting copies.
    pub fn len(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Number of distinct assignments.
    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, assignment: &Assignment) -> u64 {
        self.counts.get(assignment).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Assignment, u64> {
        self.counts.iter()
    }

    pub fn assignments(&self) -> btree_map::Keys<'_, Assignment, u64> {
        self.counts.keys()
    }

    pub fn filter<F: FnMut(&Assignment) -> bool>(&self, mut keep: F) -> Multiteam {
        Multiteam::from_rows(self.iter().filter(|(a, _)| keep(a)).map(|(a, &c)| (a.clone(), c)))
    }

    pub fn map_counts<F: FnMut(u64) -> u64>(&self, mut f: F) -> Multiteam {
        Multiteam::from_rows(self.iter().map(|(a, &c)| (a.clone(), f(c))))
    }

    /// Greatest common divisor of all multiplicities; zero when empty.
    pub fn count_gcd(&self) -> u64 {
        use num_integer::Integer;
        self.counts.values().fold(0u64, |g, &c| g.gcd(&c))
    }
}

impl<'a> IntoIterator for &'a Multiteam {
    type Item = (&'a Assignment, &'a u64);
    type IntoIter = btree_map::Iter<'a, Assignment, u64>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl FromIterator<Assignment> for Multiteam {
    fn from_iter<I: IntoIterator<Item = Assignment>>(iter: I) -> Self {
        Multiteam::from_rows(iter.into_iter().map(|a| (a, 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_aggregate_and_zero_is_dropped() {
        let a = Assignment::new(vec![0, 1]);
        let b = Assignment::new(vec![1, 0]);
        let mut t = Multiteam::new();
        t.insert(a.clone(), 2);
        t.insert(b.clone(), 0);
        t.insert(a.clone(), 1);
        assert_eq!(t.len(), 3);
        assert_eq!(t.support_len(), 1);
        assert_eq!(t.count(&a), 3);
        assert_eq!(t.count(&b), 0);
    }

    #[test]
    fn partial_assignments_are_rejected() {
        let sig = Signature::new([("X", vec!["0", "1"]), ("Y", vec!["0"])]).unwrap();
        assert!(matches!(
            Assignment::from_tokens(&sig, [("X", "0")]),
            Err(Error::PartialAssignment { .. })
        ));
        assert!(matches!(
            Assignment::from_tokens(&sig, [("X", "2"), ("Y", "0")]),
            Err(Error::RangeError { .. })
        ));
    }
}
