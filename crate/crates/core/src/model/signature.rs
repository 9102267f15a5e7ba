use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Finite set of variables, each with a finite ordered range of opaque value
/// tokens. The order of variables is fixed and is used everywhere: tables,
/// enumeration, printing.
#[derive(Clone)]
pub struct Signature {
    vars: Vec<String>,
    ranges: Vec<Vec<String>>,
    var_index: HashMap<String, usize>,
    value_index: Vec<HashMap<String, u32>>,
}

impl Signature {
    pub fn new<I, V, S>(vars: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, Vec<S>)>,
        V: Into<String>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut ranges = Vec::new();
        let mut var_index = HashMap::new();
        let mut value_index = Vec::new();
        for (name, range) in vars {
            let name: String = name.into();
            if name.is_empty() {
                return Err(Error::InvalidSignature("empty variable name".into()));
            }
            if var_index.insert(name.clone(), names.len()).is_some() {
                return Err(Error::InvalidSignature(format!("duplicate variable `{name}`")));
            }
            let range: Vec<String> = range.into_iter().map(Into::into).collect();
            if range.is_empty() {
                return Err(Error::InvalidSignature(format!("`{name}` has an empty range")));
            }
            let mut values = HashMap::new();
            for (i, v) in range.iter().enumerate() {
                if values.insert(v.clone(), i as u32).is_some() {
                    return Err(Error::InvalidSignature(format!(
                        "duplicate value `{v}` in the range of `{name}`"
                    )));
                }
            }
            names.push(name);
            ranges.push(range);
            value_index.push(values);
        }
        if names.is_empty() {
            return Err(Error::InvalidSignature("no variables".into()));
        }
        Ok(Signature { vars: names, ranges, var_index, value_index })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn name(&self, var: usize) -> &str {
        &self.vars[var]
    }

    pub fn range(&self, var: usize) -> &[String] {
        &self.ranges[var]
    }

    pub fn range_len(&self, var: usize) -> usize {
        self.ranges[var].len()
    }

    pub fn value(&self, var: usize, value: u32) -> &str {
        &self.ranges[var][value as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.var_index.get(name).copied()
    }

    pub fn var(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn value_of(&self, var: usize, token: &str) -> Result<u32> {
        self.value_index[var].get(token).copied().ok_or_else(|| Error::RangeError {
            variable: self.vars[var].clone(),
            value: token.to_string(),
        })
    }

    /// Resolves a `(variable, value)` pair given by name.
    pub fn pair(&self, name: &str, token: &str) -> Result<(usize, u32)> {
        let var = self.var(name)?;
        Ok((var, self.value_of(var, token)?))
    }

    /// Number of assignments of this signature, saturating.
    pub fn assignment_count(&self) -> u128 {
        self.ranges.iter().fold(1u128, |acc, r| acc.saturating_mul(r.len() as u128))
    }

    /// All tuples over the ranges of `vars`, lexicographic in range order with
    /// the first variable most significant.
    pub fn tuples(&self, vars: &[usize]) -> Tuples {
        Tuples::new(vars.iter().map(|&v| self.range_len(v) as u32).collect())
    }
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.ranges == other.ranges
    }
}

impl Eq for Signature {}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (v, r) in self.vars.iter().zip(&self.ranges) {
            map.entry(v, r);
        }
        map.finish()
    }
}

/// Odometer over a mixed-radix space.
#[derive(Debug, Clone)]
pub struct Tuples {
    radix: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl Tuples {
    pub fn new(radix: Vec<u32>) -> Self {
        let next = if radix.contains(&0) { None } else { Some(vec![0; radix.len()]) };
        Tuples { radix, next }
    }
}

impl Iterator for Tuples {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.radix[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}
