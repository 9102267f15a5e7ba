use std::collections::BTreeMap;
use std::sync::Arc;

use super::Signature;
use crate::error::{Error, Result};

/// A structural function for one endogenous variable, given as a total table
/// over an explicit argument list. The function is understood to ignore every
/// other variable (those are dummy arguments).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CausalFunction {
    target: usize,
    /// Arguments in signature order.
    args: Vec<usize>,
    radix: Vec<u32>,
    /// Output value indices; row-major, first argument most significant.
    table: Vec<u32>,
}

impl CausalFunction {
    /// `table[i]` is the output for the `i`-th tuple of `sig.tuples(args)`.
    /// Arguments may be listed in any order; they are normalized to
    /// signature order.
    pub fn new(sig: &Signature, target: usize, args: Vec<usize>, table: Vec<u32>) -> Result<Self> {
        let name = || sig.name(target).to_string();
        let invalid = |reason: String| Error::InvalidFunction { variable: name(), reason };
        for (i, &a) in args.iter().enumerate() {
            if a >= sig.len() {
                return Err(invalid(format!("argument index {a} out of bounds")));
            }
            if a == target {
                return Err(invalid("a variable cannot be its own argument".into()));
            }
            if args[..i].contains(&a) {
                return Err(invalid(format!("argument `{}` listed twice", sig.name(a))));
            }
        }
        let radix: Vec<u32> = args.iter().map(|&a| sig.range_len(a) as u32).collect();
        let expected: usize = radix.iter().map(|&r| r as usize).product();
        if table.len() != expected {
            return Err(invalid(format!("table has {} entries, expected {expected}", table.len())));
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= sig.range_len(target)) {
            return Err(invalid(format!("output index {bad} out of range")));
        }
        let f = CausalFunction { target, args, radix, table };
        let mut sorted_args = f.args.clone();
        sorted_args.sort_unstable();
        if sorted_args == f.args {
            return Ok(f);
        }
        Ok(f.reindex(sig, sorted_args))
    }

    /// Builds a function from value tokens; `table` maps argument tuples (in
    /// the order of `args`) to outputs and must be total.
    pub fn from_tokens<'a, I>(sig: &Signature, target: &str, args: &[&str], table: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<&'a str>, &'a str)>,
    {
        let target = sig.var(target)?;
        let arg_idx = args.iter().map(|a| sig.var(a)).collect::<Result<Vec<_>>>()?;
        let radix: Vec<u32> = arg_idx.iter().map(|&a| sig.range_len(a) as u32).collect();
        let mut out: Vec<Option<u32>> = vec![None; radix.iter().map(|&r| r as usize).product()];
        for (key, value) in table {
            if key.len() != arg_idx.len() {
                return Err(Error::InvalidFunction {
                    variable: sig.name(target).to_string(),
                    reason: format!("table key has {} values, expected {}", key.len(), arg_idx.len()),
                });
            }
            let tuple = key
                .iter()
                .zip(&arg_idx)
                .map(|(tok, &a)| sig.value_of(a, tok))
                .collect::<Result<Vec<_>>>()?;
            let slot = index_of(&radix, &tuple);
            out[slot] = Some(sig.value_of(target, value)?);
        }
        let table = out
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    let tuple = decode(&radix, i);
                    let key: Vec<&str> = tuple.iter().zip(&arg_idx).map(|(&x, &a)| sig.value(a, x)).collect();
                    Error::InvalidFunction {
                        variable: sig.name(target).to_string(),
                        reason: format!("table is missing the entry for ({})", key.join(",")),
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CausalFunction::new(sig, target, arg_idx, table)
    }

    /// Builds a function by evaluating `f` on every tuple over `args`.
    pub fn from_fn<F>(sig: &Signature, target: usize, args: Vec<usize>, mut f: F) -> Result<Self>
    where
        F: FnMut(&[u32]) -> u32,
    {
        let table = sig.tuples(&args).map(|t| f(&t)).collect();
        CausalFunction::new(sig, target, args, table)
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn args(&self) -> &[usize] {
        &self.args
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Output for a tuple of argument values (in `args` order).
    pub fn apply(&self, tuple: &[u32]) -> u32 {
        self.table[index_of(&self.radix, tuple)]
    }

    /// Output on a full row indexed by variable.
    #[inline]
    pub fn eval(&self, row: &[u32]) -> u32 {
        let mut idx = 0usize;
        for (&a, &r) in self.args.iter().zip(&self.radix) {
            idx = idx * r as usize + row[a] as usize;
        }
        self.table[idx]
    }

    pub fn is_constant(&self) -> bool {
        self.table.windows(2).all(|w| w[0] == w[1])
    }

    /// Arguments that never change the output.
    pub fn dummy_args(&self) -> Vec<usize> {
        (0..self.args.len()).filter(|&pos| self.is_dummy_at(pos)).map(|pos| self.args[pos]).collect()
    }

    fn is_dummy_at(&self, pos: usize) -> bool {
        // stride of argument `pos` in the row-major table
        let stride: usize = self.radix[pos + 1..].iter().map(|&r| r as usize).product();
        let width = self.radix[pos] as usize;
        let block = stride * width;
        self.table.chunks(block).all(|chunk| {
            (0..stride).all(|offset| {
                let first = chunk[offset];
                (1..width).all(|k| chunk[offset + k * stride] == first)
            })
        })
    }

    /// The same function with every dummy argument dropped; its arguments are
    /// exactly the parents of the target.
    pub fn minimize(&self, sig: &Signature) -> CausalFunction {
        let dummies = self.dummy_args();
        if dummies.is_empty() {
            return self.clone();
        }
        let keep: Vec<usize> = self.args.iter().copied().filter(|a| !dummies.contains(a)).collect();
        self.reindex(sig, keep)
    }

    /// Re-tabulates over a new argument list. Variables absent from `args`
    /// are read as their first range value, which is only meaningful when
    /// they are dummies.
    fn reindex(&self, sig: &Signature, args: Vec<usize>) -> CausalFunction {
        let mut row = vec![0u32; sig.len()];
        let table = sig
            .tuples(&args)
            .map(|t| {
                for (&a, &v) in args.iter().zip(&t) {
                    row[a] = v;
                }
                self.eval(&row)
            })
            .collect();
        let radix = args.iter().map(|&a| sig.range_len(a) as u32).collect();
        CausalFunction { target: self.target, args, radix, table }
    }
}

fn index_of(radix: &[u32], tuple: &[u32]) -> usize {
    tuple.iter().zip(radix).fold(0usize, |acc, (&v, &r)| acc * r as usize + v as usize)
}

fn decode(radix: &[u32], mut index: usize) -> Vec<u32> {
    let mut out = vec![0u32; radix.len()];
    for i in (0..radix.len()).rev() {
        out[i] = (index % radix[i] as usize) as u32;
        index /= radix[i] as usize;
    }
    out
}

/// Minimizes a function. Free-function form of [`CausalFunction::minimize`].
pub fn minimize_parents(f: &CausalFunction, sig: &Signature) -> CausalFunction {
    f.minimize(sig)
}

/// Structural functions keyed by endogenous variable. Variables without an
/// entry are exogenous.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FunctionComponent {
    functions: BTreeMap<usize, Arc<CausalFunction>>,
}

impl FunctionComponent {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_functions<I: IntoIterator<Item = CausalFunction>>(functions: I) -> Result<Self> {
        let mut fc = FunctionComponent::new();
        for f in functions {
            fc.insert(f)?;
        }
        Ok(fc)
    }

    /// Adds a law; a second law for the same variable is an error.
    pub fn insert(&mut self, f: CausalFunction) -> Result<()> {
        let target = f.target();
        if self.functions.contains_key(&target) {
            return Err(Error::Format(format!("two laws for variable index {target}")));
        }
        self.functions.insert(target, Arc::new(f));
        Ok(())
    }

    pub fn get(&self, var: usize) -> Option<&CausalFunction> {
        self.functions.get(&var).map(|f| &**f)
    }

    pub(crate) fn get_arc(&self, var: usize) -> Option<&Arc<CausalFunction>> {
        self.functions.get(&var)
    }

    pub fn is_endogenous(&self, var: usize) -> bool {
        self.functions.contains_key(&var)
    }

    pub fn endogenous(&self) -> impl Iterator<Item = usize> + '_ {
        self.functions.keys().copied()
    }

    pub fn exogenous(&self, sig: &Signature) -> Vec<usize> {
        (0..sig.len()).filter(|v| !self.is_endogenous(*v)).collect()
    }

    pub fn functions(&self) -> impl Iterator<Item = &CausalFunction> {
        self.functions.values().map(|f| &**f)
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Every law with its dummy arguments removed.
    pub fn minimized(&self, sig: &Signature) -> FunctionComponent {
        let functions = self
            .functions
            .iter()
            .map(|(&v, f)| {
                let m = f.minimize(sig);
                let f = if m == **f { Arc::clone(f) } else { Arc::new(m) };
                (v, f)
            })
            .collect();
        FunctionComponent { functions }
    }

    /// Drops the laws of the given variables (they become exogenous).
    pub fn without(&self, vars: &[usize]) -> FunctionComponent {
        let functions = self
            .functions
            .iter()
            .filter(|(v, _)| !vars.contains(v))
            .map(|(&v, f)| (v, Arc::clone(f)))
            .collect();
        FunctionComponent { functions }
    }

    /// Endogenous variables in an order where every law comes after the
    /// laws of its arguments. Assumes minimized laws so that the order
    /// follows parents only.
    pub fn topological_order(&self, sig: &Signature) -> Result<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let mut marks = vec![Mark::New; sig.len()];
        let mut order = Vec::with_capacity(self.functions.len());
        let mut stack: Vec<usize> = Vec::new();

        fn visit(
            fc: &FunctionComponent,
            sig: &Signature,
            v: usize,
            marks: &mut [Mark],
            order: &mut Vec<usize>,
            stack: &mut Vec<usize>,
        ) -> Result<()> {
            match marks[v] {
                Mark::Done => return Ok(()),
                Mark::Active => {
                    let start = stack.iter().position(|&s| s == v).unwrap_or(0);
                    let mut cycle: Vec<String> = stack[start..].iter().map(|&s| sig.name(s).to_string()).collect();
                    cycle.push(sig.name(v).to_string());
                    return Err(Error::CyclicGraph(cycle));
                }
                Mark::New => {}
            }
            let Some(f) = fc.get(v) else {
                marks[v] = Mark::Done;
                return Ok(());
            };
            marks[v] = Mark::Active;
            stack.push(v);
            for &p in f.args() {
                visit(fc, sig, p, marks, order, stack)?;
            }
            stack.pop();
            marks[v] = Mark::Done;
            order.push(v);
            Ok(())
        }

        for v in self.endogenous() {
            visit(self, sig, v, &mut marks, &mut order, &mut stack)?;
        }
        Ok(order)
    }
}
