use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Structural identity of a variable. The derived order (tag first, then
/// components) is the canonical variable order used everywhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKey {
    /// `X_{b',b}`: a critical path and a skeleton path, each given as a sort key.
    Pair(Vec<u32>, Vec<u32>),
    /// `X_{ij}` after discarding redundant coordinates (1-based indices).
    Reduced(u32, u32),
    /// `Y_{i_1,...,i_a}` for an ascending 1-based tuple.
    Pluecker(Vec<u32>),
    /// Anything else, including auxiliary elimination variables.
    Aux(String),
}

/// A polynomial variable. Equality, ordering and hashing only look at the
/// key; the label is what gets printed.
#[derive(Clone)]
pub struct Var {
    key: VarKey,
    label: Arc<str>,
}

impl Var {
    pub fn pair(critical: Vec<u32>, member: Vec<u32>, label: impl Into<Arc<str>>) -> Self {
        Var { key: VarKey::Pair(critical, member), label: label.into() }
    }

    pub fn reduced(i: u32, j: u32) -> Self {
        Var { key: VarKey::Reduced(i, j), label: format!("X[{i},{j}]").into() }
    }

    pub fn pluecker(tuple: &[u32]) -> Self {
        let inner: Vec<String> = tuple.iter().map(u32::to_string).collect();
        Var {
            key: VarKey::Pluecker(tuple.to_vec()),
            label: format!("Y[{}]", inner.join(",")).into(),
        }
    }

    pub fn aux(name: &str) -> Self {
        Var { key: VarKey::Aux(name.to_string()), label: name.into() }
    }

    pub fn key(&self) -> &VarKey {
        &self.key
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl PartialEq for Var {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Var {}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl Hash for Var {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}
