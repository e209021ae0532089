//! Append-only registry of differential variables.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

/// A derivative `x^(j)` of a base variable `x`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiffVariable {
    pub name: String,
    pub order: u32,
}

impl DiffVariable {
    pub fn new(name: impl Into<String>, order: u32) -> Self {
        DiffVariable {
            name: name.into(),
            order,
        }
    }

    /// The variable one derivative higher.
    pub fn derivative(&self) -> Self {
        DiffVariable::new(self.name.clone(), self.order + 1)
    }
}

impl fmt::Display for DiffVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            0..=3 => write!(f, "{}{}", self.name, "'".repeat(self.order as usize)),
            j => write!(f, "{}^({})", self.name, j),
        }
    }
}

#[derive(Default)]
struct Inner {
    vars: Vec<DiffVariable>,
    index: HashMap<DiffVariable, usize>,
    constants: HashSet<String>,
}

/// Shared variable table. Indices are handed out in insertion order and never
/// reassigned, so a monomial encoded against the registry keeps its meaning as the
/// registry grows.
#[derive(Default)]
pub struct VarRegistry {
    inner: RwLock<Inner>,
}

impl fmt::Debug for VarRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = self.inner.read();
        f.debug_list().entries(inner.vars.iter().map(|v| v.to_string())).finish()
    }
}

impl VarRegistry {
    pub fn new() -> Arc<Self> {
        Arc::new(VarRegistry::default())
    }

    /// Index of `name^(order)`, registering it if needed.
    pub fn intern(&self, name: &str, order: u32) -> usize {
        let key = DiffVariable::new(name, order);
        if let Some(&i) = self.inner.read().index.get(&key) {
            return i;
        }
        let mut inner = self.inner.write();
        if let Some(&i) = inner.index.get(&key) {
            return i;
        }
        let i = inner.vars.len();
        inner.vars.push(key.clone());
        inner.index.insert(key, i);
        i
    }

    pub fn lookup(&self, name: &str, order: u32) -> Option<usize> {
        self.inner
            .read()
            .index
            .get(&DiffVariable::new(name, order))
            .copied()
    }

    pub fn var(&self, index: usize) -> DiffVariable {
        self.inner.read().vars[index].clone()
    }

    pub fn len(&self) -> usize {
        self.inner.read().vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn snapshot(&self) -> Vec<DiffVariable> {
        self.inner.read().vars.clone()
    }

    /// Marks a base name as a constant of the derivation (a parameter).
    pub fn declare_constant(&self, name: &str) {
        self.inner.write().constants.insert(name.to_string());
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.inner.read().constants.contains(name)
    }

    pub fn render(&self, index: usize) -> String {
        self.var(index).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(DiffVariable::new("x", 0).to_string(), "x");
        assert_eq!(DiffVariable::new("x", 1).to_string(), "x'");
        assert_eq!(DiffVariable::new("x", 3).to_string(), "x'''");
        assert_eq!(DiffVariable::new("x", 4).to_string(), "x^(4)");
    }

    #[test]
    fn interning_is_stable() {
        let reg = VarRegistry::new();
        let x = reg.intern("x", 0);
        let y = reg.intern("y", 0);
        let x1 = reg.intern("x", 1);
        assert_eq!((x, y, x1), (0, 1, 2));
        assert_eq!(reg.intern("y", 0), 1);
        assert_eq!(reg.lookup("x", 1), Some(2));
        assert_eq!(reg.lookup("x", 2), None);
        assert_eq!(reg.len(), 3);
    }
}
