//! Name-keyed registries of interchangeable strategies.
//!
//! Each algorithm family (eigensolvers, mean-field solvers, RPA energy
//! methods, fidelity references) exposes a trait; concrete variants are
//! registered under a stable name and looked up at runtime.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub trait Named {
    fn name(&self) -> &'static str;
}

pub struct Registry<T: ?Sized + Named> {
    kind: &'static str,
    entries: BTreeMap<&'static str, Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: BTreeMap::new(),
        }
    }

    /// Insert a strategy under its own name, replacing any previous entry.
    pub fn register(&mut self, strategy: Box<T>) -> &mut Self {
        self.entries.insert(strategy.name(), strategy);
        self
    }

    pub fn with(mut self, strategy: Box<T>) -> Self {
        self.register(strategy);
        self
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.values().map(|b| b.as_ref())
    }
}
