use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// Index of a variable inside its arena.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub(crate) u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered list of unique variable names. Lookup is a bijection onto `0..n`.
#[derive(Debug, PartialEq, Eq)]
pub struct VarArena {
    names: Vec<String>,
    lookup: HashMap<String, Var>,
}

pub type Arena = Arc<VarArena>;

impl VarArena {
    pub fn new<I, S>(names: I) -> Result<Arena, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut builder = ArenaBuilder::default();
        for name in names {
            builder.push(name)?;
        }
        Ok(builder.finish())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn var(&self, name: &str) -> Result<Var, AlgebraError> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn name(&self, var: Var) -> &str {
        &self.names[var.index()]
    }

    pub fn contains(&self, var: Var) -> bool {
        var.index() < self.names.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.names.len() as u32).map(Var)
    }
}

impl fmt::Display for VarArena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

#[derive(Default)]
pub struct ArenaBuilder {
    names: Vec<String>,
    lookup: HashMap<String, Var>,
}

impl ArenaBuilder {
    pub fn push<S: Into<String>>(&mut self, name: S) -> Result<Var, AlgebraError> {
        let name = name.into();
        if self.lookup.contains_key(&name) {
            return Err(AlgebraError::DuplicateVariable(name));
        }
        let var = Var(self.names.len() as u32);
        self.lookup.insert(name.clone(), var);
        self.names.push(name);
        Ok(var)
    }

    pub fn finish(self) -> Arena {
        Arc::new(VarArena {
            names: self.names,
            lookup: self.lookup,
        })
    }
}
