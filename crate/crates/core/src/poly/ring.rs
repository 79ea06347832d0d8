use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::monomial::TermOrder;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq)]
struct RingData<F: Field> {
    field: F,
    vars: Vec<String>,
    order: TermOrder,
}

/// A polynomial ring `field[vars]` with a fixed monomial order. Cheap to clone.
#[derive(Debug)]
pub struct Ring<F: Field>(Arc<RingData<F>>);

impl<F: Field> Clone for Ring<F> {
    fn clone(&self) -> Self {
        Ring(Arc::clone(&self.0))
    }
}

impl<F: Field> PartialEq for Ring<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl<F: Field> Eq for Ring<F> {}

pub fn is_valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> Ring<F> {
    pub fn new<S: AsRef<str>>(field: F, vars: &[S], order: TermOrder) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if vars.is_empty() {
            return Err(Error::InvalidRing("no variables".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_valid_identifier(v) {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        order.validate(vars.len())?;
        Ok(Ring(Arc::new(RingData { field, vars, order })))
    }

    pub fn grevlex<S: AsRef<str>>(field: F, vars: &[S]) -> Result<Self> {
        Self::new(field, vars, TermOrder::Grevlex)
    }

    #[inline]
    pub fn field(&self) -> &F {
        &self.0.field
    }

    #[inline]
    pub fn order(&self) -> &TermOrder {
        &self.0.order
    }

    pub fn variables(&self) -> &[String] {
        &self.0.vars
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// Same field and variables, different order.
    pub fn with_order(&self, order: TermOrder) -> Result<Self> {
        Self::new(self.0.field.clone(), &self.0.vars, order)
    }

    /// A ring with `names` prepended to the variables, ordered by an
    /// elimination order that eliminates the new variables first.
    pub fn with_eliminated_prefix(&self, names: &[&str]) -> Result<Self> {
        let mut vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        vars.extend(self.0.vars.iter().cloned());
        Self::new(
            self.0.field.clone(),
            &vars,
            TermOrder::Elimination(vec![names.len(), self.nvars()]),
        )
    }

    /// Pick a name not already used by the ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        let mut i = 0;
        while self.var_index(&name).is_some() {
            i += 1;
            name = format!("{stem}{i}");
        }
        name
    }
}

impl<F: Field> fmt::Display for Ring<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.0.field.spec(), self.0.vars.join(","))
    }
}
