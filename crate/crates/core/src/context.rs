use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Coefficient field used for every rank computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::InvalidContext(format!("{p} is not prime")))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("q"),
            FieldSpec::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The polynomial ring `K[x_1, ..., x_n]`: variable names plus the field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyContext {
    names: Vec<String>,
    field: FieldSpec,
}

impl PolyContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, field: FieldSpec) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidContext("at least one variable is required".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidContext(format!("bad variable name {name:?}")));
            }
            if !name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
                return Err(Error::InvalidContext(format!("variable name {name:?} must start with a letter")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidContext(format!("duplicate variable name {name:?}")));
            }
        }
        if let FieldSpec::PrimeField(p) = field {
            if !is_prime(p) {
                return Err(Error::InvalidContext(format!("{p} is not prime")));
            }
        }
        Ok(PolyContext { names, field })
    }

    /// `x1, ..., xn` over the rationals.
    pub fn standard(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("x{i}")), FieldSpec::Rationals)
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn with_field(&self, field: FieldSpec) -> Result<Self> {
        Self::new(self.names.iter().cloned(), field)
    }

    /// Sub-context on the given variable indices, in the given order.
    pub fn restrict(&self, vars: &[usize]) -> Result<Self> {
        Self::new(vars.iter().map(|&i| self.names[i].clone()), self.field)
    }
}
