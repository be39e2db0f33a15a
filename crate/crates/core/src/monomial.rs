use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::context::PolyContext;
use crate::error::{Error, Result};

/// A monomial `x^a`, stored as its exponent vector. The zero vector is `1`.
///
/// The derived ordering is lexicographic on exponent vectors, which is the
/// canonical order of generator lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// Squarefree monomial on the given variable indices.
    pub fn squarefree(n: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut e = vec![0; n];
        for i in vars {
            e[i] = 1;
        }
        Monomial(e)
    }

    pub fn checked(ctx: &PolyContext, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != ctx.num_vars() {
            return Err(Error::ExponentLength { expected: ctx.num_vars(), found: exponents.len() });
        }
        Ok(Monomial(exponents))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// `self / gcd(self, other)`.
    pub fn div_gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a - a.min(b)).collect())
    }

    /// Caps every exponent at one.
    pub fn radical(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| e.min(1)).collect())
    }

    /// Multiplies by one variable.
    pub fn times_var(&self, i: usize) -> Result<Monomial> {
        let mut e = self.0.clone();
        e[i] = e[i].checked_add(1).ok_or(Error::ExponentOverflow)?;
        Ok(Monomial(e))
    }

    /// Selects the exponents at `vars`, producing a monomial in `vars.len()` variables.
    pub fn project(&self, vars: &[usize]) -> Monomial {
        Monomial(vars.iter().map(|&i| self.0[i]).collect())
    }

    /// Places this monomial into an `n`-variable ring, variable `i` going to `map[i]`.
    pub fn embed(&self, n: usize, map: &[usize]) -> Monomial {
        let mut e = vec![0; n];
        for (i, &target) in map.iter().enumerate() {
            e[target] = self.0[i];
        }
        Monomial(e)
    }

    /// Renders as `x1*x2^2`, or `1`.
    pub fn render(&self, ctx: &PolyContext) -> String {
        let mut out = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(ctx.name(i));
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}
