use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::BasisStore;

/// The polynomial ring `F_p[x_1, ..., x_n]`, standard graded.
pub struct RingContext {
    field: PrimeField,
    vars: Vec<String>,
    store: Option<Arc<dyn BasisStore>>,
}

/// Shared handle to a ring; polynomials and ideals hold one.
pub type Ring = Arc<RingContext>;

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingContext {
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<Ring> {
        Self::build(p, vars, None)
    }

    /// Like [`RingContext::new`] but Groebner bases of ideals in this ring
    /// are looked up in and written to `store`.
    pub fn with_store<S: AsRef<str>>(
        p: u64,
        vars: &[S],
        store: Arc<dyn BasisStore>,
    ) -> Result<Ring> {
        Self::build(p, vars, Some(store))
    }

    fn build<S: AsRef<str>>(
        p: u64,
        vars: &[S],
        store: Option<Arc<dyn BasisStore>>,
    ) -> Result<Ring> {
        let field = PrimeField::new(p)?;
        if vars.is_empty() {
            return Err(Error::InvalidRing(
                "at least one variable is required".into(),
            ));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(RingContext { field, vars, store }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn store(&self) -> Option<&Arc<dyn BasisStore>> {
        self.store.as_ref()
    }

    /// Same ring with one extra variable appended, named so that it cannot
    /// clash with the existing ones.
    pub fn with_auxiliary_variable(&self) -> Ring {
        let mut name = String::from("t");
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = self.vars.clone();
        vars.push(name);
        Arc::new(RingContext {
            field: self.field,
            vars,
            store: self.store.clone(),
        })
    }

    /// Structural equality: same characteristic and variable names.
    pub fn same_as(self: &Ring, other: &Ring) -> bool {
        Arc::ptr_eq(self, other) || (self.field == other.field && self.vars == other.vars)
    }
}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.characteristic(), self.vars.join(", "))
    }
}

pub(crate) fn ensure_same(a: &Ring, b: &Ring) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}
