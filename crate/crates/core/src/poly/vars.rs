use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered set of variable names shared by all polynomials of a computation.
///
/// The declaration order is the display order and also fixes the variable
/// precedence `vars[0] > vars[1] > ...` used by every monomial order.
#[derive(Clone, Debug, Eq)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::Precondition("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::Precondition(format!("duplicate variable name `{n}`")));
            }
        }
        Ok(Vars(Arc::new(names)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// New variable set with one extra (internal) variable appended last.
    pub fn extended(&self, extra: &str) -> Vars {
        let mut names = (*self.0).clone();
        names.push(extra.to_string());
        Vars(Arc::new(names))
    }

    /// Variable set with the last variable removed (inverse of `extended`).
    pub fn shrunk(&self) -> Vars {
        let mut names = (*self.0).clone();
        names.pop();
        Vars(Arc::new(names))
    }

    pub fn same(&self, other: &Vars) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}
