//! Graded polynomial ring descriptors.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::MAX_VARS;
use crate::order::MonomialOrder;

/// `GF(p)[vars]` with the standard grading and a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    vars: Vec<String>,
    prime: PrimeField,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, prime: u32, order: MonomialOrder) -> Result<Arc<Self>> {
        let field = PrimeField::new(prime)?;
        Self::with_field(vars, field, order)
    }

    pub fn with_field(
        vars: Vec<String>,
        prime: PrimeField,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                max: MAX_VARS,
                got: vars.len(),
            });
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidInput(format!("bad variable name `{v}`")));
            }
            if !v.chars().next().unwrap().is_alphabetic() {
                return Err(Error::InvalidInput(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidInput(format!(
                    "elimination block {k} exceeds {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(PolyRing { vars, prime, order }))
    }

    /// `GF(p)[x0, ..., x{n-1}]` with degrevlex.
    pub fn standard(n: usize, prime: u32) -> Result<Arc<Self>> {
        Self::new(
            (0..n).map(|i| format!("x{i}")).collect(),
            prime,
            MonomialOrder::DegRevLex,
        )
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> PrimeField {
        self.prime
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Same variables under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::with_field(self.vars.clone(), self.prime, order)
    }

    /// Appends one variable, as in passing from `R` to `R[t]`.
    pub fn extend(&self, name: &str) -> Result<Arc<Self>> {
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        Self::with_field(vars, self.prime, self.order)
    }

    /// Drops variable `idx`.
    pub fn drop_var(&self, idx: usize) -> Result<Arc<Self>> {
        let mut vars = self.vars.clone();
        vars.remove(idx);
        let order = match self.order {
            MonomialOrder::Elimination(_) => MonomialOrder::DegRevLex,
            o => o,
        };
        Self::with_field(vars, self.prime, order)
    }

    /// A variable name not yet used in this ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        if !self.vars.iter().any(|v| v == stem) {
            return stem.to_string();
        }
        (0..)
            .map(|i| format!("{stem}{i}"))
            .find(|n| !self.vars.contains(n))
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_and_contraction() {
        let r = PolyRing::standard(4, 32003).unwrap();
        let s = r.extend("t").unwrap();
        assert_eq!(s.nvars(), 5);
        assert_eq!(s.var_index("t").unwrap(), 4);
        assert_eq!(*s.drop_var(4).unwrap(), *r);
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(matches!(
            PolyRing::new(vec!["x".into(), "x".into()], 7, MonomialOrder::DegRevLex),
            Err(Error::DuplicateVariable(_))
        ));
        assert!(PolyRing::new(vec!["x".into()], 8, MonomialOrder::DegRevLex).is_err());
        assert!(PolyRing::standard(17, 7).is_err());
    }
}
