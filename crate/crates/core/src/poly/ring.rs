use std::fmt;
use std::sync::Arc;

use crate::arith::Field;

use super::MonomialOrder;

/// `field[vars]` with a fixed monomial order.
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S], order: MonomialOrder) -> Ring {
        Arc::new(Self {
            field,
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            order,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Structural equality: same field, variables and order.
    pub fn same(&self, other: &PolyRing) -> bool {
        std::ptr::eq(self, other)
            || (self.order == other.order
                && self.vars == other.vars
                && self.field.same(&other.field))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        PolyRing::new(self.field.clone(), &self.vars, order)
    }

    pub fn with_field(&self, field: Field) -> Ring {
        PolyRing::new(field, &self.vars, self.order)
    }
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}[{}] ({})",
            self.field,
            self.vars.join(", "),
            self.order
        )
    }
}
