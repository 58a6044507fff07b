use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{Coeff, CycError, Cyclotomic};

/// The pure root of unity `ζ_order^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootExp {
    pub order: u32,
    pub exp: u32,
}

impl RootExp {
    /// Builds `ζ_order^exp`, reducing the exponent.
    pub fn new(order: u32, exp: i64) -> Self {
        assert!(order >= 1, "root of unity of order 0");
        RootExp { order, exp: exp.rem_euclid(order as i64) as u32 }
    }

    pub fn one(order: u32) -> Self {
        RootExp { order, exp: 0 }
    }

    pub fn is_one(self) -> bool {
        self.exp == 0
    }

    /// Multiplicative order, `order / gcd(order, exp)`.
    pub fn root_order(self) -> u32 {
        self.order / self.order.gcd(&self.exp)
    }

    pub fn mul(self, other: RootExp) -> Result<RootExp, CycError> {
        if self.order != other.order {
            return Err(CycError::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(RootExp::new(self.order, self.exp as i64 + other.exp as i64))
    }

    pub fn inv(self) -> RootExp {
        RootExp::new(self.order, -(self.exp as i64))
    }

    pub fn pow(self, k: i64) -> RootExp {
        let e = (self.exp as i64 % self.order as i64) * (k.rem_euclid(self.order as i64));
        RootExp::new(self.order, e)
    }

    /// Re-expresses the root inside `μ_target`; `order` must divide `target`.
    pub fn embed(self, target: u32) -> Result<RootExp, CycError> {
        if !target.is_multiple_of(self.order) {
            return Err(CycError::OrderMismatch { left: self.order, right: target });
        }
        Ok(RootExp { order: target, exp: self.exp * (target / self.order) })
    }

    /// Rewrites the root over the smallest order that contains it.
    pub fn primitive_form(self) -> RootExp {
        let g = self.order.gcd(&self.exp);
        RootExp { order: self.order / g, exp: self.exp / g }
    }

    pub fn to_cyc<T: Coeff>(self) -> Cyclotomic<T> {
        Cyclotomic::root(self.order, self.exp as i64)
    }
}

impl fmt::Display for RootExp {
    /// Written against the ambient root `z = ζ_order`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exp {
            0 => write!(f, "1"),
            1 => write!(f, "z"),
            e => write!(f, "z^{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(RootExp::new(8, 0).root_order(), 1);
        assert_eq!(RootExp::new(8, 2).root_order(), 4);
        assert_eq!(RootExp::new(12, 8).root_order(), 3);
        assert_eq!(RootExp::new(12, -4), RootExp::new(12, 8));
    }

    #[test]
    fn order_by_repeated_multiplication() {
        for order in 1..30u32 {
            for exp in 0..order {
                let r = RootExp::new(order, exp as i64);
                let mut acc = r;
                let mut k = 1;
                while !acc.is_one() {
                    acc = acc.mul(r).unwrap();
                    k += 1;
                }
                assert_eq!(r.root_order(), k);
            }
        }
    }

    #[test]
    fn embedding_keeps_the_value() {
        let r = RootExp::new(4, 3).embed(16).unwrap();
        assert_eq!(r, RootExp::new(16, 12));
        assert_eq!(r.primitive_form(), RootExp::new(4, 3));
        assert!(RootExp::new(3, 1).embed(16).is_err());
    }
}
