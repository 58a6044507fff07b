//! Exact arithmetic in cyclotomic fields `Q(ζ_M)` and their integer rings.
//!
//! A [`Cyclotomic`] stores `M` coefficients of `Σ c_k ζ^k` modulo `ζ^M - 1`.
//! Multiplication is a cyclic convolution; equality and zero tests reduce
//! modulo the `M`-th cyclotomic polynomial. The coefficient type is generic:
//! any ring implementing [`Coeff`] works for sums and products, while
//! inversion additionally needs a [`Field`].

mod poly;
mod qbinom;
mod root;

use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, One, Zero};
use thiserror::Error;

pub use poly::{cyclotomic_poly, totient};
pub use qbinom::qbinom;
pub use root::RootExp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("cyclotomic orders differ: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },
    #[error("division by zero in a cyclotomic field")]
    DivisionByZero,
    #[error("binomial index out of range: ({m} choose {i})")]
    IndexOutOfRange { m: i64, i: i64 },
}

/// Coefficient ring for cyclotomic numbers.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + Display
        + PartialEq
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Send
        + Sync
        + 'static
{
}

/// Coefficient types with exact division.
pub trait Field: Coeff + std::ops::Div<Output = Self> {}

impl Field for BigRational {}
impl Field for Rational64 {}

#[derive(Clone)]
pub struct Cyclotomic<T> {
    order: u32,
    coeffs: Vec<T>,
}

impl<T: Coeff> Cyclotomic<T> {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order 0");
        Cyclotomic { order, coeffs: vec![T::zero(); order as usize] }
    }

    pub fn one(order: u32) -> Self {
        Self::from_coeff(order, T::one())
    }

    pub fn from_coeff(order: u32, c: T) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = c;
        z
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_coeff(order, T::from_i64(n).expect("integer fits coefficient type"))
    }

    /// `ζ_order^exp`.
    pub fn root(order: u32, exp: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[exp.rem_euclid(order as i64) as usize] = T::one();
        z
    }

    pub fn from_coeffs(order: u32, coeffs: Vec<T>) -> Result<Self, CycError> {
        if coeffs.len() != order as usize {
            return Err(CycError::OrderMismatch { left: order, right: coeffs.len() as u32 });
        }
        Ok(Cyclotomic { order, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Raw coefficients modulo `ζ^M - 1` (not canonical).
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Canonical coefficients: the remainder modulo `Φ_M`, of length `φ(M)`.
    pub fn reduced(&self) -> Vec<T> {
        let mut v = self.coeffs.clone();
        poly::reduce_in_place(&mut v, self.order);
        v.truncate(totient(self.order));
        v
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(Zero::is_zero) {
            return true;
        }
        self.reduced().iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        (self - &Self::one(self.order)).is_zero()
    }

    fn check(&self, other: &Self) -> Result<(), CycError> {
        if self.order != other.order {
            Err(CycError::OrderMismatch { left: self.order, right: other.order })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn checked_eq(&self, other: &Self) -> Result<bool, CycError> {
        self.check(other)?;
        Ok(self == other)
    }

    /// Multiplies by `ζ^k`, a rotation of the coefficient vector.
    pub fn mul_root(&self, k: i64) -> Self {
        let m = self.order as usize;
        let k = k.rem_euclid(m as i64) as usize;
        let mut coeffs = vec![T::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + k) % m] = c.clone();
        }
        Cyclotomic { order: self.order, coeffs }
    }

    /// `self += other * ζ^k`.
    pub fn add_rotated(&mut self, other: &Self, k: i64) {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
        let m = self.order as usize;
        let k = k.rem_euclid(m as i64) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let slot = &mut self.coeffs[(i + k) % m];
                *slot = slot.clone() + c.clone();
            }
        }
    }

    /// `self += c * ζ^k` for a scalar coefficient.
    pub fn add_term(&mut self, c: T, k: i64) {
        let m = self.order as i64;
        let slot = &mut self.coeffs[k.rem_euclid(m) as usize];
        *slot = slot.clone() + c;
    }

    pub fn scale(&self, c: &T) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Re-expresses the number in `Q(ζ_target)`; `order` must divide `target`.
    pub fn embed(&self, target: u32) -> Result<Self, CycError> {
        if !target.is_multiple_of(self.order) {
            return Err(CycError::OrderMismatch { left: self.order, right: target });
        }
        let step = (target / self.order) as usize;
        let mut out = Self::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i * step] = c.clone();
        }
        Ok(out)
    }

    /// Returns `(c, k)` when the number equals `c·ζ^k` with `c ≠ 0`.
    ///
    /// A unit coefficient is preferred, so pure roots come back as `(1, k)`.
    pub fn as_scaled_root(&self) -> Option<(T, u32)> {
        let mut first = None;
        for k in 0..self.order {
            let r = self.mul_root(-(k as i64)).reduced();
            if !r[0].is_zero() && r[1..].iter().all(Zero::is_zero) {
                if r[0].is_one() {
                    return Some((r[0].clone(), k));
                }
                first.get_or_insert((r[0].clone(), k));
            }
        }
        first
    }

    /// Returns the exponent `k` when the number equals `ζ^k`.
    pub fn as_root(&self) -> Option<RootExp> {
        match self.as_scaled_root() {
            Some((c, k)) if c.is_one() => Some(RootExp { order: self.order, exp: k }),
            _ => None,
        }
    }
}

impl<T: Field> Cyclotomic<T> {
    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_M`.
    pub fn inv(&self) -> Result<Self, CycError> {
        let a = trim(self.reduced());
        if a.is_empty() {
            return Err(CycError::DivisionByZero);
        }
        let b: Vec<T> = cyclotomic_poly(self.order)
            .iter()
            .map(|&c| T::from_i64(c).expect("coefficient fits"))
            .collect();
        let (mut r0, mut r1) = (b, a);
        let (mut s0, mut s1) = (Vec::<T>::new(), vec![T::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_M is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let mut out = Self::zero(self.order);
        for (i, s) in s0.into_iter().enumerate() {
            out.coeffs[i] = s / c.clone();
        }
        Ok(out)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }
}

fn trim<T: Coeff>(mut v: Vec<T>) -> Vec<T> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(out)
}

fn poly_sub<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(T::zero);
            let y = b.get(i).cloned().unwrap_or_else(T::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divmod<T: Field>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![T::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].clone() / lead.clone();
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] = rem[k + j].clone() - c.clone() * y.clone();
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

impl<T: Coeff> PartialEq for Cyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
        (self - other).is_zero()
    }
}

impl<T: Coeff> Eq for Cyclotomic<T> {}

impl<'a, T: Coeff> Add<&'a Cyclotomic<T>> for &'a Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn add(self, rhs: &Cyclotomic<T>) -> Cyclotomic<T> {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Cyclotomic { order: self.order, coeffs }
    }
}

impl<'a, T: Coeff> Sub<&'a Cyclotomic<T>> for &'a Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn sub(self, rhs: &Cyclotomic<T>) -> Cyclotomic<T> {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Cyclotomic { order: self.order, coeffs }
    }
}

impl<'a, T: Coeff> Mul<&'a Cyclotomic<T>> for &'a Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn mul(self, rhs: &Cyclotomic<T>) -> Cyclotomic<T> {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        let m = self.order as usize;
        let mut coeffs = vec![T::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % m;
                coeffs[k] = coeffs[k].clone() + a.clone() * b.clone();
            }
        }
        Cyclotomic { order: self.order, coeffs }
    }
}

impl<T: Coeff> Neg for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<T: Coeff> $tr<Cyclotomic<T>> for Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            fn $f(self, rhs: Cyclotomic<T>) -> Cyclotomic<T> {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<T: Coeff> Neg for Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        -&self
    }
}

impl<T: Coeff> AddAssign<&Cyclotomic<T>> for Cyclotomic<T> {
    fn add_assign(&mut self, rhs: &Cyclotomic<T>) {
        self.add_rotated(rhs, 0);
    }
}

impl<T: Coeff> SubAssign<&Cyclotomic<T>> for Cyclotomic<T> {
    fn sub_assign(&mut self, rhs: &Cyclotomic<T>) {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = a.clone() - b.clone();
        }
    }
}

impl<T: Coeff> Debug for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic<{}>({})", self.order, self)
    }
}

fn fmt_term<T: Coeff>(c: &T, k: u32) -> String {
    let power = match k {
        0 => String::new(),
        1 => "z".to_string(),
        k => format!("z^{k}"),
    };
    if k == 0 {
        return c.to_string();
    }
    if c.is_one() {
        power
    } else if (-c.clone()).is_one() {
        format!("-{power}")
    } else {
        format!("{c}*{power}")
    }
}

impl<T: Coeff> Display for Cyclotomic<T> {
    /// Renders in powers of `z = ζ_M`: a single term when the value is a
    /// scaled root, otherwise the canonical reduced form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some((c, k)) = self.as_scaled_root() {
            return write!(f, "{}", fmt_term(&c, k));
        }
        let mut out = String::new();
        for (k, c) in self.reduced().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = fmt_term(c, k as u32);
            if out.is_empty() {
                out = t;
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&t);
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Cyclotomic<BigRational>;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(Q::root(4, 2), Q::from_int(4, -1));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&Q::one(3) + &Q::root(3, 1)) + &Q::root(3, 2);
        assert!(s.is_zero());
        assert!(s.coeffs().iter().all(|c| !c.is_zero()));
    }

    #[test]
    fn eighth_root_pair_is_nonzero() {
        // Float oracle: ζ_8 + ζ_8^7 = 2cos(π/4) ≈ 1.414.
        let s = &Q::root(8, 1) + &Q::root(8, 7);
        let float = 2.0 * (std::f64::consts::PI / 4.0).cos();
        assert!(float.abs() > 1.0);
        assert!(!s.is_zero());
    }

    #[test]
    fn inverse_round_trips() {
        let x = &(&Q::root(12, 1) + &Q::from_coeff(12, rat(3, 2))) - &Q::root(12, 5);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(Q::zero(5).inv(), Err(CycError::DivisionByZero));
    }

    #[test]
    fn mismatched_orders_are_reported() {
        let e = Q::one(4).checked_add(&Q::one(8)).unwrap_err();
        assert_eq!(e, CycError::OrderMismatch { left: 4, right: 8 });
    }

    #[test]
    fn display_uses_z() {
        assert_eq!(Q::root(4, 3).to_string(), "z^3");
        assert_eq!(Q::from_int(4, -1).to_string(), "z^2");
        assert_eq!(Q::from_int(3, -2).to_string(), "-2");
        assert_eq!(Cyclotomic::<i64>::root(16, 12).scale(&-2).to_string(), "2*z^4");
        let s = &Q::one(8) + &Q::root(8, 1);
        assert_eq!(s.to_string(), "1 + z");
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let a = &Q::root(4, 1) + &Q::from_int(4, 2);
        let b = &Q::root(4, 3) - &Q::one(4);
        let lhs = (&a * &b).embed(16).unwrap();
        let rhs = &a.embed(16).unwrap() * &b.embed(16).unwrap();
        assert_eq!(lhs, rhs);
    }
}
