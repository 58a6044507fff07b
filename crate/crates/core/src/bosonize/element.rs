use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::{Coeff, Cyclotomic};
use crate::group::GroupElem;
use crate::nichols::{fmt_sum, Monomial};

/// A basis key `X ⊗ g`.
pub type SmashKey = (Monomial, GroupElem);

fn key_name((m, g): &SmashKey) -> String {
    format!("{m} # g{}", g.0)
}

/// A linear combination of `X ⊗ g`; zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajidElement<T: Coeff> {
    pub(crate) terms: BTreeMap<SmashKey, Cyclotomic<T>>,
}

impl<T: Coeff> MajidElement<T> {
    pub fn zero() -> Self {
        MajidElement { terms: BTreeMap::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (SmashKey, Cyclotomic<T>)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn add_term(&mut self, k: SmashKey, c: &Cyclotomic<T>) {
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(k, c.clone());
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<SmashKey, Cyclotomic<T>> {
        &self.terms
    }

    pub fn coeff(&self, k: &SmashKey) -> Option<&Cyclotomic<T>> {
        self.terms.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Cyclotomic<T>) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (k.clone(), x * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }
}

impl<T: Coeff> fmt::Display for MajidElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, &self.terms, key_name)
    }
}

/// A linear combination of `(X ⊗ g) ⊗ (Y ⊗ h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajidTensor<T: Coeff> {
    pub(crate) terms: BTreeMap<(SmashKey, SmashKey), Cyclotomic<T>>,
}

impl<T: Coeff> MajidTensor<T> {
    pub fn zero() -> Self {
        MajidTensor { terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, k: (SmashKey, SmashKey), c: &Cyclotomic<T>) {
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(k, c.clone());
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<(SmashKey, SmashKey), Cyclotomic<T>> {
        &self.terms
    }

    pub fn coeff(&self, a: &SmashKey, b: &SmashKey) -> Option<&Cyclotomic<T>> {
        self.terms.get(&(a.clone(), b.clone()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Coeff> fmt::Display for MajidTensor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, &self.terms, |(a, b)| format!("({}) ⊗ ({})", key_name(a), key_name(b)))
    }
}
