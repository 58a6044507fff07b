use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::cyclo::{Coeff, Cyclotomic};

/// The left-normed ordered word `X_1^{→k_1} ⋯ X_n^{→k_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn new(exps: &[u16]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps) }
    }

    pub fn one(rank: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, rank) }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    /// Total number of letters.
    pub fn n_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("X{}", i + 1) } else { format!("X{}^{}", i + 1, e) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub(crate) fn fmt_sum<K, T: Coeff>(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<K, Cyclotomic<T>>,
    key: impl Fn(&K) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    let parts: Vec<String> = terms
        .iter()
        .map(|(k, c)| {
            let k = key(k);
            let c = c.to_string();
            if c == "1" {
                k
            } else if c.contains(' ') {
                format!("({c}) * {k}")
            } else {
                format!("{c} * {k}")
            }
        })
        .collect();
    write!(f, "{}", parts.join(" + "))
}

/// A linear combination of basis monomials; zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<T: Coeff> {
    pub(crate) terms: BTreeMap<Monomial, Cyclotomic<T>>,
}

impl<T: Coeff> AlgebraElement<T> {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Cyclotomic<T>)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: &Cyclotomic<T>) {
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(m, c.clone());
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Cyclotomic<T>> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Cyclotomic<T>> {
        self.terms.get(m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Cyclotomic<T>) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<T: Coeff> fmt::Display for AlgebraElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, &self.terms, |m| m.to_string())
    }
}

/// A linear combination of `A ⊗ B` with `A, B` basis monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSquareElement<T: Coeff> {
    pub(crate) terms: BTreeMap<(Monomial, Monomial), Cyclotomic<T>>,
}

impl<T: Coeff> TensorSquareElement<T> {
    pub fn zero() -> Self {
        TensorSquareElement { terms: BTreeMap::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((Monomial, Monomial), Cyclotomic<T>)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn add_term(&mut self, k: (Monomial, Monomial), c: &Cyclotomic<T>) {
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

    pub fn terms(&self) -> &BTreeMap<(Monomial, Monomial), Cyclotomic<T>> {
        &self.terms
    }

    pub fn coeff(&self, a: &Monomial, b: &Monomial) -> Option<&Cyclotomic<T>> {
        self.terms.get(&(a.clone(), b.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Coeff> fmt::Display for TensorSquareElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, &self.terms, |(a, b)| format!("{a} ⊗ {b}"))
    }
}
