//! Finite abelian groups `Z_{m_1} × … × Z_{m_N}`, the explicit abelian
//! 3-cocycles built from a parameter sequence, and cocycle verification.

mod cocycle;
mod verify;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cocycle::{Cocycle, CocycleData, CocycleJson, InducedCocycle, PairParam, TripleParam};
pub use verify::{
    verify_cocycle, Cochain, CocycleCheck, FnCochain, TableCochain, VerifyMode, VerifyOptions,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group needs at least one cyclic factor")]
    Empty,
    #[error("cyclic factor of order {0} (each modulus must be at least 2)")]
    BadModulus(u32),
    #[error("element has {got} exponents, group has {expected} factors")]
    ModuliMismatch { expected: usize, got: usize },
    #[error("element index {0} is outside the group")]
    NotInGroup(u32),
    #[error("group order exceeds the supported range")]
    TooLarge,
    #[error("{param} = {value} out of range (must be below {bound})")]
    ParameterOutOfRange { param: String, value: u32, bound: u32 },
    #[error("cocycle index {0} is malformed (need 1-based increasing indices within the rank)")]
    BadIndex(String),
    #[error("exhaustive verification requested for |G| = {order} above the bound {bound}")]
    GroupTooLargeForExhaustive { order: u32, bound: u32 },
    #[error("cochain arity {0} is not supported (use 2 or 3)")]
    BadArity(usize),
}

/// An element of an [`AbelianGroup`], stored as its mixed-radix index.
///
/// Index order is lexicographic in the exponent vector with the first
/// factor most significant, so sorting elements sorts their exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElem(pub u32);

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

/// Largest group order for which a full multiplication table is cached.
const MUL_TABLE_LIMIT: u32 = 1024;

#[derive(Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    moduli: Vec<u32>,
    order: u32,
    strides: Vec<u32>,
    exps: Vec<u32>,
    mul_table: Option<Vec<u32>>,
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup{:?}", self.moduli)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl AbelianGroup {
    pub fn new(moduli: &[u32]) -> Result<Self, GroupError> {
        if moduli.is_empty() {
            return Err(GroupError::Empty);
        }
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(GroupError::BadModulus(m));
        }
        let order = moduli
            .iter()
            .try_fold(1u32, |acc, &m| acc.checked_mul(m))
            .filter(|&o| o <= 1 << 20)
            .ok_or(GroupError::TooLarge)?;
        let n = moduli.len();
        let mut strides = vec![1u32; n];
        for l in (0..n.saturating_sub(1)).rev() {
            strides[l] = strides[l + 1] * moduli[l + 1];
        }
        let mut exps = Vec::with_capacity(order as usize * n);
        for idx in 0..order {
            for l in 0..n {
                exps.push((idx / strides[l]) % moduli[l]);
            }
        }
        let mut g = AbelianGroup { moduli: moduli.to_vec(), order, strides, exps, mul_table: None };
        if order <= MUL_TABLE_LIMIT {
            let mut t = Vec::with_capacity((order * order) as usize);
            for a in 0..order {
                for b in 0..order {
                    t.push(g.mul_slow(GroupElem(a), GroupElem(b)).0);
                }
            }
            g.mul_table = Some(t);
        }
        Ok(g)
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `lcm` of the moduli (the exponent of the group).
    pub fn exponent(&self) -> u32 {
        self.moduli.iter().fold(1, |acc, &m| acc.lcm(&m))
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem::IDENTITY
    }

    /// The distinguished generator of the `l`-th factor (0-based).
    pub fn generator(&self, l: usize) -> GroupElem {
        GroupElem(self.strides[l])
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + Clone {
        (0..self.order).map(GroupElem)
    }

    pub fn check(&self, g: GroupElem) -> Result<GroupElem, GroupError> {
        if g.0 < self.order {
            Ok(g)
        } else {
            Err(GroupError::NotInGroup(g.0))
        }
    }

    /// Builds an element from (possibly unreduced, possibly negative) exponents.
    pub fn elem(&self, exps: &[i64]) -> Result<GroupElem, GroupError> {
        if exps.len() != self.rank() {
            return Err(GroupError::ModuliMismatch { expected: self.rank(), got: exps.len() });
        }
        let idx = exps
            .iter()
            .zip(&self.moduli)
            .zip(&self.strides)
            .map(|((&e, &m), &s)| e.rem_euclid(m as i64) as u32 * s)
            .sum();
        Ok(GroupElem(idx))
    }

    /// Reduced exponent vector of `g`.
    pub fn exponents(&self, g: GroupElem) -> &[u32] {
        let n = self.rank();
        &self.exps[g.index() * n..(g.index() + 1) * n]
    }

    pub fn exp_at(&self, g: GroupElem, l: usize) -> u32 {
        self.exps[g.index() * self.rank() + l]
    }

    fn mul_slow(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        let ea = self.exponents(a);
        let eb = self.exponents(b);
        let idx = (0..self.rank())
            .map(|l| ((ea[l] + eb[l]) % self.moduli[l]) * self.strides[l])
            .sum();
        GroupElem(idx)
    }

    #[inline]
    pub fn mul(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        match &self.mul_table {
            Some(t) => GroupElem(t[a.index() * self.order as usize + b.index()]),
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: GroupElem) -> GroupElem {
        let ea = self.exponents(a);
        let idx = (0..self.rank())
            .map(|l| ((self.moduli[l] - ea[l]) % self.moduli[l]) * self.strides[l])
            .sum();
        GroupElem(idx)
    }

    pub fn pow(&self, a: GroupElem, k: i64) -> GroupElem {
        let ea = self.exponents(a);
        let idx = (0..self.rank())
            .map(|l| {
                let m = self.moduli[l] as i64;
                ((ea[l] as i64 * k.rem_euclid(m)) % m) as u32 * self.strides[l]
            })
            .sum();
        GroupElem(idx)
    }

    pub fn elem_order(&self, a: GroupElem) -> u32 {
        self.exponents(a)
            .iter()
            .zip(&self.moduli)
            .fold(1, |acc, (&e, &m)| acc.lcm(&(m / m.gcd(&e))))
    }

    /// The subgroup generated by `gens`, by breadth-first saturation.
    pub fn closure(&self, gens: &[GroupElem]) -> Vec<GroupElem> {
        let mut seen = vec![false; self.order as usize];
        seen[0] = true;
        let mut frontier = vec![GroupElem::IDENTITY];
        let mut out = vec![GroupElem::IDENTITY];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    frontier.push(y);
                    out.push(y);
                }
            }
        }
        out.sort();
        out
    }

    pub fn generates(&self, gens: &[GroupElem]) -> bool {
        self.closure(gens).len() == self.order as usize
    }

    /// Every automorphism, as the table `g.index() ↦ σ(g)`.
    ///
    /// Enumerates images of the distinguished generators, so the cost grows
    /// like `|G|^rank`; intended for the small groups used in censuses.
    pub fn automorphisms(&self) -> Vec<Vec<GroupElem>> {
        let r = self.rank();
        let images: Vec<Vec<GroupElem>> = (0..r)
            .map(|l| self.elements().filter(|&h| self.moduli[l].is_multiple_of(self.elem_order(h))).collect())
            .collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; r];
        'outer: loop {
            let gens: Vec<GroupElem> = (0..r).map(|l| images[l][choice[l]]).collect();
            let table: Vec<GroupElem> = self
                .elements()
                .map(|g| {
                    self.exponents(g)
                        .iter()
                        .zip(&gens)
                        .fold(GroupElem::IDENTITY, |acc, (&k, &h)| self.mul(acc, self.pow(h, k as i64)))
                })
                .collect();
            let mut hit = vec![false; self.order as usize];
            table.iter().for_each(|g| hit[g.index()] = true);
            if hit.iter().all(|&b| b) {
                out.push(table);
            }
            for l in 0..r {
                choice[l] += 1;
                if choice[l] < images[l].len() {
                    continue 'outer;
                }
                choice[l] = 0;
            }
            break;
        }
        out
    }

    /// Renders `g` as a word in the generators, e.g. `e1e3^2`.
    pub fn fmt_elem(&self, g: GroupElem) -> String {
        if g.is_identity() {
            return "1".to_string();
        }
        let mut s = String::new();
        for (l, &e) in self.exponents(g).iter().enumerate() {
            match e {
                0 => {}
                1 => s.push_str(&format!("e{}", l + 1)),
                e => s.push_str(&format!("e{}^{}", l + 1, e)),
            }
        }
        s
    }
}
