//! The smash product `M = S(V) # kG` of a braided linear space with the
//! group Majid algebra `(kG, Φ)`.
//!
//! Basis elements are pairs `X ⊗ g` with `X` a monomial of `S(V)`; they are
//! indexed as `monomial_index · |G| + g`. Structure maps:
//!
//! * product `(X⊗g)(Y⊗h) = Φ(xg,y,h)Φ(x,y,g)/(Φ(x,g,y)Φ(xy,g,h)) · X(g▷Y) ⊗ gh`;
//! * coproduct `Δ(X⊗g) = Σ Φ(x₁,x₂,g)^{-1} (X₁⊗x₂g) ⊗ (X₂⊗g)`;
//! * antipode `S(X⊗g) = Φ(g⁻¹,g,g⁻¹)/(Φ((xg)⁻¹,xg,g⁻¹)Φ(x,g,g⁻¹)) · (1⊗(xg)⁻¹)(S(X)⊗1)`;
//! * `α(1⊗g) = 1`, `β(1⊗g) = Φ(g,g⁻¹,g)^{-1}`, both zero off the group-likes;
//! * the associator is `Φ` on group-like triples and zero elsewhere.

mod coinvariants;
mod element;
pub mod verify;

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::cyclo::{Coeff, Cyclotomic};
use crate::group::GroupElem;
use crate::nichols::{BraidedSpace, Monomial, NicholsError};
use crate::sparse::Acc;

pub use coinvariants::{coinvariants_roundtrip, RoundtripReport};
pub use element::{MajidElement, MajidTensor};
pub use verify::{verify_majid_axioms, MajidStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BosonizeError {
    #[error("element does not belong to this Majid algebra: {0}")]
    AlgebraMismatch(String),
    #[error(transparent)]
    Nichols(#[from] NicholsError),
}

pub struct MajidAlgebra<T: Coeff> {
    space: Arc<BraidedSpace<T>>,
    group_order: usize,
    dim: usize,
    antipode_memo: Vec<OnceLock<Arc<[(u32, Cyclotomic<T>)]>>>,
}

impl<T: Coeff> std::fmt::Debug for MajidAlgebra<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MajidAlgebra").field("space", &self.space).field("dim", &self.dim).finish()
    }
}

impl<T: Coeff> MajidAlgebra<T> {
    pub fn new(space: impl Into<Arc<BraidedSpace<T>>>) -> Self {
        let space = space.into();
        let group_order = space.cocycle().group().order() as usize;
        let dim = space.dim() * group_order;
        MajidAlgebra { space, group_order, dim, antipode_memo: (0..dim).map(|_| OnceLock::new()).collect() }
    }

    pub fn space(&self) -> &BraidedSpace<T> {
        &self.space
    }

    /// `|G| · Π N_i`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> u32 {
        self.space.ambient()
    }

    #[inline]
    pub fn index(&self, s: usize, g: GroupElem) -> usize {
        s * self.group_order + g.index()
    }

    /// `(monomial index, group element)` of a basis index.
    #[inline]
    pub fn split(&self, idx: usize) -> (usize, GroupElem) {
        (idx / self.group_order, GroupElem((idx % self.group_order) as u32))
    }

    /// Whether a basis element lies in the coradical `kG`.
    #[inline]
    pub fn is_group_like(&self, idx: usize) -> bool {
        idx < self.group_order
    }

    /// Total G-degree `xg` of `X ⊗ g`.
    pub fn total_degree(&self, idx: usize) -> GroupElem {
        let (s, g) = self.split(idx);
        self.space.cocycle().group().mul(self.space.basis_degree(s), g)
    }

    pub fn basis_name(&self, idx: usize) -> String {
        let (s, g) = self.split(idx);
        format!("{} ⊗ {}", self.space.monomial_at(s), self.space.cocycle().group().fmt_elem(g))
    }

    // ---- basis-level structure maps ----

    /// Product of basis elements as `ζ^exp · basis[index]`.
    pub fn mul_basis(&self, u: usize, v: usize) -> Option<(u32, usize)> {
        let c = self.space.cocycle();
        let group = c.group();
        let m = self.ambient();
        let ((a, g), (b, h)) = (self.split(u), self.split(v));
        let (x, y) = (self.space.basis_degree(a), self.space.basis_degree(b));
        let (e, ab) = self.space.mul_basis(a, b)?;
        let s = c.phi_exp(group.mul(x, g), y, h) + c.phi_exp(x, y, g) + 2 * m
            - c.phi_exp(x, g, y)
            - c.phi_exp(group.mul(x, y), g, h)
            + self.space.act_exp(g, b)
            + e;
        Some((s % m, self.index(ab as usize, group.mul(g, h))))
    }

    /// `Δ` of a basis element as `(left, right, coefficient)` triples.
    pub fn coproduct_basis(&self, u: usize) -> Vec<(usize, usize, Cyclotomic<T>)> {
        let c = self.space.cocycle();
        let group = c.group();
        let m = self.ambient();
        let (s, g) = self.split(u);
        self.space
            .coproduct_basis(s)
            .iter()
            .map(|(x1, x2, coeff)| {
                let (x1, x2) = (*x1 as usize, *x2 as usize);
                let d2 = self.space.basis_degree(x2);
                let phi = c.phi_exp(self.space.basis_degree(x1), d2, g);
                let coeff = if phi == 0 { coeff.clone() } else { coeff.mul_root((m - phi) as i64) };
                (self.index(x1, group.mul(d2, g)), self.index(x2, g), coeff)
            })
            .collect()
    }

    /// `S` of a basis element.
    pub fn antipode_basis(&self, u: usize) -> Arc<[(u32, Cyclotomic<T>)]> {
        Arc::clone(self.antipode_memo[u].get_or_init(|| self.compute_antipode(u)))
    }

    fn compute_antipode(&self, u: usize) -> Arc<[(u32, Cyclotomic<T>)]> {
        let c = self.space.cocycle();
        let group = c.group();
        let m = self.ambient();
        let (s, g) = self.split(u);
        let x = self.space.basis_degree(s);
        let xg = group.mul(x, g);
        let (gi, xgi) = (group.inv(g), group.inv(xg));
        let e = (c.phi_exp(gi, g, gi) + 2 * m - c.phi_exp(xgi, xg, gi) - c.phi_exp(x, g, gi)) % m;
        let left = self.index(0, xgi);
        let mut acc = Acc::new(self.dim, m);
        for (k, coeff) in self.space.antipode_basis(s).iter() {
            if let Some((f, r)) = self.mul_basis(left, self.index(*k as usize, GroupElem::IDENTITY)) {
                acc.add(r, coeff, (e + f) % m, false);
            }
        }
        acc.drain().into_iter().map(|(k, c)| (k as u32, c)).collect()
    }

    /// Exponent of `α(basis[u])`, or `None` where `α` vanishes.
    pub fn alpha_exp(&self, u: usize) -> Option<u32> {
        self.is_group_like(u).then_some(0)
    }

    /// Exponent of `β(basis[u])`, or `None` where `β` vanishes.
    pub fn beta_exp(&self, u: usize) -> Option<u32> {
        if !self.is_group_like(u) {
            return None;
        }
        let c = self.space.cocycle();
        let g = GroupElem(u as u32);
        let m = self.ambient();
        Some((m - c.phi_exp(g, c.group().inv(g), g)) % m)
    }

    /// Exponent of the associator on a basis triple, or `None` where it vanishes.
    pub fn associator_exp(&self, u: usize, v: usize, w: usize) -> Option<u32> {
        if !(self.is_group_like(u) && self.is_group_like(v) && self.is_group_like(w)) {
            return None;
        }
        Some(self.space.cocycle().phi_exp(GroupElem(u as u32), GroupElem(v as u32), GroupElem(w as u32)))
    }

    pub fn counit_basis(&self, u: usize) -> bool {
        self.is_group_like(u)
    }

    // ---- elements ----

    pub fn basis_element(&self, m: &Monomial, g: GroupElem) -> MajidElement<T> {
        if self.space.index_of(m).ok().flatten().is_none() {
            return MajidElement::zero();
        }
        MajidElement::from_terms([((m.clone(), g), Cyclotomic::one(self.ambient()))])
    }

    pub fn one(&self) -> MajidElement<T> {
        self.basis_element(&Monomial::one(self.space.rank()), GroupElem::IDENTITY)
    }

    pub fn group_like(&self, g: GroupElem) -> MajidElement<T> {
        self.basis_element(&Monomial::one(self.space.rank()), g)
    }

    /// `X_i ⊗ 1`.
    pub fn generator(&self, i: usize) -> MajidElement<T> {
        let mut e = vec![0u16; self.space.rank()];
        e[i] = 1;
        self.basis_element(&Monomial::new(&e), GroupElem::IDENTITY)
    }

    pub(crate) fn to_indexed(&self, u: &MajidElement<T>) -> Result<Vec<(usize, Cyclotomic<T>)>, BosonizeError> {
        let group = self.space.cocycle().group();
        u.terms
            .iter()
            .map(|((mono, g), c)| {
                if c.order() != self.ambient() {
                    return Err(BosonizeError::AlgebraMismatch(format!("coefficient of order {}", c.order())));
                }
                group.check(*g).map_err(|e| BosonizeError::AlgebraMismatch(e.to_string()))?;
                let s = self
                    .space
                    .index_of(mono)?
                    .ok_or_else(|| BosonizeError::AlgebraMismatch(format!("monomial {mono} exceeds the bounds")))?;
                Ok((self.index(s, *g), c.clone()))
            })
            .collect()
    }

    fn key(&self, idx: usize) -> (Monomial, GroupElem) {
        let (s, g) = self.split(idx);
        (self.space.monomial_at(s), g)
    }

    pub(crate) fn from_indexed(&self, v: Vec<(usize, Cyclotomic<T>)>) -> MajidElement<T> {
        MajidElement::from_terms(v.into_iter().map(|(i, c)| (self.key(i), c)))
    }

    pub fn smash_multiply(&self, u: &MajidElement<T>, v: &MajidElement<T>) -> Result<MajidElement<T>, BosonizeError> {
        let (a, b) = (self.to_indexed(u)?, self.to_indexed(v)?);
        let mut acc = Acc::new(self.dim, self.ambient());
        for (i, x) in &a {
            for (j, y) in &b {
                if let Some((e, k)) = self.mul_basis(*i, *j) {
                    acc.add_product(k, x, y, e);
                }
            }
        }
        Ok(self.from_indexed(acc.drain()))
    }

    pub fn smash_coproduct(&self, u: &MajidElement<T>) -> Result<MajidTensor<T>, BosonizeError> {
        let a = self.to_indexed(u)?;
        let mut out = MajidTensor::zero();
        for (i, x) in &a {
            for (l, r, c) in self.coproduct_basis(*i) {
                out.add_term((self.key(l), self.key(r)), &(x * &c));
            }
        }
        Ok(out)
    }

    pub fn smash_antipode(&self, u: &MajidElement<T>) -> Result<MajidElement<T>, BosonizeError> {
        let a = self.to_indexed(u)?;
        let mut acc = Acc::new(self.dim, self.ambient());
        for (i, x) in &a {
            for (k, c) in self.antipode_basis(*i).iter() {
                acc.add_product(*k as usize, x, c, 0);
            }
        }
        Ok(self.from_indexed(acc.drain()))
    }

    fn functional(
        &self,
        u: &MajidElement<T>,
        f: impl Fn(usize) -> Option<u32>,
    ) -> Result<Cyclotomic<T>, BosonizeError> {
        let mut out = Cyclotomic::zero(self.ambient());
        for (i, x) in self.to_indexed(u)? {
            if let Some(e) = f(i) {
                out += &x.mul_root(e as i64);
            }
        }
        Ok(out)
    }

    pub fn alpha(&self, u: &MajidElement<T>) -> Result<Cyclotomic<T>, BosonizeError> {
        self.functional(u, |i| self.alpha_exp(i))
    }

    pub fn beta(&self, u: &MajidElement<T>) -> Result<Cyclotomic<T>, BosonizeError> {
        self.functional(u, |i| self.beta_exp(i))
    }

    pub fn counit(&self, u: &MajidElement<T>) -> Result<Cyclotomic<T>, BosonizeError> {
        self.functional(u, |i| self.counit_basis(i).then_some(0))
    }
}
