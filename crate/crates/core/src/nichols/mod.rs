//! Braided linear spaces `S(V)`: the quotient of the tensor algebra of a
//! diagonal Yetter–Drinfeld module by `X_i^{→N_i}` and the skew commutation
//! relations, inside the twisted category determined by a 3-cocycle.
//!
//! The basis consists of left-normed ordered monomials. All structure maps
//! are computed on basis elements first; the scalars that arise there are
//! pure roots of unity and are kept as exponents of `ζ_M`.
//!
//! Conventions (checked by the property suites in [`verify`]):
//!
//! * reassociation: `(AB)C = Φ(a,b,c)^{-1} A(BC)`;
//! * action on products: `g▷(uv) = Φ̃_g(deg u, deg v)·(g▷u)(g▷v)`;
//! * braided tensor product: `(A⊗B)(C⊗D) = λ·AC⊗BD` with
//!   `λ = Φ(ab,c,d)·Φ(a,b,c)^{-1}·χ_C(b)·Φ(a,c,b)·Φ(ac,b,d)^{-1}`, where
//!   `χ_C(b)` is the scalar of `b▷C`.

mod element;
pub mod verify;

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::cyclo::{Coeff, Cyclotomic};
use crate::group::{Cocycle, GroupElem};
use crate::qchar::{AdmissibleSeries, QcharError, QuasiCharacter};
use crate::sparse::Acc;

pub use element::{AlgebraElement, Monomial, TensorSquareElement};
pub(crate) use element::fmt_sum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NicholsError {
    #[error("element does not belong to this braided space: {0}")]
    SpaceMismatch(String),
    #[error(transparent)]
    Series(#[from] QcharError),
    #[error("truncation bounds must be positive and match the rank")]
    BadBounds,
    #[error("basis of dimension {0} is too large")]
    TooLarge(u128),
}

/// Basis products are tabulated up to this dimension.
const MUL_TABLE_LIMIT: usize = 1024;

/// A product of basis elements: `ζ^exp · basis[index]`, or zero.
pub type BasisProduct = Option<(u32, u32)>;

/// `Σ c · (left ⊗ right)` over basis indices.
pub type BasisCoproduct<T> = Arc<[(u32, u32, Cyclotomic<T>)]>;

/// `Σ c · basis[index]`.
pub type BasisVector<T> = Arc<[(u32, Cyclotomic<T>)]>;

pub struct BraidedSpace<T: Coeff> {
    cocycle: Arc<Cocycle>,
    series: AdmissibleSeries,
    degrees: Vec<GroupElem>,
    bounds: Vec<u32>,
    nilpotent: bool,
    strides: Vec<usize>,
    dim: usize,
    basis_deg: Vec<GroupElem>,
    basis_ndeg: Vec<u32>,
    act_table: Vec<u32>,
    mul_table: OnceLock<Vec<BasisProduct>>,
    cop_memo: Vec<OnceLock<BasisCoproduct<T>>>,
    antipode_memo: Vec<OnceLock<BasisVector<T>>>,
}

impl<T: Coeff> std::fmt::Debug for BraidedSpace<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BraidedSpace").field("bounds", &self.bounds).field("dim", &self.dim).finish()
    }
}

impl<T: Coeff> BraidedSpace<T> {
    /// The braided linear space of an admissible series; `N_i = |χ_i(g_i)|`.
    pub fn new(cocycle: impl Into<Arc<Cocycle>>, series: AdmissibleSeries) -> Result<Self, NicholsError> {
        let cocycle = cocycle.into();
        let checked = AdmissibleSeries::new(cocycle.group(), series.chars().to_vec())?;
        let bounds = checked.nilpotency();
        Self::build(cocycle, checked, bounds, true)
    }

    /// A truncation of the algebra generated by the given characters with the
    /// commutation relations only, keeping words with `k_i < bounds[i]`.
    ///
    /// Products are exact as long as no exponent reaches its bound, which makes
    /// this a window onto the tensor-algebra level before nilpotency is imposed.
    pub fn truncated(
        cocycle: impl Into<Arc<Cocycle>>,
        chars: Vec<QuasiCharacter>,
        bounds: Vec<u32>,
    ) -> Result<Self, NicholsError> {
        if chars.is_empty() || bounds.len() != chars.len() || bounds.contains(&0) {
            return Err(NicholsError::BadBounds);
        }
        Self::build(cocycle.into(), AdmissibleSeries::unchecked(chars), bounds, false)
    }

    fn build(
        cocycle: Arc<Cocycle>,
        series: AdmissibleSeries,
        bounds: Vec<u32>,
        nilpotent: bool,
    ) -> Result<Self, NicholsError> {
        let n = bounds.len();
        let dim128: u128 = bounds.iter().map(|&b| b as u128).product();
        if dim128 > 1 << 22 {
            return Err(NicholsError::TooLarge(dim128));
        }
        let dim = dim128 as usize;
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * bounds[i + 1] as usize;
        }
        let degrees = series.degrees();
        let group = cocycle.group();
        let mut basis_deg = Vec::with_capacity(dim);
        let mut basis_ndeg = Vec::with_capacity(dim);
        for idx in 0..dim {
            let mut d = GroupElem::IDENTITY;
            let mut nd = 0;
            for i in 0..n {
                let k = (idx / strides[i]) % bounds[i] as usize;
                d = group.mul(d, group.pow(degrees[i], k as i64));
                nd += k as u32;
            }
            basis_deg.push(d);
            basis_ndeg.push(nd);
        }
        let mut space = BraidedSpace {
            cocycle,
            series,
            degrees,
            bounds,
            nilpotent,
            strides,
            dim,
            basis_deg,
            basis_ndeg,
            act_table: Vec::new(),
            mul_table: OnceLock::new(),
            cop_memo: (0..dim).map(|_| OnceLock::new()).collect(),
            antipode_memo: (0..dim).map(|_| OnceLock::new()).collect(),
        };
        space.act_table = space.build_act_table();
        Ok(space)
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn cocycle_arc(&self) -> &Arc<Cocycle> {
        &self.cocycle
    }

    pub fn series(&self) -> &AdmissibleSeries {
        &self.series
    }

    pub fn rank(&self) -> usize {
        self.bounds.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Ambient root order `M` of all scalars.
    pub fn ambient(&self) -> u32 {
        self.cocycle.ambient()
    }

    /// Nilpotency orders `N_i` (or truncation bounds).
    pub fn nilpotency(&self) -> &[u32] {
        &self.bounds
    }

    /// Whether the bounds are the nilpotency orders of an admissible series.
    pub fn is_nilpotent_quotient(&self) -> bool {
        self.nilpotent
    }

    pub fn degrees(&self) -> &[GroupElem] {
        &self.degrees
    }

    // ---- basis bookkeeping ----

    pub fn basis(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.dim).map(|i| self.monomial_at(i))
    }

    pub fn monomial_at(&self, idx: usize) -> Monomial {
        let exps: Vec<u16> = (0..self.rank()).map(|i| ((idx / self.strides[i]) % self.bounds[i] as usize) as u16).collect();
        Monomial::new(&exps)
    }

    pub fn exp_at(&self, idx: usize, i: usize) -> u32 {
        ((idx / self.strides[i]) % self.bounds[i] as usize) as u32
    }

    /// Index of a monomial, or `None` when an exponent reaches its bound.
    pub fn index_of(&self, m: &Monomial) -> Result<Option<usize>, NicholsError> {
        if m.exps().len() != self.rank() {
            return Err(NicholsError::SpaceMismatch(format!("monomial {m} has rank {}", m.exps().len())));
        }
        let mut idx = 0;
        for (i, &e) in m.exps().iter().enumerate() {
            if e as u32 >= self.bounds[i] {
                return Ok(None);
            }
            idx += e as usize * self.strides[i];
        }
        Ok(Some(idx))
    }

    fn index_in_basis(&self, m: &Monomial) -> Result<usize, NicholsError> {
        self.index_of(m)?.ok_or_else(|| NicholsError::SpaceMismatch(format!("monomial {m} exceeds the nilpotency bounds")))
    }

    /// G-degree of a basis element.
    #[inline]
    pub fn basis_degree(&self, idx: usize) -> GroupElem {
        self.basis_deg[idx]
    }

    /// Number of letters of a basis element.
    #[inline]
    pub fn basis_n_degree(&self, idx: usize) -> u32 {
        self.basis_ndeg[idx]
    }

    pub fn degree_of(&self, m: &Monomial) -> Result<GroupElem, NicholsError> {
        Ok(self.basis_deg[self.index_in_basis(m)?])
    }

    /// Index of the generator `X_i`, or `None` if `N_i = 1`.
    pub fn generator_index(&self, i: usize) -> Option<usize> {
        (self.bounds[i] > 1).then(|| self.strides[i])
    }

    fn word(&self, idx: usize) -> Vec<usize> {
        let mut w = Vec::new();
        for i in 0..self.rank() {
            for _ in 0..self.exp_at(idx, i) {
                w.push(i);
            }
        }
        w
    }

    // ---- elements ----

    pub fn one(&self) -> AlgebraElement<T> {
        self.element(&Monomial::one(self.rank()))
    }

    /// The basis monomial as an element; words past a bound give zero.
    pub fn element(&self, m: &Monomial) -> AlgebraElement<T> {
        match self.index_of(m) {
            Ok(Some(_)) => AlgebraElement::from_terms([(m.clone(), Cyclotomic::one(self.ambient()))]),
            _ => AlgebraElement::zero(),
        }
    }

    pub fn generator(&self, i: usize) -> AlgebraElement<T> {
        let mut e = vec![0u16; self.rank()];
        e[i] = 1;
        self.element(&Monomial::new(&e))
    }

    /// Parses `X1^2 X3`-style monomials (`1` for the unit). Powers at or past
    /// the nilpotency order give zero.
    pub fn parse_monomial(&self, text: &str) -> Result<AlgebraElement<T>, NicholsError> {
        let mut exps = vec![0u16; self.rank()];
        let bad = || NicholsError::SpaceMismatch(format!("cannot parse monomial `{text}`"));
        let mut last = None;
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let body = tok.strip_prefix('X').ok_or_else(bad)?;
            let (i, k) = match body.split_once('^') {
                Some((i, k)) => (i, k.parse::<u16>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let i: usize = i.parse().map_err(|_| bad())?;
            if i == 0 || i > self.rank() || last.is_some_and(|l| l >= i) {
                return Err(bad());
            }
            last = Some(i);
            exps[i - 1] = k;
        }
        Ok(self.element(&Monomial::new(&exps)))
    }

    fn check_coeff(&self, c: &Cyclotomic<T>) -> Result<(), NicholsError> {
        if c.order() != self.ambient() {
            return Err(NicholsError::SpaceMismatch(format!("coefficient of order {} (expected {})", c.order(), self.ambient())));
        }
        Ok(())
    }

    pub(crate) fn to_indexed(&self, u: &AlgebraElement<T>) -> Result<Vec<(usize, Cyclotomic<T>)>, NicholsError> {
        u.terms
            .iter()
            .map(|(m, c)| {
                self.check_coeff(c)?;
                Ok((self.index_in_basis(m)?, c.clone()))
            })
            .collect()
    }

    pub(crate) fn from_indexed(&self, v: Vec<(usize, Cyclotomic<T>)>) -> AlgebraElement<T> {
        AlgebraElement::from_terms(v.into_iter().map(|(i, c)| (self.monomial_at(i), c)))
    }

    fn to_indexed2(&self, x: &TensorSquareElement<T>) -> Result<Vec<(usize, usize, Cyclotomic<T>)>, NicholsError> {
        x.terms
            .iter()
            .map(|((a, b), c)| {
                self.check_coeff(c)?;
                Ok((self.index_in_basis(a)?, self.index_in_basis(b)?, c.clone()))
            })
            .collect()
    }

    fn from_indexed2(&self, v: Vec<(usize, Cyclotomic<T>)>) -> TensorSquareElement<T> {
        TensorSquareElement::from_terms(
            v.into_iter().map(|(k, c)| ((self.monomial_at(k / self.dim), self.monomial_at(k % self.dim)), c)),
        )
    }

    // ---- action ----

    fn act_word(&self, g: GroupElem, idx: usize) -> u32 {
        let m = self.ambient();
        let group = self.cocycle.group();
        let chars = self.series.chars();
        let mut e = 0u32;
        let mut prefix = GroupElem::IDENTITY;
        for (k, x) in self.word(idx).into_iter().enumerate() {
            e = (e + chars[x].value_exp(g)) % m;
            if k > 0 {
                e = (e + self.cocycle.phi_tilde_exp(g, prefix, self.degrees[x])) % m;
            }
            prefix = group.mul(prefix, self.degrees[x]);
        }
        e
    }

    fn build_act_table(&self) -> Vec<u32> {
        let order = self.cocycle.group().order() as usize;
        let mut t = Vec::with_capacity(order * self.dim);
        for g in self.cocycle.group().elements() {
            for idx in 0..self.dim {
                t.push(self.act_word(g, idx));
            }
        }
        t
    }

    /// `g ▷ basis[idx] = ζ^{act_exp} · basis[idx]`.
    #[inline]
    pub fn act_exp(&self, g: GroupElem, idx: usize) -> u32 {
        self.act_table[g.index() * self.dim + idx]
    }

    pub fn act(&self, g: GroupElem, u: &AlgebraElement<T>) -> Result<AlgebraElement<T>, NicholsError> {
        self.cocycle.group().check(g).map_err(|e| NicholsError::SpaceMismatch(e.to_string()))?;
        let v = self.to_indexed(u)?;
        Ok(self.from_indexed(v.into_iter().map(|(i, c)| (i, c.mul_root(self.act_exp(g, i) as i64))).collect()))
    }

    // ---- multiplication ----

    /// Scalar exponent of one adjacent swap `(p·X_j)·X_i → (p·X_i)·X_j`.
    pub fn swap_exp(&self, prefix: GroupElem, j: usize, i: usize) -> u32 {
        let m = self.ambient();
        let (gi, gj) = (self.degrees[i], self.degrees[j]);
        let chi = self.series.chars()[i].value_exp(gj);
        // Reduced cocycles are symmetric in their last two slots.
        debug_assert!(
            !self.cocycle.is_reduced() || self.cocycle.phi_exp(prefix, gj, gi) == self.cocycle.phi_exp(prefix, gi, gj)
        );
        (m - self.cocycle.phi_exp(prefix, gj, gi) + chi + self.cocycle.phi_exp(prefix, gi, gj)) % m
    }

    fn mul_words(&self, u: usize, v: usize) -> BasisProduct {
        let m = self.ambient();
        let group = self.cocycle.group();
        for i in 0..self.rank() {
            if self.exp_at(u, i) + self.exp_at(v, i) >= self.bounds[i] {
                return None;
            }
        }
        let du = self.basis_deg[u];
        let wv = self.word(v);
        // u·L(w): peel the right factor letter by letter.
        let mut e = 0u32;
        let mut pre = GroupElem::IDENTITY;
        for (k, &x) in wv.iter().enumerate() {
            if k > 0 {
                e = (e + self.cocycle.phi_exp(du, pre, self.degrees[x])) % m;
            }
            pre = group.mul(pre, self.degrees[x]);
        }
        // Bubble the concatenated word into index order.
        let mut w = self.word(u);
        w.extend_from_slice(&wv);
        let mut prefix: Vec<GroupElem> = Vec::with_capacity(w.len() + 1);
        prefix.push(GroupElem::IDENTITY);
        for &x in &w {
            let last = *prefix.last().expect("nonempty");
            prefix.push(group.mul(last, self.degrees[x]));
        }
        let mut changed = true;
        while changed {
            changed = false;
            for p in 0..w.len().saturating_sub(1) {
                let (j, i) = (w[p], w[p + 1]);
                if j > i {
                    e = (e + self.swap_exp(prefix[p], j, i)) % m;
                    w.swap(p, p + 1);
                    prefix[p + 1] = group.mul(prefix[p], self.degrees[i]);
                    changed = true;
                }
            }
        }
        let mut idx = 0;
        for i in 0..self.rank() {
            idx += (self.exp_at(u, i) + self.exp_at(v, i)) as usize * self.strides[i];
        }
        Some((e, idx as u32))
    }

    fn mul_table(&self) -> Option<&Vec<BasisProduct>> {
        if self.dim > MUL_TABLE_LIMIT {
            return None;
        }
        Some(self.mul_table.get_or_init(|| {
            let mut t = Vec::with_capacity(self.dim * self.dim);
            for u in 0..self.dim {
                for v in 0..self.dim {
                    t.push(self.mul_words(u, v));
                }
            }
            t
        }))
    }

    /// Product of two basis elements.
    #[inline]
    pub fn mul_basis(&self, u: usize, v: usize) -> BasisProduct {
        match self.mul_table() {
            Some(t) => t[u * self.dim + v],
            None => self.mul_words(u, v),
        }
    }

    pub fn multiply(&self, u: &AlgebraElement<T>, v: &AlgebraElement<T>) -> Result<AlgebraElement<T>, NicholsError> {
        let (a, b) = (self.to_indexed(u)?, self.to_indexed(v)?);
        let mut acc = Acc::new(self.dim, self.ambient());
        for (i, x) in &a {
            for (j, y) in &b {
                if let Some((e, k)) = self.mul_basis(*i, *j) {
                    acc.add_product(k as usize, x, y, e);
                }
            }
        }
        Ok(self.from_indexed(acc.drain()))
    }

    // ---- braided tensor square ----

    /// Exponent of `λ` for `(A⊗B)(C⊗D)` with basis indices.
    #[inline]
    pub fn lambda_exp(&self, a: usize, b: usize, c: usize, d: usize) -> u32 {
        let group = self.cocycle.group();
        let (ga, gb, gc, gd) = (self.basis_deg[a], self.basis_deg[b], self.basis_deg[c], self.basis_deg[d]);
        let p = |x, y, z| self.cocycle.phi_exp(x, y, z);
        let m = self.ambient();
        (p(group.mul(ga, gb), gc, gd) + m - p(ga, gb, gc) + self.act_exp(gb, c) + p(ga, gc, gb) + m
            - p(group.mul(ga, gc), gb, gd))
            % m
    }

    /// `(A⊗B)(C⊗D)` on basis indices: `ζ^exp · (AC ⊗ BD)`.
    #[inline]
    pub fn tensor_mul_basis(&self, a: usize, b: usize, c: usize, d: usize) -> Option<(u32, usize, usize)> {
        let (e1, ac) = self.mul_basis(a, c)?;
        let (e2, bd) = self.mul_basis(b, d)?;
        let m = self.ambient();
        Some(((self.lambda_exp(a, b, c, d) + e1 + e2) % m, ac as usize, bd as usize))
    }

    pub fn tensor_multiply(
        &self,
        x: &TensorSquareElement<T>,
        y: &TensorSquareElement<T>,
    ) -> Result<TensorSquareElement<T>, NicholsError> {
        let (p, q) = (self.to_indexed2(x)?, self.to_indexed2(y)?);
        let mut acc = Acc::new(self.dim * self.dim, self.ambient());
        for (a, b, c1) in &p {
            for (c, d, c2) in &q {
                if let Some((e, l, r)) = self.tensor_mul_basis(*a, *b, *c, *d) {
                    acc.add_product(l * self.dim + r, c1, c2, e);
                }
            }
        }
        Ok(self.from_indexed2(acc.drain()))
    }

    // ---- coproduct, counit, antipode ----

    /// `Δ(basis[idx])`, folded over the letters: `Δ(b·X) = Δ(b)·(X⊗1 + 1⊗X)`.
    pub fn coproduct_basis(&self, idx: usize) -> BasisCoproduct<T> {
        Arc::clone(self.cop_memo[idx].get_or_init(|| self.compute_coproduct(idx)))
    }

    fn compute_coproduct(&self, idx: usize) -> BasisCoproduct<T> {
        let m = self.ambient();
        if idx == 0 {
            return Arc::from(vec![(0, 0, Cyclotomic::one(m))]);
        }
        let last = (0..self.rank()).rev().find(|&i| self.exp_at(idx, i) > 0).expect("non-unit");
        let x = self.strides[last];
        let prefix = idx - x;
        let prev = self.coproduct_basis(prefix);
        let mut acc = Acc::new(self.dim * self.dim, m);
        for (a, b, c) in prev.iter() {
            let (a, b) = (*a as usize, *b as usize);
            for (cc, dd) in [(x, 0), (0, x)] {
                if let Some((e, l, r)) = self.tensor_mul_basis(a, b, cc, dd) {
                    acc.add(l * self.dim + r, c, e, false);
                }
            }
        }
        acc.drain().into_iter().map(|(k, c)| ((k / self.dim) as u32, (k % self.dim) as u32, c)).collect()
    }

    pub fn coproduct(&self, u: &AlgebraElement<T>) -> Result<TensorSquareElement<T>, NicholsError> {
        let v = self.to_indexed(u)?;
        let mut acc = Acc::new(self.dim * self.dim, self.ambient());
        for (i, c) in &v {
            for (a, b, d) in self.coproduct_basis(*i).iter() {
                acc.add_product(*a as usize * self.dim + *b as usize, c, d, 0);
            }
        }
        Ok(self.from_indexed2(acc.drain()))
    }

    /// `ε`: the coefficient of the unit.
    pub fn counit(&self, u: &AlgebraElement<T>) -> Result<Cyclotomic<T>, NicholsError> {
        let v = self.to_indexed(u)?;
        let mut out = Cyclotomic::zero(self.ambient());
        for (i, c) in v {
            if i == 0 {
                out += &c;
            }
        }
        Ok(out)
    }

    /// `S(basis[idx])` from the recursion `m(S⊗id)Δ = uε`.
    pub fn antipode_basis(&self, idx: usize) -> BasisVector<T> {
        Arc::clone(self.antipode_memo[idx].get_or_init(|| self.compute_antipode(idx)))
    }

    fn compute_antipode(&self, idx: usize) -> BasisVector<T> {
        let m = self.ambient();
        if idx == 0 {
            return Arc::from(vec![(0, Cyclotomic::one(m))]);
        }
        let mut acc = Acc::new(self.dim, m);
        for (a, b, c) in self.coproduct_basis(idx).iter() {
            let (a, b) = (*a as usize, *b as usize);
            if a == idx {
                debug_assert!(b == 0 && c.is_one(), "Δ(b) contains b⊗1 with coefficient 1");
                continue;
            }
            for (s, cs) in self.antipode_basis(a).iter() {
                if let Some((e, k)) = self.mul_basis(*s as usize, b) {
                    let p = c * cs;
                    acc.add(k as usize, &p, e, true);
                }
            }
        }
        acc.drain().into_iter().map(|(k, c)| (k as u32, c)).collect()
    }

    pub fn antipode(&self, u: &AlgebraElement<T>) -> Result<AlgebraElement<T>, NicholsError> {
        let v = self.to_indexed(u)?;
        let mut acc = Acc::new(self.dim, self.ambient());
        for (i, c) in &v {
            for (k, d) in self.antipode_basis(*i).iter() {
                acc.add_product(*k as usize, c, d, 0);
            }
        }
        Ok(self.from_indexed(acc.drain()))
    }
}
