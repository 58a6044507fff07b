//! Recovering the braided space from the smash product.
//!
//! The right coinvariants `R = {u : (id⊗π)Δ(u) = u⊗1}` are computed as the
//! kernel of a linear map, and the braided structure is rebuilt on `R` from
//! the structure of `M` alone:
//!
//! * `Δ_R(X) = Σ Φ(x₁,x₂,x₂⁻¹) X₁·x₂⁻¹ ⊗ X₂`;
//! * `S_R(X) = Φ(x,x⁻¹,x)^{-1} x·S(X)`;
//! * `g▷X` from `gX = (g▷X)g`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclo::{Coeff, Cyclotomic};
use crate::group::GroupElem;
use crate::sparse::Acc;

use super::MajidAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripReport {
    pub dim_coinvariants: usize,
    pub expected_dim: usize,
    /// Every coinvariant is a combination of `X ⊗ 1`.
    pub coinvariants_in_degree_one: bool,
    pub multiplication: bool,
    pub coproduct: bool,
    pub antipode: bool,
    pub action: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl RoundtripReport {
    pub fn holds(&self) -> bool {
        self.dim_coinvariants == self.expected_dim
            && self.coinvariants_in_degree_one
            && self.multiplication
            && self.coproduct
            && self.antipode
            && self.action
    }
}

type Sparse<T> = BTreeMap<usize, Cyclotomic<T>>;

/// `a ← p·a − c·b`.
fn eliminate<T: Coeff>(a: &mut Sparse<T>, p: &Cyclotomic<T>, c: &Cyclotomic<T>, b: &Sparse<T>) {
    for v in a.values_mut() {
        *v = p * &*v;
    }
    for (k, x) in b {
        let e = a.entry(*k).or_insert_with(|| Cyclotomic::zero(x.order()));
        *e -= &(c * x);
    }
    a.retain(|_, v| !v.is_zero());
}

/// Kernel of the linear map whose columns are given, by fraction-free column
/// elimination over `Z[ζ]`-style coefficients.
pub(crate) fn kernel<T: Coeff>(columns: Vec<Sparse<T>>, order: u32) -> Vec<Sparse<T>> {
    let mut pivots: Vec<(usize, Sparse<T>, Sparse<T>)> = Vec::new();
    let mut out = Vec::new();
    for (j, mut col) in columns.into_iter().enumerate() {
        let mut combo: Sparse<T> = BTreeMap::from([(j, Cyclotomic::one(order))]);
        for (row, pv, pc) in &pivots {
            if let Some(c) = col.get(row).cloned() {
                let p = &pv[row];
                eliminate(&mut col, p, &c, pv);
                eliminate(&mut combo, p, &c, pc);
            }
        }
        match col.keys().next().copied() {
            None => out.push(combo),
            Some(row) => pivots.push((row, col, combo)),
        }
    }
    out
}

/// Computes the coinvariants of `M` and compares the structure rebuilt on
/// them with the braided space `M` was built from.
pub fn coinvariants_roundtrip<T: Coeff>(m: &MajidAlgebra<T>) -> RoundtripReport {
    let space = m.space();
    let cocycle = space.cocycle();
    let group = cocycle.group();
    let order = m.ambient();
    let n = group.order() as usize;
    let d = m.dim();

    let columns: Vec<Sparse<T>> = (0..d)
        .map(|u| {
            let mut col: Sparse<T> = BTreeMap::new();
            for (l, r, c) in m.coproduct_basis(u) {
                if m.is_group_like(r) {
                    let e = col.entry(l * n + r).or_insert_with(|| Cyclotomic::zero(order));
                    *e += &c;
                }
            }
            let e = col.entry(u * n).or_insert_with(|| Cyclotomic::zero(order));
            *e -= &Cyclotomic::one(order);
            col.retain(|_, v| !v.is_zero());
            col
        })
        .collect();
    let ker = kernel(columns, order);

    let mut report = RoundtripReport {
        dim_coinvariants: ker.len(),
        expected_dim: space.dim(),
        coinvariants_in_degree_one: ker.iter().all(|v| v.keys().all(|&u| m.split(u).1.is_identity())),
        multiplication: true,
        coproduct: true,
        antipode: true,
        action: true,
        witness: None,
    };
    if !report.coinvariants_in_degree_one || report.dim_coinvariants != report.expected_dim {
        return report;
    }
    let lift = |s: usize| m.index(s, GroupElem::IDENTITY);
    let fail = |flag: &mut bool, w: String, witness: &mut Option<String>| {
        if *flag {
            *flag = false;
            if witness.is_none() {
                *witness = Some(w);
            }
        }
    };

    for s in 0..space.dim() {
        for t in 0..space.dim() {
            let got = m.mul_basis(lift(s), lift(t));
            let want = space.mul_basis(s, t).map(|(e, k)| (e, lift(k as usize)));
            if got != want {
                fail(&mut report.multiplication, format!("product of {} and {}", space.monomial_at(s), space.monomial_at(t)), &mut report.witness);
            }
        }

        let mut acc = Acc::new(d * d, order);
        for (l, r, c) in m.coproduct_basis(lift(s)) {
            let x2 = m.total_degree(r);
            let x1 = space.basis_degree(m.split(l).0);
            let x2inv = group.inv(x2);
            if let Some((e, k)) = m.mul_basis(l, m.index(0, x2inv)) {
                let phi = cocycle.phi_exp(x1, x2, x2inv);
                acc.add(k * d + r, &c, (e + phi) % order, false);
            }
        }
        let rebuilt = acc.drain();
        let want: Vec<(usize, Cyclotomic<T>)> = space
            .coproduct_basis(s)
            .iter()
            .map(|(a, b, c)| (lift(*a as usize) * d + lift(*b as usize), c.clone()))
            .collect();
        if rebuilt != want {
            fail(&mut report.coproduct, format!("coproduct of {}", space.monomial_at(s)), &mut report.witness);
        }

        let x = space.basis_degree(s);
        let scale = (order - cocycle.phi_exp(x, group.inv(x), x)) % order;
        let mut acc = Acc::new(d, order);
        for (k, c) in m.antipode_basis(lift(s)).iter() {
            if let Some((e, r)) = m.mul_basis(m.index(0, x), *k as usize) {
                acc.add(r, c, (e + scale) % order, false);
            }
        }
        let rebuilt = acc.drain();
        let want: Vec<(usize, Cyclotomic<T>)> =
            space.antipode_basis(s).iter().map(|(k, c)| (lift(*k as usize), c.clone())).collect();
        if rebuilt != want {
            fail(&mut report.antipode, format!("antipode of {}", space.monomial_at(s)), &mut report.witness);
        }

        for g in group.elements() {
            let got = m.mul_basis(m.index(0, g), lift(s));
            if got != Some((space.act_exp(g, s), m.index(s, g))) {
                fail(&mut report.action, format!("{} acting on {}", group.fmt_elem(g), space.monomial_at(s)), &mut report.witness);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Cocycle;
    use crate::nichols::BraidedSpace;
    use crate::qchar::AdmissibleSeries;

    #[test]
    fn kernel_of_small_map() {
        let one = Cyclotomic::<i64>::one(4);
        let i = Cyclotomic::<i64>::root(4, 1);
        // columns: e0 ↦ r0, e1 ↦ i·r0, e2 ↦ r1
        let cols = vec![
            BTreeMap::from([(0, one.clone())]),
            BTreeMap::from([(0, i.clone())]),
            BTreeMap::from([(1, one.clone())]),
        ];
        let ker = kernel(cols, 4);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert_eq!(v.len(), 2);
        assert_eq!(&(&v[&0] + &(&v[&1] * &i)), &Cyclotomic::zero(4));
    }

    #[test]
    fn standard_roundtrip() {
        let c = Cocycle::from_moduli(&[2, 2, 2], &[1, 1, 1]).unwrap();
        let s = AdmissibleSeries::from_exponents(
            &c,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let m = MajidAlgebra::new(BraidedSpace::<i64>::new(c, s).unwrap());
        let r = coinvariants_roundtrip(&m);
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.dim_coinvariants, 64);
    }
}
