//! Majid-algebra axioms checked on basis tuples.
//!
//! The checks only use basis-level structure maps, so any implementation of
//! [`MajidStructure`] can be audited, including deliberately broken ones.

use std::sync::Arc;

use crate::cyclo::{Coeff, Cyclotomic};
use crate::nichols::verify::{PropertyCheck, SuiteOptions, SuiteReport, Tuples};
use crate::sparse::{first_difference, same, Acc};

use super::MajidAlgebra;

/// Basis-level data of a Majid algebra with root-of-unity structure scalars.
pub trait MajidStructure<T: Coeff>: Sync {
    fn dim(&self) -> usize;
    /// Root order of every scalar.
    fn ambient(&self) -> u32;
    /// `basis[u] · basis[v] = ζ^exp · basis[index]`, or zero.
    fn mul_basis(&self, u: usize, v: usize) -> Option<(u32, usize)>;
    fn coproduct_basis(&self, u: usize) -> Vec<(usize, usize, Cyclotomic<T>)>;
    fn antipode_basis(&self, u: usize) -> Arc<[(u32, Cyclotomic<T>)]>;
    fn counit_basis(&self, u: usize) -> bool;
    fn alpha_exp(&self, u: usize) -> Option<u32>;
    fn beta_exp(&self, u: usize) -> Option<u32>;
    /// The associator on a basis triple, `None` where it vanishes.
    fn associator_exp(&self, u: usize, v: usize, w: usize) -> Option<u32>;
    /// Exponent `e` with `(uv)w = ζ^e u(vw)` on basis triples, for
    /// structures whose associator is supported on group-likes.
    fn reassociation_exp(&self, u: usize, v: usize, w: usize) -> u32;
    fn basis_name(&self, u: usize) -> String;
    /// Indices of the algebra generators (group-likes and skew-primitives).
    fn generators(&self) -> Vec<usize>;
}

impl<T: Coeff> MajidStructure<T> for MajidAlgebra<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn ambient(&self) -> u32 {
        MajidAlgebra::ambient(self)
    }

    fn mul_basis(&self, u: usize, v: usize) -> Option<(u32, usize)> {
        MajidAlgebra::mul_basis(self, u, v)
    }

    fn coproduct_basis(&self, u: usize) -> Vec<(usize, usize, Cyclotomic<T>)> {
        MajidAlgebra::coproduct_basis(self, u)
    }

    fn antipode_basis(&self, u: usize) -> Arc<[(u32, Cyclotomic<T>)]> {
        MajidAlgebra::antipode_basis(self, u)
    }

    fn counit_basis(&self, u: usize) -> bool {
        MajidAlgebra::counit_basis(self, u)
    }

    fn alpha_exp(&self, u: usize) -> Option<u32> {
        MajidAlgebra::alpha_exp(self, u)
    }

    fn beta_exp(&self, u: usize) -> Option<u32> {
        MajidAlgebra::beta_exp(self, u)
    }

    fn associator_exp(&self, u: usize, v: usize, w: usize) -> Option<u32> {
        MajidAlgebra::associator_exp(self, u, v, w)
    }

    /// `(uv)w = Φ(g,h,e)/Φ(xg,yh,ze) · u(vw)` for `u = X⊗g`, `v = Y⊗h`, `w = Z⊗e`.
    fn reassociation_exp(&self, u: usize, v: usize, w: usize) -> u32 {
        let c = self.space().cocycle();
        let (g, h, e) = (self.split(u).1, self.split(v).1, self.split(w).1);
        let m = MajidAlgebra::ambient(self);
        (c.phi_exp(g, h, e) + m - c.phi_exp(self.total_degree(u), self.total_degree(v), self.total_degree(w))) % m
    }

    fn basis_name(&self, u: usize) -> String {
        MajidAlgebra::basis_name(self, u)
    }

    fn generators(&self) -> Vec<usize> {
        let group = self.space().cocycle().group();
        let mut out: Vec<usize> = group.elements().map(|g| self.index(0, g)).collect();
        out.extend((0..self.space().rank()).filter_map(|i| self.space().generator_index(i)).map(|s| self.index(s, crate::group::GroupElem::IDENTITY)));
        out
    }
}

fn quasi_associativity<T: Coeff, A: MajidStructure<T> + ?Sized>(
    a: &A,
    name: &str,
    tuples: impl Iterator<Item = Vec<usize>>,
    exhaustive: bool,
) -> PropertyCheck {
    let mut check = PropertyCheck::new(name, exhaustive);
    let m = a.ambient();
    for t in tuples {
        let (u, v, w) = (t[0], t[1], t[2]);
        check.cases += 1;
        let left = a.mul_basis(u, v).and_then(|(e1, uv)| a.mul_basis(uv, w).map(|(e2, r)| ((e1 + e2) % m, r)));
        let right = a.mul_basis(v, w).and_then(|(e1, vw)| a.mul_basis(u, vw).map(|(e2, r)| ((e1 + e2) % m, r)));
        let ok = match (left, right) {
            (None, None) => true,
            (Some((el, rl)), Some((er, rr))) => rl == rr && el == (er + a.reassociation_exp(u, v, w)) % m,
            _ => false,
        };
        if !ok {
            check.fail(format!("({}, {}, {})", a.basis_name(u), a.basis_name(v), a.basis_name(w)));
            break;
        }
    }
    check
}

/// Quasi-associativity on every triple drawn from `set`.
pub fn check_quasi_associativity_on<T: Coeff, A: MajidStructure<T> + ?Sized>(a: &A, set: &[usize]) -> PropertyCheck {
    let n = set.len();
    let tuples = Tuples::new(&[n, n, n], true, 0, 0).map(|t| t.iter().map(|&i| set[i]).collect());
    quasi_associativity(a, "quasi-associativity (generators)", tuples, true)
}

/// Quasi-associativity on all basis triples or a seeded sample.
pub fn check_quasi_associativity<T: Coeff, A: MajidStructure<T> + ?Sized>(a: &A, opts: &SuiteOptions) -> PropertyCheck {
    let d = a.dim();
    let tuples = Tuples::new(&[d, d, d], d <= opts.exhaustive_dim, opts.samples, opts.seed ^ 0x101);
    let exhaustive = tuples.is_exhaustive();
    quasi_associativity(a, "quasi-associativity", tuples, exhaustive)
}

fn element_tuples(dim: usize, opts: &SuiteOptions, salt: u64) -> Tuples {
    Tuples::new(&[dim], dim <= opts.samples.max(opts.exhaustive_dim), opts.samples, opts.seed ^ salt)
}

/// `Δ(uv) = Δ(u)Δ(v)` with the componentwise product on `M ⊗ M`.
pub fn check_multiplicative<T: Coeff, A: MajidStructure<T> + ?Sized>(a: &A, opts: &SuiteOptions) -> PropertyCheck {
    let d = a.dim();
    let tuples = Tuples::new(&[d, d], d <= opts.exhaustive_dim, opts.samples, opts.seed ^ 0x102);
    let mut check = PropertyCheck::new("coproduct multiplicativity", tuples.is_exhaustive());
    let mut lhs = Acc::new(d * d, a.ambient());
    let mut rhs = Acc::new(d * d, a.ambient());
    for t in tuples {
        let (u, v) = (t[0], t[1]);
        check.cases += 1;
        if let Some((e, k)) = a.mul_basis(u, v) {
            for (l, r, c) in a.coproduct_basis(k) {
                lhs.add(l * d + r, &c, e, false);
            }
        }
        let (du, dv) = (a.coproduct_basis(u), a.coproduct_basis(v));
        for (u1, u2, c1) in &du {
            for (v1, v2, c2) in &dv {
                let (Some((e1, l)), Some((e2, r))) = (a.mul_basis(*u1, *v1), a.mul_basis(*u2, *v2)) else { continue };
                rhs.add_product(l * d + r, c1, c2, (e1 + e2) % a.ambient());
            }
        }
        let (l, r) = (lhs.drain(), rhs.drain());
        if !same(&l, &r) {
            let k = first_difference(&l, &r).unwrap_or(0);
            check.fail(format!("({}, {}) on {} ⊗ {}", a.basis_name(u), a.basis_name(v), a.basis_name(k / d), a.basis_name(k % d)));
            break;
        }
    }
    check
}

/// `(Δ⊗id)Δ = (id⊗Δ)Δ`.
pub fn check_coassociativity<T: Coeff, A: MajidStructure<T> + ?Sized>(a: &A, opts: &SuiteOptions) -> PropertyCheck {
    let d = a.dim();
    let tuples = element_tuples(d, opts, 0x103);
    let mut check = PropertyCheck::new("coassociativity", tuples.is_exhaustive());
    let mut left = Acc::new(d * d * d, a.ambient());
    let mut right = Acc::new(d * d * d, a.ambient());
    for t in tuples {
        let u = t[0];
        check.cases += 1;
        for (x, y, c) in a.coproduct_basis(u) {
            for (x1, x2, c2) in a.coproduct_basis(x) {
                left.add_product((x1 * d + x2) * d + y, &c, &c2, 0);
            }
            for (y1, y2, c2) in a.coproduct_basis(y) {
                right.add_product((x * d + y1) * d + y2, &c, &c2, 0);
            }
        }
        let (l, r) = (left.drain(), right.drain());
        if !same(&l, &r) {
            check.fail(a.basis_name(u));
            break;
        }
    }
    check
}

/// `(ε⊗id)Δ = id = (id⊗ε)Δ`.
pub fn check_counit<T: Coeff, A: MajidStructure<T> + ?Sized>(a: &A, opts: &SuiteOptions) -> PropertyCheck {
    let d = a.dim();
    let tuples = element_tuples(d, opts, 0x104);
    let mut check = PropertyCheck::new("counit", tuples.is_exhaustive());
    let mut left = Acc::new(d, a.ambient());
    let mut right = Acc::new(d, a.ambient());
    for t in tuples {
        let u = t[0];
        check.cases += 1;
        for (x, y, c) in a.coproduct_basis(u) {
            if a.counit_basis(x) {
                left.add(y, &c, 0, false);
            }
            if a.counit_basis(y) {
                right.add(x, &c, 0, false);
            }
        }
        let expected = vec![(u, Cyclotomic::one(a.ambient()))];
        if !same(&left.drain(), &expected) || !same(&right.drain(), &expected) {
            check.fail(a.basis_name(u));
            break;
        }
    }
    check
}

/// The left-nested iterated coproduct `(Δ⊗id⊗…)(Δ⊗id)Δ` with `legs` legs,
/// keeping only terms whose legs pass `keep(position, index)`.
pub(crate) fn iterated_coproduct<T: Coeff, A: MajidStructure<T> + ?Sized>(
    a: &A,
    u: usize,
    legs: usize,
    keep: &dyn Fn(usize, usize) -> bool,
) -> Vec<(Vec<usize>, Cyclotomic<T>)> {
    let mut terms: Vec<(Vec<usize>, Cyclotomic<T>)> = vec![(vec![u], Cyclotomic::one(a.ambient()))];
    for step in 1..legs {
        let mut next = Vec::new();
        for (t, c) in terms {
            for (x, y, c2) in a.coproduct_basis(t[0]) {
                // Legs after the first are final; their positions are fixed.
                let pos_y = legs - step;
                if !keep(pos_y, y) {
                    continue;
                }
                let mut nt = Vec::with_capacity(t.len() + 1);
                nt.push(x);
                nt.push(y);
                nt.extend_from_slice(&t[1..]);
                next.push((nt, &c * &c2));
            }
        }
        terms = next;
    }
    terms.retain(|(t, _)| keep(0, t[0]));
    terms
}

/// `Σ S(u₁)α(u₂)u₃ = α(u)·1` and `Σ u₁β(u₂)S(u₃) = β(u)·1`.
pub fn check_antipode<T: Coeff, A: MajidStructure<T> + ?Sized>(a: &A, opts: &SuiteOptions) -> [PropertyCheck; 2] {
    let d = a.dim();
    let m = a.ambient();
    let mut out = [PropertyCheck::new("antipode (alpha)", true), PropertyCheck::new("antipode (beta)", true)];
    for (side, check) in out.iter_mut().enumerate() {
        let tuples = element_tuples(d, opts, 0x105 + side as u64);
        check.exhaustive = tuples.is_exhaustive();
        let func = |i: usize| if side == 0 { a.alpha_exp(i) } else { a.beta_exp(i) };
        let mut acc = Acc::new(d, m);
        for t in tuples {
            let u = t[0];
            check.cases += 1;
            for (legs, c) in iterated_coproduct(a, u, 3, &|pos, i| pos != 1 || func(i).is_some()) {
                let f = func(legs[1]).expect("filtered");
                if side == 0 {
                    for (s, cs) in a.antipode_basis(legs[0]).iter() {
                        if let Some((e, r)) = a.mul_basis(*s as usize, legs[2]) {
                            acc.add_product(r, &c, cs, (e + f) % m);
                        }
                    }
                } else {
                    for (s, cs) in a.antipode_basis(legs[2]).iter() {
                        if let Some((e, r)) = a.mul_basis(legs[0], *s as usize) {
                            acc.add_product(r, &c, cs, (e + f) % m);
                        }
                    }
                }
            }
            let got = acc.drain();
            let expected: Vec<(usize, Cyclotomic<T>)> =
                func(u).map(|e| (0, Cyclotomic::root(m, e as i64))).into_iter().collect();
            if !same(&got, &expected) {
                check.fail(a.basis_name(u));
                break;
            }
        }
    }
    out
}

/// `Σ Φ(u₁,S(u₃),u₅)β(u₂)α(u₄) = ε(u)` and
/// `Σ Φ^{-1}(S(u₁),u₃,S(u₅))α(u₂)β(u₄) = ε(u)`, over the left-nested `Δ⁴`.
pub fn check_zigzag<T: Coeff, A: MajidStructure<T> + ?Sized>(a: &A, opts: &SuiteOptions) -> [PropertyCheck; 2] {
    let d = a.dim();
    let m = a.ambient();
    let mut out = [PropertyCheck::new("zig-zag (associator)", true), PropertyCheck::new("zig-zag (inverse associator)", true)];
    for (side, check) in out.iter_mut().enumerate() {
        let tuples = element_tuples(d, opts, 0x107 + side as u64);
        check.exhaustive = tuples.is_exhaustive();
        let (f2, f4): (&dyn Fn(usize) -> Option<u32>, &dyn Fn(usize) -> Option<u32>) = if side == 0 {
            (&|i| a.beta_exp(i), &|i| a.alpha_exp(i))
        } else {
            (&|i| a.alpha_exp(i), &|i| a.beta_exp(i))
        };
        for t in tuples {
            let u = t[0];
            check.cases += 1;
            let mut total = Cyclotomic::<T>::zero(m);
            let keep = |pos: usize, i: usize| match pos {
                1 => f2(i).is_some(),
                3 => f4(i).is_some(),
                _ => true,
            };
            for (legs, c) in iterated_coproduct(a, u, 5, &keep) {
                let e24 = f2(legs[1]).expect("filtered") + f4(legs[3]).expect("filtered");
                if side == 0 {
                    for (s, cs) in a.antipode_basis(legs[2]).iter() {
                        if let Some(p) = a.associator_exp(legs[0], *s as usize, legs[4]) {
                            total += &(&c * cs).mul_root((p + e24) as i64);
                        }
                    }
                } else {
                    for (s1, c1) in a.antipode_basis(legs[0]).iter() {
                        for (s5, c5) in a.antipode_basis(legs[4]).iter() {
                            if let Some(p) = a.associator_exp(*s1 as usize, legs[2], *s5 as usize) {
                                let coeff = &(&c * c1) * c5;
                                total += &coeff.mul_root((e24 + m - p) as i64);
                            }
                        }
                    }
                }
            }
            let expected = if a.counit_basis(u) { Cyclotomic::one(m) } else { Cyclotomic::zero(m) };
            if total != expected {
                check.fail(a.basis_name(u));
                break;
            }
        }
    }
    out
}

/// Runs every axiom check: quasi-associativity (on generator triples and on
/// basis triples), coassociativity, counit, multiplicativity of `Δ`, and the
/// three quasi-antipode identities.
pub fn verify_majid_axioms<T: Coeff, A: MajidStructure<T> + ?Sized>(a: &A, opts: &SuiteOptions) -> SuiteReport {
    let [alpha, beta] = check_antipode(a, opts);
    let [zig, zag] = check_zigzag(a, opts);
    SuiteReport {
        checks: vec![
            check_quasi_associativity_on(a, &a.generators()),
            check_quasi_associativity(a, opts),
            check_coassociativity(a, opts),
            check_counit(a, opts),
            check_multiplicative(a, opts),
            alpha,
            beta,
            zig,
            zag,
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bosonize::MajidAlgebra;
    use crate::group::Cocycle;
    use crate::nichols::BraidedSpace;
    use crate::qchar::AdmissibleSeries;

    fn algebra(moduli: &[u32], a: &[u32], degrees: &[Vec<i64>], vals: &[Vec<u32>]) -> MajidAlgebra<i64> {
        let c = Cocycle::from_moduli(moduli, a).unwrap();
        let s = AdmissibleSeries::from_exponents(&c, degrees, vals).unwrap();
        MajidAlgebra::new(BraidedSpace::new(c, s).unwrap())
    }

    #[test]
    fn sweedler_algebra_is_a_hopf_algebra() {
        let m = algebra(&[2], &[0], &[vec![1]], &[vec![2]]);
        assert_eq!(m.dim(), 4);
        let report = verify_majid_axioms(&m, &SuiteOptions::default());
        assert!(report.all_hold(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn nontrivial_cocycle_on_cyclic_group() {
        let c = Cocycle::from_moduli(&[4], &[1]).unwrap();
        let g = c.group().generator(0);
        let chi = crate::qchar::solve_quasicharacters(&c, g).unwrap().remove(0);
        let s = AdmissibleSeries::new(c.group(), vec![chi]).unwrap();
        let m = MajidAlgebra::new(BraidedSpace::<i64>::new(c, s).unwrap());
        let report = verify_majid_axioms(&m, &SuiteOptions { exhaustive_dim: 128, ..Default::default() });
        assert!(report.all_hold(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn zero_function_associator_breaks_zigzag() {
        struct Flat<'a>(&'a MajidAlgebra<i64>);
        impl MajidStructure<i64> for Flat<'_> {
            fn dim(&self) -> usize {
                self.0.dim()
            }
            fn ambient(&self) -> u32 {
                self.0.ambient()
            }
            fn mul_basis(&self, u: usize, v: usize) -> Option<(u32, usize)> {
                self.0.mul_basis(u, v)
            }
            fn coproduct_basis(&self, u: usize) -> Vec<(usize, usize, Cyclotomic<i64>)> {
                self.0.coproduct_basis(u)
            }
            fn antipode_basis(&self, u: usize) -> Arc<[(u32, Cyclotomic<i64>)]> {
                self.0.antipode_basis(u)
            }
            fn counit_basis(&self, u: usize) -> bool {
                self.0.counit_basis(u)
            }
            fn alpha_exp(&self, u: usize) -> Option<u32> {
                self.0.alpha_exp(u)
            }
            fn beta_exp(&self, u: usize) -> Option<u32> {
                self.0.is_group_like(u).then_some(0)
            }
            fn associator_exp(&self, u: usize, v: usize, w: usize) -> Option<u32> {
                self.0.associator_exp(u, v, w)
            }
            fn reassociation_exp(&self, u: usize, v: usize, w: usize) -> u32 {
                MajidStructure::reassociation_exp(self.0, u, v, w)
            }
            fn basis_name(&self, u: usize) -> String {
                self.0.basis_name(u)
            }
            fn generators(&self) -> Vec<usize> {
                MajidStructure::generators(self.0)
            }
        }
        let m = algebra(&[2], &[1], &[vec![1]], &[vec![1]]);
        assert!(verify_majid_axioms(&m, &SuiteOptions::default()).all_hold());
        let report = verify_majid_axioms(&Flat(&m), &SuiteOptions::default());
        assert!(!report.all_hold());
    }
}
