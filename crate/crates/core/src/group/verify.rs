use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{AbelianGroup, Cocycle, GroupElem, GroupError, InducedCocycle};

/// A function `G^k → μ_M`, with values given as exponents of `ζ_M`.
pub trait Cochain: Sync {
    fn arity(&self) -> usize;
    fn modulus(&self) -> u32;
    fn eval(&self, args: &[GroupElem]) -> u32;
}

impl Cochain for Cocycle {
    fn arity(&self) -> usize {
        3
    }
    fn modulus(&self) -> u32 {
        self.ambient()
    }
    #[inline]
    fn eval(&self, args: &[GroupElem]) -> u32 {
        self.phi_exp(args[0], args[1], args[2])
    }
}

impl Cochain for InducedCocycle<'_> {
    fn arity(&self) -> usize {
        2
    }
    fn modulus(&self) -> u32 {
        self.cocycle.ambient()
    }
    #[inline]
    fn eval(&self, args: &[GroupElem]) -> u32 {
        self.cocycle.phi_tilde_exp(self.g, args[0], args[1])
    }
}

/// A cochain given by an explicit value table (row-major in the arguments).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCochain {
    arity: usize,
    modulus: u32,
    order: usize,
    values: Vec<u32>,
}

impl TableCochain {
    pub fn tabulate<C: Cochain + ?Sized>(group: &AbelianGroup, f: &C) -> Self {
        let order = group.order() as usize;
        let arity = f.arity();
        let total = order.pow(arity as u32);
        let mut args = vec![GroupElem::IDENTITY; arity];
        let values = (0..total)
            .map(|mut idx| {
                for slot in args.iter_mut().rev() {
                    *slot = GroupElem((idx % order) as u32);
                    idx /= order;
                }
                f.eval(&args)
            })
            .collect();
        TableCochain { arity, modulus: f.modulus(), order, values }
    }

    fn offset(&self, args: &[GroupElem]) -> usize {
        args.iter().fold(0, |acc, g| acc * self.order + g.index())
    }

    pub fn get(&self, args: &[GroupElem]) -> u32 {
        self.values[self.offset(args)]
    }

    /// Overwrites one value (used to build deliberately broken cochains).
    pub fn set(&mut self, args: &[GroupElem], exp: u32) {
        let off = self.offset(args);
        self.values[off] = exp % self.modulus;
    }
}

impl Cochain for TableCochain {
    fn arity(&self) -> usize {
        self.arity
    }
    fn modulus(&self) -> u32 {
        self.modulus
    }
    #[inline]
    fn eval(&self, args: &[GroupElem]) -> u32 {
        self.values[self.offset(args)]
    }
}

/// Wraps a closure as a cochain.
pub struct FnCochain<F> {
    pub arity: usize,
    pub modulus: u32,
    pub f: F,
}

impl<F: Fn(&[GroupElem]) -> u32 + Sync> Cochain for FnCochain<F> {
    fn arity(&self) -> usize {
        self.arity
    }
    fn modulus(&self) -> u32 {
        self.modulus
    }
    fn eval(&self, args: &[GroupElem]) -> u32 {
        (self.f)(args) % self.modulus
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Exhaustive up to the bound, sampled above it.
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: VerifyMode,
    /// Largest `|G|` checked exhaustively.
    pub exhaustive_bound: u32,
    pub seed: u64,
    pub samples: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: VerifyMode::Auto, exhaustive_bound: 32, seed: 0, samples: 200_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleCheck {
    pub arity: usize,
    pub holds: bool,
    pub exhaustive: bool,
    pub tuples_checked: u64,
    /// First failing tuple in lexicographic (or sampling) order.
    pub witness: Option<Vec<GroupElem>>,
}

#[inline]
fn defect2<C: Cochain + ?Sized>(g: &AbelianGroup, w: &C, e: GroupElem, f: GroupElem, h: GroupElem) -> bool {
    let m = w.modulus();
    let lhs = w.eval(&[e, f]) + w.eval(&[g.mul(e, f), h]);
    let rhs = w.eval(&[e, g.mul(f, h)]) + w.eval(&[f, h]);
    lhs % m != rhs % m
}

#[inline]
fn defect3<C: Cochain + ?Sized>(
    g: &AbelianGroup,
    p: &C,
    e: GroupElem,
    f: GroupElem,
    h: GroupElem,
    k: GroupElem,
) -> bool {
    let m = p.modulus();
    let lhs = p.eval(&[g.mul(e, f), h, k]) + p.eval(&[e, f, g.mul(h, k)]);
    let rhs = p.eval(&[e, f, h]) + p.eval(&[e, g.mul(f, h), k]) + p.eval(&[f, h, k]);
    lhs % m != rhs % m
}

/// Flat value and multiplication tables for the exhaustive scan.
struct Flat {
    n: usize,
    m: u32,
    mul: Vec<u32>,
    vals: Vec<u32>,
}

impl Flat {
    fn new<C: Cochain + ?Sized>(group: &AbelianGroup, f: &C) -> Self {
        let n = group.order() as usize;
        let els: Vec<GroupElem> = group.elements().collect();
        let mul = els.iter().flat_map(|&a| els.iter().map(move |&b| group.mul(a, b).0)).collect();
        Flat { n, m: f.modulus(), mul, vals: TableCochain::tabulate(group, f).values }
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    fn first_failure(&self, arity: usize, e: usize) -> Option<Vec<GroupElem>> {
        let (n, m, v) = (self.n, self.m, &self.vals);
        let elem = |i: usize| GroupElem(i as u32);
        if arity == 2 {
            for x in 0..n {
                let ex = self.mul(e, x);
                for y in 0..n {
                    let lhs = v[e * n + x] + v[ex * n + y];
                    let rhs = v[e * n + self.mul(x, y)] + v[x * n + y];
                    if lhs % m != rhs % m {
                        return Some(vec![elem(e), elem(x), elem(y)]);
                    }
                }
            }
            return None;
        }
        for x in 0..n {
            let ex = self.mul(e, x);
            for y in 0..n {
                let xy = self.mul(x, y);
                let (exy, e_xy, xy_) = ((ex * n + y) * n, (e * n + xy) * n, (x * n + y) * n);
                let e_x_y = v[(e * n + x) * n + y];
                for z in 0..n {
                    let lhs = v[exy + z] + v[(e * n + x) * n + self.mul(y, z)];
                    let rhs = e_x_y + v[e_xy + z] + v[xy_ + z];
                    if lhs % m != rhs % m {
                        return Some(vec![elem(e), elem(x), elem(y), elem(z)]);
                    }
                }
            }
        }
        None
    }
}

/// Checks the 2- or 3-cocycle identity of `f` over `group`.
///
/// For arity 2: `ω(e,f)ω(ef,g) = ω(e,fg)ω(f,g)`; for arity 3:
/// `Φ(ef,g,h)Φ(e,f,gh) = Φ(e,f,g)Φ(e,fg,h)Φ(f,g,h)`.
pub fn verify_cocycle<C: Cochain + ?Sized>(
    group: &AbelianGroup,
    f: &C,
    opts: &VerifyOptions,
) -> Result<CocycleCheck, GroupError> {
    let arity = f.arity();
    if arity != 2 && arity != 3 {
        return Err(GroupError::BadArity(arity));
    }
    let order = group.order();
    let exhaustive = match opts.mode {
        VerifyMode::Auto => order <= opts.exhaustive_bound,
        VerifyMode::Exhaustive if order > opts.exhaustive_bound => {
            return Err(GroupError::GroupTooLargeForExhaustive { order, bound: opts.exhaustive_bound })
        }
        VerifyMode::Exhaustive => true,
        VerifyMode::Sampled => false,
    };
    if exhaustive {
        let flat = Flat::new(group, f);
        let firsts: Vec<Option<Vec<GroupElem>>> =
            (0..order as usize).into_par_iter().map(|e| flat.first_failure(arity, e)).collect();
        let witness = firsts.into_iter().flatten().next();
        return Ok(CocycleCheck {
            arity,
            holds: witness.is_none(),
            exhaustive: true,
            tuples_checked: (order as u64).pow(arity as u32 + 1),
            witness,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pick = || GroupElem(rng.gen_range(0..order));
    for i in 0..opts.samples {
        let t: Vec<GroupElem> = (0..=arity).map(|_| pick()).collect();
        let bad = if arity == 2 {
            defect2(group, f, t[0], t[1], t[2])
        } else {
            defect3(group, f, t[0], t[1], t[2], t[3])
        };
        if bad {
            return Ok(CocycleCheck { arity, holds: false, exhaustive: false, tuples_checked: i + 1, witness: Some(t) });
        }
    }
    Ok(CocycleCheck { arity, holds: true, exhaustive: false, tuples_checked: opts.samples, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CocycleData;

    #[test]
    fn every_cocycle_on_z2_cubed() {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        for data in CocycleData::all(&g) {
            let c = Cocycle::new(g.clone(), data.clone()).unwrap();
            let r = verify_cocycle(&g, &c, &VerifyOptions::default()).unwrap();
            assert!(r.holds, "{data:?} fails at {:?}", r.witness);
            assert_eq!(r.tuples_checked, 4096);
        }
    }

    #[test]
    fn single_point_mutation_is_caught() {
        let g = AbelianGroup::new(&[2, 2]).unwrap();
        let c = Cocycle::new(g.clone(), CocycleData::from_a(&[1, 1]).with_pair(0, 1, 1)).unwrap();
        let half = c.ambient() / 2;
        for x in g.elements() {
            for y in g.elements() {
                for z in g.elements() {
                    let mut t = TableCochain::tabulate(&g, &c);
                    t.set(&[x, y, z], t.get(&[x, y, z]) + half);
                    let r = verify_cocycle(&g, &t, &VerifyOptions::default()).unwrap();
                    assert!(!r.holds);
                    let w = r.witness.unwrap();
                    assert!(defect3(&g, &t, w[0], w[1], w[2], w[3]));
                }
            }
        }
    }

    #[test]
    fn induced_cocycles_are_two_cocycles() {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        let c = Cocycle::new(g.clone(), CocycleData::from_a(&[1, 0, 1]).with_triple(0, 1, 2, 1)).unwrap();
        for h in g.elements() {
            assert!(verify_cocycle(&g, &c.induced(h), &VerifyOptions::default()).unwrap().holds);
        }
    }

    #[test]
    fn exhaustive_request_above_bound_is_an_error() {
        let g = AbelianGroup::new(&[4, 4, 4]).unwrap();
        let c = Cocycle::trivial(g.clone());
        let opts = VerifyOptions { mode: VerifyMode::Exhaustive, ..Default::default() };
        assert!(matches!(
            verify_cocycle(&g, &c, &opts),
            Err(GroupError::GroupTooLargeForExhaustive { order: 64, bound: 32 })
        ));
        let sampled = verify_cocycle(&g, &c, &VerifyOptions { samples: 1000, ..Default::default() }).unwrap();
        assert!(sampled.holds && !sampled.exhaustive);
    }

    #[test]
    fn broken_two_cochain() {
        let g = AbelianGroup::new(&[3]).unwrap();
        let f = FnCochain { arity: 2, modulus: 3, f: |a: &[GroupElem]| a[0].0 * a[0].0 * a[1].0 };
        let r = verify_cocycle(&g, &f, &VerifyOptions::default()).unwrap();
        assert!(!r.holds);
    }
}
