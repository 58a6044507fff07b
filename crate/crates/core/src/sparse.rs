//! Accumulators for linear combinations over a fixed key space.
//!
//! Hot verification loops add many `c·ζ^k` terms into a handful of keys;
//! a dense buffer with a touched list avoids per-term allocation.

use std::collections::HashMap;

use crate::cyclo::{Coeff, Cyclotomic};

/// Dense buffers are used while `keys × order` stays below this.
const DENSE_LIMIT: usize = 1 << 23;

pub(crate) enum Acc<T> {
    Dense { m: usize, data: Vec<T>, touched: Vec<usize>, mark: Vec<bool> },
    Map { m: u32, map: HashMap<usize, Cyclotomic<T>> },
}

impl<T: Coeff> Acc<T> {
    pub(crate) fn new(keys: usize, order: u32) -> Self {
        let m = order as usize;
        if keys.saturating_mul(m) <= DENSE_LIMIT {
            Acc::Dense { m, data: vec![T::zero(); keys * m], touched: Vec::new(), mark: vec![false; keys] }
        } else {
            Acc::Map { m: order, map: HashMap::new() }
        }
    }

    /// `acc[key] += sign · c · ζ^rot`.
    pub(crate) fn add(&mut self, key: usize, c: &Cyclotomic<T>, rot: u32, negate: bool) {
        match self {
            Acc::Dense { m, data, touched, mark } => {
                let m = *m;
                if !mark[key] {
                    mark[key] = true;
                    touched.push(key);
                }
                let base = key * m;
                for (i, x) in c.coeffs().iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let slot = &mut data[base + (i + rot as usize) % m];
                    *slot = if negate { slot.clone() - x.clone() } else { slot.clone() + x.clone() };
                }
            }
            Acc::Map { m, map } => {
                let e = map.entry(key).or_insert_with(|| Cyclotomic::zero(*m));
                let r = if negate { -(c.mul_root(rot as i64)) } else { c.mul_root(rot as i64) };
                *e += &r;
            }
        }
    }

    /// `acc[key] += a · b · ζ^rot`.
    pub(crate) fn add_product(&mut self, key: usize, a: &Cyclotomic<T>, b: &Cyclotomic<T>, rot: u32) {
        match self {
            Acc::Dense { m, data, touched, mark } => {
                let m = *m;
                if !mark[key] {
                    mark[key] = true;
                    touched.push(key);
                }
                let base = key * m;
                for (i, x) in a.coeffs().iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.coeffs().iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let slot = &mut data[base + (i + j + rot as usize) % m];
                        *slot = slot.clone() + x.clone() * y.clone();
                    }
                }
            }
            Acc::Map { .. } => {
                let p = a * b;
                self.add(key, &p, rot, false);
            }
        }
    }

    /// Nonzero entries sorted by key; the accumulator is left empty.
    pub(crate) fn drain(&mut self) -> Vec<(usize, Cyclotomic<T>)> {
        let mut out = match self {
            Acc::Dense { m, data, touched, mark } => {
                let m = *m;
                let mut out = Vec::with_capacity(touched.len());
                for key in touched.drain(..) {
                    mark[key] = false;
                    let coeffs: Vec<T> =
                        data[key * m..(key + 1) * m].iter_mut().map(|x| std::mem::replace(x, T::zero())).collect();
                    let c = Cyclotomic::from_coeffs(m as u32, coeffs).expect("length matches order");
                    if !c.is_zero() {
                        out.push((key, c));
                    }
                }
                out
            }
            Acc::Map { map, .. } => map.drain().filter(|(_, c)| !c.is_zero()).collect(),
        };
        out.sort_by_key(|(k, _)| *k);
        out
    }
}

/// Whether two drained combinations agree exactly.
pub(crate) fn same<T: Coeff>(a: &[(usize, Cyclotomic<T>)], b: &[(usize, Cyclotomic<T>)]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|((ka, ca), (kb, cb))| ka == kb && ca == cb)
}

/// The first key where two drained combinations differ.
pub(crate) fn first_difference<T: Coeff>(a: &[(usize, Cyclotomic<T>)], b: &[(usize, Cyclotomic<T>)]) -> Option<usize> {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return None,
            (Some((k, _)), None) | (None, Some((k, _))) => return Some(*k),
            (Some((ka, ca)), Some((kb, cb))) => {
                if ka < kb {
                    return Some(*ka);
                }
                if kb < ka {
                    return Some(*kb);
                }
                if ca != cb {
                    return Some(*ka);
                }
                i += 1;
                j += 1;
            }
        }
    }
}
