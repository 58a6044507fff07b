//! Cyclotomic polynomials with integer coefficients, memoized per order.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::Coeff;

type PolyTable = RwLock<HashMap<u32, Arc<[i64]>>>;

fn table() -> &'static PolyTable {
    static TABLE: OnceLock<PolyTable> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
///
/// Computed by dividing `x^n - 1` by every `Φ_d` with `d | n, d < n`.
pub fn cyclotomic_poly(n: u32) -> Arc<[i64]> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = table().read().expect("poly table poisoned").get(&n) {
        return Arc::clone(p);
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = exact_div_monic(&num, &div);
        }
    }
    let poly: Arc<[i64]> = num.into();
    let mut w = table().write().expect("poly table poisoned");
    Arc::clone(w.entry(n).or_insert(poly))
}

/// Degree of `Φ_n`, i.e. Euler's totient.
pub fn totient(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

fn exact_div_monic(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dd = div.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dd;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        if c != 0 {
            quot[k] = c;
            for (j, &d) in div.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Reduces `v` in place modulo `Φ_n`; afterwards only the first `totient(n)`
/// entries may be nonzero.
pub fn reduce_in_place<T: Coeff>(v: &mut [T], n: u32) {
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;
    for k in (d..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[k], T::zero());
        for (j, &p) in phi[..d].iter().enumerate() {
            let slot = &mut v[k - d + j];
            match p {
                0 => {}
                1 => *slot = slot.clone() - c.clone(),
                -1 => *slot = slot.clone() + c.clone(),
                p => *slot = slot.clone() - c.clone() * T::from_i64(p).expect("coefficient fits"),
            }
        }
    }
}

/// Integer specialisation used by the q-binomial memo.
pub(crate) fn reduce_i64(v: &mut [i64], n: u32) {
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;
    for k in (d..v.len()).rev() {
        let c = v[k];
        if c == 0 {
            continue;
        }
        v[k] = 0;
        for (j, &p) in phi[..d].iter().enumerate() {
            v[k - d + j] -= c * p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(&*cyclotomic_poly(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_poly(2), &[1, 1]);
        assert_eq!(&*cyclotomic_poly(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_poly(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_poly(12), &[1, 0, -1, 0, 1]);
    }

    #[test]
    fn degrees_are_totients() {
        let phi = |n: u32| (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count();
        for n in 1..80 {
            assert_eq!(totient(n), phi(n), "n = {n}");
        }
    }

    #[test]
    fn first_nonunit_coefficient_at_105() {
        assert_eq!(cyclotomic_poly(105)[7], -2);
    }
}
