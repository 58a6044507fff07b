//! Gaussian binomials evaluated at roots of unity.
//!
//! Uses the q-Pascal rule `(m, i) = (m-1, i-1) + q^i (m-1, i)`; dividing
//! q-factorials is not an option since they vanish at roots of unity.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::poly::reduce_i64;
use super::{Coeff, CycError, Cyclotomic, RootExp};

type Row = Vec<Arc<[i64]>>;
type Memo = RwLock<HashMap<RootExp, Vec<Row>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `(m choose i)_q` as an element of `Q(ζ_{q.order})`.
pub fn qbinom<T: Coeff>(m: i64, i: i64, q: RootExp) -> Result<Cyclotomic<T>, CycError> {
    if m < 0 || i < 0 || i > m {
        return Err(CycError::IndexOutOfRange { m, i });
    }
    let (m, i) = (m as usize, i as usize);
    let raw = lookup(q, m, i);
    let coeffs = raw.iter().map(|&c| T::from_i64(c).expect("coefficient fits")).collect();
    Ok(Cyclotomic::from_coeffs(q.order, coeffs).expect("row length equals order"))
}

fn lookup(q: RootExp, m: usize, i: usize) -> Arc<[i64]> {
    if let Some(rows) = memo().read().expect("qbinom memo poisoned").get(&q) {
        if let Some(row) = rows.get(m) {
            return Arc::clone(&row[i]);
        }
    }
    let mut w = memo().write().expect("qbinom memo poisoned");
    let n = q.order as usize;
    let rows = w.entry(q).or_insert_with(|| {
        let mut one = vec![0i64; n];
        one[0] = 1;
        vec![vec![Arc::from(one)]]
    });
    while rows.len() <= m {
        let prev = rows.last().expect("row 0 present").clone();
        let k = prev.len();
        let mut next: Row = Vec::with_capacity(k + 1);
        next.push(Arc::clone(&prev[0]));
        for j in 1..k {
            let mut v = prev[j - 1].to_vec();
            let shift = (j * q.exp as usize) % n;
            for (t, &c) in prev[j].iter().enumerate() {
                v[(t + shift) % n] += c;
            }
            reduce_i64(&mut v, q.order);
            next.push(v.into());
        }
        next.push(Arc::clone(&prev[k - 1]));
        rows.push(next);
    }
    Arc::clone(&rows[m][i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = Cyclotomic<BigRational>;

    fn qb(m: i64, i: i64, q: RootExp) -> Q {
        qbinom(m, i, q).unwrap()
    }

    #[test]
    fn boundary_entries_are_one() {
        let q = RootExp::new(7, 3);
        for m in 0..10 {
            assert!(qb(m, 0, q).is_one());
            assert!(qb(m, m, q).is_one());
        }
    }

    #[test]
    fn two_choose_one_is_one_plus_q() {
        for order in 1..10 {
            for e in 0..order {
                let q = RootExp::new(order, e as i64);
                assert_eq!(qb(2, 1, q), &Q::one(order) + &Q::root(order, e as i64));
            }
        }
    }

    #[test]
    fn four_choose_two_at_i_vanishes() {
        assert!(qb(4, 2, RootExp::new(4, 1)).is_zero());
    }

    #[test]
    fn out_of_range() {
        let q = RootExp::new(4, 1);
        assert!(matches!(qbinom::<i64>(3, 4, q), Err(CycError::IndexOutOfRange { .. })));
        assert!(qbinom::<i64>(-1, 0, q).is_err());
    }
}
