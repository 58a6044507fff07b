//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's arithmetic: cocycle values are rebuilt from the product
//! formula as fractions in Q/Z, and the Gaussian binomials from integer
//! polynomials.

#![allow(dead_code)]

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use quasiq::group::CocycleData;

/// Reduces a fraction into `[0, 1)`.
pub fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

/// The fraction `exp / modulus` reduced into `[0, 1)`.
pub fn turns(exp: i64, modulus: i64) -> Rational64 {
    frac(Rational64::new(exp, modulus))
}

/// Mixed-radix exponent vector of the element with index `idx`, first
/// factor most significant.
pub fn digits(moduli: &[u32], mut idx: usize) -> Vec<u32> {
    let mut out = vec![0; moduli.len()];
    for (slot, &m) in out.iter_mut().zip(moduli).rev() {
        *slot = (idx % m as usize) as u32;
        idx /= m as usize;
    }
    out
}

/// Inverse of [`digits`].
pub fn index_of(moduli: &[u32], exps: &[u32]) -> usize {
    exps.iter().zip(moduli).fold(0, |acc, (&e, &m)| acc * m as usize + (e % m) as usize)
}

pub fn add(moduli: &[u32], x: &[u32], y: &[u32]) -> Vec<u32> {
    x.iter().zip(y).zip(moduli).map(|((&a, &b), &m)| (a + b) % m).collect()
}

/// The explicit abelian 3-cocycle: carries of `y + z` in each factor, paired
/// against `x`, plus the cubic term `z_r y_s x_t`. Values are in turns.
pub fn phi(moduli: &[u32], data: &CocycleData, x: &[u32], y: &[u32], z: &[u32]) -> Rational64 {
    let m: Vec<i64> = moduli.iter().map(|&v| v as i64).collect();
    let carry = |l: usize| (y[l] as i64 + z[l] as i64) / m[l];
    let mut total = Rational64::zero();
    for l in 0..m.len() {
        total += Rational64::new(data.a[l] as i64 * x[l] as i64 * carry(l), m[l]);
    }
    for (&(s, t), &v) in &data.a2 {
        total += Rational64::new(v as i64 * x[t] as i64 * carry(s), m[t]);
    }
    for (&(r, s, t), &v) in &data.a3 {
        let d = m[r].gcd(&m[s]).gcd(&m[t]);
        total += Rational64::new(v as i64 * z[r] as i64 * y[s] as i64 * x[t] as i64, d);
    }
    frac(total)
}

/// `Φ(g,x,y) Φ(x,y,g) / Φ(x,g,y)` in turns.
pub fn phi_tilde(moduli: &[u32], data: &CocycleData, g: &[u32], x: &[u32], y: &[u32]) -> Rational64 {
    frac(phi(moduli, data, g, x, y) + phi(moduli, data, x, y, g) - phi(moduli, data, x, g, y))
}

/// All ordered factor tuples (each factor at least 2) with product at most
/// `bound`, the empty tuple excluded.
pub fn factor_tuples(bound: u32) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, left: u32, out: &mut Vec<Vec<u32>>) {
        for f in 2..=left {
            prefix.push(f);
            out.push(prefix.clone());
            go(prefix, left / f, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), bound, &mut out);
    out
}

/// Integer polynomial coefficients, lowest degree first.
pub type Poly = Vec<i64>;

fn poly_mul(a: &[i64], b: &[i64]) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic-up-to-sign polynomial with unit leading term.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Poly {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().unwrap();
    assert!(lead == 1 || lead == -1);
    let mut q = vec![0; rem.len() + 1 - dl];
    for k in (0..q.len()).rev() {
        let c = rem[k + dl - 1] * lead;
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "division was not exact");
    q
}

/// `1 - q^k` as a polynomial in `q`.
fn one_minus_power(k: usize) -> Poly {
    let mut p = vec![0; k + 1];
    p[0] += 1;
    p[k] -= 1;
    p
}

/// The Gaussian binomial `[m choose i]_q` as an integer polynomial, from the
/// product formula `Π_{k<i} (1 - q^{m-k}) / (1 - q^{k+1})`.
pub fn gaussian(m: usize, i: usize) -> Poly {
    if i > m {
        return vec![0];
    }
    let mut num: Poly = vec![1];
    let mut den: Poly = vec![1];
    for k in 0..i {
        num = poly_mul(&num, &one_minus_power(m - k));
        den = poly_mul(&den, &one_minus_power(k + 1));
    }
    let mut q = poly_div_exact(&num, &den);
    while q.len() > 1 && *q.last().unwrap() == 0 {
        q.pop();
    }
    q
}

/// Evaluates an integer polynomial at `ζ_order^step` as a coefficient vector
/// over the power basis `1, ζ, …, ζ^{order-1}` (not reduced).
pub fn eval_at_root(p: &[i64], order: u32, step: u32) -> Vec<i64> {
    let mut out = vec![0; order as usize];
    for (k, &c) in p.iter().enumerate() {
        out[(k as u64 * step as u64 % order as u64) as usize] += c;
    }
    out
}

/// Whether two power-basis vectors agree in `Q(ζ_order)`, i.e. their
/// difference is divisible by the cyclotomic polynomial.
pub fn same_in_field(a: &[i64], b: &[i64], order: u32) -> bool {
    let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let phi = cyclotomic(order as usize);
    poly_rem(&diff, &phi).iter().all(|&c| c == 0)
}

/// The `n`-th cyclotomic polynomial, by dividing `x^n - 1` by `Φ_d` for every
/// proper divisor `d`.
pub fn cyclotomic(n: usize) -> Poly {
    let mut p = vec![0; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

fn poly_rem(num: &[i64], den: &[i64]) -> Poly {
    let mut rem = num.to_vec();
    let dl = den.len();
    if rem.len() < dl {
        return rem;
    }
    for k in (0..=rem.len() - dl).rev() {
        let c = rem[k + dl - 1];
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    rem.truncate(dl - 1);
    rem
}

/// Quasi-characters of degree `g` found by trying every function
/// `G → μ_order` with `χ(e) = 1`: those with `χ(x)χ(y) = Φ̃_g(x,y) χ(xy)`.
/// Values are in turns, indexed by element index.
pub fn brute_quasicharacters(moduli: &[u32], data: &CocycleData, g: &[u32], order: i64) -> Vec<Vec<Rational64>> {
    let n: usize = moduli.iter().map(|&m| m as usize).product();
    let els: Vec<Vec<u32>> = (0..n).map(|i| digits(moduli, i)).collect();
    let mut table = vec![vec![Rational64::zero(); n]; n];
    for x in 0..n {
        for y in 0..n {
            table[x][y] = phi_tilde(moduli, data, g, &els[x], &els[y]);
        }
    }
    let mut out = Vec::new();
    let mut vals = vec![0i64; n];
    'outer: loop {
        let chi: Vec<Rational64> = vals.iter().map(|&v| Rational64::new(v, order)).collect();
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = index_of(moduli, &add(moduli, &els[x], &els[y]));
                frac(chi[x] + chi[y] - table[x][y] - chi[xy]).is_zero()
            })
        });
        if ok {
            out.push(chi);
        }
        for v in vals.iter_mut().skip(1) {
            *v += 1;
            if *v < order {
                continue 'outer;
            }
            *v = 0;
        }
        break;
    }
    out
}
