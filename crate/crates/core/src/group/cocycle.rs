use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{AbelianGroup, GroupElem, GroupError};
use crate::cyclo::RootExp;

/// Parameters `(a_l, a_st, a_rst)` of an explicit abelian 3-cocycle.
///
/// Indices are 0-based here and 1-based in JSON and on the command line.
/// Zero entries of the sparse maps are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CocycleData {
    pub a: Vec<u32>,
    pub a2: BTreeMap<(usize, usize), u32>,
    pub a3: BTreeMap<(usize, usize, usize), u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairParam {
    pub s: usize,
    pub t: usize,
    pub v: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleParam {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub v: u32,
}

/// Wire format for a group together with cocycle parameters; omitted
/// parameters default to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub moduli: Vec<u32>,
    #[serde(default)]
    pub a: Vec<u32>,
    #[serde(default)]
    pub a2: Vec<PairParam>,
    #[serde(default)]
    pub a3: Vec<TripleParam>,
}

impl CocycleData {
    pub fn trivial(rank: usize) -> Self {
        CocycleData { a: vec![0; rank], ..Default::default() }
    }

    pub fn from_a(a: &[u32]) -> Self {
        CocycleData { a: a.to_vec(), ..Default::default() }
    }

    /// Sets `a_st` (0-based, `s < t`).
    pub fn with_pair(mut self, s: usize, t: usize, v: u32) -> Self {
        if v == 0 {
            self.a2.remove(&(s, t));
        } else {
            self.a2.insert((s, t), v);
        }
        self
    }

    /// Sets `a_rst` (0-based, `r < s < t`).
    pub fn with_triple(mut self, r: usize, s: usize, t: usize, v: u32) -> Self {
        if v == 0 {
            self.a3.remove(&(r, s, t));
        } else {
            self.a3.insert((r, s, t), v);
        }
        self
    }

    /// No `a_rst` terms: the form in which every induced 2-cocycle is symmetric.
    pub fn is_reduced(&self) -> bool {
        self.a3.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.a.iter().all(|&x| x == 0) && self.a2.is_empty() && self.a3.is_empty()
    }

    pub fn validate(&self, group: &AbelianGroup) -> Result<(), GroupError> {
        let m = group.moduli();
        let n = m.len();
        if self.a.len() != n {
            return Err(GroupError::ModuliMismatch { expected: n, got: self.a.len() });
        }
        for (l, (&v, &ml)) in self.a.iter().zip(m).enumerate() {
            if v >= ml {
                return Err(out_of_range(format!("a{}", l + 1), v, ml));
            }
        }
        for (&(s, t), &v) in &self.a2 {
            if !(s < t && t < n) {
                return Err(GroupError::BadIndex(format!("{}:{}", s + 1, t + 1)));
            }
            let bound = m[s].gcd(&m[t]);
            if v >= bound {
                return Err(out_of_range(format!("a{}{}", s + 1, t + 1), v, bound));
            }
        }
        for (&(r, s, t), &v) in &self.a3 {
            if !(r < s && s < t && t < n) {
                return Err(GroupError::BadIndex(format!("{}:{}:{}", r + 1, s + 1, t + 1)));
            }
            let bound = m[r].gcd(&m[s]).gcd(&m[t]);
            if v >= bound {
                return Err(out_of_range(format!("a{}{}{}", r + 1, s + 1, t + 1), v, bound));
            }
        }
        Ok(())
    }

    /// Every parameter sequence on `group`, in lexicographic order of
    /// `(a, a_st, a_rst)`.
    pub fn all(group: &AbelianGroup) -> Vec<CocycleData> {
        let m = group.moduli();
        let n = m.len();
        let mut slots: Vec<(u8, [usize; 3], u32)> = Vec::new();
        for (l, &ml) in m.iter().enumerate() {
            slots.push((1, [l, 0, 0], ml));
        }
        for s in 0..n {
            for t in s + 1..n {
                slots.push((2, [s, t, 0], m[s].gcd(&m[t])));
            }
        }
        for r in 0..n {
            for s in r + 1..n {
                for t in s + 1..n {
                    slots.push((3, [r, s, t], m[r].gcd(&m[s]).gcd(&m[t])));
                }
            }
        }
        let mut out = Vec::new();
        let mut digits = vec![0u32; slots.len()];
        loop {
            let mut c = CocycleData::trivial(n);
            for (&(kind, [i, j, k], _), &v) in slots.iter().zip(&digits) {
                match kind {
                    1 => c.a[i] = v,
                    2 => c = c.with_pair(i, j, v),
                    _ => c = c.with_triple(i, j, k, v),
                }
            }
            out.push(c);
            let mut pos = slots.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < slots[pos].2 {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    pub fn to_json(&self, group: &AbelianGroup) -> CocycleJson {
        CocycleJson {
            moduli: group.moduli().to_vec(),
            a: self.a.clone(),
            a2: self.a2.iter().map(|(&(s, t), &v)| PairParam { s: s + 1, t: t + 1, v }).collect(),
            a3: self
                .a3
                .iter()
                .map(|(&(r, s, t), &v)| TripleParam { r: r + 1, s: s + 1, t: t + 1, v })
                .collect(),
        }
    }
}

fn out_of_range(param: String, value: u32, bound: u32) -> GroupError {
    GroupError::ParameterOutOfRange { param, value, bound }
}

impl CocycleJson {
    /// Validates and converts to a group and its parameter sequence.
    pub fn parse(&self) -> Result<(AbelianGroup, CocycleData), GroupError> {
        let group = AbelianGroup::new(&self.moduli)?;
        let n = group.rank();
        let a = if self.a.is_empty() { vec![0; n] } else { self.a.clone() };
        let mut data = CocycleData { a, ..Default::default() };
        for p in &self.a2 {
            if p.s == 0 || p.t == 0 {
                return Err(GroupError::BadIndex(format!("{}:{}", p.s, p.t)));
            }
            data = data.with_pair(p.s - 1, p.t - 1, p.v);
        }
        for p in &self.a3 {
            if p.r == 0 || p.s == 0 || p.t == 0 {
                return Err(GroupError::BadIndex(format!("{}:{}:{}", p.r, p.s, p.t)));
            }
            data = data.with_triple(p.r - 1, p.s - 1, p.t - 1, p.v);
        }
        data.validate(&group)?;
        Ok((group, data))
    }
}

/// Largest group order whose full `Φ` table is cached (|G|^3 entries).
const PHI_TABLE_LIMIT: u32 = 128;

/// A group with a validated cocycle, evaluated in the ambient root order
/// `M = L²` (`L` the group exponent), where all character values live.
#[derive(Clone, Debug)]
pub struct Cocycle {
    group: AbelianGroup,
    data: CocycleData,
    lcm: u32,
    ambient: u32,
    table: Option<Vec<u32>>,
}

impl Cocycle {
    pub fn new(group: AbelianGroup, data: CocycleData) -> Result<Self, GroupError> {
        data.validate(&group)?;
        let lcm = group.exponent();
        let ambient = lcm.checked_mul(lcm).ok_or(GroupError::TooLarge)?;
        let mut c = Cocycle { group, data, lcm, ambient, table: None };
        let order = c.group.order();
        if order <= PHI_TABLE_LIMIT {
            let mut t = Vec::with_capacity((order * order * order) as usize);
            for x in c.group.elements() {
                for y in c.group.elements() {
                    for z in c.group.elements() {
                        t.push(c.phi_formula(x, y, z));
                    }
                }
            }
            c.table = Some(t);
        }
        Ok(c)
    }

    /// Convenience constructor from moduli and `a` only.
    pub fn from_moduli(moduli: &[u32], a: &[u32]) -> Result<Self, GroupError> {
        Cocycle::new(AbelianGroup::new(moduli)?, CocycleData::from_a(a))
    }

    pub fn trivial(group: AbelianGroup) -> Self {
        let n = group.rank();
        Cocycle::new(group, CocycleData::trivial(n)).expect("trivial cocycle is valid")
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn data(&self) -> &CocycleData {
        &self.data
    }

    /// Ambient root order `M = L²`.
    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn group_exponent(&self) -> u32 {
        self.lcm
    }

    pub fn is_reduced(&self) -> bool {
        self.data.is_reduced()
    }

    fn phi_formula(&self, x: GroupElem, y: GroupElem, z: GroupElem) -> u32 {
        let g = &self.group;
        let m = g.moduli();
        let big = self.ambient as u64;
        let (ex, ey, ez) = (g.exponents(x), g.exponents(y), g.exponents(z));
        let mut e: u64 = 0;
        for l in 0..m.len() {
            let a = self.data.a[l] as u64;
            if a != 0 {
                let carry = ((ey[l] + ez[l]) / m[l]) as u64;
                e += a * ex[l] as u64 * carry * (big / m[l] as u64);
            }
        }
        for (&(s, t), &v) in &self.data.a2 {
            let carry = ((ey[s] + ez[s]) / m[s]) as u64;
            e += v as u64 * ex[t] as u64 * carry * (big / m[t] as u64);
        }
        for (&(r, s, t), &v) in &self.data.a3 {
            let d = m[r].gcd(&m[s]).gcd(&m[t]) as u64;
            e += v as u64 * ez[r] as u64 * ey[s] as u64 * ex[t] as u64 % d * (big / d);
        }
        (e % big) as u32
    }

    /// `Φ(x, y, z)` as an exponent of `ζ_M`.
    #[inline]
    pub fn phi_exp(&self, x: GroupElem, y: GroupElem, z: GroupElem) -> u32 {
        match &self.table {
            Some(t) => {
                let n = self.group.order() as usize;
                t[(x.index() * n + y.index()) * n + z.index()]
            }
            None => self.phi_formula(x, y, z),
        }
    }

    /// Whether `Φ(σx, σy, σz) = Φ(x, y, z)` for every triple, with `σ` given
    /// as a table of images.
    pub fn preserved_by(&self, sigma: &[GroupElem]) -> bool {
        let els: Vec<GroupElem> = self.group.elements().collect();
        els.iter().all(|&x| {
            els.iter().all(|&y| {
                els.iter().all(|&z| {
                    self.phi_exp(sigma[x.index()], sigma[y.index()], sigma[z.index()]) == self.phi_exp(x, y, z)
                })
            })
        })
    }

    /// `Φ(x, y, z)` as a root of unity of order `L`.
    pub fn phi_eval(&self, x: GroupElem, y: GroupElem, z: GroupElem) -> RootExp {
        RootExp::new(self.lcm, (self.phi_exp(x, y, z) / self.lcm) as i64)
    }

    /// `Φ̃_g(x, y) = Φ(g,x,y) Φ(x,y,g) / Φ(x,g,y)` as an exponent of `ζ_M`.
    #[inline]
    pub fn phi_tilde_exp(&self, g: GroupElem, x: GroupElem, y: GroupElem) -> u32 {
        let big = self.ambient;
        (self.phi_exp(g, x, y) + self.phi_exp(x, y, g) + big - self.phi_exp(x, g, y)) % big
    }

    pub fn phi_tilde_eval(&self, g: GroupElem, x: GroupElem, y: GroupElem) -> RootExp {
        RootExp::new(self.lcm, (self.phi_tilde_exp(g, x, y) / self.lcm) as i64)
    }

    /// Whether `Φ̃_g` is a symmetric 2-cocycle.
    pub fn phi_tilde_symmetric(&self, g: GroupElem) -> bool {
        let els: Vec<GroupElem> = self.group.elements().collect();
        els.iter().all(|&x| {
            els.iter().filter(|&&y| y > x).all(|&y| self.phi_tilde_exp(g, x, y) == self.phi_tilde_exp(g, y, x))
        })
    }

    /// The induced 2-cocycle at degree `g`.
    pub fn induced(&self, g: GroupElem) -> InducedCocycle<'_> {
        InducedCocycle { cocycle: self, g }
    }
}

/// `Φ̃_g` viewed as a 2-cochain.
#[derive(Clone, Copy, Debug)]
pub struct InducedCocycle<'a> {
    pub cocycle: &'a Cocycle,
    pub g: GroupElem,
}
