//! Quasi-characters of an abelian group with respect to the induced
//! 2-cocycles `Φ̃_g`, and admissible series of them.
//!
//! A quasi-character associated to `g` is a map `χ: G → μ_M` with
//! `χ(x)χ(y) = Φ̃_g(x,y)·χ(xy)`. It is determined by its values on the
//! distinguished generators; for a reduced cocycle it is the multiplicative
//! extension of those values on reduced exponents.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::RootExp;
use crate::group::{AbelianGroup, Cocycle, GroupElem, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcharError {
    #[error("induced 2-cocycle at degree {0} is not symmetric; no quasi-character exists")]
    NonSymmetricCocycle(String),
    #[error("values {values:?} do not define a quasi-character at degree {degree}")]
    NotQuasiCharacter { degree: String, values: Vec<u32> },
    #[error("series must contain at least one character")]
    EmptySeries,
    #[error("series is not admissible: {0}")]
    NotAdmissible(AdmissibilityReport),
    #[error("matrix row {row} has {got} entries, group has {expected} factors")]
    BadMatrix { row: usize, expected: usize, got: usize },
    #[error("the cocycle must be reduced (no a_rst terms) for this operation")]
    NonReducedCocycle,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A quasi-character together with its associated degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuasiCharacter {
    degree: GroupElem,
    order: u32,
    /// Value exponents (of `ζ_M`) at every group element, by index.
    table: Arc<[u32]>,
    gens: Vec<u32>,
}

impl fmt::Debug for QuasiCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuasiCharacter(deg #{}, gens {:?} of ζ_{})", self.degree.0, self.gens, self.order)
    }
}

impl QuasiCharacter {
    /// Builds the character with the given generator values and checks the
    /// defining identity on all of `G × G`.
    pub fn from_values(cocycle: &Cocycle, degree: GroupElem, vals: &[RootExp]) -> Result<Self, QcharError> {
        let group = cocycle.group();
        group.check(degree)?;
        let m = cocycle.ambient();
        if vals.len() != group.rank() {
            return Err(GroupError::ModuliMismatch { expected: group.rank(), got: vals.len() }.into());
        }
        let mut gens = Vec::with_capacity(vals.len());
        for v in vals {
            gens.push(v.embed(m).map_err(|_| not_qc(group, degree, vals))?.exp);
        }
        let table = extend(cocycle, degree, &gens);
        let chi = QuasiCharacter { degree, order: m, table: table.into(), gens };
        if !chi.satisfies_identity(cocycle) {
            return Err(not_qc(group, degree, vals));
        }
        Ok(chi)
    }

    pub fn degree(&self) -> GroupElem {
        self.degree
    }

    /// Ambient root order of the values.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `χ(e_l)` for each distinguished generator.
    pub fn vals(&self) -> Vec<RootExp> {
        self.gens.iter().map(|&e| RootExp { order: self.order, exp: e }).collect()
    }

    /// Exponents of `χ(e_l)` in `ζ_M`.
    pub fn gen_exps(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn value_exp(&self, h: GroupElem) -> u32 {
        self.table[h.index()]
    }

    /// `χ(h)`.
    pub fn char_value(&self, h: GroupElem) -> RootExp {
        RootExp { order: self.order, exp: self.value_exp(h) }
    }

    /// Checks `χ(x)χ(y) = Φ̃_g(x,y) χ(xy)` for every pair.
    pub fn satisfies_identity(&self, cocycle: &Cocycle) -> bool {
        let group = cocycle.group();
        let m = self.order;
        group.elements().all(|x| {
            group.elements().all(|y| {
                let lhs = self.value_exp(x) + self.value_exp(y);
                let rhs = cocycle.phi_tilde_exp(self.degree, x, y) + self.value_exp(group.mul(x, y));
                lhs % m == rhs % m
            })
        }) && self.value_exp(GroupElem::IDENTITY) == 0
    }
}

fn not_qc(group: &AbelianGroup, degree: GroupElem, vals: &[RootExp]) -> QcharError {
    QcharError::NotQuasiCharacter { degree: group.fmt_elem(degree), values: vals.iter().map(|v| v.exp).collect() }
}

/// Extends generator values to all of `G` by `χ(x e_l) = χ(x)χ(e_l)/Φ̃_g(x,e_l)`,
/// always stepping along the last nonzero coordinate without wrapping.
fn extend(cocycle: &Cocycle, degree: GroupElem, gens: &[u32]) -> Vec<u32> {
    let group = cocycle.group();
    let m = cocycle.ambient();
    let mut table = vec![0u32; group.order() as usize];
    for h in group.elements().skip(1) {
        let exps = group.exponents(h);
        let l = exps.iter().rposition(|&e| e > 0).expect("non-identity");
        let step = group.generator(l);
        let prev = GroupElem(h.0 - step.0);
        let w = cocycle.phi_tilde_exp(degree, prev, step);
        table[h.index()] = (table[prev.index()] + gens[l] + m - w) % m;
    }
    table
}

/// Exponent (of `ζ_M`) of the base `m_l`-th root of the generator constraint:
/// `χ(e_l)^{m_l} = Π_{k=1}^{m_l-1} Φ̃_g(e_l^k, e_l)`.
fn constraint_exp(cocycle: &Cocycle, degree: GroupElem, l: usize) -> u32 {
    let group = cocycle.group();
    let m = cocycle.ambient();
    let e = group.generator(l);
    let ml = group.moduli()[l];
    let mut acc = 0u64;
    let mut x = e;
    for _ in 1..ml {
        acc += cocycle.phi_tilde_exp(degree, x, e) as u64;
        x = group.mul(x, e);
    }
    (acc % m as u64) as u32
}

/// The constraint for a reduced cocycle in closed form:
/// `ζ_{m_l}^{a_l i_l} · Π_{t>l} ζ_{m_t}^{a_lt i_t}` where `g = Π e_t^{i_t}`.
fn reduced_constraint_exp(cocycle: &Cocycle, degree: GroupElem, l: usize) -> u32 {
    let group = cocycle.group();
    let mods = group.moduli();
    let big = cocycle.ambient() as u64;
    let i = group.exponents(degree);
    let data = cocycle.data();
    let mut e = data.a[l] as u64 * i[l] as u64 * (big / mods[l] as u64);
    for (&(s, t), &v) in &data.a2 {
        if s == l {
            e += v as u64 * i[t] as u64 * (big / mods[t] as u64);
        }
    }
    (e % big) as u32
}

/// All quasi-characters associated to `degree`, in lexicographic order of
/// their generator-value branches.
///
/// Branch `k` of the `m_l`-th root adds `k·M/m_l` to the base exponent.
pub fn solve_quasicharacters(cocycle: &Cocycle, degree: GroupElem) -> Result<Vec<QuasiCharacter>, QcharError> {
    let group = cocycle.group();
    group.check(degree)?;
    if !cocycle.phi_tilde_symmetric(degree) {
        return Err(QcharError::NonSymmetricCocycle(group.fmt_elem(degree)));
    }
    let m = cocycle.ambient();
    let mods = group.moduli();
    let bases: Vec<u32> = (0..group.rank())
        .map(|l| {
            let c = if cocycle.is_reduced() {
                reduced_constraint_exp(cocycle, degree, l)
            } else {
                constraint_exp(cocycle, degree, l)
            };
            debug_assert_eq!(c % mods[l], 0, "constraint lies in μ_L");
            c / mods[l]
        })
        .collect();
    let mut out = Vec::new();
    let mut branch = vec![0u32; group.rank()];
    loop {
        let gens: Vec<u32> = (0..group.rank()).map(|l| (bases[l] + branch[l] * (m / mods[l])) % m).collect();
        let table = extend(cocycle, degree, &gens);
        let chi = QuasiCharacter { degree, order: m, table: table.into(), gens };
        debug_assert!(chi.satisfies_identity(cocycle));
        out.push(chi);
        if !advance(&mut branch, mods) {
            return Ok(out);
        }
    }
}

/// The branch index of each generator value, relative to the base root.
pub fn branch_indices(cocycle: &Cocycle, chi: &QuasiCharacter) -> Vec<u32> {
    let group = cocycle.group();
    let mods = group.moduli();
    let m = cocycle.ambient();
    (0..group.rank())
        .map(|l| {
            let base = constraint_exp(cocycle, chi.degree, l) / mods[l];
            let step = m / mods[l];
            ((chi.gens[l] + m - base) % m) / step
        })
        .collect()
}

/// Mixed-radix increment; returns false after the last vector.
pub(crate) fn advance(digits: &mut [u32], radix: &[u32]) -> bool {
    for pos in (0..digits.len()).rev() {
        digits[pos] += 1;
        if digits[pos] < radix[pos] {
            return true;
        }
        digits[pos] = 0;
    }
    false
}

/// One violated admissibility condition (indices 0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    IdentityDegree { i: usize },
    NotGenerating { subgroup_order: u32 },
    Pairing { i: usize, j: usize, value: RootExp },
    TrivialDiagonal { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "empty series"),
            Violation::IdentityDegree { i } => write!(f, "degree of χ{} is the identity", i + 1),
            Violation::NotGenerating { subgroup_order } => {
                write!(f, "degrees generate a subgroup of order {subgroup_order}")
            }
            Violation::Pairing { i, j, value } => {
                write!(f, "χ{}(g{})·χ{}(g{}) = {} ≠ 1", i + 1, j + 1, j + 1, i + 1, value)
            }
            Violation::TrivialDiagonal { i } => write!(f, "χ{}(g{}) = 1", i + 1, i + 1),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub violations: Vec<Violation>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks the four admissibility conditions: non-identity degrees, degrees
/// generate `G`, `χ_i(g_j)χ_j(g_i) = 1` for `i ≠ j`, and `χ_i(g_i) ≠ 1`.
pub fn check_admissible(group: &AbelianGroup, chars: &[QuasiCharacter]) -> AdmissibilityReport {
    let mut violations = Vec::new();
    if chars.is_empty() {
        violations.push(Violation::Empty);
        return AdmissibilityReport { violations };
    }
    for (i, c) in chars.iter().enumerate() {
        if c.degree.is_identity() {
            violations.push(Violation::IdentityDegree { i });
        }
    }
    let degrees: Vec<GroupElem> = chars.iter().map(|c| c.degree).collect();
    let sub = group.closure(&degrees).len() as u32;
    if sub != group.order() {
        violations.push(Violation::NotGenerating { subgroup_order: sub });
    }
    for i in 0..chars.len() {
        for j in i + 1..chars.len() {
            let v = chars[i].char_value(chars[j].degree).mul(chars[j].char_value(chars[i].degree));
            let v = v.expect("characters share the ambient order");
            if !v.is_one() {
                violations.push(Violation::Pairing { i, j, value: v });
            }
        }
    }
    for (i, c) in chars.iter().enumerate() {
        if c.char_value(c.degree).is_one() {
            violations.push(Violation::TrivialDiagonal { i });
        }
    }
    AdmissibilityReport { violations }
}

/// A validated admissible series `(χ_1, …, χ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleSeries {
    chars: Vec<QuasiCharacter>,
}

impl AdmissibleSeries {
    pub fn new(group: &AbelianGroup, chars: Vec<QuasiCharacter>) -> Result<Self, QcharError> {
        if chars.is_empty() {
            return Err(QcharError::EmptySeries);
        }
        let report = check_admissible(group, &chars);
        if !report.admissible() {
            return Err(QcharError::NotAdmissible(report));
        }
        Ok(AdmissibleSeries { chars })
    }

    /// Builds a series from degree exponent rows and generator-value exponents
    /// (of `ζ_M`).
    pub fn from_exponents(cocycle: &Cocycle, degrees: &[Vec<i64>], vals: &[Vec<u32>]) -> Result<Self, QcharError> {
        let group = cocycle.group();
        let m = cocycle.ambient();
        let chars = degrees
            .iter()
            .zip(vals)
            .map(|(d, v)| {
                let g = group.elem(d)?;
                let roots: Vec<RootExp> = v.iter().map(|&e| RootExp::new(m, e as i64)).collect();
                QuasiCharacter::from_values(cocycle, g, &roots)
            })
            .collect::<Result<Vec<_>, _>>()?;
        AdmissibleSeries::new(group, chars)
    }

    /// Wraps characters without checking admissibility.
    pub fn unchecked(chars: Vec<QuasiCharacter>) -> Self {
        AdmissibleSeries { chars }
    }

    pub fn chars(&self) -> &[QuasiCharacter] {
        &self.chars
    }

    pub fn rank(&self) -> usize {
        self.chars.len()
    }

    pub fn degrees(&self) -> Vec<GroupElem> {
        self.chars.iter().map(|c| c.degree).collect()
    }

    /// The `n × N` matrix of degree exponents.
    pub fn alpha(&self, group: &AbelianGroup) -> Vec<Vec<u32>> {
        self.chars.iter().map(|c| group.exponents(c.degree).to_vec()).collect()
    }

    /// `N_i = |χ_i(g_i)|`.
    pub fn nilpotency(&self) -> Vec<u32> {
        self.chars.iter().map(|c| c.char_value(c.degree).root_order()).collect()
    }

    pub fn to_json(&self, group: &AbelianGroup) -> SeriesJson {
        SeriesJson {
            degrees: self.alpha(group),
            values: self.chars.iter().map(QuasiCharacter::vals).collect(),
        }
    }
}

/// Wire format: degree exponent vectors and generator values as roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub degrees: Vec<Vec<u32>>,
    pub values: Vec<Vec<RootExp>>,
}

impl SeriesJson {
    pub fn parse(&self, cocycle: &Cocycle) -> Result<AdmissibleSeries, QcharError> {
        let group = cocycle.group();
        if self.degrees.len() != self.values.len() {
            return Err(QcharError::BadMatrix { row: self.degrees.len(), expected: self.degrees.len(), got: self.values.len() });
        }
        let chars = self
            .degrees
            .iter()
            .zip(&self.values)
            .map(|(d, v)| {
                let exps: Vec<i64> = d.iter().map(|&x| x as i64).collect();
                QuasiCharacter::from_values(cocycle, group.elem(&exps)?, v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        AdmissibleSeries::new(group, chars)
    }
}

/// Whether some admissible series has degrees given by the rows of `alpha`.
///
/// Works directly with exponent arithmetic: the value of `χ_i` on `e_l` is
/// `ζ_M^{b_il + k_il M/m_l}` with `b_il` the base root of the generator
/// constraint and `k_il` a branch, so the pairing and diagonal conditions
/// become congruences in the branch integers. A backtracking search looks for
/// one branch assignment satisfying all of them.
pub fn matrix_admissible(cocycle: &Cocycle, alpha: &[Vec<i64>]) -> Result<bool, QcharError> {
    if !cocycle.is_reduced() {
        return Err(QcharError::NonReducedCocycle);
    }
    if alpha.is_empty() {
        return Err(QcharError::EmptySeries);
    }
    let group = cocycle.group();
    let mods = group.moduli();
    let nf = mods.len();
    let m = cocycle.ambient() as i64;
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(alpha.len());
    for (r, row) in alpha.iter().enumerate() {
        if row.len() != nf {
            return Err(QcharError::BadMatrix { row: r, expected: nf, got: row.len() });
        }
        rows.push(row.iter().zip(mods).map(|(&x, &ml)| x.rem_euclid(ml as i64)).collect());
    }
    if rows.iter().any(|r| r.iter().all(|&x| x == 0)) {
        return Ok(false);
    }
    let degrees: Vec<GroupElem> = rows.iter().map(|r| group.elem(r)).collect::<Result<_, _>>()?;
    if !group.generates(&degrees) {
        return Ok(false);
    }
    let data = cocycle.data();
    // Base exponents b_il of the generator constraint, in ζ_M units.
    let base: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            (0..nf)
                .map(|l| {
                    let mut c = data.a[l] as i64 * r[l] * (m / mods[l] as i64);
                    for t in l + 1..nf {
                        let v = data.a2.get(&(l, t)).copied().unwrap_or(0) as i64;
                        c += v * r[t] * (m / mods[t] as i64);
                    }
                    c.rem_euclid(m) / mods[l] as i64
                })
                .collect()
        })
        .collect();
    let value = |i: usize, k: &[u32], target: &[i64]| -> i64 {
        (0..nf).map(|l| target[l] * (base[i][l] + k[l] as i64 * (m / mods[l] as i64))).sum::<i64>().rem_euclid(m)
    };
    let branch_count: usize = mods.iter().map(|&x| x as usize).product();
    let branches: Vec<Vec<u32>> = {
        let mut all = Vec::with_capacity(branch_count);
        let mut k = vec![0u32; nf];
        loop {
            all.push(k.clone());
            if !advance(&mut k, mods) {
                break all;
            }
        }
    };
    let n = rows.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    fn search(
        i: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        branches: &[Vec<u32>],
        ok: &dyn Fn(usize, &[u32], &[usize]) -> bool,
    ) -> bool {
        if i == n {
            return true;
        }
        for (bi, k) in branches.iter().enumerate() {
            if ok(i, k, chosen) {
                chosen.push(bi);
                if search(i + 1, n, chosen, branches, ok) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let ok = |i: usize, k: &[u32], prev: &[usize]| -> bool {
        if value(i, k, &rows[i]) == 0 {
            return false;
        }
        prev.iter().enumerate().all(|(j, &bj)| (value(i, k, &rows[j]) + value(j, &branches[bj], &rows[i])) % m == 0)
    };
    Ok(search(0, n, &mut chosen, &branches, &ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2cubed(a: &[u32]) -> Cocycle {
        Cocycle::from_moduli(&[2, 2, 2], a).unwrap()
    }

    #[test]
    fn eight_characters_at_e1() {
        let c = z2cubed(&[1, 1, 1]);
        let g = c.group();
        let chars = solve_quasicharacters(&c, g.generator(0)).unwrap();
        assert_eq!(chars.len(), 8);
        for chi in &chars {
            let v = chi.vals();
            // M = 4: i = z, -i = z^3.
            assert!(v[0].exp == 1 || v[0].exp == 3);
            assert!(v[1].exp % 2 == 0 && v[2].exp % 2 == 0);
        }
        let first = &chars[0];
        assert_eq!(first.char_value(g.generator(0)), RootExp::new(4, 1));
        assert_eq!(first.char_value(g.elem(&[1, 1, 0]).unwrap()), RootExp::new(4, 1));
        assert!(first.char_value(g.identity()).is_one());
    }

    #[test]
    fn trivial_cocycle_gives_ordinary_characters() {
        let c = Cocycle::from_moduli(&[2, 3], &[0, 0]).unwrap();
        let g = c.group();
        for h in g.elements() {
            let chars = solve_quasicharacters(&c, h).unwrap();
            assert_eq!(chars.len(), 6);
            for chi in &chars {
                for x in g.elements() {
                    for y in g.elements() {
                        let lhs = (chi.value_exp(x) + chi.value_exp(y)) % c.ambient();
                        assert_eq!(lhs, chi.value_exp(g.mul(x, y)));
                    }
                }
            }
        }
    }

    #[test]
    fn non_symmetric_degree_is_rejected() {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        let c = Cocycle::new(g.clone(), crate::group::CocycleData::trivial(3).with_triple(0, 1, 2, 1)).unwrap();
        let bad = g.elements().find(|&h| !c.phi_tilde_symmetric(h)).unwrap();
        assert!(matches!(solve_quasicharacters(&c, bad), Err(QcharError::NonSymmetricCocycle(_))));
    }

    #[test]
    fn admissibility_examples() {
        let c = z2cubed(&[1, 1, 1]);
        let g = c.group();
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        // χ_i(x_i) = i, off-diagonal values 1.
        let vals = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let s = AdmissibleSeries::from_exponents(&c, &id, &vals).unwrap();
        assert_eq!(s.nilpotency(), vec![4, 4, 4]);

        let degs = [vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]];
        let chars: Vec<QuasiCharacter> = degs
            .iter()
            .map(|d| solve_quasicharacters(&c, g.elem(d).unwrap()).unwrap().remove(0))
            .collect();
        let report = check_admissible(g, &chars);
        assert!(report.violations.contains(&Violation::NotGenerating { subgroup_order: 4 }));

        let triv = Cocycle::from_moduli(&[2], &[0]).unwrap();
        let one = solve_quasicharacters(&triv, triv.group().generator(0)).unwrap().remove(0);
        let report = check_admissible(triv.group(), &[one]);
        assert_eq!(report.violations, vec![Violation::TrivialDiagonal { i: 0 }]);
        assert!(matches!(AdmissibleSeries::new(g, vec![]), Err(QcharError::EmptySeries)));
    }

    #[test]
    fn identity_matrix_is_admissible() {
        let c = z2cubed(&[1, 1, 1]);
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(matrix_admissible(&c, &id).unwrap());
        assert!(!matrix_admissible(&c, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap());
        assert!(matches!(matrix_admissible(&c, &[vec![1, 0]]), Err(QcharError::BadMatrix { .. })));
    }

    #[test]
    fn branch_indices_follow_solver_order() {
        let c = Cocycle::from_moduli(&[2, 4], &[1, 3]).unwrap();
        let g = c.group();
        let h = g.elem(&[1, 3]).unwrap();
        let chars = solve_quasicharacters(&c, h).unwrap();
        let idx: Vec<Vec<u32>> = chars.iter().map(|x| branch_indices(&c, x)).collect();
        let mut sorted = idx.clone();
        sorted.sort();
        assert_eq!(idx, sorted);
        assert_eq!(idx.len(), 8);
    }
}
