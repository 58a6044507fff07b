//! Enumeration of admissible series, presentations of the resulting Majid
//! algebras, and the census over `Z2 × Z2 × Z2`.

mod census;
mod present;

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Cocycle, CocycleJson, GroupElem, GroupError};
use crate::qchar::{branch_indices, solve_quasicharacters, AdmissibleSeries, QcharError, QuasiCharacter};

pub use census::{tag_family, z2cubed_report, CensusCocycle, CensusOptions, CensusRank, CensusReport};
pub use present::{present_majid, CoproductLine, Presentation, Relation};

pub const SCHEMA: &str = "quasiq/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("the cocycle has a_rst terms; enable the obstruction scan to enumerate anyway")]
    NonReducedCocycle,
    #[error("dimension {dim} exceeds the limit {limit}")]
    DimensionLimitExceeded { dim: u128, limit: u128 },
    #[error("series matches no family: {0}")]
    UnclassifiedSeries(String),
    #[error("series matches several families: {0}")]
    AmbiguousSeries(String),
    #[error("no entry with index {0}")]
    NoSuchEntry(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Series(#[from] QcharError),
}

/// Which degree tuples are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    /// The first `rank(G)` degrees are the distinguished generators `e_1, …, e_r`.
    #[default]
    Standard,
    /// Every tuple of non-identity degrees.
    All,
}

impl std::str::FromStr for Frame {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "standard" => Ok(Frame::Standard),
            "all" => Ok(Frame::All),
            _ => Err(format!("unknown frame `{s}` (expected `standard` or `all`)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Keep one series per orbit under simultaneous permutation of indices.
    pub up_to_perm: bool,
    /// Entries with `|G|·Π N_i` above this are flagged.
    pub dim_limit: Option<u128>,
    pub frame: Frame,
    /// Allow cocycles with `a_rst` terms; degrees without quasi-characters are
    /// recorded instead of failing.
    pub obstruction_scan: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { up_to_perm: false, dim_limit: None, frame: Frame::Standard, obstruction_scan: false }
    }
}

/// One admissible series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesEntry {
    /// Degree exponents, one row per character.
    pub alpha: Vec<Vec<u32>>,
    /// Root branch of each generator value, one row per character.
    pub branches: Vec<Vec<u32>>,
    /// Generator values `χ_i(e_l)` as exponents of `ζ_M`.
    pub values: Vec<Vec<u32>>,
    #[serde(rename = "N")]
    pub nilpotency: Vec<u32>,
    /// `|G| · Π N_i`.
    pub dim: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<u8>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub over_dim_limit: bool,
}

impl SeriesEntry {
    fn from_chars(cocycle: &Cocycle, chars: &[QuasiCharacter], dim_limit: Option<u128>) -> Self {
        let group = cocycle.group();
        let nilpotency: Vec<u32> = chars.iter().map(|c| c.char_value(c.degree()).root_order()).collect();
        let dim = group.order() as u128 * nilpotency.iter().map(|&n| n as u128).product::<u128>();
        SeriesEntry {
            alpha: chars.iter().map(|c| group.exponents(c.degree()).to_vec()).collect(),
            branches: chars.iter().map(|c| branch_indices(cocycle, c)).collect(),
            values: chars.iter().map(|c| c.gen_exps().to_vec()).collect(),
            nilpotency,
            dim,
            family: None,
            over_dim_limit: dim_limit.is_some_and(|l| dim > l),
        }
    }

    /// Rebuilds the validated series.
    pub fn series(&self, cocycle: &Cocycle) -> Result<AdmissibleSeries, ClassifyError> {
        let degrees: Vec<Vec<i64>> = self.alpha.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        Ok(AdmissibleSeries::from_exponents(cocycle, &degrees, &self.values)?)
    }

    fn sort_key(&self) -> (&Vec<Vec<u32>>, &Vec<Vec<u32>>) {
        (&self.alpha, &self.branches)
    }
}

/// Degrees for which no quasi-character exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    /// Exponent vectors of the obstructed non-identity degrees.
    pub obstructed: Vec<Vec<u32>>,
    /// Whether the remaining non-identity degrees still generate `G`.
    pub unobstructed_generate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema: String,
    pub group: Vec<u32>,
    pub cocycle: CocycleJson,
    pub rank: usize,
    pub frame: Frame,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub up_to_perm: bool,
    pub count: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub family_counts: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
    pub entries: Vec<SeriesEntry>,
}

impl ClassificationReport {
    pub fn entry(&self, id: usize) -> Result<&SeriesEntry, ClassifyError> {
        self.entries.get(id).ok_or(ClassifyError::NoSuchEntry(id))
    }
}

/// Non-identity degrees whose induced 2-cocycle is not symmetric.
pub fn obstruction_scan(cocycle: &Cocycle) -> Obstruction {
    let group = cocycle.group();
    let mut obstructed = Vec::new();
    let mut free = Vec::new();
    for g in group.elements().skip(1) {
        match solve_quasicharacters(cocycle, g) {
            Err(QcharError::NonSymmetricCocycle(_)) => obstructed.push(group.exponents(g).to_vec()),
            _ => free.push(g),
        }
    }
    Obstruction { obstructed, unobstructed_generate: group.generates(&free) }
}

/// Candidate characters per degree index, keeping those with `χ(g) ≠ 1`.
fn candidates(cocycle: &Cocycle) -> Vec<Vec<QuasiCharacter>> {
    let group = cocycle.group();
    group
        .elements()
        .map(|g| {
            if g.is_identity() {
                return Vec::new();
            }
            solve_quasicharacters(cocycle, g)
                .map(|cs| cs.into_iter().filter(|c| !c.char_value(g).is_one()).collect())
                .unwrap_or_default()
        })
        .collect()
}

fn pairs_trivially(m: u32, a: &QuasiCharacter, b: &QuasiCharacter) -> bool {
    (a.value_exp(b.degree()) + b.value_exp(a.degree())).is_multiple_of(m)
}

struct Search<'a> {
    cocycle: &'a Cocycle,
    cands: &'a [Vec<QuasiCharacter>],
    allowed: Vec<Vec<GroupElem>>,
    n: usize,
    /// Positions from which candidates must be non-decreasing, which
    /// visits each multiset of characters once.
    ordered_from: usize,
}

impl Search<'_> {
    fn run(&self, prefix: &mut Vec<QuasiCharacter>, last: (usize, usize), out: &mut Vec<Vec<QuasiCharacter>>) {
        let k = prefix.len();
        if k == self.n {
            let degs: Vec<GroupElem> = prefix.iter().map(QuasiCharacter::degree).collect();
            if self.cocycle.group().generates(&degs) {
                out.push(prefix.clone());
            }
            return;
        }
        let m = self.cocycle.ambient();
        for &g in &self.allowed[k] {
            for (ci, c) in self.cands[g.index()].iter().enumerate() {
                let key = (g.index(), ci);
                if k > self.ordered_from && key < last {
                    continue;
                }
                if prefix.iter().all(|p| pairs_trivially(m, p, c)) {
                    prefix.push(c.clone());
                    self.run(prefix, key, out);
                    prefix.pop();
                }
            }
        }
    }
}

/// All admissible series of length `n`, in canonical order: degree tuples
/// lexicographic in their exponent rows, then branches lexicographic.
pub fn enumerate_admissible(
    cocycle: &Cocycle,
    n: usize,
    opts: &EnumerateOptions,
) -> Result<ClassificationReport, ClassifyError> {
    let group = cocycle.group();
    if !cocycle.is_reduced() && !opts.obstruction_scan {
        return Err(ClassifyError::NonReducedCocycle);
    }
    let obstruction = (!cocycle.is_reduced()).then(|| obstruction_scan(cocycle));
    let cands = candidates(cocycle);
    let nonid: Vec<GroupElem> = group.elements().skip(1).collect();
    let allowed: Vec<Vec<GroupElem>> = (0..n)
        .map(|k| match opts.frame {
            Frame::Standard if k < group.rank() => vec![group.generator(k)],
            _ => nonid.clone(),
        })
        .collect();
    let mut raw: Vec<Vec<QuasiCharacter>> = Vec::new();
    if n > 0 && !(opts.frame == Frame::Standard && n < group.rank()) {
        let ordered_from = match (opts.up_to_perm, opts.frame) {
            (false, _) => usize::MAX,
            (true, Frame::All) => 0,
            (true, Frame::Standard) => group.rank(),
        };
        let search = Search { cocycle, cands: &cands, allowed, n, ordered_from };
        let firsts: Vec<(&QuasiCharacter, (usize, usize))> = search.allowed[0]
            .iter()
            .flat_map(|g| cands[g.index()].iter().enumerate().map(move |(ci, c)| (c, (g.index(), ci))))
            .collect();
        raw = firsts
            .par_iter()
            .map(|(c, key)| {
                let mut out = Vec::new();
                search.run(&mut vec![(*c).clone()], *key, &mut out);
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
    }
    let mut entries: Vec<SeriesEntry> =
        raw.iter().map(|chars| SeriesEntry::from_chars(cocycle, chars, opts.dim_limit)).collect();
    entries.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    if opts.up_to_perm {
        let mut seen = HashSet::new();
        entries.retain(|e| {
            let mut key: Vec<(&Vec<u32>, &Vec<u32>)> = e.alpha.iter().zip(&e.values).collect();
            key.sort();
            let key: Vec<(Vec<u32>, Vec<u32>)> = key.into_iter().map(|(a, b)| (a.clone(), b.clone())).collect();
            seen.insert(key)
        });
    }
    Ok(ClassificationReport {
        schema: SCHEMA.to_string(),
        group: group.moduli().to_vec(),
        cocycle: cocycle.data().to_json(group),
        rank: n,
        frame: opts.frame,
        up_to_perm: opts.up_to_perm,
        count: entries.len(),
        family_counts: BTreeMap::new(),
        obstruction,
        entries,
    })
}

/// Automorphisms of `G` that leave `Φ` unchanged pointwise.
pub fn cocycle_stabilizer(cocycle: &Cocycle) -> Vec<Vec<GroupElem>> {
    cocycle.group().automorphisms().into_iter().filter(|s| cocycle.preserved_by(s)).collect()
}

/// The series obtained by moving `series` along `sigma`: degrees `σ(g_i)`
/// and characters `χ_i ∘ σ^{-1}`, as sorted `(degree, generator values)` rows.
pub fn transport(cocycle: &Cocycle, series: &AdmissibleSeries, sigma: &[GroupElem]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let group = cocycle.group();
    let mut inverse = vec![GroupElem::IDENTITY; sigma.len()];
    for (i, s) in sigma.iter().enumerate() {
        inverse[s.index()] = GroupElem(i as u32);
    }
    let mut rows: Vec<(Vec<u32>, Vec<u32>)> = series
        .chars()
        .iter()
        .map(|chi| {
            let deg = group.exponents(sigma[chi.degree().index()]).to_vec();
            let vals = (0..group.rank()).map(|l| chi.value_exp(inverse[group.generator(l).index()])).collect();
            (deg, vals)
        })
        .collect();
    rows.sort();
    rows
}

/// One entry per orbit under index permutations and the automorphisms that
/// fix the cocycle. Such an automorphism carries every structure constant of
/// `S(V)` and `S(V) # kG` to the same constant, so checking a representative
/// checks its whole orbit. Keeps the first entry of each orbit.
pub fn up_to_automorphism(cocycle: &Cocycle, entries: &[SeriesEntry]) -> Result<Vec<SeriesEntry>, ClassifyError> {
    let stabilizer = cocycle_stabilizer(cocycle);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in entries {
        let series = e.series(cocycle)?;
        let mut best = None;
        for s in &stabilizer {
            let key = transport(cocycle, &series, s);
            if best.as_ref().is_none_or(|b| &key < b) {
                best = Some(key);
            }
        }
        if seen.insert(best) {
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// Whether a series can be built under the given dimension limit.
pub fn check_dim(entry: &SeriesEntry, limit: Option<u128>) -> Result<(), ClassifyError> {
    match limit {
        Some(l) if entry.dim > l => Err(ClassifyError::DimensionLimitExceeded { dim: entry.dim, limit: l }),
        _ => Ok(()),
    }
}

/// The cocycle a report was computed for.
pub fn report_cocycle(report: &ClassificationReport) -> Result<Cocycle, ClassifyError> {
    let (group, data) = report.cocycle.parse()?;
    Ok(Cocycle::new(group, data)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{AbelianGroup, CocycleData};

    fn cocycle(moduli: &[u32], a: &[u32]) -> Cocycle {
        Cocycle::from_moduli(moduli, a).unwrap()
    }

    #[test]
    fn quantum_line_over_z2() {
        let c = cocycle(&[2], &[0]);
        let r = enumerate_admissible(&c, 1, &EnumerateOptions::default()).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.entries[0].nilpotency, vec![2]);
        assert_eq!(r.entries[0].dim, 4);
    }

    #[test]
    fn z2cubed_rank_three_standard_frame() {
        let c = cocycle(&[2, 2, 2], &[1, 1, 1]);
        let r = enumerate_admissible(&c, 3, &EnumerateOptions::default()).unwrap();
        assert_eq!(r.count, 64);
        assert!(r.entries.iter().all(|e| e.nilpotency == vec![4, 4, 4] && e.dim == 512));
        assert!(r.entries.windows(2).all(|w| w[0].sort_key() < w[1].sort_key()));
    }

    #[test]
    fn pair_parameters_kill_everything() {
        let group = AbelianGroup::new(&[2, 2, 2]).unwrap();
        let data = CocycleData::from_a(&[1, 1, 1]).with_pair(0, 1, 1);
        let c = Cocycle::new(group, data).unwrap();
        for n in 3..=4 {
            assert_eq!(enumerate_admissible(&c, n, &EnumerateOptions::default()).unwrap().count, 0);
        }
    }

    #[test]
    fn dedup_keeps_one_per_orbit() {
        let c = cocycle(&[2, 2], &[1, 0]);
        let all = EnumerateOptions { frame: Frame::All, ..Default::default() };
        let raw = enumerate_admissible(&c, 2, &all).unwrap();
        let dedup = enumerate_admissible(&c, 2, &EnumerateOptions { up_to_perm: true, ..all }).unwrap();
        assert!(dedup.count < raw.count);
        assert!(dedup.count * 2 >= raw.count);
    }

    #[test]
    fn automorphism_orbits_partition_the_entries() {
        let c = cocycle(&[2, 2], &[0, 0]);
        let r = enumerate_admissible(&c, 2, &EnumerateOptions { frame: Frame::All, ..Default::default() }).unwrap();
        let reps = up_to_automorphism(&c, &r.entries).unwrap();
        let stab = cocycle_stabilizer(&c);
        assert_eq!(stab.len(), 6);
        let orbit = |e: &SeriesEntry| -> HashSet<Vec<(Vec<u32>, Vec<u32>)>> {
            let series = e.series(&c).unwrap();
            stab.iter().map(|s| transport(&c, &series, s)).collect()
        };
        let mut covered = HashSet::new();
        for rep in &reps {
            let o = orbit(rep);
            assert!(o.is_disjoint(&covered));
            covered.extend(o);
        }
        for e in &r.entries {
            let mut own: Vec<(Vec<u32>, Vec<u32>)> = e.alpha.iter().cloned().zip(e.values.iter().cloned()).collect();
            own.sort();
            assert!(covered.contains(&own));
        }
        assert!(reps.len() < r.entries.len());
    }

    #[test]
    fn ordered_search_finds_every_orbit_once() {
        let orbit = |e: &SeriesEntry| {
            let mut k: Vec<(Vec<u32>, Vec<u32>)> = e.alpha.iter().cloned().zip(e.values.iter().cloned()).collect();
            k.sort();
            k
        };
        for (moduli, a, n, frame) in [
            (&[2, 2][..], &[1, 0][..], 4, Frame::All),
            (&[4][..], &[2][..], 3, Frame::All),
            (&[2, 2, 2][..], &[1, 1, 1][..], 5, Frame::Standard),
        ] {
            let c = cocycle(moduli, a);
            let opts = EnumerateOptions { frame, ..Default::default() };
            let raw = enumerate_admissible(&c, n, &opts).unwrap();
            let orbits: HashSet<_> = raw.entries.iter().map(orbit).collect();
            let dedup = enumerate_admissible(&c, n, &EnumerateOptions { up_to_perm: true, ..opts }).unwrap();
            let found: HashSet<_> = dedup.entries.iter().map(orbit).collect();
            assert_eq!(dedup.count, orbits.len(), "{moduli:?} {a:?}");
            assert_eq!(found, orbits);
        }
    }

    #[test]
    fn non_reduced_needs_the_scan() {
        let group = AbelianGroup::new(&[2, 2, 2]).unwrap();
        let c = Cocycle::new(group, CocycleData::trivial(3).with_triple(0, 1, 2, 1)).unwrap();
        assert_eq!(
            enumerate_admissible(&c, 3, &EnumerateOptions::default()),
            Err(ClassifyError::NonReducedCocycle)
        );
        let scan = EnumerateOptions { obstruction_scan: true, frame: Frame::All, ..Default::default() };
        let r = enumerate_admissible(&c, 3, &scan).unwrap();
        assert_eq!(r.count, 0);
        assert!(!r.obstruction.unwrap().unobstructed_generate);
    }

    #[test]
    fn entries_rebuild_their_series() {
        let c = cocycle(&[2, 4], &[1, 3]);
        let r = enumerate_admissible(&c, 2, &EnumerateOptions { frame: Frame::All, ..Default::default() }).unwrap();
        assert!(r.count > 0);
        for e in &r.entries {
            let s = e.series(&c).unwrap();
            assert_eq!(s.nilpotency(), e.nilpotency);
        }
    }
}
