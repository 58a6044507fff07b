//! The census over `Z2 × Z2 × Z2` with reduced cocycles `a ∈ {0,1}³`.
//!
//! In the standard frame the first three degrees are `e_1, e_2, e_3`; every
//! further character is determined by its degree, so a series is described
//! by the multiset of extra degrees. For `a = (1,1,1)` the series fall into
//! four families:
//!
//! 1. at most three extras, each a distinct generator `e_k`;
//! 2. one extra `e_k`, plus copies of `e_i e_j` with `{i,j,k} = {1,2,3}`
//!    and `χ_i(e_i) = χ_j(e_j)`;
//! 3. one or more copies of a single `e_i e_j`, with `χ_i(e_i) = χ_j(e_j)`;
//! 4. one `e_1 e_2 e_3`, plus copies of a single `e_i e_j`, with
//!    `χ_i(e_i) = χ_j(e_j)` when a pair is present.
//!
//! The families are stated for `a = (1,1,1)` only, so other cocycles are
//! enumerated and counted but left untagged.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{enumerate_admissible, ClassifyError, EnumerateOptions, Frame, SeriesEntry, SCHEMA};
use crate::group::{AbelianGroup, Cocycle, CocycleData};

/// The family of a standard-frame series for `a = (1,1,1)`.
pub fn tag_family(entry: &SeriesEntry) -> Result<u8, ClassifyError> {
    let describe = || format!("{:?}", entry.alpha);
    let n = entry.alpha.len();
    let standard = n >= 3
        && entry.alpha[..3].iter().enumerate().all(|(i, row)| row.len() == 3 && (0..3).all(|l| row[l] == (l == i) as u32));
    if !standard {
        return Err(ClassifyError::UnclassifiedSeries(describe()));
    }
    let diag = |i: usize| entry.values[i][i];
    let support = |row: &Vec<u32>| -> Vec<usize> { (0..3).filter(|&l| row[l] == 1).collect() };
    let extras: Vec<Vec<usize>> = entry.alpha[3..].iter().map(support).collect();
    let singles: Vec<usize> = extras.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
    let pairs: Vec<&Vec<usize>> = extras.iter().filter(|s| s.len() == 2).collect();
    let triples = extras.iter().filter(|s| s.len() == 3).count();
    let one_pair_kind = pairs.windows(2).all(|w| w[0] == w[1]);
    let pair_diag_equal = pairs.first().is_none_or(|p| diag(p[0]) == diag(p[1]));

    let mut tags = Vec::new();
    let mut distinct = singles.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if pairs.is_empty() && triples == 0 && distinct.len() == singles.len() && singles.len() <= 3 {
        tags.push(1);
    }
    if singles.len() == 1 && triples == 0 && !pairs.is_empty() && one_pair_kind && pair_diag_equal && !pairs[0].contains(&singles[0]) {
        tags.push(2);
    }
    if singles.is_empty() && triples == 0 && !pairs.is_empty() && one_pair_kind && pair_diag_equal {
        tags.push(3);
    }
    if triples == 1 && singles.is_empty() && one_pair_kind && pair_diag_equal {
        tags.push(4);
    }
    match tags.as_slice() {
        [t] => Ok(*t),
        [] => Err(ClassifyError::UnclassifiedSeries(describe())),
        _ => Err(ClassifyError::AmbiguousSeries(describe())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusOptions {
    /// Families 2–4 exist at every rank, so enumeration needs a ceiling.
    pub max_rank: usize,
    pub include_entries: bool,
    /// Also confirm that every cocycle with a pair parameter admits no series
    /// at ranks 3 and 4.
    pub pair_parameter_scan: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { max_rank: 7, include_entries: false, pair_parameter_scan: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRank {
    pub rank: usize,
    pub count: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub family_counts: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<SeriesEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCocycle {
    pub a: Vec<u32>,
    pub tagged: bool,
    pub ranks: Vec<CensusRank>,
    /// Ranks at which family 1 occurs (tagged cocycles only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub family_one_ranks: Vec<usize>,
    /// First rank with no series after a nonzero rank, if reached.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhausted_at: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairParameterCount {
    pub a: Vec<u32>,
    pub a2: Vec<u32>,
    pub rank: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub schema: String,
    pub group: Vec<u32>,
    pub frame: Frame,
    pub max_rank: usize,
    pub cocycles: Vec<CensusCocycle>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pair_parameter_counts: Vec<PairParameterCount>,
}

impl CensusReport {
    pub fn cocycle(&self, a: &[u32]) -> Option<&CensusCocycle> {
        self.cocycles.iter().find(|c| c.a == a)
    }
}

fn z2cubed() -> AbelianGroup {
    AbelianGroup::new(&[2, 2, 2]).expect("valid moduli")
}

/// Enumerates every rank up to `max_rank` for the seven nontrivial reduced
/// cocycles and tags the `a = (1,1,1)` series.
pub fn z2cubed_report(opts: &CensusOptions) -> Result<CensusReport, ClassifyError> {
    let group = z2cubed();
    let enum_opts = EnumerateOptions::default();
    let mut cocycles = Vec::new();
    for bits in 1u32..8 {
        let a: Vec<u32> = (0..3).map(|l| (bits >> (2 - l)) & 1).collect();
        let cocycle = Cocycle::new(group.clone(), CocycleData::from_a(&a))?;
        let tagged = a == [1, 1, 1];
        let mut ranks = Vec::new();
        let mut seen_nonzero = false;
        let mut exhausted_at = None;
        for rank in 1..=opts.max_rank {
            let mut report = enumerate_admissible(&cocycle, rank, &enum_opts)?;
            let mut family_counts = BTreeMap::new();
            if tagged {
                for e in &mut report.entries {
                    let t = tag_family(e)?;
                    e.family = Some(t);
                    *family_counts.entry(t.to_string()).or_insert(0) += 1;
                }
            }
            ranks.push(CensusRank {
                rank,
                count: report.count,
                family_counts,
                entries: if opts.include_entries { report.entries } else { Vec::new() },
            });
            if report.count > 0 {
                seen_nonzero = true;
            } else if seen_nonzero {
                exhausted_at = Some(rank);
                break;
            }
        }
        let family_one_ranks = ranks.iter().filter(|r| r.family_counts.contains_key("1")).map(|r| r.rank).collect();
        cocycles.push(CensusCocycle { a, tagged, ranks, family_one_ranks, exhausted_at });
    }
    let mut pair_parameter_counts = Vec::new();
    if opts.pair_parameter_scan {
        for bits in 0u32..8 {
            let a: Vec<u32> = (0..3).map(|l| (bits >> (2 - l)) & 1).collect();
            for pbits in 1u32..8 {
                let a2: Vec<u32> = (0..3).map(|l| (pbits >> (2 - l)) & 1).collect();
                let mut data = CocycleData::from_a(&a);
                for (k, &(s, t)) in [(0, 1), (0, 2), (1, 2)].iter().enumerate() {
                    data = data.with_pair(s, t, a2[k]);
                }
                let cocycle = Cocycle::new(group.clone(), data)?;
                for rank in 3..=4 {
                    let count = enumerate_admissible(&cocycle, rank, &EnumerateOptions { frame: Frame::All, ..enum_opts.clone() })?.count;
                    pair_parameter_counts.push(PairParameterCount { a: a.clone(), a2: a2.clone(), rank, count });
                }
            }
        }
    }
    Ok(CensusReport {
        schema: SCHEMA.to_string(),
        group: group.moduli().to_vec(),
        frame: Frame::Standard,
        max_rank: opts.max_rank,
        cocycles,
        pair_parameter_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(alpha: &[[u32; 3]], diag: [u32; 3]) -> SeriesEntry {
        let n = alpha.len();
        let mut values = vec![vec![0u32; 3]; n];
        for i in 0..3 {
            values[i][i] = diag[i];
        }
        SeriesEntry {
            alpha: alpha.iter().map(|r| r.to_vec()).collect(),
            branches: vec![vec![0; 3]; n],
            values,
            nilpotency: vec![4; n],
            dim: 0,
            family: None,
            over_dim_limit: false,
        }
    }

    const E: [[u32; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

    #[test]
    fn families_by_extra_degrees() {
        let with = |extra: &[[u32; 3]], diag| {
            let mut rows = E.to_vec();
            rows.extend_from_slice(extra);
            tag_family(&entry(&rows, diag))
        };
        assert_eq!(with(&[], [1, 1, 1]), Ok(1));
        assert_eq!(with(&[[0, 1, 0], [1, 0, 0]], [1, 3, 1]), Ok(1));
        assert_eq!(with(&[[1, 1, 0], [0, 0, 1], [1, 1, 0]], [3, 3, 1]), Ok(2));
        assert_eq!(with(&[[0, 1, 1]], [1, 3, 3]), Ok(3));
        assert_eq!(with(&[[1, 1, 1]], [1, 3, 1]), Ok(4));
        assert_eq!(with(&[[1, 0, 1], [1, 1, 1]], [1, 3, 1]), Ok(4));
        assert!(with(&[[1, 0, 0], [1, 0, 0]], [1, 1, 1]).is_err());
        assert!(with(&[[0, 1, 1]], [1, 1, 3]).is_err());
        assert!(with(&[[1, 1, 0], [0, 1, 1]], [1, 1, 1]).is_err());
    }

    #[test]
    fn non_standard_frames_are_rejected() {
        assert!(tag_family(&entry(&[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1])).is_err());
    }
}
