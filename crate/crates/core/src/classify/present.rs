//! Generators and relations of `S(V) # kG`.
//!
//! Group generators are `e1, …, er`; braided generators are `X1, …, Xn` with
//! `Xi` of degree `g_i`. All scalars are powers of `z = exp(2πi/M)` where `M`
//! is the ambient root order of the cocycle.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ClassifyError, SCHEMA};
use crate::cyclo::RootExp;
use crate::group::{Cocycle, CocycleJson};
use crate::qchar::{AdmissibleSeries, SeriesJson};

/// `lhs = scalar · rhs`, with words written as space-separated generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: String,
    pub scalar: RootExp,
    pub rhs: String,
}

/// `Δ(generator) = Σ terms`, each term a pair of words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoproductLine {
    pub generator: String,
    pub terms: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub schema: String,
    pub group: Vec<u32>,
    pub cocycle: CocycleJson,
    pub series: SeriesJson,
    /// Ambient root order `M`.
    pub ambient: u32,
    pub dim: u128,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    pub coproducts: Vec<CoproductLine>,
    /// For reduced cocycles the braiding scalars also follow from the
    /// generator values alone; this records whether the two agree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form_agrees: Option<bool>,
}

fn word(parts: &[&str]) -> String {
    parts.iter().filter(|p| **p != "1").copied().collect::<Vec<_>>().join(" ")
}

fn xname(i: usize) -> String {
    format!("X{}", i + 1)
}

/// Builds the presentation of the bosonization of `series`.
pub fn present_majid(cocycle: &Cocycle, series: &AdmissibleSeries) -> Result<Presentation, ClassifyError> {
    let group = cocycle.group();
    let m = cocycle.ambient();
    let chars = series.chars();
    let degrees = series.degrees();
    let nilpotency = series.nilpotency();
    let r = group.rank();
    let root = |exp: u32| RootExp::new(m, exp as i64);

    let mut generators: Vec<String> = (0..r).map(|l| format!("e{}", l + 1)).collect();
    generators.extend((0..chars.len()).map(xname));

    let mut relations = Vec::new();
    for l in 0..r {
        let e = format!("e{}", l + 1);
        relations.push(Relation { lhs: format!("{e}^{}", group.moduli()[l]), scalar: root(0), rhs: "1".into() });
    }
    for l in 0..r {
        for k in l + 1..r {
            relations.push(Relation {
                lhs: format!("e{} e{}", k + 1, l + 1),
                scalar: root(0),
                rhs: format!("e{} e{}", l + 1, k + 1),
            });
        }
    }
    for (j, chi) in chars.iter().enumerate() {
        for l in 0..r {
            let e = format!("e{}", l + 1);
            relations.push(Relation {
                lhs: format!("{e} {}", xname(j)),
                scalar: root(chi.value_exp(group.generator(l))),
                rhs: format!("{} {e}", xname(j)),
            });
        }
    }
    for j in 0..chars.len() {
        for i in 0..j {
            relations.push(Relation {
                lhs: format!("{} {}", xname(j), xname(i)),
                scalar: root(chars[i].value_exp(degrees[j])),
                rhs: format!("{} {}", xname(i), xname(j)),
            });
        }
    }
    for (i, &n) in nilpotency.iter().enumerate() {
        relations.push(Relation { lhs: format!("{}^{n}", xname(i)), scalar: root(0), rhs: "0".into() });
    }

    let mut coproducts: Vec<CoproductLine> = (0..r)
        .map(|l| {
            let e = format!("e{}", l + 1);
            CoproductLine { generator: e.clone(), terms: vec![(e.clone(), e)] }
        })
        .collect();
    for (i, &g) in degrees.iter().enumerate() {
        let x = xname(i);
        let gname = group.fmt_elem(g);
        coproducts.push(CoproductLine {
            generator: x.clone(),
            terms: vec![(x.clone(), "1".into()), (word(&[&gname]), x)],
        });
    }

    let closed_form_agrees = cocycle.is_reduced().then(|| {
        chars.iter().all(|chi| {
            degrees.iter().all(|&g| {
                let by_values: u64 = (0..r).map(|l| group.exp_at(g, l) as u64 * chi.gen_exps()[l] as u64).sum();
                by_values % m as u64 == chi.value_exp(g) as u64
            }) && (0..r).all(|l| chi.value_exp(group.generator(l)) == chi.gen_exps()[l])
        })
    });

    let dim = group.order() as u128 * nilpotency.iter().map(|&n| n as u128).product::<u128>();
    Ok(Presentation {
        schema: SCHEMA.to_string(),
        group: group.moduli().to_vec(),
        cocycle: cocycle.data().to_json(group),
        series: series.to_json(group),
        ambient: m,
        dim,
        generators,
        relations,
        coproducts,
        closed_form_agrees,
    })
}

fn fmt_scalar(s: RootExp) -> String {
    match s.exp {
        0 => String::new(),
        1 => "z ".into(),
        e => format!("z^{e} "),
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "z = exp(2πi/{})", self.ambient)?;
        writeln!(f, "dimension {}", self.dim)?;
        writeln!(f, "generators: {}", self.generators.join(", "))?;
        writeln!(f, "relations:")?;
        for r in &self.relations {
            writeln!(f, "  {} = {}{}", r.lhs, fmt_scalar(r.scalar), r.rhs)?;
        }
        writeln!(f, "coproducts:")?;
        for c in &self.coproducts {
            let terms: Vec<String> = c
                .terms
                .iter()
                .map(|(a, b)| format!("{} ⊗ {}", if a.is_empty() { "1" } else { a }, b))
                .collect();
            writeln!(f, "  Δ({}) = {}", c.generator, terms.join(" + "))?;
        }
        if let Some(ok) = self.closed_form_agrees {
            writeln!(f, "closed form: {}", if ok { "agrees" } else { "DISAGREES" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bosonize::MajidAlgebra;
    use crate::group::GroupElem;
    use crate::nichols::BraidedSpace;

    fn z4_line() -> (Cocycle, AdmissibleSeries) {
        let c = Cocycle::from_moduli(&[4], &[1]).unwrap();
        let chi = crate::qchar::solve_quasicharacters(&c, c.group().generator(0)).unwrap();
        let chi = chi.into_iter().max_by_key(|q| q.char_value(q.degree()).root_order()).unwrap();
        let s = AdmissibleSeries::new(c.group(), vec![chi]).unwrap();
        (c, s)
    }

    #[test]
    fn quantum_line_text() {
        let (c, s) = z4_line();
        let p = present_majid(&c, &s).unwrap();
        let text = p.to_string();
        let n = s.nilpotency()[0];
        assert!(text.contains(&format!("X1^{n} = 0")), "{text}");
        assert!(text.contains("Δ(X1) = X1 ⊗ 1 + e1 ⊗ X1"), "{text}");
        assert_eq!(p.closed_form_agrees, Some(true));
        assert_eq!(p.dim, 4 * n as u128);
    }

    #[test]
    fn relations_match_the_algebra() {
        let c = Cocycle::from_moduli(&[2, 2, 2], &[1, 1, 1]).unwrap();
        let s = AdmissibleSeries::from_exponents(
            &c,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let p = present_majid(&c, &s).unwrap();
        let space = BraidedSpace::<i64>::new(c.clone(), s).unwrap();
        let m = MajidAlgebra::new(space);
        let group = c.group();
        let x = |i: usize| m.index(m.space().generator_index(i).unwrap(), GroupElem::IDENTITY);
        for rel in &p.relations {
            let parts: Vec<&str> = rel.lhs.split(' ').collect();
            if parts.len() != 2 || !parts[0].starts_with('X') && !parts[1].starts_with('X') {
                continue;
            }
            let idx = |w: &str| -> usize {
                let k: usize = w[1..].parse().unwrap();
                if w.starts_with('X') { x(k - 1) } else { m.index(0, group.generator(k - 1)) }
            };
            let (a, b) = (idx(parts[0]), idx(parts[1]));
            let (e1, lhs) = m.mul_basis(a, b).unwrap();
            let (e2, rhs) = m.mul_basis(b, a).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!((e1 + c.ambient() - e2) % c.ambient(), rel.scalar.exp, "{rel:?}");
        }
    }
}
