//! Property tests for the algebraic invariants.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::{BigRational, Rational64};
use num_traits::ToPrimitive;
use proptest::prelude::*;

use quasiq::classify::{cocycle_stabilizer, transport, ClassificationReport, EnumerateOptions};
use quasiq::cli::{from_json, to_canonical_json};
use quasiq::cyclo::qbinom;
use quasiq::group::VerifyOptions;
use quasiq::qchar::QuasiCharacter;
use quasiq::{
    enumerate_admissible, solve_quasicharacters, verify_cocycle, AbelianGroup, AdmissibleSeries, BraidedSpace, Cocycle,
    CocycleData, CycInt, CycNumber, CycNumber64, Frame, GroupElem, RootExp,
};

const SMALL_GROUPS: [&[u32]; 8] = [&[2], &[3], &[4], &[6], &[2, 2], &[2, 4], &[3, 3], &[2, 2, 2]];

fn cocycle_on(moduli: &[u32], pick: usize, reduced: bool) -> Cocycle {
    let group = AbelianGroup::new(moduli).unwrap();
    let all: Vec<CocycleData> = CocycleData::all(&group).into_iter().filter(|d| !reduced || d.is_reduced()).collect();
    Cocycle::new(group, all[pick % all.len()].clone()).unwrap()
}

fn cyc64(order: u32, coeffs: &[i64]) -> CycNumber64 {
    CycNumber64::from_coeffs(order, coeffs.iter().map(|&c| Rational64::from_integer(c)).collect()).unwrap()
}

/// Value at `exp(2πi/order)`, as `(re, im)`.
fn evaluate(x: &CycNumber64) -> (f64, f64) {
    let n = x.order() as f64;
    x.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
        let c = c.to_f64().unwrap();
        let t = std::f64::consts::TAU * k as f64 / n;
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6
}

fn element(order: u32) -> impl Strategy<Value = CycNumber64> {
    prop::collection::vec(-4i64..=4, order as usize).prop_map(move |v| cyc64(order, &v))
}

fn field_triple() -> impl Strategy<Value = (CycNumber64, CycNumber64, CycNumber64)> {
    prop_oneof![Just(1u32), Just(3), Just(4), Just(5), Just(6), Just(8), Just(9), Just(12), Just(16)]
        .prop_flat_map(|n| (element(n), element(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws_hold((a, b, c) in field_triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&(-&a) + &a, CycNumber64::zero(a.order()));
    }

    #[test]
    fn arithmetic_matches_complex_evaluation((a, b, _c) in field_triple()) {
        let (ea, eb) = (evaluate(&a), evaluate(&b));
        let sum = evaluate(&(&a + &b));
        prop_assert!(close(sum, (ea.0 + eb.0, ea.1 + eb.1)));
        let prod = evaluate(&(&a * &b));
        prop_assert!(close(prod, (ea.0 * eb.0 - ea.1 * eb.1, ea.0 * eb.1 + ea.1 * eb.0)));
        // Exact equality agrees with the numerical value.
        prop_assert_eq!(a == b, close(ea, eb));
    }

    #[test]
    fn nonzero_elements_are_invertible((a, _b, _c) in field_triple()) {
        let big = CycNumber::from_coeffs(
            a.order(),
            a.coeffs().iter().map(|c| BigRational::from_integer((*c.numer()).into())).collect(),
        ).unwrap();
        prop_assume!(!big.is_zero());
        let inv = big.inv().unwrap();
        prop_assert!((&big * &inv).is_one());
    }

    #[test]
    fn q_pascal_rules(order in 1u32..=16, step in 0u32..16, m in 1i64..=16, i in 0i64..=16) {
        prop_assume!(i <= m);
        let q = RootExp::new(order, step as i64);
        let at = |m: i64, i: i64| -> CycInt {
            if i < 0 || i > m { CycInt::zero(order) } else { qbinom(m, i, q).unwrap() }
        };
        let qi = CycInt::root(order, step as i64 * i);
        let qmi = CycInt::root(order, step as i64 * (m - i));
        prop_assert_eq!(at(m, i), &at(m - 1, i - 1) + &(&qi * &at(m - 1, i)));
        prop_assert_eq!(at(m, i), &(&qmi * &at(m - 1, i - 1)) + &at(m - 1, i));
        prop_assert_eq!(at(m, i), at(m, m - i));
    }

    #[test]
    fn every_parameter_sequence_is_a_cocycle(g in 0usize..SMALL_GROUPS.len(), pick in any::<usize>(), triples in prop::collection::vec((0usize..216, 0usize..216, 0usize..216), 32)) {
        let moduli = SMALL_GROUPS[g];
        let c = cocycle_on(moduli, pick, false);
        let group = c.group();
        prop_assert!(verify_cocycle(group, &c, &VerifyOptions::default()).unwrap().holds);
        let n = group.order() as usize;
        for (x, y, z) in triples {
            let (x, y, z) = (GroupElem((x % n) as u32), GroupElem((y % n) as u32), GroupElem((z % n) as u32));
            let want = common::phi(moduli, c.data(), group.exponents(x), group.exponents(y), group.exponents(z));
            prop_assert_eq!(common::turns(c.phi_exp(x, y, z) as i64, c.ambient() as i64), want);
        }
    }

    #[test]
    fn reduced_cocycles_have_a_full_set_of_quasicharacters(g in 0usize..SMALL_GROUPS.len(), pick in any::<usize>(), d in any::<usize>()) {
        let moduli = SMALL_GROUPS[g];
        let c = cocycle_on(moduli, pick, true);
        let group = c.group();
        let degree = GroupElem((d % group.order() as usize) as u32);
        let chars = solve_quasicharacters(&c, degree).unwrap();
        prop_assert_eq!(chars.len() as u32, group.order());
        let distinct: BTreeSet<Vec<u32>> = chars.iter().map(|chi| chi.gen_exps().to_vec()).collect();
        prop_assert_eq!(distinct.len(), chars.len());
        let m = c.ambient() as i64;
        for chi in &chars {
            for x in group.elements() {
                for y in group.elements() {
                    let lhs = common::turns(chi.value_exp(x) as i64 + chi.value_exp(y) as i64, m);
                    let tilde = common::phi_tilde(moduli, c.data(), group.exponents(degree), group.exponents(x), group.exponents(y));
                    let rhs = common::frac(tilde + common::turns(chi.value_exp(group.mul(x, y)) as i64, m));
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn solver_finds_every_brute_force_character(g in 0usize..5, pick in any::<usize>(), d in any::<usize>()) {
        let moduli = [&[2u32][..], &[3], &[4], &[2, 2], &[2, 2, 2]][g];
        let c = cocycle_on(moduli, pick, true);
        let group = c.group();
        let degree = GroupElem((d % group.order() as usize) as u32);
        let m = c.ambient() as i64;
        // Brute force indexes elements in the same mixed radix as the group.
        for h in group.elements() {
            prop_assert_eq!(common::index_of(moduli, group.exponents(h)), h.index());
        }
        let brute: BTreeSet<Vec<Rational64>> =
            common::brute_quasicharacters(moduli, c.data(), group.exponents(degree), m).into_iter().collect();
        let solved: BTreeSet<Vec<Rational64>> = solve_quasicharacters(&c, degree)
            .unwrap()
            .iter()
            .map(|chi| group.elements().map(|h| common::turns(chi.value_exp(h) as i64, m)).collect())
            .collect();
        prop_assert_eq!(solved, brute);
    }

    #[test]
    fn reports_roundtrip_through_canonical_json(g in 0usize..4, pick in any::<usize>(), n in 1usize..=3) {
        let moduli = [&[2u32][..], &[4], &[2, 2], &[3, 3]][g];
        let c = cocycle_on(moduli, pick, true);
        let opts = EnumerateOptions { frame: Frame::All, up_to_perm: true, ..Default::default() };
        let report = enumerate_admissible(&c, n, &opts).unwrap();
        let text = to_canonical_json(&report);
        let back: ClassificationReport = from_json(&text).unwrap();
        prop_assert_eq!(&back, &report);
        prop_assert_eq!(to_canonical_json(&back), text.clone());
        let again = enumerate_admissible(&c, n, &opts).unwrap();
        prop_assert_eq!(to_canonical_json(&again), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stabilizer_automorphisms_preserve_multiplication(a in 0u32..8, a2 in 0usize..8, n in 1usize..=4, pick in any::<usize>(), s in any::<usize>()) {
        let group = AbelianGroup::new(&[2, 2, 2]).unwrap();
        let mut data = CocycleData::from_a(&[a & 1, (a >> 1) & 1, (a >> 2) & 1]);
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            data = data.with_pair(i, j, ((a2 >> k) & 1) as u32);
        }
        let c = Arc::new(Cocycle::new(group.clone(), data).unwrap());
        let opts = EnumerateOptions { frame: Frame::All, up_to_perm: true, ..Default::default() };
        let report = enumerate_admissible(&c, n, &opts).unwrap();
        prop_assume!(!report.entries.is_empty());
        let series = report.entries[pick % report.entries.len()].series(&c).unwrap();
        let stab = cocycle_stabilizer(&c);
        let sigma = &stab[s % stab.len()];
        let mut inverse = vec![GroupElem::IDENTITY; sigma.len()];
        for (i, t) in sigma.iter().enumerate() {
            inverse[t.index()] = GroupElem(i as u32);
        }
        // Move each character along σ without reordering.
        let moved: Vec<QuasiCharacter> = series
            .chars()
            .iter()
            .map(|chi| {
                let vals: Vec<RootExp> = (0..group.rank())
                    .map(|l| RootExp::new(c.ambient(), chi.value_exp(inverse[group.generator(l).index()]) as i64))
                    .collect();
                QuasiCharacter::from_values(&c, sigma[chi.degree().index()], &vals).unwrap()
            })
            .collect();
        let moved = AdmissibleSeries::new(&group, moved).unwrap();
        let rows: Vec<(Vec<u32>, Vec<u32>)> = {
            let mut r: Vec<_> = moved.chars().iter().map(|chi| (group.exponents(chi.degree()).to_vec(), chi.gen_exps().to_vec())).collect();
            r.sort();
            r
        };
        prop_assert_eq!(rows, transport(&c, &series, sigma));
        let before = BraidedSpace::<i64>::new(Arc::clone(&c), series).unwrap();
        let after = BraidedSpace::<i64>::new(Arc::clone(&c), moved).unwrap();
        prop_assert_eq!(before.dim(), after.dim());
        let d = before.dim().min(256);
        for u in 0..d {
            for v in 0..d {
                prop_assert_eq!(before.mul_basis(u, v), after.mul_basis(u, v));
            }
        }
    }
}

#[test]
fn field_inverse_on_rational64_sanity() {
    let x = cyc64(5, &[1, 1, 0, 0, 0]);
    let y = x.inv().unwrap();
    assert!((&x * &y).is_one());
}
