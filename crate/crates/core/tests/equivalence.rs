mod common;

use std::collections::BTreeSet;

use common::*;
use epcode::classify::{classify_lcd, classify_self_dual, enumerate_subspaces, ClassifyOptions};
use epcode::equiv::{canonical_form, canonical_key, equivalent_ep, equivalent_fp, find_monomial_map, Budget};
use epcode::{EpCode, FpCode, MonomialMapFp, Prime};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_fp(rng: &mut ChaCha8Rng, p: Prime, n: usize) -> FpCode {
    let k = rng.gen_range(0..=n);
    let rows = (0..k)
        .map(|_| (0..n).map(|_| rng.gen_range(0..p.get())).collect())
        .collect();
    FpCode::from_generators(p, n, rows).unwrap()
}

fn orbit(group: &[MonomialMapFp], codes: &[FpCode]) -> BTreeSet<Vec<FpCode>> {
    group
        .iter()
        .map(|m| codes.iter().map(|c| m.apply(c).unwrap()).collect())
        .collect()
}

#[test]
fn search_agrees_with_whole_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (p, max_n) in [(Prime::TWO, 5), (Prime::THREE, 4)] {
        for n in 1..=max_n {
            let group = MonomialMapFp::all(p, n);
            for _ in 0..40 {
                let a = random_fp(&mut rng, p, n);
                // half the time a disguised copy, otherwise an unrelated code of the same size
                let b = if rng.gen_bool(0.5) {
                    group[rng.gen_range(0..group.len())].apply(&a).unwrap()
                } else {
                    let mut b = random_fp(&mut rng, p, n);
                    while b.dim() != a.dim() {
                        b = random_fp(&mut rng, p, n);
                    }
                    b
                };
                let brute = group.iter().any(|m| m.apply(&a).unwrap() == b);
                let found = equivalent_fp(&a, &b);
                assert_eq!(found.is_some(), brute, "p={p} n={n} {a:?} {b:?}");
                if let Some(m) = found {
                    assert_eq!(m.apply(&a).unwrap(), b);
                }
                let ka = canonical_form(std::slice::from_ref(&a)).key;
                let kb = canonical_form(std::slice::from_ref(&b)).key;
                assert_eq!(ka == kb, brute);
            }
        }
    }
}

#[test]
fn pair_search_agrees_with_whole_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (p, n) in [(Prime::TWO, 4), (Prime::TWO, 5), (Prime::THREE, 3), (Prime::THREE, 4)] {
        let group = MonomialMapFp::all(p, n);
        let codes: Vec<EpCode> = (0..30)
            .map(|_| {
                let r = random_fp(&mut rng, p, n);
                let t = r.sum(&random_fp(&mut rng, p, n)).unwrap();
                EpCode::from_parts(r, t).unwrap()
            })
            .collect();
        for a in &codes {
            let pair = [a.residue().clone(), a.torsion().clone()];
            let orb = orbit(&group, &pair);
            for b in &codes {
                let brute = orb.contains(&vec![b.residue().clone(), b.torsion().clone()]);
                let found = equivalent_ep(a, b);
                assert_eq!(found.is_some(), brute);
                if let Some(m) = found {
                    assert_eq!(&m.apply(a).unwrap(), b);
                }
                let same_key = canonical_key(a, &Budget::CANONICAL).unwrap()
                    == canonical_key(b, &Budget::CANONICAL).unwrap();
                assert_eq!(same_key, brute);
            }
        }
    }
}

/// Orbit counting with the whole group, independent of canonical forms.
fn count_classes(p: Prime, n: usize, keep: impl Fn(&FpCode) -> bool) -> usize {
    let group = MonomialMapFp::all(p, n);
    let mut seen: BTreeSet<FpCode> = BTreeSet::new();
    let mut classes = 0;
    for k in 0..=n {
        for c in enumerate_subspaces(p, n, k).filter(|c| keep(c)) {
            if seen.contains(&c) {
                continue;
            }
            classes += 1;
            seen.extend(group.iter().map(|m| m.apply(&c).unwrap()));
        }
    }
    classes
}

#[test]
fn class_counts_match_orbit_counting() {
    let opts = ClassifyOptions::default();
    for (p, max_n) in [(Prime::TWO, 5), (Prime::THREE, 4)] {
        for n in 1..=max_n {
            assert_eq!(
                classify_lcd(p, n, &opts).unwrap().total(),
                count_classes(p, n, FpCode::is_lcd),
                "LCD p={p} n={n}"
            );
            assert_eq!(
                classify_self_dual(p, n, &opts).unwrap().total(),
                count_classes(p, n, |c| c.dim() * 2 <= n && c.is_self_orthogonal()),
                "self-dual p={p} n={n}"
            );
        }
    }
}

#[test]
fn non_free_pair_with_equivalent_residues() {
    let p = Prime::TWO;
    let b = EpCode::from_parts(fp(p, &[&[1, 1, 0]]), fp(p, &[&[1, 1, 0], &[0, 1, 0], &[1, 0, 0]])).unwrap();
    let c = EpCode::from_parts(fp(p, &[&[1, 0, 1]]), fp(p, &[&[1, 0, 1], &[0, 1, 0], &[1, 1, 1]])).unwrap();
    assert!(equivalent_fp(b.residue(), c.residue()).is_some());
    assert!(equivalent_ep(&b, &c).is_none());
    assert_ne!(
        canonical_key(&b, &Budget::CANONICAL).unwrap(),
        canonical_key(&c, &Budget::CANONICAL).unwrap()
    );
}

#[test]
fn different_dimensions_are_inequivalent() {
    let rep = ep("p=2 n=3\nr r r\n");
    let full = ep("p=2 n=3\nr 0 0\n0 r 0\n0 0 r\n");
    assert!(equivalent_ep(&rep, &full).is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn orbit_keys_agree(
        (c, maps) in prime_and_len(8, 5).prop_flat_map(|(p, n)| {
            (arb_code(p, n), prop::collection::vec(arb_map_ep(p, n), 50))
        })
    ) {
        let key = canonical_key(&c, &Budget::CANONICAL).unwrap();
        for m in &maps {
            let img = m.apply(&c).unwrap();
            prop_assert_eq!(&canonical_key(&img, &Budget::CANONICAL).unwrap(), &key);
        }
    }

    #[test]
    fn witnesses_are_valid_and_invertible(
        (c, m) in prime_and_len(8, 5).prop_flat_map(|(p, n)| (arb_code(p, n), arb_map_ep(p, n)))
    ) {
        let img = m.apply(&c).unwrap();
        let fwd = equivalent_ep(&c, &img).unwrap();
        prop_assert_eq!(&fwd.apply(&c).unwrap(), &img);
        let back = equivalent_ep(&img, &c).unwrap();
        prop_assert_eq!(&back.apply(&img).unwrap(), &c);
        prop_assert_eq!(fwd.reduce().inverse().apply(img.residue()).unwrap(), c.residue().clone());
        prop_assert!(equivalent_ep(&c, &c).is_some());
    }

    #[test]
    fn binary_witnesses_are_permutations(
        (c, m) in (1usize..=8).prop_flat_map(|n| (arb_code(Prime::TWO, n), arb_map_ep(Prime::TWO, n)))
    ) {
        let img = m.apply(&c).unwrap();
        let w = equivalent_ep(&c, &img).unwrap();
        prop_assert!(w.reduce().scale().iter().all(|&s| s == 1));
    }

    #[test]
    fn free_codes_take_either_path(
        (c, m) in prime_and_len(8, 5).prop_flat_map(|(p, n)| (arb_free_code(p, n), arb_map_fp(p, n)))
    ) {
        let img = EpCode::free(m.apply(c.residue()).unwrap());
        let via_residue = equivalent_ep(&c, &img).unwrap();
        let via_pair = find_monomial_map(
            &[c.residue().clone(), c.torsion().clone()],
            &[img.residue().clone(), img.torsion().clone()],
        ).unwrap();
        prop_assert_eq!(&via_residue.apply(&c).unwrap(), &img);
        prop_assert_eq!(&via_pair.apply(c.residue()).unwrap(), img.residue());
    }
}
