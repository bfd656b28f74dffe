use std::path::Path;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reslie::abelian;
use reslie::exactla::{random_invertible, FiniteField, Subspace, Vector};
use reslie::isotest::{
    canonical_form, lie_iso_search, verify_lie_witness, IsoOutcome, SearchOptions, CANONICAL_BUDGET,
};
use reslie::liealg::AlgebraPresentation;
use reslie::workbench::verify::{load_catalog, run, Entry, VerifyOptions};
use reslie::workbench::{parse, serialize, AlgebraFile};

fn field(choice: u8) -> FiniteField {
    match choice % 3 {
        0 => FiniteField::prime(2).unwrap(),
        1 => FiniteField::prime(3).unwrap(),
        _ => FiniteField::new(2, 2).unwrap(),
    }
}

fn catalog() -> Vec<Entry> {
    load_catalog(&Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog")).unwrap()
}

fn small_nilpotent(entries: &[Entry]) -> Vec<AlgebraPresentation> {
    entries
        .iter()
        .map(|e| e.file.algebra.clone())
        .filter(|a| a.dim() <= 4 && a.is_p_nilpotent() && !a.is_abelian())
        .collect()
}

fn vectors(f: &FiniteField, n: usize, raw: &[u32]) -> Vec<Vector> {
    raw.chunks(n)
        .filter(|c| c.len() == n)
        .map(|c| c.iter().map(|&x| f.from_index(x % f.order()).unwrap()).collect())
        .collect()
}

#[test]
fn catalog_battery_passes() {
    let r = run(&catalog(), &VerifyOptions::default()).unwrap();
    assert_eq!(r.failures, 0);
    assert_eq!(r.candidate_violations, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(choice in 0u8..3, a in 0u32..9, b in 0u32..9, c in 0u32..9) {
        let f = field(choice);
        let e = |x: u32| f.from_index(x % f.order()).unwrap();
        let (a, b, c) = (e(a), e(b), e(c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.frobenius(a, 1), -1), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn subspace_dimension_identity(choice in 0u8..3, n in 1usize..6, raw_a in prop::collection::vec(0u32..9, 0..24), raw_b in prop::collection::vec(0u32..9, 0..24)) {
        let f = field(choice);
        let u = Subspace::from_vectors(&f, n, vectors(&f, n, &raw_a)).unwrap();
        let w = Subspace::from_vectors(&f, n, vectors(&f, n, &raw_b)).unwrap();
        let s = u.sum(&f, &w).unwrap();
        let i = u.intersect(&f, &w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_subspace_of(&f, &u).unwrap() && i.is_subspace_of(&f, &w).unwrap());
    }

    #[test]
    fn random_invertible_has_inverse(choice in 0u8..3, n in 1usize..6, seed in any::<u64>()) {
        let f = field(choice);
        let g = random_invertible(&f, n, &mut ChaCha8Rng::seed_from_u64(seed));
        let inv = g.inverse(&f).unwrap();
        prop_assert_eq!(g.mul(&f, &inv).unwrap(), reslie::exactla::Matrix::identity(n));
    }

    #[test]
    fn abelian_exponents_recovered(choice in 0u8..3, mut exps in prop::collection::vec(1u32..4, 1..4), seed in any::<u64>()) {
        let f = field(choice);
        exps.sort_unstable_by(|a, b| b.cmp(a));
        let model = abelian::from_exponents(&f, &exps);
        let g = random_invertible(&f, model.dim(), &mut ChaCha8Rng::seed_from_u64(seed));
        let a = model.change_basis(&g).unwrap();
        let dec = abelian::cyclic_decomposition(&a).unwrap();
        prop_assert_eq!(&dec.exponents, &exps);
        prop_assert_eq!(abelian::partition_from_rank_profile(&abelian::rank_profile(&a).unwrap()), exps);
        let w = abelian::abelian_iso(&a, &model).unwrap().unwrap();
        prop_assert!(abelian::verify_abelian_witness(&a, &model, &w).is_ok());
    }

    #[test]
    fn base_change_preserves_class(index in 0usize..64, seed in any::<u64>()) {
        let algebras = small_nilpotent(&catalog());
        let a = &algebras[index % algebras.len()];
        let g = random_invertible(a.field(), a.dim(), &mut ChaCha8Rng::seed_from_u64(seed));
        let b = a.change_basis(&g).unwrap();
        prop_assert!(b.validate().is_valid());
        prop_assert_eq!(canonical_form(a, CANONICAL_BUDGET).id, canonical_form(&b, CANONICAL_BUDGET).id);
        prop_assert_eq!(reslie::env::fingerprint(a).unwrap(), reslie::env::fingerprint(&b).unwrap());
        match lie_iso_search(a, &b, SearchOptions::default()).unwrap().outcome {
            IsoOutcome::Witness(w) => prop_assert!(verify_lie_witness(a, &b, &w).is_ok()),
            other => prop_assert!(false, "no witness: {:?}", other),
        }
    }

    #[test]
    fn serialization_round_trips(index in 0usize..64, seed in any::<u64>()) {
        let entries = catalog();
        let e = &entries[index % entries.len()];
        let a = &e.file.algebra;
        let g = random_invertible(a.field(), a.dim(), &mut ChaCha8Rng::seed_from_u64(seed));
        let file = AlgebraFile { name: e.file.name.clone(), algebra: a.change_basis(&g).unwrap() };
        let text = serialize(&file);
        let again = parse(&text).unwrap();
        prop_assert!(again.algebra.same_structure(&file.algebra));
        prop_assert_eq!(serialize(&again), text);
    }
}
